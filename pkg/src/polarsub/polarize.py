"""Polarizing transforms, dynamic-freezing constraints and reliability profiles.

The single index convention used everywhere: the transform input u, frozen
index sets, constraint rows and reliability vectors all live in the same
domain, with the codeword given by c = u . B . F^(x)m (the digit-reversal
permutation is part of the transform).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from . import binmat
from .binmat import BitMatrix, kronecker_power, digit_reversal, permutation_matrix, right_rref
from .galois import Field, make_field, cyclotomic_cosets, minimal_polynomial

BEC_TIE_BIT = 0  # an erased (LLR 0) decision resolves to 0, so P_i = Z_i / 2


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class Kernel:
    """An l x l polarizing kernel.

    ``matrix`` is a BitMatrix for binary kernels and an (l, l) integer array
    of GF(q) elements for the Reed-Solomon kernel, whose arithmetic lives in
    ``field``.
    """

    kind: str  # "arikan" | "ebch" | "reed-solomon"
    l: int
    matrix: object
    field: Field | None = None


def _bch_generator_degrees(f: Field) -> dict[int, int]:
    """Map achievable BCH generator degree -> generator polynomial bits.

    Narrow-sense BCH codes of length 2^m - 1: the generator for designed
    distance delta is lcm of the minimal polynomials of alpha^1..alpha^(delta-1);
    walking delta upward enumerates every achievable degree.
    """
    cosets = {c.representative: c for c in cyclotomic_cosets(f.m)}
    degrees = {0: 1}  # degree 0: g(x) = 1
    used: set[int] = set()
    g = 1
    modulus = (1 << f.m) - 1
    for delta_minus_1 in range(1, modulus):
        rep = min(cosets[r].representative for r in cosets
                  if delta_minus_1 in cosets[r].members) if False else None
        # representative of delta_minus_1's coset
        t = delta_minus_1
        orbit = {t}
        x = (t * 2) % modulus
        while x != t:
            orbit.add(x)
            x = (x * 2) % modulus
        rep = min(orbit)
        if rep not in used:
            used.add(rep)
            mp = minimal_polynomial(f, cosets[rep])
            g = _polymul_gf2(g, mp)
        degrees[g.bit_length() - 1] = g
    return degrees


def _polymul_gf2(a: int, b: int) -> int:
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def _ebch_kernel_matrix(l: int) -> BitMatrix:
    """Extended BCH kernel: shifted BCH generators plus an overall parity column."""
    mu = l.bit_length() - 1
    if l != 1 << mu or mu < 1:
        raise ValueError("EBCH kernel size must be a power of two")
    f = make_field(mu)
    degrees = _bch_generator_degrees(f)
    rows = [1]  # row 0 = (1, 0, ..., 0)
    for i in range(l - 1):
        ideg = max(d for d in degrees if d <= i)
        shifted = degrees[ideg] << (i - ideg)  # x^j g_{i'}(x), j = i - i'
        body = shifted & ((1 << (l - 1)) - 1)
        parity = body.bit_count() & 1
        rows.append(parity | (body << 1))
    return BitMatrix(l, l, rows)


def make_kernel(kind: str, l: int, field: Field | None = None) -> Kernel:
    """Construct a kernel by kind; validates the (kind, l, field) combination."""
    if kind == "arikan":
        if l != 2:
            raise ValueError("the Arikan kernel has size 2")
        return Kernel("arikan", 2, BitMatrix(2, 2, [0b01, 0b11]))
    if kind == "ebch":
        mat = _ebch_kernel_matrix(l)
        if binmat.rank(mat) != l:
            raise AssertionError("EBCH kernel is singular")
        return Kernel("ebch", l, mat)
    if kind in ("reed-solomon", "rs"):
        if field is None:
            raise ValueError("the Reed-Solomon kernel needs a field")
        q = field.order
        if not 2 <= l <= q:
            raise ValueError(f"RS kernel needs 2 <= l <= q = {q}")
        # (F)_{i,j} = beta_j^(l-1-i) over the first l field elements.
        mat = np.array([[field.power(j, l - 1 - i) for j in range(l)]
                        for i in range(l)], dtype=np.int64)
        return Kernel("reed-solomon", l, mat, field)
    raise ValueError(f"unknown kernel kind {kind!r}")


def transform_matrix(kernel: Kernel, m: int) -> BitMatrix:
    """Explicit polarizing transform B . F^(x)m for a binary kernel."""
    if kernel.kind == "reed-solomon":
        raise ValueError("explicit binary transform needs a binary kernel")
    fm = kronecker_power(kernel.matrix, m)
    b = permutation_matrix(digit_reversal(kernel.l, m))
    return b.matmul(fm)


def transform_encode(u, kernel: Kernel, m: int) -> np.ndarray:
    """c = u . B . F^(x)m.

    The Arikan case runs as an in-place butterfly (n log2 n XORs); other
    binary kernels multiply by the explicit transform.
    """
    u = np.asarray(u, dtype=np.uint8) % 2
    n = kernel.l ** m
    if u.shape[-1] != n:
        raise ValueError(f"input length {u.shape[-1]} != {kernel.l}^{m}")
    if kernel.kind == "arikan":
        return arikan_transform(u)
    if kernel.kind == "reed-solomon":
        raise ValueError("transform_encode handles binary kernels only")
    a = transform_matrix(kernel, m)
    bits = int.from_bytes(np.packbits(u, bitorder="little").tobytes(), "little")
    c = a.mul_vector_bits(bits)
    raw = np.frombuffer(c.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(np.uint8)


def arikan_transform(u: np.ndarray) -> np.ndarray:
    """Butterfly for c = u . B . F2^(x)m, vectorized over leading axes."""
    n = u.shape[-1]
    m = n.bit_length() - 1
    if 1 << m != n:
        raise ValueError("length must be a power of two")
    perm = np.array(digit_reversal(2, m), dtype=np.intp) if m else np.array([0])
    x = np.ascontiguousarray(u[..., perm])
    for b in range(m):
        step = 1 << (b + 1)
        view = x.reshape(x.shape[:-1] + (n // step, step))
        view[..., : step // 2] ^= view[..., step // 2:]
    return x.reshape(u.shape)


def _zeta_masks(m: int) -> list[tuple[int, int]]:
    """(mask of positions with bit b clear, shift) pairs for the packed zeta."""
    n = 1 << m
    out = []
    for b in range(m):
        step = 1 << b
        block = (1 << step) - 1
        mask = 0
        pos = 0
        while pos < n:
            mask |= block << pos
            pos += 2 * step
        out.append((mask, step))
    return out


def packed_arikan_columns(h: int, m: int, rev: list[int]) -> int:
    """Row h of H times A^T, all operands packed as ints.

    Uses (B F^(x)m)_{j,t} = [t subset-of rev(j)]: a subset-XOR (zeta)
    transform followed by the digit-reversal permutation.
    """
    for mask, step in _zeta_masks(m):
        h ^= (h & mask) << step
    y = 0
    for j in range(1 << m):
        if (h >> rev[j]) & 1:
            y |= 1 << j
    return y


# ---------------------------------------------------------------------------
# constraint systems


@dataclass(frozen=True)
class ConstraintSystem:
    """Dynamic-freezing system: frozen indices plus one reduced row each.

    ``rows[j]`` lists the source indices s < j with u_j = XOR of u_s (empty
    tuple = static freeze).  The canonical form emitted by this module never
    uses a frozen index as a source.
    """

    n: int
    frozen: tuple[int, ...]
    rows: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if tuple(sorted(set(self.frozen))) != self.frozen:
            raise ValueError("frozen indices must be sorted and distinct")
        for j in self.frozen:
            srcs = self.rows.get(j, ())
            if any(not 0 <= s < j for s in srcs):
                raise ValueError(f"row for u_{j} has a source not below it")
        if set(self.rows) - set(self.frozen):
            raise ValueError("row present for a non-frozen index")

    @property
    def k(self) -> int:
        return self.n - len(self.frozen)

    @property
    def unfrozen(self) -> tuple[int, ...]:
        fro = set(self.frozen)
        return tuple(i for i in range(self.n) if i not in fro)

    def sources(self, j: int) -> tuple[int, ...]:
        return self.rows.get(j, ())

    def num_dynamic_rows(self) -> int:
        """f: the number of non-trivial (non-static) freezing equations."""
        return sum(1 for j in self.frozen if self.rows.get(j))

    def num_dynamic_terms(self) -> int:
        """T: total source terms across the non-trivial equations."""
        return sum(len(self.rows.get(j, ())) for j in self.frozen)

    def to_matrix(self) -> BitMatrix:
        bits = []
        for j in self.frozen:
            r = 1 << j
            for s in self.rows.get(j, ()):
                r |= 1 << s
            bits.append(r)
        return BitMatrix(len(bits), self.n, bits)

    def satisfied_by(self, u) -> bool:
        u = np.asarray(u, dtype=np.uint8)
        for j in self.frozen:
            want = 0
            for s in self.rows.get(j, ()):
                want ^= int(u[s])
            if int(u[j]) != want:
                return False
        return True


def constraints_from_matrix(mat: BitMatrix) -> ConstraintSystem:
    """Canonicalize an arbitrary GF(2) constraint matrix over u."""
    v, pivots = right_rref(mat)
    rows = {}
    for i, j in enumerate(pivots):
        r = v.row_bits[i] ^ (1 << j)
        srcs = []
        while r:
            low = r & -r
            srcs.append(low.bit_length() - 1)
            r ^= low
        rows[j] = tuple(srcs)
    return ConstraintSystem(n=mat.cols, frozen=tuple(pivots), rows=rows)


def derive_constraints(parent, kernel: Kernel, m: int) -> ConstraintSystem:
    """Dynamic-freezing system of a parent code: right-reduce H . A^T.

    ``parent`` is anything with a check BitMatrix attribute ``H`` (or a bare
    BitMatrix); frozen indices are the reduced rows' pivots, so exactly
    n - k(parent) of them.
    """
    h = parent if isinstance(parent, BitMatrix) else parent.H
    n = kernel.l ** m
    if h.cols != n:
        raise ValueError(f"parent length {h.cols} != {kernel.l}^{m}")
    if kernel.kind == "arikan":
        rev = digit_reversal(2, m)
        ha = BitMatrix(h.rows, n, [packed_arikan_columns(r, m, rev)
                                   for r in h.row_bits])
    elif kernel.kind == "ebch":
        ha = h.matmul(transform_matrix(kernel, m).transposed())
    else:
        raise ValueError("constraint derivation implemented for binary kernels")
    return constraints_from_matrix(ha)


def eval_frozen(cs: ConstraintSystem, prefix, i: int) -> int:
    """Value forced on frozen u_i by the decided prefix u_0..u_{i-1}."""
    srcs = cs.rows.get(i)
    if i not in cs.rows and i not in cs.frozen:
        raise ValueError(f"u_{i} is not frozen")
    if not srcs:
        return 0
    bit = 0
    for s in srcs:
        bit ^= int(prefix[s]) & 1
    return bit


# ---------------------------------------------------------------------------
# reliability profiles

KIND_Z = "bhattacharyya-Z"
KIND_P = "error-prob-P"


@dataclass(frozen=True)
class ReliabilityProfile:
    """Per-subchannel reliability vector in transform-input ordering."""

    n: int
    kind: str
    values: np.ndarray
    channel: str = ""

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", vals)
        if vals.shape != (self.n,):
            raise ValueError("profile length mismatch")
        if self.kind not in (KIND_Z, KIND_P):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if np.any(vals < 0) or np.any(vals > 1):
            raise ValueError("reliability values must lie in [0, 1]")

    def as_error_prob(self) -> "ReliabilityProfile":
        """Convert Z to P for the BEC: P = Z/2 under the resolve-to-0 tie rule."""
        if self.kind == KIND_P:
            return self
        return ReliabilityProfile(self.n, KIND_P, self.values / 2.0, self.channel)

    def save_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["index", "value"])
            for i, v in enumerate(self.values):
                w.writerow([i, repr(float(v))])

    @classmethod
    def load_csv(cls, path, kind: str = KIND_P, channel: str = "") -> "ReliabilityProfile":
        with open(path, newline="") as fh:
            r = csv.reader(fh)
            header = next(r)
            if header[:2] != ["index", "value"]:
                raise ValueError("bad profile CSV header")
            vals = [float(row[1]) for row in r]
        return cls(len(vals), kind, np.array(vals), channel)


def bec_reliability(m: int, z0: float) -> ReliabilityProfile:
    """Exact Bhattacharyya parameters on the BEC(z0) after m Arikan levels."""
    if not 0.0 <= z0 <= 1.0:
        raise ValueError("erasure probability must be in [0, 1]")
    z = np.array([z0], dtype=np.float64)
    for _ in range(m):
        nxt = np.empty(2 * z.size)
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return ReliabilityProfile(1 << m, KIND_Z, z, channel=f"bec(eps={z0})")


# Two-regime approximation of the check-node mean map phi, pinned for
# reproducible constructions; inverted by bisection.
_PHI_SWITCH = 10.0


def _log_phi(x: float) -> float:
    if x <= 0.0:
        return 0.0218
    if x < _PHI_SWITCH:
        return -0.4527 * x ** 0.86 + 0.0218
    return -x / 4.0 + 0.5 * math.log(math.pi / x) + math.log1p(-10.0 / (7.0 * x))


def _inv_log_phi(target: float) -> float:
    if target >= _log_phi(0.0):
        return 0.0
    lo, hi = 0.0, 64.0
    while _log_phi(hi) > target:
        hi *= 2.0
        if hi > 1e12:
            return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _log_phi(mid) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-9 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def ga_reliability(m: int, noise_sigma: float) -> ReliabilityProfile:
    """Gaussian-approximation error probabilities for BPSK/AWGN.

    Tracks the mean LLR of each subchannel (variance = twice the mean);
    check steps go through the pinned phi approximation in the log domain
    so deep recursions do not underflow.
    """
    if noise_sigma <= 0:
        raise ValueError("noise sigma must be positive")
    means = np.array([2.0 / (noise_sigma * noise_sigma)], dtype=np.float64)
    for _ in range(m):
        nxt = np.empty(2 * means.size)
        for i, mu in enumerate(means):
            lp = _log_phi(mu)
            nxt[2 * i] = _inv_log_phi(lp + math.log(2.0 - math.exp(lp)))
            nxt[2 * i + 1] = 2.0 * mu
        means = nxt
    p = np.array([0.5 * math.erfc(math.sqrt(mu) / 2.0) for mu in means])
    p = np.clip(p, 0.0, 0.5)
    return ReliabilityProfile(1 << m, KIND_P,
                              p, channel=f"awgn(sigma={noise_sigma})")


def sc_error_prob(profile: ReliabilityProfile, cs: ConstraintSystem) -> float:
    """Union-style SC error probability: 1 - prod over unfrozen of (1 - P_i)."""
    if profile.n != cs.n:
        raise ValueError("profile length != code length")
    if profile.kind != KIND_P:
        raise ValueError(
            "need an error-probability profile; convert Z first "
            "(BEC: P = Z/2 under the tie rule, see as_error_prob)")
    good = 1.0
    fro = set(cs.frozen)
    for i in range(cs.n):
        if i not in fro:
            good *= 1.0 - profile.values[i]
    return 1.0 - good


def mc_reliability(kernel: Kernel, m: int, channel, trials: int,
                   seed: int, workers: int = 1) -> ReliabilityProfile:
    """Genie-aided Monte Carlo estimate of per-phase SC error probabilities.

    Each trial encodes uniform data, adds channel noise from a counter-based
    stream keyed by (seed, block), and decodes with every preceding symbol
    forced to its true value; P_i is the relative frequency of a wrong
    decision at phase i.  Results are bit-identical for a fixed seed,
    independent of worker count.

    Supported: the Arikan kernel at any m; the Reed-Solomon kernel at m <= 2
    (per-symbol genie on the binary image).  The EBCH kernel would need SC
    marginalization over 2^(l-1) completions and is not supported.
    """
    from . import _genie
    if trials < 1000:
        raise ValueError("need at least 10^3 trials")
    if kernel.kind == "arikan":
        errs = _genie.arikan_genie_errors(m, channel, trials, seed, workers)
    elif kernel.kind == "reed-solomon":
        errs = _genie.rs_genie_errors(kernel, m, channel, trials, seed, workers)
    else:
        raise ValueError(f"mc_reliability unsupported for {kernel.kind!r} kernel")
    return ReliabilityProfile(len(errs), KIND_P, errs / float(trials),
                              channel=str(channel))
