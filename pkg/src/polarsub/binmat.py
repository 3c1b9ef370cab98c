"""Dense GF(2) linear algebra on bit-packed rows.

Each matrix row is stored as a Python integer whose bit ``j`` is the entry
in column ``j``.  Big-int XOR gives word-parallel row elimination, which
keeps right-pivot reduction of (n-k) x n matrices fast well past n = 2^17.
"""

from __future__ import annotations

import numpy as np

# Explicit Kronecker powers larger than this are refused (the packed matrix
# alone would not fit in memory).
MAX_KRONECKER_SIZE = 1 << 20


class BitMatrix:
    """Dense binary matrix with bit-packed rows.

    Rows are Python ints; bit ``j`` of ``row_bits[i]`` is entry (i, j).
    Instances are treated as immutable by every function in this package:
    operations return new matrices.
    """

    __slots__ = ("rows", "cols", "row_bits")

    def __init__(self, rows: int, cols: int, row_bits: list[int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if row_bits is None:
            row_bits = [0] * rows
        if len(row_bits) != rows:
            raise ValueError(f"expected {rows} rows, got {len(row_bits)}")
        mask = (1 << cols) - 1
        for r in row_bits:
            if r & ~mask:
                raise ValueError("row has bits outside the stated column range")
        self.row_bits = list(row_bits)

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_rows(cls, rows: object, cols: int | None = None) -> "BitMatrix":
        """Build from an iterable of 0/1 row sequences (or a 2-D array)."""
        arr = np.asarray(rows, dtype=np.uint8) % 2
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array of bits")
        r, c = arr.shape
        if cols is not None and cols != c:
            raise ValueError(f"expected {cols} columns, got {c}")
        bits = [int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
                for row in arr]
        return cls(r, c, bits)

    # -- element access -----------------------------------------------

    def get(self, i: int, j: int) -> int:
        return (self.row_bits[i] >> j) & 1

    def row(self, i: int) -> int:
        return self.row_bits[i]

    def to_array(self) -> np.ndarray:
        """Unpack to a (rows, cols) uint8 array."""
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        nbytes = (self.cols + 7) // 8
        for i, r in enumerate(self.row_bits):
            raw = np.frombuffer(r.to_bytes(nbytes, "little"), dtype=np.uint8)
            out[i] = np.unpackbits(raw, bitorder="little")[: self.cols]
        return out

    # -- structure ----------------------------------------------------

    def transposed(self) -> "BitMatrix":
        cols = [0] * self.cols
        for i, r in enumerate(self.row_bits):
            while r:
                j = r & -r
                cols[j.bit_length() - 1] |= 1 << i
                r ^= j
        return BitMatrix(self.cols, self.rows, cols)

    def column_slice(self, lo: int, hi: int) -> "BitMatrix":
        """Columns [lo, hi) as a new matrix."""
        mask = (1 << (hi - lo)) - 1
        return BitMatrix(self.rows, hi - lo, [(r >> lo) & mask for r in self.row_bits])

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return BitMatrix(self.rows + other.rows, self.cols,
                         self.row_bits + other.row_bits)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        shifted = [a | (b << self.cols)
                   for a, b in zip(self.row_bits, other.row_bits)]
        return BitMatrix(self.rows, self.cols + other.cols, shifted)

    # -- arithmetic ---------------------------------------------------

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        ot = other.transposed()
        out = []
        for r in self.row_bits:
            acc = 0
            for j, c in enumerate(ot.row_bits):
                acc |= ((r & c).bit_count() & 1) << j
            out.append(acc)
        return BitMatrix(self.rows, other.cols, out)

    def mul_vector_bits(self, v: int) -> int:
        """x * M for a packed row vector x (bit i selects row i)."""
        acc = 0
        i = 0
        while v:
            if v & 1:
                acc ^= self.row_bits[i]
            v >>= 1
            i += 1
        return acc

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, BitMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.row_bits == other.row_bits)

    def __hash__(self):  # pragma: no cover - not used as dict keys
        return hash((self.rows, self.cols, tuple(self.row_bits)))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def kronecker(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Kronecker product a (x) b; a's indices form the high digits."""
    out = []
    for ra in a.row_bits:
        for rb in b.row_bits:
            r = 0
            t = ra
            while t:
                j = t & -t
                r |= rb << ((j.bit_length() - 1) * b.cols)
                t ^= j
            out.append(r)
    return BitMatrix(a.rows * b.rows, a.cols * b.cols, out)


def kronecker_power(f: BitMatrix, m: int) -> BitMatrix:
    """m-fold Kronecker power of a square matrix."""
    if f.rows != f.cols:
        raise ValueError("kernel must be square")
    if m < 1:
        raise ValueError("power must be >= 1")
    if f.rows ** m > MAX_KRONECKER_SIZE:
        raise ValueError(
            f"explicit Kronecker power of size {f.rows}^{m} exceeds the "
            f"limit of {MAX_KRONECKER_SIZE}")
    out = f
    for _ in range(m - 1):
        out = kronecker(out, f)
    return out


def digit_reversal(l: int, m: int) -> list[int]:
    """Digit-reversal permutation on {0, .., l^m - 1}.

    Maps sum(i_j * l^j) to sum(i_j * l^(m-1-j)); an involution.
    """
    if l < 2 or m < 1:
        raise ValueError("need radix >= 2 and at least one digit")
    n = l ** m
    perm = []
    for i in range(n):
        r = 0
        t = i
        for _ in range(m):
            r = r * l + t % l
            t //= l
        perm.append(r)
    return perm


def permutation_matrix(perm: list[int]) -> BitMatrix:
    """Matrix P with P[i, perm[i]] = 1, so row i of P.M is row perm[i] of M."""
    n = len(perm)
    return BitMatrix(n, n, [1 << perm[i] for i in range(n)])


def right_rref(mat: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Canonical right-pivot reduced form of a GF(2) matrix.

    Every output row's *last* nonzero column (its pivot) is distinct, each
    pivot column carries a single 1 across all rows, zero rows are dropped
    and rows are sorted by ascending pivot.  The result is unique for a
    given row space.

    Returns (reduced matrix, sorted pivot column list).
    """
    piv: dict[int, int] = {}
    for r in mat.row_bits:
        while r:
            c = r.bit_length() - 1
            if c in piv:
                r ^= piv[c]
            else:
                piv[c] = r
                break
    # Back-substitution: clear each pivot column from every other row.
    for c in sorted(piv, reverse=True):
        pr = piv[c]
        for c2, r2 in piv.items():
            if c2 != c and (r2 >> c) & 1:
                piv[c2] = r2 ^ pr
    pivots = sorted(piv)
    return BitMatrix(len(pivots), mat.cols, [piv[c] for c in pivots]), pivots


def rank(mat: BitMatrix) -> int:
    return right_rref(mat)[0].rows


def null_space(mat: BitMatrix) -> BitMatrix:
    """Basis of {x : M x^T = 0}, one row per non-pivot column.

    Row for free column f has bit f set plus, on each pivot column j_i, the
    reduced matrix entry V[i, f]; the free columns of the result therefore
    form an identity.
    """
    v, pivots = right_rref(mat)
    pivset = set(pivots)
    out = []
    for f in range(mat.cols):
        if f in pivset:
            continue
        x = 1 << f
        for i, c in enumerate(pivots):
            if (v.row_bits[i] >> f) & 1:
                x |= 1 << c
        out.append(x)
    return BitMatrix(len(out), mat.cols, out)


def row_space_equal(a: BitMatrix, b: BitMatrix) -> bool:
    """True iff the two matrices span the same row space."""
    if a.cols != b.cols:
        raise ValueError("column counts differ")
    ra, pa = right_rref(a)
    rb, pb = right_rref(b)
    return pa == pb and ra.row_bits == rb.row_bits


def gpd(g: BitMatrix) -> tuple[BitMatrix, BitMatrix, BitMatrix, tuple[int, int]]:
    """Generalized Plotkin decomposition of a (2n, k) generator matrix.

    Splits the code at column n into the form

        [[I_k1, 0, Itilde], [0, I_k2, 0]] . [[G1, 0], [G2, G2], [G3, G3]]

    where G2 spans the maximal subcode whose halves are equal, G1 spans the
    space of half-sums, and Itilde stacks a (k1-k3) x k3 zero block over an
    identity.  Returns (G1, G2, G3, (k1, k3)); G1 rows are ordered so that
    the last k3 of them couple to G3.
    """
    if g.cols % 2:
        raise ValueError("generator length must be even")
    half = g.cols // 2
    k = g.rows
    left = g.column_slice(0, half)
    right = g.column_slice(half, g.cols)
    # Track row operations on the half-sum matrix with an augmented identity.
    diff = [(left.row_bits[i] ^ right.row_bits[i]) for i in range(k)]
    combo = [1 << i for i in range(k)]
    piv: dict[int, int] = {}  # pivot col -> index into kept lists
    kept_rows: list[int] = []
    kept_combo: list[int] = []
    zero_combo: list[int] = []
    for r, cmb in zip(diff, combo):
        while r:
            c = r.bit_length() - 1
            if c in piv:
                idx = piv[c]
                r ^= kept_rows[idx]
                cmb ^= kept_combo[idx]
            else:
                piv[c] = len(kept_rows)
                kept_rows.append(r)
                kept_combo.append(cmb)
                break
        else:
            zero_combo.append(cmb)
    k1 = len(kept_rows)
    k2 = len(zero_combo)
    # Rows whose halves agree: the maximal equal-halves subcode.
    g2 = BitMatrix(k2, half, [left.mul_vector_bits(x) for x in zero_combo])
    if rank(g2) != k2:
        raise ValueError("generator rows are linearly dependent")
    # Remaining rows: second halves become G3 candidates; eliminate so that
    # exactly k3 rows keep a nonzero second half.
    rho = [right.mul_vector_bits(x) for x in kept_combo]
    g1_parts = [left.mul_vector_bits(x) ^ r for x, r in zip(kept_combo, rho)]
    rpiv: dict[int, int] = {}
    pivot_rows: list[tuple[int, int]] = []  # (rho, g1) with independent rho
    plain_rows: list[int] = []              # g1 rows with rho eliminated to 0
    for r, g1r in zip(rho, g1_parts):
        while r:
            c = r.bit_length() - 1
            if c in rpiv:
                idx = rpiv[c]
                r ^= pivot_rows[idx][0]
                g1r ^= pivot_rows[idx][1]
            else:
                rpiv[c] = len(pivot_rows)
                pivot_rows.append((r, g1r))
                break
        else:
            plain_rows.append(g1r)
    k3 = len(pivot_rows)
    g1 = BitMatrix(k1, half, plain_rows + [g1r for _, g1r in pivot_rows])
    g3 = BitMatrix(k3, half, [r for r, _ in pivot_rows])
    return g1, g2, g3, (k1, k3)


def gpd_reconstruct(g1: BitMatrix, g2: BitMatrix, g3: BitMatrix,
                    shape: tuple[int, int]) -> BitMatrix:
    """Rebuild the full-length generator from GPD factors."""
    k1, k3 = shape
    half = g2.cols if g2.rows else g1.cols
    rows = []
    for i in range(k1):
        lo = g1.row_bits[i]
        hi = 0
        t = i - (k1 - k3)
        if t >= 0:
            lo ^= g3.row_bits[t]
            hi = g3.row_bits[t]
        rows.append(lo | (hi << half))
    for i in range(g2.rows):
        rows.append(g2.row_bits[i] | (g2.row_bits[i] << half))
    return BitMatrix(k1 + g2.rows, 2 * half, rows)
