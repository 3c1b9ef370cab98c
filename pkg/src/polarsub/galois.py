"""GF(2^m) arithmetic with log/antilog tables.

Elements are integers whose bits are polynomial-basis coordinates, so the
element with integer value ``i`` *is* the vector of base-2 digits of ``i``.
Multiplication, inversion and powers run off precomputed exp/log tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .binmat import BitMatrix, rank

# One primitive polynomial per extension degree, coefficient bit i = x^i.
# 2^m appears implicitly as the leading term.  m=4 is x^4+x^3+1 so that the
# 16-element field matches the worked golden constructions in the tests.
DEFAULT_PRIMITIVE_POLY = {
    1: 0b11,                 # x + 1
    2: 0b111,                # x^2 + x + 1
    3: 0b1011,               # x^3 + x + 1
    4: 0b11001,              # x^4 + x^3 + 1
    5: 0b100101,             # x^5 + x^2 + 1
    6: 0b1000011,            # x^6 + x + 1
    7: 0b10001001,           # x^7 + x^3 + 1
    8: 0b100011101,          # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,         # x^9 + x^4 + 1
    10: 0b10000001001,       # x^10 + x^3 + 1
    11: 0b100000000101,      # x^11 + x^2 + 1
    12: 0b1000001010011,     # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,    # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,   # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b11010000000010001, # x^16 + x^15 + x^13 + x^4 + 1
}


class FieldConstructionError(ValueError):
    """Raised when a field cannot be built from the given parameters."""


@dataclass(frozen=True)
class Field:
    """GF(2^m) with exp/log tables generated by the root of prim_poly.

    Immutable after construction; all operations are pure.
    """

    m: int
    prim_poly: int
    exp: tuple[int, ...] = field(repr=False)
    log: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return 1 << self.m

    def multiply(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.exp[(self.order - 1) - self.log[a]]

    def power(self, a: int, e: int) -> int:
        """a**e with the convention 0**0 = 1 (evaluation at locator 0)."""
        if a == 0:
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.order - 1)]

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def alpha_power(self, e: int) -> int:
        return self.exp[e % (self.order - 1)]

    def trace(self, a: int) -> int:
        t = 0
        x = a
        for _ in range(self.m):
            t ^= x
            x = self.multiply(x, x)
        return t & 1


def make_field(m: int, prim_poly: int | None = None) -> Field:
    """Build GF(2^m), verifying the (possibly overridden) polynomial.

    The polynomial must be primitive: the residue class of x must generate
    the full multiplicative group of order 2^m - 1.
    """
    if not 1 <= m <= 16:
        raise FieldConstructionError(f"extension degree {m} outside [1, 16]")
    if prim_poly is None:
        prim_poly = DEFAULT_PRIMITIVE_POLY[m]
    if prim_poly.bit_length() != m + 1:
        raise FieldConstructionError(
            f"polynomial 0b{prim_poly:b} does not have degree {m}")
    order = 1 << m
    exp = [0] * (2 * order)
    log = [0] * order
    x = 1
    for i in range(order - 1):
        if x == 1 and i > 0:
            raise FieldConstructionError(
                f"0b{prim_poly:b} is not primitive: x has order {i} < {order - 1}")
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & order:
            x ^= prim_poly
    if x != 1:
        # x^(2^m - 1) != 1 means the polynomial is not even irreducible.
        raise FieldConstructionError(
            f"0b{prim_poly:b} is not primitive: x^{order - 1} = 0b{x:b} != 1")
    for i in range(order - 1, 2 * order):
        exp[i] = exp[i - (order - 1)]
    return Field(m=m, prim_poly=prim_poly, exp=tuple(exp), log=tuple(log))


@dataclass(frozen=True)
class Coset:
    """Cyclotomic coset mod 2^m - 1: the doubling orbit of its representative."""

    representative: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def cyclotomic_cosets(m: int) -> list[Coset]:
    """Partition {0, .., 2^m - 2} into doubling orbits, sorted by representative."""
    if m < 1:
        raise ValueError("m must be >= 1")
    modulus = (1 << m) - 1
    if modulus == 1:
        return [Coset(0, (0,))]
    seen = [False] * modulus
    out = []
    for t in range(modulus):
        if seen[t]:
            continue
        members = []
        x = t
        while not seen[x]:
            seen[x] = True
            members.append(x)
            x = (x * 2) % modulus
        out.append(Coset(t, tuple(members)))
    return out


def minimal_polynomial(f: Field, coset: Coset) -> int:
    """prod_{j in coset} (x - alpha^j) as a GF(2) coefficient bit-vector."""
    # Multiply out over GF(2^m); the result must collapse to GF(2).
    poly = [1]  # coefficients, poly[i] = coeff of x^i, values in the field
    for j in coset.members:
        root = f.alpha_power(j)
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] ^= c
            nxt[i] ^= f.multiply(c, root)
        poly = nxt
    bits = 0
    for i, c in enumerate(poly):
        if c not in (0, 1):
            raise AssertionError("minimal polynomial has non-binary coefficient")
        bits |= c << i
    return bits


def to_coordinates(f: Field, x: int, basis: tuple[int, ...] | None = None) -> tuple[int, ...]:
    """Coordinates of x over GF(2) in the given basis (polynomial by default)."""
    if basis is None:
        return tuple((x >> j) & 1 for j in range(f.m))
    inv = _basis_inverse(f, tuple(basis))
    coords = 0
    for j in range(f.m):
        if (x >> j) & 1:
            coords ^= inv[j]
    return tuple((coords >> j) & 1 for j in range(f.m))


def from_coordinates(f: Field, coords, basis: tuple[int, ...] | None = None) -> int:
    """Inverse of to_coordinates."""
    if basis is None:
        basis = tuple(1 << j for j in range(f.m))
    x = 0
    for c, b in zip(coords, basis):
        if c & 1:
            x ^= b
    return x


class DependentBasisError(ValueError):
    """Raised when a proposed basis is linearly dependent over GF(2)."""


_BASIS_CACHE: dict[tuple[int, int, tuple[int, ...]], list[int]] = {}


def _basis_inverse(f: Field, basis: tuple[int, ...]) -> list[int]:
    """Columns of the inverse of the basis matrix, packed as ints.

    Entry j maps the polynomial-basis unit vector e_j to coordinates in
    ``basis``; linear independence is checked on first use.
    """
    key = (f.m, f.prim_poly, basis)
    cached = _BASIS_CACHE.get(key)
    if cached is not None:
        return cached
    if len(basis) != f.m:
        raise DependentBasisError(f"basis needs {f.m} elements, got {len(basis)}")
    b = BitMatrix(f.m, f.m, [v & ((1 << f.m) - 1) for v in basis])
    if rank(b) != f.m:
        raise DependentBasisError("basis elements are linearly dependent over GF(2)")
    # Solve B^T c = e_j for every j: x = sum_t c_t beta_t in matrix form.
    # Augment [B | I], reduce; since B is invertible the left block becomes
    # a permutation-free identity after full Gaussian elimination.
    aug = [b.row_bits[i] | (1 << (f.m + i)) for i in range(f.m)]
    for col in range(f.m):
        pivot = next(i for i in range(col, f.m) if (aug[i] >> col) & 1)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for i in range(f.m):
            if i != col and (aug[i] >> col) & 1:
                aug[i] ^= aug[col]
    # Row i of the right block expresses e_i's basis-coordinates... transpose:
    # coordinates c of x satisfy x = sum c_t beta_t, i.e. x's poly coords are
    # B^T c.  aug right block is B^{-1}; column view gives per-unit coords.
    inv_rows = [aug[i] >> f.m for i in range(f.m)]
    # c = B^{-T} x  =>  contribution of poly-coordinate j is column j of B^{-T}
    # = row j of B^{-1}.
    cols = inv_rows
    _BASIS_CACHE[key] = cols
    return cols


def dual_basis(f: Field, basis: tuple[int, ...]) -> tuple[int, ...]:
    """Trace-dual basis {gamma_t}: Tr(gamma_t * beta_s) = [t == s]."""
    m = f.m
    # Gram matrix G[t][s] = Tr(beta_t beta_s) is invertible for a basis.
    g = BitMatrix(m, m, [
        sum(f.trace(f.multiply(basis[t], basis[s])) << s for s in range(m))
        for t in range(m)])
    aug = [g.row_bits[i] | (1 << (m + i)) for i in range(m)]
    for col in range(m):
        pivot = next(i for i in range(col, m) if (aug[i] >> col) & 1)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for i in range(m):
            if i != col and (aug[i] >> col) & 1:
                aug[i] ^= aug[col]
    out = []
    for t in range(m):
        row = aug[t] >> m
        y = 0
        for s in range(m):
            if (row >> s) & 1:
                y ^= basis[s]
        out.append(y)
    return tuple(out)
