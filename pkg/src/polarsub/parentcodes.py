"""Parent-code builders: EBCH check matrices, RM frozen sets, CRC constraints,
generator derivation and brute-force minimum distance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .binmat import BitMatrix, null_space, rank, right_rref
from .galois import Field, from_coordinates, to_coordinates
from .polarize import ConstraintSystem


@dataclass(frozen=True)
class ParentCode:
    """An (n, k) binary code given by a full-rank check matrix."""

    n: int
    k: int
    design_d: int
    H: BitMatrix
    label: str = ""

    def contains(self, codeword_bits: int) -> bool:
        return all((r & codeword_bits).bit_count() % 2 == 0 for r in self.H.row_bits)


def ebch_check_matrix(field: Field, d: int,
                      basis: tuple[int, ...] | None = None) -> ParentCode:
    """Extended primitive narrow-sense BCH code in standard digit order.

    Locator of position i is sum_j X_{i,j} beta_j for the base-2 digits X of
    i; with the default polynomial basis the locator of position i is simply
    the field element with integer representation i.  Power-sum checks
    sum_i c_i x_i^j = 0 for 0 <= j < d-1 expand into m binary rows each via
    the coordinate functionals of the basis (the trace pairing with its dual
    basis); the result is reduced to full rank.
    """
    m = field.m
    n = 1 << m
    if not 2 <= d <= n:
        raise ValueError(f"design distance {d} outside [2, {n}]")
    if basis is None:
        locators = list(range(n))
        coord_rows = None
    else:
        basis = tuple(basis)
        locators = [from_coordinates(field, [(i >> j) & 1 for j in range(m)], basis)
                    for i in range(n)]
        coord_rows = basis
    rows = []
    for j in range(d - 1):
        vals = [field.power(x, j) for x in locators]
        for t in range(m):
            r = 0
            for i, v in enumerate(vals):
                if coord_rows is None:
                    bit = (v >> t) & 1
                else:
                    bit = to_coordinates(field, v, coord_rows)[t]
                if bit:
                    r |= 1 << i
            rows.append(r)
    h, _ = right_rref(BitMatrix(len(rows), n, rows))
    return ParentCode(n=n, k=n - h.rows, design_d=d, H=h,
                      label=f"ebch(m={m},d={d})")


def rm_frozen_set(r: int, m: int) -> tuple[int, ...]:
    """Frozen indices of the order-(m-r-1) Reed-Muller code: wt(i) <= r."""
    if not 0 <= r <= m:
        raise ValueError(f"weight bound {r} outside [0, {m}]")
    return tuple(i for i in range(1 << m) if i.bit_count() <= r)


def generator_from_checks(h: BitMatrix) -> BitMatrix:
    """Generator matrix as a null-space basis of the checks."""
    return null_space(h)


def crc_constraint_rows(base: ConstraintSystem, crc_poly: int) -> ConstraintSystem:
    """Re-express a polar+CRC code in dynamic-frozen form.

    ``base`` is the constraint system of an (n, k+c) code whose non-frozen
    positions carry message then CRC; the CRC symbols occupy the last c
    non-frozen indices in natural order (c = degree of ``crc_poly``) and each
    becomes a dynamic row equal to the CRC parity of the message positions.
    """
    c = crc_poly.bit_length() - 1
    if c < 0 or crc_poly == 0:
        raise ValueError("CRC polynomial must be nonzero")
    open_positions = base.unfrozen
    if c >= len(open_positions):
        raise ValueError(
            f"{c} CRC symbols do not fit in {len(open_positions)} open positions")
    if c == 0:
        return base
    msg_pos = open_positions[:-c]
    crc_pos = open_positions[-c:]
    rows = dict(base.rows)
    # Column j of the systematic CRC map: remainder of x^(c + j') mod g.
    kmsg = len(msg_pos)
    frozen = list(base.frozen)
    crc_cols = []
    for j in range(kmsg):
        # message polynomial bit j (message index 0 = highest-degree term)
        rem = _crc_remainder(1 << (kmsg - 1 - j), kmsg, crc_poly)
        crc_cols.append(rem)
    for t in range(c):
        # CRC bit t = coefficient of x^(c-1-t) of the remainder
        srcs = tuple(msg_pos[j] for j in range(kmsg)
                     if (crc_cols[j] >> (c - 1 - t)) & 1)
        rows[crc_pos[t]] = srcs
        frozen.append(crc_pos[t])
    return ConstraintSystem(n=base.n, frozen=tuple(sorted(frozen)), rows=rows)


def crc_remainder_bits(message_bits, crc_poly: int) -> int:
    """CRC register after shifting the message through: (msg . x^c) mod g."""
    msg = 0
    bits = list(message_bits)
    for b in bits:
        msg = (msg << 1) | (int(b) & 1)
    return _crc_remainder(msg, len(bits), crc_poly)


def _crc_remainder(msg: int, msg_len: int, crc_poly: int) -> int:
    c = crc_poly.bit_length() - 1
    reg = msg << c
    for pos in range(msg_len + c - 1, c - 1, -1):
        if (reg >> pos) & 1:
            reg ^= crc_poly << (pos - c)
    return reg & ((1 << c) - 1)


def min_distance_bruteforce(g: BitMatrix, max_dimension: int = 26) -> int:
    """Minimum nonzero codeword weight by Gray-code enumeration.

    One generator-row XOR per codeword; refuses dimensions above
    ``max_dimension`` (2^k enumerations).
    """
    k = g.rows
    if k == 0:
        raise ValueError("the zero code has no nonzero codeword")
    if k > max_dimension:
        raise ValueError(
            f"dimension {k} exceeds the brute-force bound {max_dimension} "
            f"(2^{k} codewords)")
    rows = g.row_bits
    best = rows[0].bit_count() if rows[0] else g.cols
    c = 0
    for i in range(1, 1 << k):
        c ^= rows[(i & -i).bit_length() - 1]
        w = c.bit_count()
        if 0 < w < best:
            best = w
    return best
