"""Polar subcode construction: extra freezes on unreliable subchannels,
precoder computation, outer-constraint stacking and the frozen-weight census."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .binmat import BitMatrix, null_space
from .galois import cyclotomic_cosets
from .parentcodes import ParentCode
from .polarize import (ConstraintSystem, Kernel, ReliabilityProfile,
                       constraints_from_matrix, derive_constraints, make_kernel)


@dataclass(frozen=True)
class CodeSpec:
    """Complete, serializable definition of a polar (sub)code."""

    n: int
    k: int
    kernel_kind: str
    l: int
    m: int
    constraints: ConstraintSystem
    parent_label: str = ""
    channel_label: str = ""

    def __post_init__(self):
        if self.l ** self.m != self.n:
            raise ValueError(f"{self.l}^{self.m} != {self.n}")
        if self.constraints.n != self.n:
            raise ValueError("constraint system length mismatch")
        if self.k != self.n - len(self.constraints.frozen):
            raise ValueError("k != n - |frozen|")

    def kernel(self) -> Kernel:
        return make_kernel(self.kernel_kind, self.l)


def _worst_unfrozen(cs: ConstraintSystem, profile: ReliabilityProfile,
                    count: int) -> list[int]:
    """The ``count`` unfrozen indices with largest profile values.

    Z and P profiles rank identically (P = Z/2 on the BEC).  Ties freeze the
    smaller index first.
    """
    open_positions = cs.unfrozen
    vals = profile.values
    ranked = sorted(open_positions, key=lambda i: (-vals[i], i))
    return sorted(ranked[:count])


def build_polar_subcode(parent_cs: ConstraintSystem, profile: ReliabilityProfile,
                        k: int, *, kernel_kind: str = "arikan", l: int = 2,
                        parent_label: str = "") -> CodeSpec:
    """Freeze the k'-k least reliable open subchannels of a parent system.

    The result inherits the parent's membership constraints, hence its
    minimum distance as a lower bound.
    """
    if profile.n != parent_cs.n:
        raise ValueError("profile length != code length")
    k_parent = parent_cs.k
    if k > k_parent:
        raise ValueError(f"target dimension {k} exceeds parent dimension {k_parent}")
    extra = _worst_unfrozen(parent_cs, profile, k_parent - k)
    mat = parent_cs.to_matrix()
    add = BitMatrix(len(extra), parent_cs.n, [1 << s for s in extra])
    cs = constraints_from_matrix(mat.vstack(add))
    n = parent_cs.n
    m = round(math.log(n, l))
    return CodeSpec(n=n, k=k, kernel_kind=kernel_kind, l=l, m=m,
                    constraints=cs, parent_label=parent_label,
                    channel_label=profile.channel)


def build_classical_polar(n: int, k: int, profile: ReliabilityProfile,
                          label: str = "") -> CodeSpec:
    """Classical polar code: statically freeze the n-k worst subchannels."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if profile.n != n:
        raise ValueError("profile length != code length")
    empty = ConstraintSystem(n=n, frozen=())
    frozen = _worst_unfrozen(empty, profile, n - k)
    cs = ConstraintSystem(n=n, frozen=tuple(frozen),
                          rows={j: () for j in frozen})
    return CodeSpec(n=n, k=k, kernel_kind="arikan", l=2, m=n.bit_length() - 1,
                    constraints=cs, parent_label=label or "polar",
                    channel_label=profile.channel)


def precoder_matrix(cs: ConstraintSystem) -> BitMatrix:
    """k x n matrix W with W V^T = 0, systematic on the unfrozen columns.

    Row t has a 1 on the t-th unfrozen position and zeros on every other
    unfrozen position, so x W places x directly on the open subchannels and
    fills each frozen position with its dynamic value.
    """
    return null_space(cs.to_matrix())


def stack_outer_constraints(parent_cs: ConstraintSystem,
                            outer: list[ConstraintSystem]) -> ConstraintSystem:
    """Add per-block outer-code constraints to a parent system.

    ``outer`` holds one length-2^s system per block of 2^s consecutive input
    symbols (blocks cover the length exactly); the stack of the parent rows
    with the block-diagonal outer rows is re-canonicalized.
    """
    n = parent_cs.n
    if not outer:
        raise ValueError("need at least one outer block")
    s_len = outer[0].n
    if any(o.n != s_len for o in outer):
        raise ValueError("outer systems must share one block length")
    if s_len * len(outer) != n:
        raise ValueError(
            f"{len(outer)} blocks of {s_len} do not cover length {n}")
    rows = list(parent_cs.to_matrix().row_bits)
    for b, o in enumerate(outer):
        shift = b * s_len
        rows.extend(r << shift for r in o.to_matrix().row_bits)
    return constraints_from_matrix(BitMatrix(len(rows), n, rows))


def theorem2_census(parent: ParentCode, kernel: Kernel, m: int) -> dict:
    """Frozen-index weight census of an EBCH parent versus its prediction.

    Predicted count at weight t: the total size of the cyclotomic cosets
    whose representative s < d-1 has wt(s) = t.  Returns observed and
    predicted count vectors plus a match flag.
    """
    if not parent.label.startswith("ebch"):
        raise ValueError("census applies to EBCH parents in standard digit order")
    if kernel.kind != "arikan":
        raise ValueError("census applies to the Arikan transform")
    cs = derive_constraints(parent, kernel, m)
    observed = [0] * (m + 1)
    for j in cs.frozen:
        observed[j.bit_count()] += 1
    predicted = [0] * (m + 1)
    for coset in cyclotomic_cosets(m):
        if coset.representative < parent.design_d - 1:
            predicted[coset.representative.bit_count()] += coset.size
    return {
        "observed": observed,
        "predicted": predicted,
        "match": observed == predicted,
        "frozen": cs.frozen,
    }
