"""SC and list-SC decoding of Arikan-kernel codes with dynamic frozen
symbols, plus an exhaustive maximum-likelihood reference."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _scl
from .binmat import BitMatrix
from .construct import CodeSpec
from .polarize import arikan_transform


@dataclass(frozen=True)
class DecodeResult:
    """One decoding hypothesis.

    ``metric`` is the exact path penalty sum(ln(1 + exp(-(1-2b) llr))) over
    all phases: lower is better, and two hypotheses differ exactly by the
    weighted disagreement with the channel LLR signs.
    """

    info_bits: np.ndarray | None
    u_hat: np.ndarray | None
    codeword: np.ndarray
    metric: float
    list_rank: int


class ListDecoder:
    """Reusable SC / list-SC decoder for one code.

    Holds preallocated per-(n, L) scratch; a single instance must not be
    used from two threads at once, but distinct instances are independent
    and every decode is deterministic.
    """

    def __init__(self, spec: CodeSpec):
        if spec.kernel_kind != "arikan":
            raise ValueError(
                f"SC decoding supports the Arikan kernel, not {spec.kernel_kind!r}")
        self.spec = spec
        cs = spec.constraints
        n = spec.n
        self.n = n
        self.m = spec.m
        self.frozen_flag = np.zeros(n, dtype=np.uint8)
        self.row_of = np.full(n, -1, dtype=np.int32)
        for t, j in enumerate(cs.frozen):
            self.frozen_flag[j] = 1
            self.row_of[j] = t
        per_phase: list[list[int]] = [[] for _ in range(n)]
        for t, j in enumerate(cs.frozen):
            for s in cs.rows.get(j, ()):
                per_phase[s].append(t)
        indptr = np.zeros(n + 1, dtype=np.int64)
        data: list[int] = []
        for s in range(n):
            indptr[s + 1] = indptr[s] + len(per_phase[s])
            data.extend(per_phase[s])
        self.src_indptr = indptr
        self.src_rows = np.array(data, dtype=np.int32)
        self.unfrozen = np.array(cs.unfrozen, dtype=np.intp)
        self._nrows = max(len(cs.frozen), 1)
        self._check_rows = cs.to_matrix().row_bits
        self._ws: dict[int, tuple] = {}

    def _workspace(self, L: int):
        ws = self._ws.get(L)
        if ws is None:
            n, m = self.n, self.m
            nb = (m + 1) * L
            ws = (
                np.empty((nb, n), dtype=np.float64),        # P
                np.zeros((nb, 2 * n), dtype=np.int8),       # C
                np.zeros((m + 1, L), dtype=np.int32),       # path2arr
                np.zeros((m + 1, L), dtype=np.int32),       # refcnt
                np.zeros((m + 1, L), dtype=np.int32),       # free_bank
                np.zeros(m + 1, dtype=np.int32),            # free_top
                np.zeros(L, dtype=np.uint8),                # active
                np.zeros(L, dtype=np.int32),                # free_path
                np.zeros(L, dtype=np.float64),              # metrics
                np.zeros((L, n), dtype=np.int8),            # uh
                np.zeros((L, self._nrows), dtype=np.uint8), # acc
                np.zeros(2 * L, dtype=np.float64),          # pm2
                np.zeros(2 * L, dtype=np.uint8),            # keep
                np.zeros(L, dtype=np.uint8),                # active snapshot
                np.zeros(2 * L, dtype=np.int64),            # sort order
            )
            self._ws[L] = ws
        return ws

    def decode(self, llrs, L: int, verify: bool = True) -> list[DecodeResult]:
        """All surviving paths, best metric first.

        With ``verify`` every returned u_hat is re-checked against the
        freezing system; simulation loops that compare codewords end to end
        may turn this off.
        """
        if L < 1:
            raise ValueError("list size must be >= 1")
        llrs = np.asarray(llrs, dtype=np.float64)
        if llrs.shape != (self.n,):
            raise ValueError(f"expected {self.n} LLRs, got {llrs.shape}")
        ws = self._workspace(L)
        (P, C, path2arr, refcnt, free_bank, free_top, active, free_path,
         metrics, uh, acc, pm2, keep, act_snap, order_buf) = ws
        _scl.scl_run(llrs, self.m, L, self.frozen_flag, self.row_of,
                     self.src_indptr, self.src_rows, P, C, path2arr, refcnt,
                     free_bank, free_top, active, free_path, metrics, uh,
                     acc, pm2, keep, act_snap, order_buf)
        survivors = [pl for pl in range(L) if active[pl]]
        survivors.sort(key=lambda pl: (metrics[pl], pl))
        out = []
        for rank, pl in enumerate(survivors):
            u_hat = uh[pl].astype(np.uint8).copy()
            bank = 0 * L + path2arr[0, pl]
            codeword = C[bank, : self.n].astype(np.uint8).copy()
            if verify:
                u_int = int.from_bytes(
                    np.packbits(u_hat, bitorder="little").tobytes(), "little")
                for row in self._check_rows:
                    if (row & u_int).bit_count() & 1:
                        raise AssertionError(
                            "decoder produced a constraint-violating path")
            out.append(DecodeResult(
                info_bits=u_hat[self.unfrozen].copy(),
                u_hat=u_hat,
                codeword=codeword,
                metric=float(metrics[pl]),
                list_rank=rank,
            ))
        return out


def list_sc_decode(spec: CodeSpec, llrs, L: int) -> list[DecodeResult]:
    """List-SC decode; survivors sorted by metric.  L=1 is plain SC."""
    return ListDecoder(spec).decode(llrs, L)


def sc_decode(spec: CodeSpec, llrs) -> DecodeResult:
    """Successive cancellation: hard decisions (LLR ties resolve to 0) at
    open phases, forced dynamic values at frozen ones."""
    return list_sc_decode(spec, llrs, 1)[0]


def ml_oracle(g: BitMatrix, llrs, max_dimension: int = 20) -> DecodeResult:
    """Exhaustive maximum-likelihood decoding over all 2^k codewords.

    Gray-code enumeration; ties break toward the lexicographically smallest
    codeword.  The reported metric is on the same penalty scale as the list
    decoder's.  u_hat is not defined here (no transform involved).
    """
    k = g.rows
    if k > max_dimension:
        raise ValueError(f"dimension {k} exceeds the ML bound {max_dimension}")
    llrs = np.asarray(llrs, dtype=np.float64)
    n = g.cols
    if llrs.shape != (n,):
        raise ValueError(f"expected {n} LLRs")

    def ones_score(c: int) -> float:
        s = 0.0
        while c:
            low = c & -c
            s += llrs[low.bit_length() - 1]
            c ^= low
        return s

    def lex_key(c: int) -> int:
        r = 0
        for i in range(n):
            r = (r << 1) | ((c >> i) & 1)
        return r

    best_c = 0
    best_msg = 0
    best_s = 0.0
    c = 0
    msg = 0
    for i in range(1, 1 << k):
        low = i & -i
        c ^= g.row_bits[low.bit_length() - 1]
        msg = i ^ (i >> 1)  # Gray code of the step counter
        s = ones_score(c)
        if s < best_s or (s == best_s and c != best_c
                          and lex_key(c) < lex_key(best_c)):
            best_s = s
            best_c = c
            best_msg = msg
    penalty = 0.0
    for i in range(n):
        x = llrs[i] if not (best_c >> i) & 1 else -llrs[i]
        penalty += math.log1p(math.exp(-x)) if x >= 0 else -x + math.log1p(math.exp(x))
    codeword = np.array([(best_c >> i) & 1 for i in range(n)], dtype=np.uint8)
    info = np.array([(best_msg >> i) & 1 for i in range(k)], dtype=np.uint8)
    return DecodeResult(info_bits=info, u_hat=None, codeword=codeword,
                        metric=penalty, list_rank=0)
