"""Numba kernels for successive-cancellation list decoding.

Implements the lazy-copy (reference-counted bank) list decoder in the LLR
domain.  Banks for level ``lam`` hold the partial LLRs / partial sums of the
length n >> lam stage; paths share banks until one of them writes.

Conventions (must match the encoder): c = u . B . F2^(x)m, so the first
codeword half carries u_even + u_odd and the second u_odd.  The f step is
the exact soft-XOR 2 atanh(tanh(a/2) tanh(b/2)) evaluated in a stable form,
the g step is b + (1-2u) a, and the path metric accumulates the exact
penalty ln(1 + exp(-(1-2b) llr)).
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _f_llr(a, b):
    if np.isinf(a) or np.isinf(b):
        if a == 0.0 or b == 0.0:
            return 0.0
        t = min(abs(a), abs(b))
        return -t if (a < 0.0) != (b < 0.0) else t
    t = min(abs(a), abs(b))
    if (a < 0.0) != (b < 0.0):
        t = -t
    # correction term underflows past 40 (exp(-40) ~ 4e-18, below any
    # double-precision decision relevance)
    s = abs(a + b)
    d = abs(a - b)
    if s >= 40.0 and d >= 40.0:
        return t
    return t + np.log((1.0 + np.exp(-s)) / (1.0 + np.exp(-d)))


@njit(cache=True, inline="always")
def _penalty(llr, bit):
    x = -llr if bit else llr
    if x >= 0.0:
        return np.log1p(np.exp(-x))
    return -x + np.log1p(np.exp(x))


@njit(cache=True, inline="always")
def _write_bank(lam, pl, n, L, P, C, path2arr, refcnt, free_bank, free_top,
                copy_p):
    """Private bank for (level, path); copy-on-write when shared.

    ``copy_p`` is False when the caller is about to overwrite the whole P
    slice anyway (the LLR recursion), saving the dead copy.
    """
    s = path2arr[lam, pl]
    if refcnt[lam, s] == 1:
        return s
    top = free_top[lam] - 1
    s2 = free_bank[lam, top]
    free_top[lam] = top
    w = n >> lam
    src = lam * L + s
    dst = lam * L + s2
    if copy_p:
        for b in range(w):
            P[dst, b] = P[src, b]
    for b in range(w):
        C[dst, b] = C[src, b]
        C[dst, n + b] = C[src, n + b]
    refcnt[lam, s] -= 1
    refcnt[lam, s2] = 1
    path2arr[lam, pl] = s2
    return s2


@njit(cache=True, inline="always")
def _stable_argsort(vals, order, count):
    """Insertion argsort of vals[:count] into order[:count]; stable."""
    for i in range(count):
        key = vals[i]
        j = i - 1
        while j >= 0 and vals[order[j]] > key:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = i
    return order


@njit(cache=True, inline="always")
def _kill_path(pl, m, active, free_path, fp_top, path2arr, refcnt,
               free_bank, free_top):
    active[pl] = 0
    free_path[fp_top[0]] = pl
    fp_top[0] += 1
    for lam in range(m + 1):
        s = path2arr[lam, pl]
        refcnt[lam, s] -= 1
        if refcnt[lam, s] == 0:
            free_bank[lam, free_top[lam]] = s
            free_top[lam] += 1


@njit(cache=True, inline="always")
def _clone_path(src, m, phase, active, free_path, fp_top, path2arr, refcnt,
                metrics, uh, acc):
    dst = free_path[fp_top[0] - 1]
    fp_top[0] -= 1
    active[dst] = 1
    metrics[dst] = metrics[src]
    for lam in range(m + 1):
        s = path2arr[lam, src]
        path2arr[lam, dst] = s
        refcnt[lam, s] += 1
    uh[dst, :phase] = uh[src, :phase]
    acc[dst, :] = acc[src, :]
    return dst


@njit(cache=True)
def scl_run(llrs, m, L, frozen_flag, row_of, src_indptr, src_rows,
            P, C, path2arr, refcnt, free_bank, free_top, active,
            free_path, metrics, uh, acc, pm2, keep, act_snap, order_buf):
    """One list decode; returns the number of surviving paths.

    Outputs: uh rows of surviving paths hold the input-vector estimates,
    C level-0 banks the codewords, metrics the exact path penalties.  The
    caller extracts them via path2arr / active.
    """
    n = llrs.shape[0]
    nlev = m + 1

    # reset state
    for lam in range(nlev):
        for s in range(L):
            free_bank[lam, s] = L - 1 - s
            refcnt[lam, s] = 0
        free_top[lam] = L
    for pl in range(L):
        free_path[pl] = L - 1 - pl
        active[pl] = 0
    fp_top = np.empty(1, dtype=np.int32)
    fp_top[0] = L
    acc[:, :] = 0

    # initial path
    p0 = free_path[fp_top[0] - 1]
    fp_top[0] -= 1
    active[p0] = 1
    metrics[p0] = 0.0
    for lam in range(nlev):
        s = free_bank[lam, free_top[lam] - 1]
        free_top[lam] -= 1
        path2arr[lam, p0] = s
        refcnt[lam, s] = 1
    base0 = 0 * L + path2arr[0, p0]
    for b in range(n):
        C[base0, b] = 0
        C[base0, n + b] = 0

    for phi in range(n):
        # --- LLR recursion: levels lam0..m, g at lam0 when its phase is odd
        lam0 = m
        while lam0 > 1 and ((phi >> (m - lam0)) & 1) == 0:
            lam0 -= 1
        for lam in range(lam0, nlev):
            w = n >> lam
            g_step = ((phi >> (m - lam)) & 1) == 1
            for pl in range(L):
                if not active[pl]:
                    continue
                sw = _write_bank(lam, pl, n, L, P, C, path2arr, refcnt,
                                 free_bank, free_top, False)
                dst = lam * L + sw
                if lam == 1:
                    if g_step:
                        for b in range(w):
                            a = llrs[2 * b]
                            bb = llrs[2 * b + 1]
                            P[dst, b] = bb - a if C[dst, b] else bb + a
                    else:
                        for b in range(w):
                            P[dst, b] = _f_llr(llrs[2 * b], llrs[2 * b + 1])
                else:
                    src = (lam - 1) * L + path2arr[lam - 1, pl]
                    if g_step:
                        for b in range(w):
                            a = P[src, 2 * b]
                            bb = P[src, 2 * b + 1]
                            P[dst, b] = bb - a if C[dst, b] else bb + a
                    else:
                        for b in range(w):
                            P[dst, b] = _f_llr(P[src, 2 * b], P[src, 2 * b + 1])

        branch = (phi & 1) * n
        if frozen_flag[phi]:
            t = row_of[phi]
            for pl in range(L):
                if not active[pl]:
                    continue
                sm = _write_bank(m, pl, n, L, P, C, path2arr, refcnt,
                                 free_bank, free_top, True)
                llr = P[m * L + sm, 0]
                bit = acc[pl, t]
                C[m * L + sm, branch] = bit
                metrics[pl] += _penalty(llr, bit)
                uh[pl, phi] = bit
        else:
            # fork every path on both bit values, keep the best L by metric;
            # ties resolve by flat index (path, then bit 0 before bit 1)
            nact = 0
            for pl in range(L):
                act_snap[pl] = active[pl]
                if active[pl]:
                    llr = P[m * L + path2arr[m, pl], 0]
                    pm2[2 * pl] = metrics[pl] + _penalty(llr, 0)
                    pm2[2 * pl + 1] = metrics[pl] + _penalty(llr, 1)
                    nact += 1
                else:
                    pm2[2 * pl] = np.inf
                    pm2[2 * pl + 1] = np.inf
            rho = min(L, 2 * nact)
            _stable_argsort(pm2, order_buf, 2 * L)
            for i in range(2 * L):
                keep[i] = 0
            kept = 0
            pos = 0
            while kept < rho:
                idx = order_buf[pos]
                pos += 1
                if act_snap[idx >> 1]:
                    keep[idx] = 1
                    kept += 1
            for pl in range(L):
                if active[pl] and keep[2 * pl] == 0 and keep[2 * pl + 1] == 0:
                    _kill_path(pl, m, active, free_path, fp_top, path2arr,
                               refcnt, free_bank, free_top)
            for pl in range(L):
                if keep[2 * pl] == 0 and keep[2 * pl + 1] == 0:
                    continue
                if not (keep[2 * pl] and keep[2 * pl + 1]):
                    bit = 0 if keep[2 * pl] else 1
                    sm = _write_bank(m, pl, n, L, P, C, path2arr, refcnt,
                                     free_bank, free_top, True)
                    C[m * L + sm, branch] = bit
                    metrics[pl] = pm2[2 * pl + bit]
                    uh[pl, phi] = bit
                else:
                    pl2 = _clone_path(pl, m, phi, active, free_path, fp_top,
                                      path2arr, refcnt, metrics, uh, acc)
                    sm = _write_bank(m, pl, n, L, P, C, path2arr, refcnt,
                                     free_bank, free_top, True)
                    C[m * L + sm, branch] = 0
                    metrics[pl] = pm2[2 * pl]
                    uh[pl, phi] = 0
                    sm2 = _write_bank(m, pl2, n, L, P, C, path2arr, refcnt,
                                      free_bank, free_top, True)
                    C[m * L + sm2, branch] = 1
                    metrics[pl2] = pm2[2 * pl + 1]
                    uh[pl2, phi] = 1

        # fold the decided bit into the pending dynamic-frozen parities
        lo = src_indptr[phi]
        hi = src_indptr[phi + 1]
        if hi > lo:
            for pl in range(L):
                if active[pl] and uh[pl, phi]:
                    for ptr in range(lo, hi):
                        acc[pl, src_rows[ptr]] ^= 1

        # --- partial-sum propagation on odd phases
        if phi & 1:
            lam = m
            ph = phi
            while lam > 0 and (ph & 1) == 1:
                w = n >> lam
                br = ((ph >> 1) & 1) * n
                for pl in range(L):
                    if not active[pl]:
                        continue
                    hi_bank = lam * L + path2arr[lam, pl]
                    lo_bank = (lam - 1) * L + _write_bank(
                        lam - 1, pl, n, L, P, C, path2arr, refcnt,
                        free_bank, free_top, lam > 1)
                    for b in range(w):
                        C[lo_bank, br + 2 * b] = C[hi_bank, b] ^ C[hi_bank, n + b]
                        C[lo_bank, br + 2 * b + 1] = C[hi_bank, n + b]
                lam -= 1
                ph >>= 1

    nact = 0
    for pl in range(L):
        if active[pl]:
            nact += 1
    return nact
