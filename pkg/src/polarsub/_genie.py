"""Genie-aided SC measurement kernels behind mc_reliability.

Each trial transmits a uniformly random codeword; phase i is decoded with
every earlier transform input forced to its true value, so the error
frequency at i estimates the subchannel error probability P_i.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np
from numba import njit

from ._scl import _f_llr
from .channel import BEC_LLR_SURROGATE, ChannelSpec, frame_rng
from .polarize import arikan_transform

GENIE_BLOCK = 4096


@njit(cache=True)
def _genie_batch(llrs_all, u_all, m, err_counts):
    ntr, n = llrs_all.shape
    P = np.empty((m + 1, n), dtype=np.float64)
    C = np.zeros((m + 1, 2 * n), dtype=np.int8)
    for t in range(ntr):
        for b in range(n):
            P[0, b] = llrs_all[t, b]
        for phi in range(n):
            lam0 = m
            while lam0 > 1 and ((phi >> (m - lam0)) & 1) == 0:
                lam0 -= 1
            for lam in range(lam0, m + 1):
                w = n >> lam
                if ((phi >> (m - lam)) & 1) == 1:
                    for b in range(w):
                        a = P[lam - 1, 2 * b]
                        bb = P[lam - 1, 2 * b + 1]
                        P[lam, b] = bb - a if C[lam, b] else bb + a
                else:
                    for b in range(w):
                        P[lam, b] = _f_llr(P[lam - 1, 2 * b],
                                           P[lam - 1, 2 * b + 1])
            llr = P[m, 0]
            dec = 0 if llr > 0.0 else (1 if llr < 0.0 else 0)
            if dec != u_all[t, phi]:
                err_counts[phi] += 1
            C[m, (phi & 1) * n] = u_all[t, phi]
            if phi & 1:
                lam = m
                ph = phi
                while lam > 0 and (ph & 1) == 1:
                    w = n >> lam
                    br = ((ph >> 1) & 1) * n
                    for b in range(w):
                        C[lam - 1, br + 2 * b] = C[lam, b] ^ C[lam, n + b]
                        C[lam - 1, br + 2 * b + 1] = C[lam, n + b]
                    lam -= 1
                    ph >>= 1


def _block_llrs(channel: ChannelSpec, bits: np.ndarray,
                rng: np.random.Generator) -> np.ndarray:
    symbols = 1.0 - 2.0 * bits
    if channel.kind == "biawgn":
        sigma = channel.noise_sigma
        y = symbols + rng.normal(0.0, sigma, size=bits.shape)
        return 2.0 * y / (sigma * sigma)
    erased = rng.random(size=bits.shape) < channel.param
    llrs = symbols * BEC_LLR_SURROGATE
    llrs[erased] = 0.0
    return llrs


def _arikan_block(args) -> np.ndarray:
    m, channel, seed, block, count = args
    n = 1 << m
    rng = frame_rng(seed, block)
    u = rng.integers(0, 2, size=(count, n), dtype=np.uint8)
    c = arikan_transform(u)
    llrs = _block_llrs(channel, c.astype(np.float64), rng)
    err = np.zeros(n, dtype=np.int64)
    _genie_batch(llrs, u.astype(np.int8), m, err)
    return err


def arikan_genie_errors(m: int, channel: ChannelSpec, trials: int, seed: int,
                        workers: int = 1) -> np.ndarray:
    """Per-phase genie error counts; block-keyed streams keep the result
    independent of worker count."""
    jobs = []
    start = 0
    block = 0
    while start < trials:
        count = min(GENIE_BLOCK, trials - start)
        jobs.append((m, channel, seed, block, count))
        start += count
        block += 1
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_arikan_block, jobs))
    else:
        parts = [_arikan_block(j) for j in jobs]
    return np.sum(parts, axis=0)


# ---------------------------------------------------------------------------
# Nonbinary genie for the Reed-Solomon kernel (measurement only, m <= 2)


def _gf_tables(field):
    q = field.order
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            mul[a, b] = field.multiply(a, b)
    return mul


def _symbol_likelihoods(channel: ChannelSpec, c_syms: np.ndarray, mu: int,
                        rng: np.random.Generator) -> np.ndarray:
    """(trials, positions, q) posterior table from the binary image."""
    ntr, npos = c_syms.shape
    q = 1 << mu
    bits = np.zeros((ntr, npos * mu), dtype=np.uint8)
    for j in range(mu):
        bits[:, j::mu] = (c_syms >> j) & 1
    llrs = _block_llrs(channel, bits.astype(np.float64), rng)
    # p(bit = 1) = 1 / (1 + exp(llr)); clamp for the BEC surrogate
    p1 = 1.0 / (1.0 + np.exp(np.clip(llrs, -60, 60)))
    like = np.ones((ntr, npos, q))
    for v in range(q):
        for j in range(mu):
            pj = p1[:, j::mu] if (v >> j) & 1 else 1.0 - p1[:, j::mu]
            like[:, :, v] *= pj
    like /= like.sum(axis=2, keepdims=True)
    return like


def rs_genie_errors(kernel, m: int, channel: ChannelSpec, trials: int,
                    seed: int, workers: int = 1) -> np.ndarray:
    """Per-phase symbol genie errors for the RS kernel, m in {1, 2}.

    Exact per-phase marginalization over the remaining free symbols; the
    cost grows as q^l, which confines this to the small kernels the
    construction actually measures.
    """
    if m not in (1, 2):
        raise ValueError("RS genie measurement supports m in {1, 2}")
    field = kernel.field
    l = kernel.l
    q = field.order
    mu = field.m
    if l != q:
        raise ValueError("RS genie assumes l = q (full-size kernel)")
    fmat = np.asarray(kernel.matrix, dtype=np.int64)
    mul = _gf_tables(field)
    n = l ** m
    err = np.zeros(n, dtype=np.int64)
    start = 0
    block = 0
    while start < trials:
        count = min(GENIE_BLOCK, trials - start)
        rng = frame_rng(seed, block)
        u = rng.integers(0, q, size=(count, n), dtype=np.int64)
        if m == 1:
            c = np.zeros((count, l), dtype=np.int64)
            for t0 in range(l):
                acc = np.zeros(count, dtype=np.int64)
                for r in range(l):
                    acc ^= mul[u[:, r], fmat[r, t0]]
                c[:, t0] = acc
            like = _symbol_likelihoods(channel, c, mu, rng)
            _rs_genie_inner_block(u, like, None, fmat, mul, q, l, err, 0)
        else:
            # w[b, g] = (u-block b . F)_g ; channel group g = (w[:, g]) . F
            w = np.zeros((count, l, l), dtype=np.int64)
            for b in range(l):
                for g in range(l):
                    acc = np.zeros(count, dtype=np.int64)
                    for r in range(l):
                        acc ^= mul[u[:, l * b + r], fmat[r, g]]
                    w[:, b, g] = acc
            c = np.zeros((count, n), dtype=np.int64)
            for g in range(l):
                for t0 in range(l):
                    acc = np.zeros(count, dtype=np.int64)
                    for b in range(l):
                        acc ^= mul[w[:, b, g], fmat[b, t0]]
                    c[:, g * l + t0] = acc
            like = _symbol_likelihoods(channel, c, mu, rng)
            for b in range(l):
                qtab = _rs_group_tables(like, w, b, fmat, mul, q, l)
                _rs_genie_inner_block(u, qtab, w, fmat, mul, q, l, err, b)
        start += count
        block += 1
    return err


def _enumerate_tuples(q: int, length: int):
    if length == 0:
        yield ()
        return
    for head in range(q):
        for rest in _enumerate_tuples(q, length - 1):
            yield (head,) + rest


def _rs_group_tables(like, w, b, fmat, mul, q, l):
    """q_g(a): likelihood of x_b = a per group, completing x_{b+1..} freely."""
    ntr = like.shape[0]
    qtab = np.zeros((ntr, l, q))
    for g in range(l):
        base = np.zeros(ntr, dtype=np.int64)
        partial = np.zeros((ntr, l), dtype=np.int64)
        for bp in range(b):
            for t0 in range(l):
                partial[:, t0] ^= mul[w[:, bp, g], fmat[bp, t0]]
        for a in range(q):
            for tail in _enumerate_tuples(q, l - 1 - b):
                cg = partial.copy()
                for t0 in range(l):
                    cg[:, t0] ^= mul[a, fmat[b, t0]]
                    for off, xv in enumerate(tail):
                        cg[:, t0] ^= mul[xv, fmat[b + 1 + off, t0]]
                prod = np.ones(ntr)
                for t0 in range(l):
                    prod = prod * like[np.arange(ntr), g * l + t0, cg[:, t0]]
                qtab[:, g, a] += prod
    return qtab


def _rs_genie_inner_block(u, qtab, w, fmat, mul, q, l, err, b):
    """Phase-by-phase genie decisions inside block b using the group tables.

    For m=1 (w is None) the 'groups' are the raw channel positions and qtab
    is the per-position likelihood table.
    """
    ntr = qtab.shape[0]
    ngroups = qtab.shape[1]
    base_phase = l * b
    for r in range(l):
        post = np.zeros((ntr, q))
        for s in range(q):
            for tail in _enumerate_tuples(q, l - 1 - r):
                wg = np.zeros((ntr, ngroups), dtype=np.int64)
                for g in range(ngroups):
                    acc = np.zeros(ntr, dtype=np.int64)
                    for rp in range(r):
                        acc ^= mul[u[:, base_phase + rp], fmat[rp, g]]
                    acc ^= mul[s, fmat[r, g]]
                    for off, xv in enumerate(tail):
                        acc ^= mul[xv, fmat[r + 1 + off, g]]
                    wg[:, g] = acc
                prod = np.ones(ntr)
                for g in range(ngroups):
                    prod = prod * qtab[np.arange(ntr), g, wg[:, g]]
                post[:, s] += prod
        dec = np.argmax(post, axis=1)
        err[base_phase + r] += int(np.sum(dec != u[:, base_phase + r]))
