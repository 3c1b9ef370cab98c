"""Monte Carlo frame-error-rate measurement.

Every frame's randomness comes from a stream keyed by (seed, frame index),
so a report is bit-identical for a fixed seed no matter how many workers
share the frames.  Stop conditions are evaluated on fixed-size frame blocks,
which keeps the stopping point itself scheduling-independent.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import ChannelSpec, channel_llrs, frame_rng
from .construct import CodeSpec, precoder_matrix
from .decode import ListDecoder
from .polarize import arikan_transform

FRAME_BLOCK = 1024
ROUND_BLOCKS = 8  # stop conditions are checked every ROUND_BLOCKS blocks
DEFAULT_MAX_FRAMES = 1_000_000
DEFAULT_TARGET_ERRORS = 100


@dataclass(frozen=True)
class SimReport:
    """One (code, decoder, channel point) measurement."""

    code: str
    decoder: str
    channel: ChannelSpec
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float
    ci_lo: float
    ci_hi: float
    seed: int
    seconds: float

    def csv_row(self) -> str:
        return ",".join([
            self.code, self.decoder, self.channel.kind,
            repr(self.channel.param), str(self.frames),
            str(self.frame_errors), repr(self.fer),
            repr(self.ci_lo), repr(self.ci_hi), str(self.seed),
            f"{self.seconds:.3f}",
        ])

    @staticmethod
    def csv_header() -> str:
        return ("code,decoder,channel_kind,param_db_or_eps,frames,"
                "frame_errors,fer,ci_lo,ci_hi,seed,seconds")


def wilson_interval(errors: int, frames: int, z: float = 1.959964) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if frames == 0:
        return (0.0, 1.0)
    p = errors / frames
    z2 = z * z
    denom = 1.0 + z2 / frames
    center = (p + z2 / (2 * frames)) / denom
    half = z * math.sqrt(p * (1 - p) / frames + z2 / (4 * frames * frames)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


# Per-process simulation state (set up once per worker).
_WORKER: dict = {}


def _init_worker(spec: CodeSpec, list_size: int, channel: ChannelSpec, seed: int):
    _WORKER["decoder"] = ListDecoder(spec)
    _WORKER["precoder"] = precoder_matrix(spec.constraints).to_array()
    _WORKER["L"] = list_size
    _WORKER["channel"] = channel
    _WORKER["seed"] = seed


def _run_block(args: tuple[int, int]) -> tuple[int, int]:
    start, count = args
    decoder: ListDecoder = _WORKER["decoder"]
    w = _WORKER["precoder"]
    list_size = _WORKER["L"]
    channel = _WORKER["channel"]
    seed = _WORKER["seed"]
    k = w.shape[0]
    frame_errors = 0
    bit_errors = 0
    for f in range(start, start + count):
        rng = frame_rng(seed, f)
        x = rng.integers(0, 2, size=k, dtype=np.uint8)
        picked = w[x == 1]
        u = np.bitwise_xor.reduce(picked, axis=0) if picked.shape[0] else \
            np.zeros(w.shape[1], dtype=np.uint8)
        c = arikan_transform(u)
        llrs = channel_llrs(channel, c, rng)
        best = decoder.decode(llrs, list_size, verify=False)[0]
        if not np.array_equal(best.codeword, c):
            frame_errors += 1
            bit_errors += int(np.sum(best.info_bits != x))
    return frame_errors, bit_errors


def run_fer(spec: CodeSpec, decoder: str, channel: ChannelSpec, *,
            seed: int, max_frames: int = DEFAULT_MAX_FRAMES,
            target_frame_errors: int = DEFAULT_TARGET_ERRORS,
            workers: int = 1, code_label: str | None = None) -> SimReport:
    """Measure FER for a code under ``decoder`` ("sc" or "list:L").

    Frames are processed in rounds of ROUND_BLOCKS x FRAME_BLOCK; the run
    stops after the first round at which the cumulative frame errors reach
    the target, or at max_frames, whichever comes first.  The schedule is a
    pure function of (seed, max_frames, target), so the report does not
    depend on the worker count.
    """
    if decoder == "sc":
        list_size = 1
    elif decoder.startswith("list:"):
        list_size = int(decoder.split(":", 1)[1])
        if list_size < 1:
            raise ValueError("list size must be >= 1")
    else:
        raise ValueError(f"unknown decoder {decoder!r} (use 'sc' or 'list:L')")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    t0 = time.perf_counter()
    frames = 0
    frame_errors = 0
    bit_errors = 0
    pool = None
    try:
        if workers > 1:
            pool = ProcessPoolExecutor(
                max_workers=workers, initializer=_init_worker,
                initargs=(spec, list_size, channel, seed))
        else:
            _init_worker(spec, list_size, channel, seed)
        while frames < max_frames and frame_errors < target_frame_errors:
            blocks = []
            cursor = frames
            for _ in range(ROUND_BLOCKS):
                if cursor >= max_frames:
                    break
                count = min(FRAME_BLOCK, max_frames - cursor)
                blocks.append((cursor, count))
                cursor += count
            if pool is not None:
                results = list(pool.map(_run_block, blocks))
            else:
                results = [_run_block(b) for b in blocks]
            for fe, be in results:
                frame_errors += fe
                bit_errors += be
            frames = cursor
    finally:
        if pool is not None:
            pool.shutdown()
    lo, hi = wilson_interval(frame_errors, frames)
    return SimReport(
        code=code_label or f"({spec.n},{spec.k})", decoder=decoder,
        channel=channel, frames=frames, frame_errors=frame_errors,
        bit_errors=bit_errors, fer=frame_errors / frames if frames else 0.0,
        ci_lo=lo, ci_hi=hi, seed=seed, seconds=time.perf_counter() - t0)
