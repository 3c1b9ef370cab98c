"""Channel models and the counter-based noise streams used by every simulation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Stand-in for an infinite LLR on unerased BEC symbols: far beyond any metric
# interaction at the block lengths this library targets, still a plain float.
BEC_LLR_SURROGATE = 1000.0


@dataclass(frozen=True)
class ChannelSpec:
    """A memoryless binary-input channel: BEC(eps) or BPSK over AWGN.

    For ``biawgn`` the parameter is Es/N0 in dB (symbol energy 1).
    """

    kind: str  # "bec" | "biawgn"
    param: float

    def __post_init__(self):
        if self.kind == "bec":
            if not 0.0 <= self.param <= 1.0:
                raise ValueError("erasure probability must be in [0, 1]")
        elif self.kind == "biawgn":
            if not math.isfinite(self.param):
                raise ValueError("Es/N0 must be finite")
        else:
            raise ValueError(f"unknown channel kind {self.kind!r}")

    @property
    def noise_sigma(self) -> float:
        """AWGN noise standard deviation for unit-energy BPSK."""
        if self.kind != "biawgn":
            raise ValueError("noise sigma is an AWGN notion")
        es_lin = 10.0 ** (self.param / 10.0)
        return math.sqrt(1.0 / (2.0 * es_lin))

    def es_no_db(self) -> float:
        if self.kind != "biawgn":
            raise ValueError("Es/N0 is an AWGN notion")
        return self.param

    def eb_no_db(self, k: int, n: int) -> float:
        """Rate-aware conversion: Eb/N0 = Es/N0 - 10 log10(k/n) for BPSK."""
        return self.es_no_db() - 10.0 * math.log10(k / n)

    @classmethod
    def from_eb_no_db(cls, eb_no_db: float, k: int, n: int) -> "ChannelSpec":
        return cls("biawgn", eb_no_db + 10.0 * math.log10(k / n))

    def __str__(self) -> str:
        if self.kind == "bec":
            return f"bec(eps={self.param})"
        return f"biawgn(esno_db={self.param})"


def frame_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based stream for one frame: keyed by (seed, index).

    Philox is a counter-based generator, so the stream for a frame does not
    depend on which worker draws it or in what order.
    """
    if seed < 0 or index < 0:
        raise ValueError("seed and frame index must be nonnegative")
    key = np.array([seed, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def channel_llrs(channel: ChannelSpec, codeword, rng: np.random.Generator) -> np.ndarray:
    """Transmit a codeword (BPSK maps bit b to 1 - 2b) and return LLRs.

    AWGN: y = s + N(0, sigma^2), LLR = 2 y / sigma^2 (positive favors 0).
    BEC: erased positions give LLR 0, the rest +-BEC_LLR_SURROGATE.
    """
    bits = np.asarray(codeword, dtype=np.uint8)
    if channel.kind == "biawgn":
        sigma = channel.noise_sigma
        y = (1.0 - 2.0 * bits) + rng.normal(0.0, sigma, size=bits.shape)
        return 2.0 * y / (sigma * sigma)
    erased = rng.random(size=bits.shape) < channel.param
    llrs = (1.0 - 2.0 * bits) * BEC_LLR_SURROGATE
    llrs[erased] = 0.0
    return llrs
