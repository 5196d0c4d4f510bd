"""AWGN channel with additive SEM: y = x + s + w."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def noise_sigma(eb_opt_n0_db: float, bits_per_sample: float, p_opt: float = 1.0) -> float:
    """Per-sample noise std for a target optical Eb/N0.

    Uses Eb(opt) = p_opt**2 / R_b with R_b in bits per sample and a
    per-sample noise variance of N0/2.
    """
    if bits_per_sample <= 0:
        raise ValueError(f"bits_per_sample must be positive, got {bits_per_sample}")
    if math.isinf(eb_opt_n0_db) and eb_opt_n0_db > 0:
        return 0.0
    return p_opt / math.sqrt(2.0 * bits_per_sample * 10.0 ** (eb_opt_n0_db / 10.0))


@dataclass(frozen=True)
class ChannelConfig:
    eb_opt_n0_db: float
    bits_per_sample: float = 1.0
    p_opt: float = 1.0

    @property
    def sigma_w(self) -> float:
        return noise_sigma(self.eb_opt_n0_db, self.bits_per_sample, self.p_opt)


def transmit(x, sem, sigma_w: float, rng: np.random.Generator) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    sem = np.asarray(sem, dtype=float)
    if x.shape != sem.shape:
        raise ValueError(f"signal and SEM lengths differ: {x.shape} vs {sem.shape}")
    if sigma_w == 0:
        return x + sem
    return x + sem + rng.normal(0.0, sigma_w, size=x.shape)
