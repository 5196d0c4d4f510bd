"""Periodic side-effect modulation (SEM) waveforms.

All prototypes are zero-mean, unit-variance functions of the phase
``phi(n) = 2*pi*n*l/N + theta0`` and are scaled by ``sqrt(variance)``:

    sine         sqrt(2) cos(phi)
    square       sign(cos(phi))
    sawtooth     sqrt(3) (2 frac(phi / 2pi) - 1)          rising ramp
    clipped_sine (max(cos(phi), 0) - 1/pi) / sqrt(1/4 - 1/pi^2)

The sawtooth fundamental leads ``cos(phi)`` by a quarter cycle; the other
three are in phase with it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .ofdm import OfdmConfig

_CLIPPED_STD = math.sqrt(0.25 - 1.0 / math.pi**2)


class Waveform(str, enum.Enum):
    SINE = "sine"
    CLIPPED_SINE = "clipped_sine"
    SAWTOOTH = "sawtooth"
    SQUARE = "square"


# (fundamental amplitude per unit std, fundamental phase offset vs cos(phi))
_FUNDAMENTAL = {
    Waveform.SINE: (math.sqrt(2.0), 0.0),
    Waveform.SQUARE: (4.0 / math.pi, 0.0),
    Waveform.SAWTOOTH: (2.0 * math.sqrt(3.0) / math.pi, math.pi / 2),
    Waveform.CLIPPED_SINE: (0.5 / _CLIPPED_STD, 0.0),
}


@dataclass(frozen=True)
class SemConfig:
    waveform: Waveform = Waveform.SINE
    l: float = 2.56
    variance: float = 0.005
    theta0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "waveform", Waveform(self.waveform))
        if self.variance < 0:
            raise ValueError(f"variance must be >= 0, got {self.variance}")
        if not 0.0 <= self.theta0 < 2 * math.pi:
            object.__setattr__(self, "theta0", wrap_phase(self.theta0))

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)

    @classmethod
    def sine_with_amplitude(cls, amplitude: float, l: float = 2.56, theta0: float = 0.0):
        return cls(Waveform.SINE, l, amplitude**2 / 2.0, theta0)


@dataclass(frozen=True)
class SemGroundTruth:
    a_fund: float
    theta0: float
    l: float


def wrap_phase(theta: float) -> float:
    """Reduce to [0, 2*pi); float modulo can return 2*pi for tiny negatives."""
    theta = theta % (2 * math.pi)
    return 0.0 if theta >= 2 * math.pi else theta


def _check_l(l: float, n: int) -> None:
    if not 0.0 < l < n / 2:
        raise ValueError(f"normalized frequency l={l} outside (0, {n // 2})")


def prototype(waveform: Waveform, phi: np.ndarray) -> np.ndarray:
    waveform = Waveform(waveform)
    if waveform is Waveform.SINE:
        return math.sqrt(2.0) * np.cos(phi)
    if waveform is Waveform.SQUARE:
        return np.sign(np.cos(phi))
    if waveform is Waveform.SAWTOOTH:
        frac = np.mod(phi / (2 * math.pi), 1.0)
        return math.sqrt(3.0) * (2.0 * frac - 1.0)
    return (np.maximum(np.cos(phi), 0.0) - 1.0 / math.pi) / _CLIPPED_STD


def generate(cfg: SemConfig, num_samples: int, n: int, start: int = 0) -> np.ndarray:
    """Samples ``start .. start+num_samples-1`` of the scaled SEM waveform."""
    if num_samples <= 0:
        raise ValueError("num_samples must be positive")
    _check_l(cfg.l, n)
    idx = np.arange(start, start + num_samples, dtype=float)
    phi = 2 * math.pi * idx * cfg.l / n + cfg.theta0
    return cfg.sigma * prototype(cfg.waveform, phi)


def phase_at_symbol(cfg: SemConfig, i: int, ofdm: OfdmConfig) -> float:
    """SEM phase at the first sample of OFDM symbol ``i`` (1-based)."""
    if i < 1:
        raise ValueError("symbol index is 1-based")
    return wrap_phase(cfg.theta0 + 2 * math.pi * cfg.l * (1 + ofdm.n_cp / ofdm.n) * (i - 1))


def fundamental_of(cfg: SemConfig) -> SemGroundTruth:
    gain, offset = _FUNDAMENTAL[cfg.waveform]
    return SemGroundTruth(gain * cfg.sigma, wrap_phase(cfg.theta0 + offset), cfg.l)
