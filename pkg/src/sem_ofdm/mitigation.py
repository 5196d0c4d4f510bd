"""Least-squares estimation and cancellation of the SEM fundamental.

Two receivers share the same estimator:

* blind (decision-directed): detect, remodulate the decisions, fit a
  sinusoid to ``y - x_hat``, subtract it and detect again;
* pilot-assisted: fit a sinusoid to ``y_p - x_p`` over a known block and
  apply the phase-extrapolated estimate to the data that follows.

Sample indices are global within a window so the fitted phase refers to the
first sample of the window.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import ofdm as _ofdm
from .ofdm import OfdmConfig
from .sem import wrap_phase


class MitigationError(ValueError):
    pass


class DegenerateFrequency(MitigationError):
    pass


class FrequencyAtEdge(MitigationError):
    pass


class Mode(str, enum.Enum):
    NONE = "none"
    BLIND = "blind"
    PILOT = "pilot"


@dataclass(frozen=True)
class MitigationConfig:
    mode: Mode = Mode.NONE
    window_symbols: int = 1000
    frequency_known: bool = True
    freq_iterations: int = 2

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.window_symbols < 1:
            raise ValueError("window_symbols must be >= 1")
        if self.freq_iterations < 1:
            raise ValueError("freq_iterations must be >= 1")


@dataclass(frozen=True)
class SinusoidEstimate:
    a_hat: float
    theta_hat: float
    l_hat: float
    coeffs: tuple[float, float]

    @classmethod
    def from_coeffs(cls, a1: float, a2: float, l_hat: float) -> "SinusoidEstimate":
        a_hat = math.hypot(a1, a2)
        theta = wrap_phase(math.atan2(a2, a1)) if a_hat > 0 else 0.0
        return cls(a_hat, theta, l_hat, (a1, a2))

    def samples(self, num_samples: int, n: int, start: int = 0) -> np.ndarray:
        idx = np.arange(start, start + num_samples, dtype=float)
        return self.a_hat * np.cos(2 * math.pi * idx * self.l_hat / n + self.theta_hat)


def regenerate(decisions, cfg: OfdmConfig) -> np.ndarray:
    """Remodulate decided symbols (``(L, n_data)``) into a flat sample vector."""
    decisions = np.atleast_2d(np.asarray(decisions))
    return _ofdm.modulate(_ofdm.build_frame(decisions, cfg), cfg).ravel()


def residual(y, x_hat) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    x_hat = np.asarray(x_hat, dtype=float)
    if y.shape != x_hat.shape:
        raise ValueError(f"length mismatch: {y.shape} vs {x_hat.shape}")
    return y - x_hat


def ls_fit(res, l: float, n: int) -> SinusoidEstimate:
    """Fit ``a1 cos(2 pi k l/n) - a2 sin(2 pi k l/n)`` over k = 0..len-1."""
    res = np.asarray(res, dtype=float)
    if res.size < 2:
        raise ValueError("residual needs at least two samples")
    phase = 2 * math.pi * np.arange(res.size) * l / n
    c, s = np.cos(phase), -np.sin(phase)
    gtg = np.array([[c @ c, c @ s], [c @ s, s @ s]])
    det = gtg[0, 0] * gtg[1, 1] - gtg[0, 1] ** 2
    if det < 1e-9 * res.size**2:
        raise DegenerateFrequency(f"normal equations singular at l={l}")
    gty = np.array([c @ res, s @ res])
    a1, a2 = np.linalg.solve(gtg, gty)
    return SinusoidEstimate.from_coeffs(float(a1), float(a2), float(l))


def subtract_fundamental(y, est: SinusoidEstimate, n: int, start: int = 0) -> np.ndarray:
    """Remove the estimated fundamental; ``start`` is the index of y[0] in the fit frame."""
    y = np.asarray(y, dtype=float)
    if est.a_hat == 0:
        return y.copy()
    return y - est.samples(y.size, n, start)


def estimate_frequency(res, q: int, n: int) -> float:
    """Interpolated-DFT frequency estimate, returned in cycles per n samples.

    Coarse DFT peak, then ``q`` refinements from the two half-bin-offset
    Fourier coefficients around the current estimate.
    """
    res = np.asarray(res, dtype=float)
    total = res.size
    if total < 64:
        raise ValueError("frequency estimation needs at least 64 samples")
    spectrum = np.abs(np.fft.rfft(res))
    m = int(np.argmax(spectrum))
    if m == 0 or 2 * m >= total:
        raise FrequencyAtEdge(f"spectral peak at edge bin {m}")
    idx = np.arange(total)
    delta = 0.0
    for _ in range(q):
        x_plus = res @ np.exp(-2j * math.pi * (m + delta + 0.5) * idx / total)
        x_minus = res @ np.exp(-2j * math.pi * (m + delta - 0.5) * idx / total)
        delta += 0.5 * ((x_plus + x_minus) / (x_plus - x_minus)).real
    return (m + delta) * n / total


def _fit(res, l: float | None, cfg: OfdmConfig, mit: MitigationConfig) -> SinusoidEstimate:
    if not mit.frequency_known or l is None:
        l = estimate_frequency(res, mit.freq_iterations, cfg.n)
    return ls_fit(res, l, cfg.n)


def blind_estimate(y, cfg: OfdmConfig, mit: MitigationConfig, l: float | None = None):
    """Decision-directed estimate over a received window of whole symbols."""
    y = np.asarray(y, dtype=float)
    decisions, _ = _ofdm.decide(_ofdm.demodulate(y, cfg), cfg)
    res = residual(y, regenerate(decisions, cfg))
    return _fit(res, l, cfg, mit)


def blind_mitigate(y, cfg: OfdmConfig, mit: MitigationConfig, l: float | None = None):
    """Return ``(y_tilde, estimate)``; on estimator failure y is returned untouched."""
    y = np.asarray(y, dtype=float)
    if y.size != mit.window_symbols * cfg.n_t:
        raise ValueError(
            f"window holds {y.size} samples, expected {mit.window_symbols} x {cfg.n_t}"
        )
    try:
        est = blind_estimate(y, cfg, mit, l)
    except MitigationError:
        return y.copy(), None
    return subtract_fundamental(y, est, cfg.n), est


def pilot_mitigate(y_p, x_p, cfg: OfdmConfig, mit: MitigationConfig, l: float | None = None):
    """Estimate the fundamental from a known pilot block."""
    res = residual(y_p, x_p)
    return _fit(res, l, cfg, mit)
