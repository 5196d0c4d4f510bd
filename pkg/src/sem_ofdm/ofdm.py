"""ACO-OFDM / DCO-OFDM modem for intensity-modulated links.

Conventions
-----------
* Unitary DFT pair (``norm="ortho"``) on both sides of the link.
* Square M-QAM, per-axis reflected Gray code, unit average symbol energy.
  The first half of each symbol's bits select the in-phase level.
* Level index ``j`` on an axis maps to amplitude ``(sqrt(M) - 1) - 2j`` so
  that an all-zero bit group lands on the positive corner.
* The transmit scale is derived analytically from the Gaussian model of the
  bipolar signal, so it does not depend on the frame content and is known
  to the receiver.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.stats import norm

SUPPORTED_QAM = (4, 16, 64)


class Scheme(str, enum.Enum):
    ACO = "ACO"
    DCO = "DCO"


@dataclass(frozen=True)
class OfdmConfig:
    n: int = 256
    n_cp: int = 0
    scheme: Scheme = Scheme.ACO
    qam_order: int = 16
    bias_db: float | None = None
    bandwidth_hz: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if self.n < 16 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two >= 16, got {self.n}")
        if not 0 <= self.n_cp < self.n:
            raise ValueError(f"n_cp must lie in [0, n), got {self.n_cp}")
        if self.qam_order not in SUPPORTED_QAM:
            raise ValueError(f"qam_order must be one of {SUPPORTED_QAM}, got {self.qam_order}")
        if self.scheme is Scheme.DCO:
            if self.bias_db is None or self.bias_db < 0:
                raise ValueError("DCO requires bias_db >= 0")
        elif self.bias_db is not None:
            raise ValueError("bias_db only applies to DCO")

    @property
    def n_t(self) -> int:
        """Samples per OFDM symbol including the cyclic prefix."""
        return self.n + self.n_cp

    @property
    def alpha(self) -> float:
        return 2.0 if self.scheme is Scheme.ACO else 1.0

    @property
    def mu(self) -> float:
        if self.scheme is not Scheme.DCO:
            return 0.0
        return math.sqrt(10.0 ** (self.bias_db / 10.0) - 1.0)

    @property
    def bits_per_symbol(self) -> int:
        return int(math.log2(self.qam_order))

    @cached_property
    def data_bins(self) -> np.ndarray:
        if self.scheme is Scheme.ACO:
            return np.arange(1, self.n // 2, 2)
        return np.arange(1, self.n // 2)

    @property
    def n_data(self) -> int:
        return len(self.data_bins)

    @property
    def bits_per_ofdm_symbol(self) -> int:
        return self.n_data * self.bits_per_symbol

    @property
    def bits_per_sample(self) -> float:
        """Data bits per transmitted sample (cyclic prefix included)."""
        return self.bits_per_ofdm_symbol / self.n_t

    @property
    def sigma_bipolar(self) -> float:
        """Std of the unclipped time signal for unit-energy symbols."""
        return math.sqrt(2.0 * self.n_data / self.n)

    @property
    def tx_scale(self) -> float:
        """Gain applied after clipping so that the mean intensity is one.

        ACO: E{clip(x)} = sigma/sqrt(2*pi).
        DCO: mean of max(x + mu*sigma, 0) for Gaussian x,
        sigma*(mu*Phi(mu) + phi(mu)).
        """
        sigma = self.sigma_bipolar
        if self.scheme is Scheme.ACO:
            return math.sqrt(2.0 * math.pi) / sigma
        mu = self.mu
        return 1.0 / (sigma * (mu * norm.cdf(mu) + norm.pdf(mu)))

    @property
    def bias(self) -> float:
        """DC bias added before clipping, in unscaled units."""
        return self.mu * self.sigma_bipolar

    def subcarrier_frequency(self, k: int) -> float:
        """Absolute frequency of subcarrier k in Hz (needs bandwidth_hz)."""
        if self.bandwidth_hz is None:
            raise ValueError("bandwidth_hz is not set")
        return k * 2.0 * self.bandwidth_hz / self.n


# ---------------------------------------------------------------------------
# QAM
# ---------------------------------------------------------------------------

def _gray(j: np.ndarray) -> np.ndarray:
    return j ^ (j >> 1)


def _gray_inverse(g: np.ndarray) -> np.ndarray:
    j = g.copy()
    shift = g >> 1
    while np.any(shift):
        j ^= shift
        shift >>= 1
    return j


def _axis(m: int) -> tuple[int, int, float]:
    if m not in SUPPORTED_QAM:
        raise ValueError(f"unsupported QAM order {m}")
    side = math.isqrt(m)
    bits_axis = int(math.log2(side))
    scale = math.sqrt(2.0 * (m - 1) / 3.0)
    return side, bits_axis, scale


def _bits_to_int(bits: np.ndarray) -> np.ndarray:
    weights = 1 << np.arange(bits.shape[-1] - 1, -1, -1)
    return bits @ weights


def _int_to_bits(values: np.ndarray, width: int) -> np.ndarray:
    shifts = np.arange(width - 1, -1, -1)
    return ((values[..., None] >> shifts) & 1).astype(np.uint8)


def qam_map(bits, m: int) -> np.ndarray:
    """Gray-map a flat bit vector onto unit-energy square M-QAM symbols."""
    side, bits_axis, scale = _axis(m)
    bits = np.asarray(bits, dtype=np.int64).ravel()
    k = 2 * bits_axis
    if bits.size % k:
        raise ValueError(f"bit count {bits.size} is not a multiple of log2(M)={k}")
    groups = bits.reshape(-1, k)
    ji = _gray_inverse(_bits_to_int(groups[:, :bits_axis]))
    jq = _gray_inverse(_bits_to_int(groups[:, bits_axis:]))
    top = side - 1
    return ((top - 2 * ji) + 1j * (top - 2 * jq)) / scale


def _slice_axis(v: np.ndarray, side: int) -> np.ndarray:
    # ceil(t - 0.5) rounds ties down, i.e. toward the smaller level index
    t = ((side - 1) - v) / 2.0
    return np.clip(np.ceil(t - 0.5), 0, side - 1).astype(np.int64)


def qam_slice(z: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Nearest-point decision; returns (symbols, bits) with bits shaped (..., log2 M)."""
    side, bits_axis, scale = _axis(m)
    z = np.asarray(z) * scale
    ji = _slice_axis(z.real, side)
    jq = _slice_axis(z.imag, side)
    top = side - 1
    symbols = ((top - 2 * ji) + 1j * (top - 2 * jq)) / scale
    bits = np.concatenate(
        [_int_to_bits(_gray(ji), bits_axis), _int_to_bits(_gray(jq), bits_axis)], axis=-1
    )
    return symbols, bits


def qam_demap(symbols, m: int) -> np.ndarray:
    """Hard-decision demap to a flat bit vector."""
    return qam_slice(symbols, m)[1].reshape(-1)


def constellation(m: int) -> np.ndarray:
    """All M points ordered by constellation index (I level major)."""
    side, bits_axis, _ = _axis(m)
    j = np.arange(m)
    ji, jq = j // side, j % side
    bits = np.concatenate(
        [_int_to_bits(_gray(ji), bits_axis), _int_to_bits(_gray(jq), bits_axis)], axis=-1
    )
    return qam_map(bits.ravel(), m)


# ---------------------------------------------------------------------------
# Framing and modulation
# ---------------------------------------------------------------------------

def build_frame(symbols, cfg: OfdmConfig) -> np.ndarray:
    """Place data symbols on the scheme's subcarriers with Hermitian symmetry.

    Accepts ``(n_data,)`` or ``(num_symbols, n_data)``; returns matching
    ``(..., n)`` complex bins.
    """
    symbols = np.asarray(symbols, dtype=complex)
    if symbols.shape[-1] != cfg.n_data:
        raise ValueError(
            f"{cfg.scheme.value} with n={cfg.n} needs {cfg.n_data} symbols per frame, "
            f"got {symbols.shape[-1]}"
        )
    frame = np.zeros(symbols.shape[:-1] + (cfg.n,), dtype=complex)
    k = cfg.data_bins
    frame[..., k] = symbols
    frame[..., cfg.n - k] = np.conj(symbols)
    return frame


def _bipolar(frame: np.ndarray) -> np.ndarray:
    return np.fft.ifft(frame, axis=-1, norm="ortho").real


def _add_cp(x: np.ndarray, n_cp: int) -> np.ndarray:
    if n_cp == 0:
        return x
    return np.concatenate([x[..., -n_cp:], x], axis=-1)


def aco_modulate(frame, cfg: OfdmConfig) -> np.ndarray:
    """Clip the bipolar ACO signal at zero and scale to unit mean intensity."""
    frame = np.asarray(frame)
    if np.any(np.abs(frame[..., 0::2]) > 0):
        raise ValueError("ACO frame has energy on even subcarriers")
    x = np.maximum(_bipolar(frame), 0.0) * cfg.tx_scale
    return _add_cp(x, cfg.n_cp)


def dco_modulate(frame, cfg: OfdmConfig) -> np.ndarray:
    """Add the DC bias, clip residual negatives, scale to unit mean intensity."""
    if cfg.scheme is not Scheme.DCO or cfg.bias_db is None:
        raise ValueError("dco_modulate needs a DCO config with bias_db set")
    x = np.maximum(_bipolar(np.asarray(frame)) + cfg.bias, 0.0) * cfg.tx_scale
    return _add_cp(x, cfg.n_cp)


def modulate(frame, cfg: OfdmConfig) -> np.ndarray:
    if cfg.scheme is Scheme.ACO:
        return aco_modulate(frame, cfg)
    return dco_modulate(frame, cfg)


def demodulate(received, cfg: OfdmConfig) -> np.ndarray:
    """Strip CPs, FFT each symbol, undo the transmit scale and apply alpha.

    Returns ``(num_symbols, n)`` equalized bins.
    """
    y = np.asarray(received, dtype=float).ravel()
    if y.size % cfg.n_t:
        raise ValueError(f"received length {y.size} is not a multiple of N_T={cfg.n_t}")
    y = y.reshape(-1, cfg.n_t)[:, cfg.n_cp:]
    return np.fft.fft(y, axis=-1, norm="ortho") * (cfg.alpha / cfg.tx_scale)


def decide(frame, cfg: OfdmConfig) -> tuple[np.ndarray, np.ndarray]:
    """Minimum-distance decisions on the data bins.

    Returns ``(symbols, bits)``: symbols shaped ``(..., n_data)``, bits
    flattened in transmission order.
    """
    frame = np.asarray(frame)
    symbols, bits = qam_slice(frame[..., cfg.data_bins], cfg.qam_order)
    return symbols, bits.reshape(-1)


def transmit_bits(bits, cfg: OfdmConfig) -> np.ndarray:
    """Bits -> concatenated time samples for as many symbols as the bits fill."""
    symbols = qam_map(bits, cfg.qam_order).reshape(-1, cfg.n_data)
    return modulate(build_frame(symbols, cfg), cfg).ravel()


def receive_bits(received, cfg: OfdmConfig) -> np.ndarray:
    return decide(demodulate(received, cfg), cfg)[1]
