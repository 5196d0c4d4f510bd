"""Deterministic Monte-Carlo runners for BER and estimator-RMSE sweeps.

Every sweep point owns a Philox stream keyed by a 64-bit BLAKE2b digest of
``(master_seed, point_index)``; the stream is consumed strictly in window
order, so a row depends only on the experiment and its seed, never on scheduling.
"""

from __future__ import annotations

import dataclasses
import enum
import hashlib
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from . import ofdm as _ofdm
from .channel import noise_sigma, transmit
from .mitigation import (
    MitigationConfig,
    MitigationError,
    Mode,
    blind_mitigate,
    pilot_mitigate,
    blind_estimate,
    subtract_fundamental,
)
from .ofdm import OfdmConfig, Scheme
from .sem import SemConfig, Waveform, fundamental_of, generate

log = logging.getLogger(__name__)

RNG_FAMILY = "philox"


class Sweep(str, enum.Enum):
    EBN0 = "ebn0"
    SEM_VARIANCE = "sem_variance"
    SEM_FREQUENCY = "sem_frequency"
    RMSE_VS_L = "rmse_vs_l"


@dataclass(frozen=True)
class Stopping:
    min_bits: int = 10**6
    min_errors: int = 100
    max_bits: int = 10**7

    def __post_init__(self):
        if self.min_bits < 10**4:
            raise ValueError("min_bits must be >= 1e4")
        if self.max_bits < self.min_bits:
            raise ValueError("max_bits must be >= min_bits")


@dataclass(frozen=True)
class ExperimentSpec:
    ofdm: OfdmConfig = field(default_factory=OfdmConfig)
    sem: SemConfig = field(default_factory=SemConfig)
    eb_opt_n0_db: float = 10.0
    mitigation: MitigationConfig = field(default_factory=MitigationConfig)
    sweep: Sweep = Sweep.EBN0
    axis: tuple[float, ...] = ()
    stopping: Stopping = field(default_factory=Stopping)
    master_seed: int = 0
    estimates: int = 200
    # pilot mode: data symbols following each L-symbol pilot block (0 -> L)
    data_symbols: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sweep", Sweep(self.sweep))
        object.__setattr__(self, "axis", tuple(float(v) for v in self.axis))
        if any(b <= a for a, b in zip(self.axis, self.axis[1:])):
            raise ValueError("axis values must be strictly increasing")
        if self.sweep is Sweep.RMSE_VS_L and self.mitigation.mode is Mode.NONE:
            raise ValueError("RMSE sweeps need blind or pilot mitigation")

    def at(self, value: float) -> "ExperimentSpec":
        """Copy with the sweep variable set to ``value``."""
        if self.sweep is Sweep.EBN0:
            return replace(self, eb_opt_n0_db=value)
        if self.sweep is Sweep.SEM_VARIANCE:
            return replace(self, sem=replace(self.sem, variance=value))
        if self.sweep is Sweep.SEM_FREQUENCY:
            return replace(self, sem=replace(self.sem, l=value))
        return replace(self, mitigation=replace(self.mitigation, window_symbols=int(value)))

    @property
    def sigma_w(self) -> float:
        return noise_sigma(self.eb_opt_n0_db, self.ofdm.bits_per_sample)

    def to_dict(self) -> dict[str, Any]:
        def plain(v):
            if isinstance(v, enum.Enum):
                return v.value
            if isinstance(v, tuple):
                return [plain(x) for x in v]
            return v

        out: dict[str, Any] = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if dataclasses.is_dataclass(v):
                out[f.name] = {
                    k.name: plain(getattr(v, k.name))
                    for k in dataclasses.fields(v)
                    if getattr(v, k.name) is not None
                }
            else:
                out[f.name] = plain(v)
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any], base: "ExperimentSpec | None" = None):
        """Build a spec from nested config data, overlaying ``base``."""
        base = base or cls()
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs: dict[str, Any] = {}
        for name, value in data.items():
            current = getattr(base, name)
            if dataclasses.is_dataclass(current):
                if not isinstance(value, dict):
                    raise ValueError(f"[{name}] must be a table")
                fields_ = {f.name for f in dataclasses.fields(current)}
                bad = set(value) - fields_
                if bad:
                    raise ValueError(f"unknown keys in [{name}]: {sorted(bad)}")
                merged = {f: getattr(current, f) for f in fields_}
                merged.update(value)
                if name == "ofdm" and Scheme(merged["scheme"]) is Scheme.ACO:
                    merged["bias_db"] = None
                kwargs[name] = type(current)(**merged)
            else:
                kwargs[name] = value
        return replace(base, **kwargs)


@dataclass(frozen=True)
class Row:
    axis: float
    errors: int = 0
    bits: int = 0
    ber: float = math.nan
    rmse_amp: float = math.nan
    rmse_phase: float = math.nan
    seed: int = 0
    estimates: int = 0
    truncated: bool = False


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[Row, ...]
    spec: ExperimentSpec
    name: str = ""


def derive_seed(master_seed: int, index: int) -> int:
    digest = hashlib.blake2b(
        f"{master_seed}:{index}".encode(), digest_size=8
    ).digest()
    return int.from_bytes(digest, "little")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


# ---------------------------------------------------------------------------
# BER
# ---------------------------------------------------------------------------

def _random_symbols(rng, cfg: OfdmConfig, num_symbols: int):
    bits = rng.integers(0, 2, size=num_symbols * cfg.bits_per_ofdm_symbol, dtype=np.uint8)
    symbols = _ofdm.qam_map(bits, cfg.qam_order).reshape(num_symbols, cfg.n_data)
    return bits, symbols


def _sem_for_window(spec: ExperimentSpec, rng, num_samples: int) -> np.ndarray:
    theta0 = rng.uniform(0.0, 2 * math.pi)
    if spec.sem.variance == 0:
        return np.zeros(num_samples)
    return generate(replace(spec.sem, theta0=theta0), num_samples, spec.ofdm.n)


def _known_l(spec: ExperimentSpec) -> float | None:
    return spec.sem.l if spec.mitigation.frequency_known else None


def simulate_window(spec: ExperimentSpec, rng: np.random.Generator) -> tuple[int, int]:
    """One window of transmission and detection; returns (bit errors, bits)."""
    cfg, mit = spec.ofdm, spec.mitigation
    L = mit.window_symbols
    if mit.mode is Mode.PILOT:
        n_data = spec.data_symbols or L
        total = L + n_data
    else:
        n_data = total = L

    bits, symbols = _random_symbols(rng, cfg, total)
    x = _ofdm.modulate(_ofdm.build_frame(symbols, cfg), cfg).ravel()
    sem = _sem_for_window(spec, rng, x.size)
    y = transmit(x, sem, spec.sigma_w, rng)

    if mit.mode is Mode.NONE:
        detected = _ofdm.receive_bits(y, cfg)
    elif mit.mode is Mode.BLIND:
        y_tilde, _ = blind_mitigate(y, cfg, mit, _known_l(spec))
        detected = _ofdm.receive_bits(y_tilde, cfg)
    else:
        split = L * cfg.n_t
        y_data = y[split:]
        try:
            est = pilot_mitigate(y[:split], x[:split], cfg, mit, _known_l(spec))
            y_data = subtract_fundamental(y_data, est, cfg.n, start=split)
        except MitigationError:
            pass
        detected = _ofdm.receive_bits(y_data, cfg)
        bits = bits[L * cfg.bits_per_ofdm_symbol:]

    return int(np.count_nonzero(detected != bits)), int(bits.size)


def run_ber_point(spec: ExperimentSpec, axis_value: float, seed: int) -> Row:
    point = spec.at(axis_value)
    stop = point.stopping
    rng = make_rng(seed)
    errors = bits = 0
    while True:
        e, b = simulate_window(point, rng)
        errors += e
        bits += b
        if bits >= stop.min_bits and errors >= stop.min_errors:
            truncated = False
            break
        if bits >= stop.max_bits:
            truncated = errors < stop.min_errors
            break
    if truncated:
        log.warning("BER point %s truncated at %d bits with %d errors", axis_value, bits, errors)
    return Row(axis_value, errors, bits, errors / bits, seed=seed, truncated=truncated)


# ---------------------------------------------------------------------------
# Estimator RMSE
# ---------------------------------------------------------------------------

def _wrap(angle: float) -> float:
    return (angle + math.pi) % (2 * math.pi) - math.pi


def estimate_once(spec: ExperimentSpec, rng: np.random.Generator):
    """Draw one window and return (estimate, ground truth)."""
    cfg, mit = spec.ofdm, spec.mitigation
    _, symbols = _random_symbols(rng, cfg, mit.window_symbols)
    x = _ofdm.modulate(_ofdm.build_frame(symbols, cfg), cfg).ravel()
    sem_cfg = replace(spec.sem, theta0=rng.uniform(0.0, 2 * math.pi))
    y = transmit(x, generate(sem_cfg, x.size, cfg.n), spec.sigma_w, rng)
    if mit.mode is Mode.BLIND:
        est = blind_estimate(y, cfg, mit, _known_l(spec))
    else:
        est = pilot_mitigate(y, x, cfg, mit, _known_l(spec))
    return est, fundamental_of(sem_cfg)


def run_rmse_point(spec: ExperimentSpec, axis_value: float, seed: int) -> Row:
    point = spec.at(axis_value)
    rng = make_rng(seed)
    amp_err = np.empty(point.estimates)
    phase_err = np.empty(point.estimates)
    for i in range(point.estimates):
        est, truth = estimate_once(point, rng)
        amp_err[i] = est.a_hat - truth.a_fund
        phase_err[i] = _wrap(est.theta_hat - truth.theta0)
    return Row(
        axis_value,
        rmse_amp=float(np.sqrt(np.mean(amp_err**2))),
        rmse_phase=float(np.sqrt(np.mean(phase_err**2))),
        seed=seed,
        estimates=point.estimates,
    )


def run_point(spec: ExperimentSpec, index: int) -> Row:
    value = spec.axis[index]
    seed = derive_seed(spec.master_seed, index)
    if spec.sweep is Sweep.RMSE_VS_L:
        row = run_rmse_point(spec, value, seed)
        log.info("axis=%g rmse_amp=%.4g rmse_phase=%.4g", value, row.rmse_amp, row.rmse_phase)
    else:
        row = run_ber_point(spec, value, seed)
        log.info("axis=%g ber=%.4g (%d/%d)", value, row.ber, row.errors, row.bits)
    return row


def run_sweep(spec: ExperimentSpec, workers: int = 1, name: str = "") -> SweepResult:
    indices = range(len(spec.axis))
    if workers <= 1:
        rows = [run_point(spec, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda i: run_point(spec, i), indices))
    return SweepResult(tuple(rows), spec, name)


__all__ = [
    "ExperimentSpec",
    "Row",
    "Stopping",
    "Sweep",
    "SweepResult",
    "Waveform",
    "derive_seed",
    "make_rng",
    "run_ber_point",
    "run_point",
    "run_rmse_point",
    "run_sweep",
    "simulate_window",
]
