"""Named figure reproductions: each figure is a list of ``(curve, spec)`` pairs.

Desk scale keeps every figure within minutes on one core; ``full_scale``
raises the bit budget tenfold and uses 1000 estimates per RMSE point.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .harness import ExperimentSpec, Stopping, Sweep
from .mitigation import MitigationConfig, Mode
from .ofdm import OfdmConfig, Scheme
from .sem import SemConfig, Waveform

ACO = OfdmConfig()
DCO7 = OfdmConfig(scheme=Scheme.DCO, bias_db=7.0)
DCO13 = OfdmConfig(scheme=Scheme.DCO, bias_db=13.0)

WAVEFORMS = (Waveform.SINE, Waveform.CLIPPED_SINE, Waveform.SAWTOOTH, Waveform.SQUARE)

EBN0_ACO = tuple(range(0, 17, 2))
EBN0_DCO7 = tuple(range(10, 29, 2))
EBN0_DCO13 = tuple(range(14, 33, 2))
VARIANCES = (0.0005, 0.001, 0.0015, 0.002, 0.003, 0.005, 0.007, 0.01)
FREQUENCIES = tuple(float(v) for v in np.round(np.arange(0.1, 6.01, 0.1), 10))
WINDOWS = (100, 200, 500, 1000, 2000, 5000, 10000)

# operating points where BER sits near 1e-4 without SEM
ANCHOR_ACO_DB = 10.0
ANCHOR_DCO7_DB = 21.0


def _stopping(full: bool) -> Stopping:
    if full:
        return Stopping(min_bits=10**7, min_errors=500, max_bits=10**8)
    return Stopping(min_bits=10**6, min_errors=100, max_bits=10**7)


def _ebn0_waveforms(ofdm, axis, full):
    curves = [("awgn", ExperimentSpec(ofdm, SemConfig(variance=0.0), axis=axis))]
    curves += [
        (w.value, ExperimentSpec(ofdm, SemConfig(w, variance=0.005), axis=axis)) for w in WAVEFORMS
    ]
    return curves


def _variance_sweep(ofdm, eb, modes, full):
    curves = []
    for w in WAVEFORMS:
        for mode in modes:
            spec = ExperimentSpec(
                ofdm,
                SemConfig(w),
                eb_opt_n0_db=eb,
                mitigation=MitigationConfig(mode=mode),
                sweep=Sweep.SEM_VARIANCE,
                axis=VARIANCES,
            )
            name = w.value if len(modes) == 1 else f"{w.value}_{mode.value}"
            curves.append((name, spec))
    return curves


def _frequency_sweep(full):
    return [
        (
            name,
            ExperimentSpec(ofdm, SemConfig(variance=0.005), eb_opt_n0_db=eb,
                           sweep=Sweep.SEM_FREQUENCY, axis=FREQUENCIES),
        )
        for name, ofdm, eb in (("aco", ACO, ANCHOR_ACO_DB), ("dco7", DCO7, ANCHOR_DCO7_DB))
    ]


def _rmse(mode, by_snr, full):
    mit = MitigationConfig(mode=mode)
    curves = []
    if by_snr:
        for eb in (0.0, 5.0, 20.0):
            spec = ExperimentSpec(ACO, SemConfig.sine_with_amplitude(1.0), eb_opt_n0_db=eb,
                                  mitigation=mit, sweep=Sweep.RMSE_VS_L, axis=WINDOWS)
            curves.append((f"snr{eb:g}dB", spec))
    else:
        for amp in (0.5, 1.0, 1.5):
            spec = ExperimentSpec(ACO, SemConfig.sine_with_amplitude(amp), eb_opt_n0_db=20.0,
                                  mitigation=mit, sweep=Sweep.RMSE_VS_L, axis=WINDOWS)
            curves.append((f"A{amp:g}", spec))
    return curves


def _mitigated_ebn0(ofdm, axis, waveform, full):
    sem = SemConfig(waveform, variance=0.01)
    curves = [("awgn", ExperimentSpec(ofdm, SemConfig(variance=0.0), axis=axis))]
    for mode in (Mode.NONE, Mode.BLIND, Mode.PILOT):
        spec = ExperimentSpec(ofdm, sem, mitigation=MitigationConfig(mode=mode), axis=axis)
        curves.append((mode.value, spec))
    return curves


def _unknown_frequency(full):
    sem = SemConfig(Waveform.SINE, variance=0.01)
    curves = [("none", ExperimentSpec(ACO, sem, axis=EBN0_ACO))]
    for mode in (Mode.BLIND, Mode.PILOT):
        for known in (True, False):
            mit = MitigationConfig(mode=mode, frequency_known=known)
            name = f"{mode.value}_{'known' if known else 'estimated'}"
            curves.append((name, ExperimentSpec(ACO, sem, mitigation=mit, axis=EBN0_ACO)))
    return curves


_BUILDERS = {
    "fig2": lambda f: _ebn0_waveforms(ACO, EBN0_ACO, f),
    "fig3a": lambda f: _ebn0_waveforms(DCO7, EBN0_DCO7, f),
    "fig3b": lambda f: _ebn0_waveforms(DCO13, EBN0_DCO13, f),
    "fig4a": lambda f: _variance_sweep(ACO, ANCHOR_ACO_DB, (Mode.NONE,), f),
    "fig4b": lambda f: _variance_sweep(DCO7, ANCHOR_DCO7_DB, (Mode.NONE,), f),
    "fig5": _frequency_sweep,
    "fig7a": lambda f: _rmse(Mode.BLIND, True, f),
    "fig7b": lambda f: _rmse(Mode.BLIND, False, f),
    "fig8a": lambda f: _rmse(Mode.PILOT, True, f),
    "fig8b": lambda f: _rmse(Mode.PILOT, False, f),
    "fig11a": lambda f: _variance_sweep(ACO, ANCHOR_ACO_DB, (Mode.NONE, Mode.PILOT), f),
    "fig11b": lambda f: _variance_sweep(DCO7, ANCHOR_DCO7_DB, (Mode.NONE, Mode.PILOT), f),
    "fig12": _unknown_frequency,
}
for _suffix, _w in zip("abcd", WAVEFORMS):
    _BUILDERS[f"fig9{_suffix}"] = lambda f, w=_w: _mitigated_ebn0(ACO, EBN0_ACO, w, f)
    _BUILDERS[f"fig10{_suffix}"] = lambda f, w=_w: _mitigated_ebn0(DCO7, EBN0_DCO7, w, f)

FIGURE_IDS = tuple(sorted(_BUILDERS, key=lambda s: (int(s[3:].rstrip("abcd")), s)))


def figure(fig_id: str, full_scale: bool = False) -> list[tuple[str, ExperimentSpec]]:
    if fig_id not in _BUILDERS:
        raise KeyError(f"unknown figure id {fig_id!r}; choose from {', '.join(FIGURE_IDS)}")
    curves = _BUILDERS[fig_id](full_scale)
    stop = _stopping(full_scale)
    estimates = 1000 if full_scale else 200
    return [(name, replace(spec, stopping=stop, estimates=estimates)) for name, spec in curves]
