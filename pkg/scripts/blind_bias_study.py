"""Split blind amplitude error into bias and spread across window lengths."""

import argparse

import numpy as np

from sem_ofdm.harness import ExperimentSpec, derive_seed, estimate_once, make_rng
from sem_ofdm.mitigation import MitigationConfig, Mode
from sem_ofdm.ofdm import OfdmConfig
from sem_ofdm.sem import SemConfig

parser = argparse.ArgumentParser()
parser.add_argument("--amplitudes", type=float, nargs="+", default=[0.5, 1.0, 1.5])
parser.add_argument("--windows", type=int, nargs="+", default=[100, 1000])
parser.add_argument("--estimates", type=int, default=200)
parser.add_argument("--ebn0", type=float, default=20.0)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

print("A,L,mode,bias,std,rmse")
for a in args.amplitudes:
    for L in args.windows:
        for mode in (Mode.BLIND, Mode.PILOT):
            spec = ExperimentSpec(OfdmConfig(), SemConfig.sine_with_amplitude(a),
                                  eb_opt_n0_db=args.ebn0, mitigation=MitigationConfig(mode, L))
            rng = make_rng(derive_seed(args.seed, 0))
            err = []
            for _ in range(args.estimates):
                est, truth = estimate_once(spec, rng)
                err.append(est.a_hat - truth.a_fund)
            err = np.asarray(err)
            print(f"{a},{L},{mode.value},{err.mean():.4g},{err.std():.4g},"
                  f"{np.sqrt(np.mean(err**2)):.4g}")
