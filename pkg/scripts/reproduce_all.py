"""Regenerate every figure into results/ (desk scale unless --full-scale)."""

import argparse
import sys

from sem_ofdm.cli import main
from sem_ofdm.figures import FIGURE_IDS

parser = argparse.ArgumentParser()
parser.add_argument("ids", nargs="*", default=list(FIGURE_IDS))
parser.add_argument("--full-scale", action="store_true")
parser.add_argument("--workers", type=int, default=1)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

status = 0
for fig in args.ids:
    argv = ["reproduce", fig, "--out", f"results/{fig}.csv", "--plot",
            "--seed", str(args.seed), "--workers", str(args.workers)]
    if args.full_scale:
        argv.append("--full-scale")
    status |= main(argv)
sys.exit(status)
