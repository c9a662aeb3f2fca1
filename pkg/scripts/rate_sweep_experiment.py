#!/usr/bin/env python3
"""Outage versus target rate for every preset, analytic and Monte Carlo.

Writes one CSV per (preset, source power) under results/.  Plot outage on a
log scale against sweep_value to see the familiar rate curves:
decode-and-forward below amplify-and-forward, both improving with power.
"""

import pathlib
import sys

from fdrelay.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "results"


def run(samples="1000000", seed="42"):
    OUT.mkdir(exist_ok=True)
    for preset in ("rayleigh", "weibull", "nakagami"):
        for power in ("1", "10"):
            dest = OUT / f"rate_sweep_{preset}_p{power}.csv"
            code = main([
                "--preset", preset, "--mode", "both", "--method", "both",
                "--rate-sweep", "0.5:6:0.5", "--power", power,
                "--samples", samples, "--seed", seed, "--out", str(dest)])
            if code != 0:
                return code
            print(f"wrote {dest}")
    return 0


if __name__ == "__main__":
    sys.exit(run(*sys.argv[1:]))
