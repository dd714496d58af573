#!/usr/bin/env python3
"""Drive the CLI through every figure-style artifact set.

Writes CSV/SVG/JSON outputs under out/figures (override with --out) and a
shared zero cache under the same directory, so a rerun is fast and
byte-identical.
"""

import argparse
import sys
import time

from rzspec.cli import main as rz


def run(label, args):
    t0 = time.perf_counter()
    code = rz(args)
    status = "ok" if code == 0 else f"FAILED({code})"
    print(f"  {label:<16} {status:>10}  {time.perf_counter() - t0:6.1f}s")
    return code


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/figures")
    ap.add_argument("--fast", action="store_true",
                    help="smaller sweeps (quick smoke run)")
    ns = ap.parse_args()
    out = ns.out
    cache = f"{out}/zeros_cache.json"
    common = ["--out", out, "--cache", cache]
    n_mirror = "20000" if ns.fast else "100000"
    psi_grid = "80" if ns.fast else "200"
    t_hi = "40" if ns.fast else "60"

    print(f"writing artifacts to {out}")
    failures = 0
    failures += run("zeros", ["zeros", "--t-max", "60"] + common)
    failures += run("xih", ["xih", "--t-max", t_hi] + common)
    failures += run("polya", ["polya"] + common)
    failures += run("landau", ["landau", "--t-max", "20", "--l-over-ell", "100",
                               "--n-max", psi_grid] + common)
    failures += run("mirror", ["mirror", "--epsilon", "0.1",
                               "--n-max", n_mirror] + common)
    failures += run("perron", ["perron", "--t-min", "20", "--n-max", "50",
                               "--n-zeros", "100"] + common)
    failures += run("mertens", ["mertens", "--n-max", "100",
                                "--n-zeros", "100"] + common)
    failures += run("interferometer", ["interferometer", "--n-max", "30"] + common)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
