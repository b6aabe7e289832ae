"""Run every property suite and print a one-line summary per suite."""

import argparse
import time

from quiverlab.harness import SUITES, run_suite

# trial counts the acceptance tests use for these suites
TRIALS = {"shift-equivalence": 50, "line-union-cross": 50, "gk-square": 100}


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=lambda x: int(x, 0), default=20240601)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--suite", action="append", help="restrict to these suites")
    args = p.parse_args()
    failed = 0
    for name in args.suite or sorted(SUITES):
        t0 = time.perf_counter()
        r = run_suite(name, min(args.trials, TRIALS.get(name, args.trials)), args.seed)
        dt = time.perf_counter() - t0
        print(f"{name:<20} {r.passes:>4}/{r.trials:<4} failures={len(r.failures):<3} {dt:6.2f}s")
        for f in r.failures[:3]:
            print("   ", f.to_json())
        failed += bool(r.failures)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
