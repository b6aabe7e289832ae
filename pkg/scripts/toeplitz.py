"""Socle, quotient and conjecture verdict for the Toeplitz quiver and its square."""

import json

from quiverlab import lpa
from quiverlab.fixtures import T
from quiverlab.harness import conjecture_check
from quiverlab.quiver import kronecker_square


def main():
    for q in (T, kronecker_square(T)):
        r = lpa.socle_decomposition(q)
        print(f"{q.name}: socle {r.summands}, quotient {len(r.quotient.vertices)} vertices "
              f"{[(e.src, e.dst) for e in r.quotient.edges]}, GK {lpa.gk_dimension(q)}")
    report = conjecture_check(T)
    print("verdict:", report.verdict)
    print(json.dumps(report.evidence))


if __name__ == "__main__":
    main()
