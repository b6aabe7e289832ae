"""The small named quivers every test and experiment starts from."""

from __future__ import annotations

import json
from pathlib import Path

from .quiver import OutSplitPartition, Quiver, kronecker_square, quiver

A2 = quiver("A2", ["v1", "v2"], [("e", "v1", "v2")])

LINE3 = quiver("LINE3", ["v1", "v2", "v3"], [("e1", "v1", "v2"), ("e2", "v2", "v3")])

CONV3 = quiver("CONV3", ["v1", "v2", "v3"], [("e1", "v1", "v2"), ("e2", "v3", "v2")])

# u is the sink, h an exit-free loop at w
E = quiver("E", ["v", "u", "w"], [("f", "v", "u"), ("g", "v", "w"), ("h", "w", "w")])

EPRIME = quiver("EPRIME", ["v1", "v2", "u", "w1"],
                [("f", "v1", "u"), ("g1", "v2", "w1"), ("h1", "w1", "w1")])

# v's out-edges split into {f} and {g}
E_PARTITION = OutSplitPartition({"v": (("f",), ("g",)), "w": (("h",),)})

# Toeplitz quiver: a loop with one exit
T = quiver("T", ["u", "v"], [("c", "u", "u"), ("f", "u", "v")])

ROSE2 = quiver("ROSE2", ["v"], [("e1", "v", "v"), ("e2", "v", "v")])

HAZ1 = quiver("HAZ1", ["v1", "v2", "v3", "v4", "v5"],
              [("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v4", "v3"), ("e4", "v5", "v4")])

HAZ2 = quiver("HAZ2", ["v1", "v2", "v3", "v4", "v5"],
              [("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v4", "v2"), ("e4", "v5", "v3")])

ALL: dict[str, Quiver] = {
    q.name: q for q in (A2, LINE3, CONV3, E, EPRIME, T, ROSE2, HAZ1, HAZ2)
}


def rose(n: int, name: str | None = None) -> Quiver:
    return quiver(name or f"ROSE{n}", ["v"], [(f"e{i}", "v", "v") for i in range(1, n + 1)])


def loop() -> Quiver:
    return quiver("LOOP", ["v"], [("c", "v", "v")])


def write_fixtures(directory: str | Path) -> list[Path]:
    """Writes X.json and X.hat.json (the Kronecker square) for every fixture."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for name, q in ALL.items():
        for suffix, obj in (("", q), (".hat", kronecker_square(q))):
            path = d / f"{name}{suffix}.json"
            path.write_text(json.dumps(obj.to_json(), indent=2) + "\n")
            written.append(path)
    return written
