"""Seeded random quivers, the socle-quotient conjecture check, and property suites.

Randomness: each trial gets a 64-bit sub-seed from SplitMix64 applied to
(suite seed, trial index), and that sub-seed seeds Python's MT19937. Trials
are therefore independent of execution order.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field, replace
from typing import Callable

from . import analysis as an
from . import lpa
from .fixtures import E
from .ktheory import (
    IntMatrix,
    k0_group,
    lift_shift_equivalence,
    verify_shift_equivalence,
    witness_from_factors,
)
from .quiver import (
    Quiver,
    adjacency_matrix,
    free_separator,
    kronecker_product,
    kronecker_square,
    quiver,
    quiver_from_matrix,
    quiver_isomorphic,
    remove_vertices,
    ISOMORPHISM_VERTEX_CAP,
)

PRNG_NAME = "MT19937 seeded by SplitMix64(seed, trial)"
MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

CLASSES = ("acyclic", "noExitCycle", "noSink", "lineUnion", "arbitrary", "disjointCycles")


def splitmix64(x: int) -> int:
    z = (x + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def sub_seed(seed: int, index: int) -> int:
    return splitmix64((seed & MASK64) ^ splitmix64(index))


# -- generators -----------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    cls: str = "arbitrary"
    min_vertices: int = 1
    max_vertices: int = 6
    edge_prob: float = 0.3
    max_cycle_len: int = 3

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise ValueError(f"unknown generator class {self.cls!r}; expected one of {CLASSES}")
        if not 1 <= self.min_vertices <= self.max_vertices:
            raise ValueError("need 1 <= min_vertices <= max_vertices")


class _Builder:
    def __init__(self):
        self.vertices: list[str] = []
        self.edges: list[tuple[str, str, str]] = []

    def vertex(self) -> str:
        v = f"v{len(self.vertices)}"
        self.vertices.append(v)
        return v

    def edge(self, a: str, b: str):
        self.edges.append((f"e{len(self.edges)}", a, b))

    def build(self, name: str) -> Quiver:
        return quiver(name, self.vertices, self.edges)


def _multiplicity(rng: random.Random) -> int:
    return 2 if rng.random() < 0.15 else 1


def _dag(rng: random.Random, b: _Builder, n: int, p: float) -> list[str]:
    vs = [b.vertex() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                for _ in range(_multiplicity(rng)):
                    b.edge(vs[i], vs[j])
    return vs


def random_quiver(cfg: GeneratorConfig) -> Quiver:
    rng = random.Random(cfg.seed)
    n = rng.randint(cfg.min_vertices, cfg.max_vertices)
    b = _Builder()
    p = cfg.edge_prob
    if cfg.cls == "acyclic":
        _dag(rng, b, n, p)
    elif cfg.cls in ("arbitrary", "noSink"):
        vs = [b.vertex() for _ in range(n)]
        for x in vs:
            for y in vs:
                if rng.random() < (p / 2 if x == y else p):
                    for _ in range(_multiplicity(rng)):
                        b.edge(x, y)
        if cfg.cls == "noSink":
            has_out = {s for _, s, _ in b.edges}
            for x in vs:
                if x not in has_out:
                    b.edge(x, rng.choice(vs))
    elif cfg.cls == "noExitCycle":
        vs = _dag(rng, b, n, p)
        has_out = {s for _, s, _ in b.edges}
        for s in [x for x in vs if x not in has_out]:
            if rng.random() < 0.5:
                ring = [s] + [b.vertex() for _ in range(rng.randint(1, cfg.max_cycle_len) - 1)]
                for i, x in enumerate(ring):
                    b.edge(x, ring[(i + 1) % len(ring)])
                # extra edges into the cycle never create an exit
                for x in vs:
                    if x in has_out and rng.random() < p / 2:
                        b.edge(x, rng.choice(ring))
    elif cfg.cls == "lineUnion":
        for _ in range(rng.randint(1, 3)):
            line = [b.vertex() for _ in range(rng.randint(1, 4))]
            for x, y in zip(line, line[1:]):
                b.edge(x, y)
    elif cfg.cls == "disjointCycles":
        nodes = []
        for _ in range(n):
            if rng.random() < 0.5:
                ring = [b.vertex() for _ in range(rng.randint(1, cfg.max_cycle_len))]
                for i, x in enumerate(ring):
                    b.edge(x, ring[(i + 1) % len(ring)])
                nodes.append(ring)
            else:
                nodes.append([b.vertex()])
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                if rng.random() < p:
                    b.edge(rng.choice(nodes[i]), rng.choice(nodes[j]))
    return b.build(f"{cfg.cls}#{cfg.seed:016x}")


def random_relabel(q: Quiver, rng: random.Random, name: str | None = None) -> Quiver:
    """Renames and reorders vertices and edges; the result is isomorphic to q."""
    vs = list(q.vertices)
    rng.shuffle(vs)
    vmap = {v: f"r{i}" for i, v in enumerate(vs)}
    es = [e.name for e in q.edges]
    rng.shuffle(es)
    emap = {e: f"x{i}" for i, e in enumerate(es)}
    order = [vmap[v] for v in vs]
    return q.relabel(vmap, emap, name=name or f"{q.name}~", vertex_order=order)


# -- the conjecture check -----------------------------------------------------------

VERDICTS = ("StrongPass", "DecompositionPass", "EvidencePass", "Fail", "Inconclusive")
PATH_PREFIX = 8


def path_growth(q: Quiver, upto: int = PATH_PREFIX) -> list[int]:
    """Total number of paths of each length 0..upto."""
    level = {v: 1 for v in q.vertices}
    out = []
    for _ in range(upto + 1):
        out.append(sum(level.values()))
        nxt = {v: 0 for v in q.vertices}
        for e in q.edges:
            nxt[e.dst] += level[e.src]
        level = nxt
    return out


@dataclass
class ConjectureReport:
    quiver: Quiver
    h: frozenset[str]
    h_hat: frozenset[str]
    g1: Quiver
    g2: Quiver
    square: Quiver
    verdict: str
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        sq_order = {v: i for i, v in enumerate(self.square.vertices)}
        return {
            "quiver": self.quiver.to_json(),
            "H": [v for v in self.quiver.vertices if v in self.h],
            "Hhat": sorted(self.h_hat, key=sq_order.get),
            "G1": self.g1.to_json(),
            "G2": self.g2.to_json(),
            "verdict": self.verdict,
            "evidence": self.evidence,
        }


def conjecture_check(q: Quiver) -> ConjectureReport:
    """Compares Q^ minus its socle closure with the square of Q minus its socle closure."""
    sep = free_separator(q)
    sq = kronecker_square(q, sep)
    h = an.hereditary_saturated_closure(q, an.line_points(q))
    h_hat = an.hereditary_saturated_closure(sq, an.line_points(sq))
    g1 = remove_vertices(sq, h_hat, name=f"{sq.name}-H^")
    rest = remove_vertices(q, h, name=f"{q.name}-H")
    g2 = kronecker_square(rest, sep)
    evidence: dict = {"restSinks": len(an.degree_census(rest).sinks)}
    if evidence["restSinks"]:
        # saturation of H forbids this; it would be a bug, not a finding
        raise AssertionError(f"{q.name}: Q minus H has a sink")

    def report(verdict):
        return ConjectureReport(q, h, h_hat, g1, g2, sq, verdict, evidence)

    if set(g1.vertices) == set(g2.vertices) and {tuple(e) for e in g1.edges} == {tuple(e) for e in g2.edges}:
        evidence["graphs"] = "identical"
        return report("StrongPass")
    if max(len(g1.vertices), len(g2.vertices)) <= ISOMORPHISM_VERTEX_CAP:
        if quiver_isomorphic(g1, g2) is not None:
            evidence["graphs"] = "isomorphic"
            return report("StrongPass")
        evidence["graphs"] = "not isomorphic"
    k1, k2 = k0_group(g1), k0_group(g2)
    evidence["K0"] = [k1.to_json(), k2.to_json()]
    if k1 != k2:
        evidence["mismatch"] = "K0"
        return report("Fail")
    if lpa.is_locally_finite(g1) and lpa.is_locally_finite(g2):
        d1, d2 = lpa.decompose(g1), lpa.decompose(g2)
        evidence["decompositions"] = [d1.to_json(), d2.to_json()]
        if d1 == d2:
            return report("DecompositionPass")
        evidence["mismatch"] = "decomposition"
        return report("Fail")
    p1, p2 = path_growth(g1), path_growth(g2)
    evidence["pathGrowth"] = [p1, p2]
    return report("EvidencePass" if p1 == p2 else "Inconclusive")


# -- suites ------------------------------------------------------------------------

@dataclass(frozen=True)
class Failure:
    seed: int
    quiver: dict
    property: str
    detail: str

    def to_json(self) -> dict:
        return {"seed": self.seed, "quiver": self.quiver, "property": self.property,
                "detail": self.detail}


Check = Callable[[int], list[Failure]]
SUITES: dict[str, Check] = {}


def suite(name: str):
    def register(fn: Check) -> Check:
        SUITES[name] = fn
        return fn
    return register


def _gen(seed: int, cls: str, **kw) -> Quiver:
    return random_quiver(GeneratorConfig(seed=seed, cls=cls, **kw))


def _fail(seed, q, prop, detail="") -> Failure:
    return Failure(seed, q.to_json(), prop, detail)


def _no_source_no_sink(q: Quiver) -> bool:
    c = an.degree_census(q)
    return not c.sinks and not c.sources


@suite("preservation")
def _preservation(seed: int) -> list[Failure]:
    q = _gen(seed, "arbitrary")
    sq = kronecker_square(q)
    out = []
    for prop, f in (("acyclic", an.is_acyclic), ("condition-L", an.condition_L),
                    ("condition-K", an.condition_K), ("no-source-no-sink", _no_source_no_sink)):
        a, b = f(q), f(sq)
        if a != b:
            out.append(_fail(seed, q, prop, f"Q: {a}, Q^: {b}"))
    return out


def isolated_in_square(n: int, sinks: int, sources: int, isolated: int) -> int:
    """Isolated vertices of Q^ from the census of Q.

    [x,y] is isolated iff one of x,y is a sink and one is a source. Without
    isolated vertices in Q this is 2*sinks*sources.
    """
    i = isolated
    return 2 * sinks * sources + 2 * i * n - 2 * i * sinks - 2 * i * sources + i * i


@suite("census")
def _census(seed: int) -> list[Failure]:
    q = _gen(seed, "arbitrary")
    c, c2 = an.degree_census(q), an.degree_census(kronecker_square(q))
    sinks, sources, n, i = len(c.sinks), len(c.sources), len(q.vertices), len(c.isolated)
    got = len(c2.isolated)
    out = []
    if got != isolated_in_square(n, sinks, sources, i):
        out.append(_fail(seed, q, "isolated", f"{got} vs census formula"))
    if i == 0 and got != 2 * sinks * sources:
        out.append(_fail(seed, q, "isolated=2*sinks*sources", f"{got} vs 2*{sinks}*{sources}"))
    if len(c2.sinks) != sinks * (2 * n - sinks):
        out.append(_fail(seed, q, "sinks", f"{len(c2.sinks)} vs {sinks}*(2*{n}-{sinks})"))
    return out


@suite("line-points")
def _line_points(seed: int) -> list[Failure]:
    q = _gen(seed, "arbitrary")
    out = []
    pts = an.line_points(q)
    h = an.hereditary_saturated_closure(q, pts)
    if not (an.is_hereditary(q, h) and an.is_saturated(q, h)):
        out.append(_fail(seed, q, "closure-is-hereditary-saturated"))
    if an.hereditary_saturated_closure(q, h) != h:
        out.append(_fail(seed, q, "closure-fixpoint"))
    if not set(an.degree_census(q).sinks) <= pts:
        out.append(_fail(seed, q, "sinks-are-line-points"))
    second = an.second_stage_line_points(q)
    if second:
        out.append(_fail(seed, q, "second-stage-empty", f"found {sorted(second)}"))
    if len(an.line_point_tower(q)) != 1:
        out.append(_fail(seed, q, "tower-stabilizes"))
    return out


@suite("prime")
def _prime(seed: int) -> list[Failure]:
    q = _gen(seed, "arbitrary")
    if an.downward_directed(kronecker_square(q)) and not an.downward_directed(q):
        return [_fail(seed, q, "prime(Q^) => prime(Q)")]
    return []


@suite("strongly-graded")
def _strongly_graded(seed: int) -> list[Failure]:
    q = _gen(seed, "arbitrary")
    a = lpa.ring_properties(q).stronglyGraded
    b = lpa.ring_properties(kronecker_square(q)).stronglyGraded
    return [] if a == b else [_fail(seed, q, "strongly-graded", f"Q: {a}, Q^: {b}")]


@suite("kron-iso")
def _kron_iso(seed: int) -> list[Failure]:
    """Equal square decompositions force equal decompositions (no-exit-cycle class)."""
    rng = random.Random(seed)
    q = _gen(seed, "noExitCycle", max_vertices=4)
    if seed & 1:
        other = random_relabel(q, rng)  # guaranteed trigger
    else:
        other = _gen(splitmix64(seed), "noExitCycle", max_vertices=4)
    sq_equal = lpa.decompose(kronecker_square(q)) == lpa.decompose(kronecker_square(other))
    if sq_equal and lpa.decompose(q) != lpa.decompose(other):
        return [_fail(seed, q, "square-decomposition-determines-decomposition",
                      json.dumps(other.to_json()))]
    return []


@suite("shift-equivalence")
def _shift_equivalence(seed: int) -> list[Failure]:
    rng = random.Random(seed)
    n, m = rng.randint(1, 3), rng.randint(1, 3)
    r = IntMatrix.from_rows([[rng.randint(0, 2) for _ in range(m)] for _ in range(n)], cols=m)
    s = IntMatrix.from_rows([[rng.randint(0, 2) for _ in range(n)] for _ in range(m)], cols=n)
    w = witness_from_factors(r, s, lag=rng.randint(1, 3))
    q = quiver_from_matrix(w.a, name="A")
    out = []
    v = verify_shift_equivalence(w)
    if not v.ok:
        return [_fail(seed, q, "generated-witness", ", ".join(v.failures))]
    lifted = lift_shift_equivalence(w)
    v2 = verify_shift_equivalence(lifted)
    if not v2.ok:
        out.append(_fail(seed, q, "lifted-witness", ", ".join(v2.failures)))
    if adjacency_matrix(kronecker_square(q)) != lifted.a:
        out.append(_fail(seed, q, "lift-is-square-adjacency"))
    # soundness probe: bumping R[i][j] changes RS by row j of S, so that row must be nonzero
    live = [j for j in range(m) if any(s[j, k] for k in range(n))]
    if live:
        i, j = rng.randrange(n), rng.choice(live)
        rows = w.r.to_rows()
        rows[i][j] += 1
        bumped = replace(w, r=IntMatrix.from_rows(rows, cols=m))
        if verify_shift_equivalence(bumped).ok:
            out.append(_fail(seed, q, "perturbed-witness-rejected"))
    return out


def gk_square_expected(n: int | float) -> int | float:
    if n == 0 or n == math.inf:
        return n
    return 2 * n - 1 if n % 2 else 2 * n - 2


@suite("gk-square")
def _gk_square(seed: int) -> list[Failure]:
    q = _gen(seed, "disjointCycles")
    n, m = lpa.gk_dimension(q), lpa.gk_dimension(kronecker_square(q))
    want = gk_square_expected(n)
    return [] if m == want else [_fail(seed, q, "gk-square", f"GK(Q)={n}, GK(Q^)={m}, want {want}")]


@suite("chain-square")
def _chain_square(seed: int) -> list[Failure]:
    q = _gen(seed, "disjointCycles")
    c, c2 = an.cycle_chains(q), an.cycle_chains(kronecker_square(q))
    if c.d1 == 0:
        want = (0, 0)
    else:
        want = (2 * c.d1 - 1, 2 * c.d1 - 2 if c.d2 < c.d1 else 2 * c.d1 - 1)
    got = (c2.d1, c2.d2)
    if not c2.disjoint or got != want:
        return [_fail(seed, q, "chain-square", f"d=({c.d1},{c.d2}), square {got}, want {want}")]
    return []


LINE_CROSS_DEGREES = range(-5, 6)


@suite("line-union-cross")
def _line_union_cross(seed: int) -> list[Failure]:
    a = _gen(seed, "lineUnion")
    b = _gen(splitmix64(seed), "lineUnion")
    ab = kronecker_product(a, b)
    for n in LINE_CROSS_DEGREES:
        x, y = lpa.dim_graded(ab, n), lpa.cross_product_dim(a, b, n)
        if x != y:
            return [_fail(seed, a, "line-union-cross", f"n={n}: {x} vs {y}; b={json.dumps(b.to_json())}")]
    return []


def line_union_cross_control(n: int = 0) -> tuple[int, int]:
    """(dim L(E^)_n, dim L(E)_n squared); these differ at n = 0."""
    return lpa.dim_graded(kronecker_square(E), n), lpa.cross_product_dim(E, E, n)


@suite("dim-oracle")
def _dim_oracle(seed: int) -> list[Failure]:
    rng = random.Random(seed)
    q = _gen(seed, "noExitCycle")
    shuffled = {v: rng.choice(q.out_edges[v]).name for v in q.vertices if q.out_edges[v]}
    for n in range(-5, 6):
        a, b = lpa.dim_graded(q, n), lpa.dim_graded_oracle(q, n)
        c = lpa.dim_graded(q, n, special=shuffled)
        if not a == b == c:
            return [_fail(seed, q, "dim-oracle", f"n={n}: basis {a}, oracle {b}, other special edges {c}")]
    return []


@suite("conjecture")
def _conjecture(seed: int) -> list[Failure]:
    q = _gen(seed, "noExitCycle" if seed & 1 else "arbitrary", max_vertices=5)
    r = conjecture_check(q)
    if r.verdict == "Fail":
        return [_fail(seed, q, "conjecture", json.dumps(r.evidence))]
    return []


def _postconditions(cls: str, q: Quiver) -> bool:
    if cls == "acyclic":
        return an.is_acyclic(q)
    if cls == "noExitCycle":
        return lpa.is_locally_finite(q)
    if cls == "noSink":
        return not an.degree_census(q).sinks
    if cls == "lineUnion":
        return all(q.out_degree(v) <= 1 and q.in_degree(v) <= 1 for v in q.vertices) and an.is_acyclic(q)
    if cls == "disjointCycles":
        return an.cycle_chains(q).disjoint
    return True


@suite("generators")
def _generators(seed: int) -> list[Failure]:
    out = []
    for cls in CLASSES:
        q = _gen(seed, cls)
        if not _postconditions(cls, q):
            out.append(_fail(seed, q, f"class-{cls}"))
        if _gen(seed, cls) != q:
            out.append(_fail(seed, q, f"deterministic-{cls}"))
    return out


@dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    passes: int
    failures: list[Failure]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "prng": PRNG_NAME,
            "passes": self.passes,
            "failures": [f.to_json() for f in self.failures],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def run_suite(name: str, trials: int, seed: int) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    check = SUITES[name]
    failures = []
    passes = 0
    for i in range(trials):
        found = check(sub_seed(seed, i))
        if found:
            failures.extend(found)
        else:
            passes += 1
    return SuiteReport(name, trials, seed, passes, failures)
