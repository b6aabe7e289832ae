"""Invariants of Leavitt path algebras read off the quiver.

Everything here is a counting statement about paths: matrix-algebra
decompositions in the locally finite case, the socle, graded-component
dimensions, Hazrat's graded-iso invariant for acyclic quivers, GK
dimension and the standard ring-theoretic predicates.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .analysis import (
    PathCount,
    cycle_chains,
    condition_L,
    downward_directed,
    degree_census,
    hereditary_saturated_closure,
    is_acyclic,
    line_points,
    paths_ending_at,
    strongly_connected_components,
)
from .quiver import Quiver, remove_vertices

DEFAULT_DEGREE_BOUND = 64


class PreconditionError(ValueError):
    """An operation was called outside its domain (e.g. not locally finite)."""


# -- locally finite decomposition ------------------------------------------------

@dataclass(frozen=True)
class Summand:
    ring: str  # "K" or "Laurent"
    size: int | float  # math.inf for M_infinity
    origin: str

    def to_json(self) -> dict:
        size = "inf" if self.size == math.inf else self.size
        return {"ring": self.ring, "size": size, "origin": self.origin}

    def __str__(self) -> str:
        n = "inf" if self.size == math.inf else str(self.size)
        ring = "K" if self.ring == "K" else "K[x,x^-1]"
        return f"M_{n}({ring})"


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Multiset of matrix summands; equality ignores where each summand came from."""

    summands: tuple[Summand, ...]

    def signature(self) -> Counter:
        return Counter((s.ring, s.size) for s in self.summands)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        return hash(frozenset(self.signature().items()))

    def __len__(self) -> int:
        return len(self.summands)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.summands]

    def __str__(self) -> str:
        return " + ".join(str(s) for s in self.summands) or "0"


def is_locally_finite(q: Quiver) -> bool:
    """Finite with every cycle exit-free: each nontrivial SCC is a bare cycle."""
    comps = strongly_connected_components(list(q.vertices), lambda x: q.successors[x])
    for c in comps:
        if len(c) == 1 and c[0] not in q.successors[c[0]]:
            continue
        if any(q.out_degree(x) != 1 for x in c):
            return False
    return True


def _require_locally_finite(q: Quiver):
    if not is_locally_finite(q):
        raise PreconditionError(f"{q.name}: some cycle has an exit, so L(Q) is not locally finite")


def _exit_free_cycles_with_base(q: Quiver) -> list[tuple[str, int, str]]:
    """(base vertex, cycle length, out-edge of the base on the cycle) for each cycle.

    Assumes local finiteness, so every vertex on a cycle emits exactly one edge.
    """
    comps = strongly_connected_components(list(q.vertices), lambda x: q.successors[x])
    out = []
    for c in comps:
        if len(c) == 1 and c[0] not in q.successors[c[0]]:
            continue
        base = min(c)
        out.append((base, len(c), q.out_edges[base][0].name))
    out.sort(key=lambda t: q.index[t[0]])
    return out


def cycle_path_count(q: Quiver, base: str) -> PathCount:
    """Paths ending at a vertex of an exit-free cycle that do not run through the cycle."""
    return paths_ending_at(q, base, exclude=[q.out_edges[base][0].name])


def decompose(q: Quiver) -> Decomposition:
    _require_locally_finite(q)
    summands = []
    for w in degree_census(q).sinks:
        summands.append(Summand("K", paths_ending_at(q, w).cardinality, w))
    for base, _, _ in _exit_free_cycles_with_base(q):
        summands.append(Summand("Laurent", cycle_path_count(q, base).cardinality, base))
    return Decomposition(tuple(summands))


@dataclass(frozen=True)
class SocleReport:
    summands: Decomposition
    socle_set: frozenset[str]
    quotient: Quiver

    def to_json(self, q: Quiver) -> dict:
        return {
            "summands": self.summands.to_json(),
            "socleSet": [v for v in q.vertices if v in self.socle_set],
            "quotient": self.quotient.to_json(),
        }


def socle_decomposition(q: Quiver) -> SocleReport:
    h = hereditary_saturated_closure(q, line_points(q))
    summands = tuple(Summand("K", paths_ending_at(q, w).cardinality, w)
                     for w in degree_census(q).sinks)
    return SocleReport(Decomposition(summands), h, remove_vertices(q, h, name=f"{q.name}/soc"))


# -- graded dimensions ------------------------------------------------------------

def special_edges(q: Quiver) -> dict[str, str]:
    """Lexicographically least out-edge at every regular vertex."""
    return {v: min(e.name for e in q.out_edges[v]) for v in q.vertices if q.out_edges[v]}


def _paths_by_length(q: Quiver, max_len: int) -> list[dict[str, int]]:
    """counts[k][x] = number of paths of length k ending at x."""
    counts = [{v: 1 for v in q.vertices}]
    for _ in range(max_len):
        prev = counts[-1]
        nxt = {v: 0 for v in q.vertices}
        for e in q.edges:
            nxt[e.dst] += prev[e.src]
        counts.append(nxt)
    return counts


def dim_graded(q: Quiver, n: int, special: Mapping[str, str] | None = None,
               bound: int = DEFAULT_DEGREE_BOUND) -> int:
    """dim L(Q)_n from the basis {a b*: r(a)=r(b)} minus pairs ending in the same special edge.

    Pairs with both paths longer than |Q0| always end in the same special
    edge (they sit inside an exit-free cycle), so lengths up to |Q0|+|n|
    are enough.
    """
    _require_locally_finite(q)
    if abs(n) > bound:
        raise PreconditionError(f"|degree| {abs(n)} exceeds the bound {bound}")
    if special is None:
        special = special_edges(q)
    top = len(q.vertices) + abs(n)
    counts = _paths_by_length(q, top)
    total = 0
    for k in range(top + 1):
        j = k + n
        if 0 <= j <= top:
            total += sum(counts[j][x] * counts[k][x] for x in q.vertices)
    for v, ename in special.items():
        e = q.edge_by_name[ename]
        if e.src != v:
            raise ValueError(f"special edge {ename} does not start at {v}")
        # paths of length k >= 1 ending in e
        for k in range(1, top + 1):
            j = k + n
            if 1 <= j <= top:
                total -= counts[j - 1][v] * counts[k - 1][v]
    return total


def dim_graded_oracle(q: Quiver, n: int) -> int:
    """dim L(Q)_n from the matrix decomposition, summand by summand."""
    _require_locally_finite(q)
    total = 0
    for w in degree_census(q).sinks:
        h = paths_ending_at(q, w).histogram
        total += sum(c * h.get(k + n, 0) for k, c in h.items())
    for base, length, _ in _exit_free_cycles_with_base(q):
        h = cycle_path_count(q, base).histogram
        total += sum(a * b for i, a in h.items() for j, b in h.items() if (i - j - n) % length == 0)
    return total


def cross_product_dim(a: Quiver, b: Quiver, n: int) -> int:
    return dim_graded(a, n) * dim_graded(b, n)


# -- graded isomorphism for acyclic quivers ------------------------------------------

GradedIsoInvariant = tuple[tuple[int, ...], ...]


def graded_iso_invariant(q: Quiver) -> GradedIsoInvariant:
    """Sorted list, over sinks, of the sorted path lengths ending at that sink."""
    if not is_acyclic(q):
        raise PreconditionError(f"{q.name} has a cycle")
    per_sink = [tuple(paths_ending_at(q, w).lengths()) for w in degree_census(q).sinks]
    return tuple(sorted(per_sink))


# -- GK dimension and ring properties ---------------------------------------------

def gk_dimension(q: Quiver) -> int | float:
    chains = cycle_chains(q)
    if not chains.disjoint:
        return math.inf
    if chains.d1 == 0:
        return 0
    return max(2 * chains.d1 - 1, 2 * chains.d2)


@dataclass(frozen=True)
class RingProperties:
    vonNeumannRegular: bool
    noetherian: bool
    artinian: bool
    locallyFinite: bool
    prime: bool
    primitive: bool
    stronglyGraded: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def ring_properties(q: Quiver) -> RingProperties:
    acyclic = is_acyclic(q)
    lf = is_locally_finite(q)
    dd = downward_directed(q)
    return RingProperties(
        vonNeumannRegular=acyclic,
        noetherian=lf,
        artinian=acyclic,
        locallyFinite=lf,
        prime=dd,
        # countable separation is automatic for finite quivers
        primitive=dd and condition_L(q),
        stronglyGraded=not degree_census(q).sinks,
    )


def size_json(x: int | float):
    return "inf" if x == math.inf else x
