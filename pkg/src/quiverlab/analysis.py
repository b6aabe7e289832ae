"""Graph-theoretic predicates on finite quivers.

Cycles, Conditions (L) and (K), downward directedness, line points,
hereditary saturated closures, cycle chains and path counting.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Iterator

from .quiver import Edge, Quiver, QuiverError, free_separator, kronecker_square, remove_vertices

DEFAULT_CYCLE_CAP = 100_000


class CycleCapExceeded(RuntimeError):
    pass


# -- basic reachability -------------------------------------------------------

def reachable_from(q: Quiver, v: str) -> frozenset[str]:
    """T(v): every vertex reachable from v, v included."""
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in q.successors[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def strongly_connected_components(nodes: list, succ) -> list[list]:
    """Tarjan's algorithm, iterative. Components come out in reverse topological order."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comps: list[list] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ(nxt))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                comps.append(comp)
    return comps


def is_acyclic(q: Quiver) -> bool:
    indeg = {v: q.in_degree(v) for v in q.vertices}
    queue = [v for v in q.vertices if indeg[v] == 0]
    seen = 0
    while queue:
        x = queue.pop()
        seen += 1
        for e in q.out_edges[x]:
            indeg[e.dst] -= 1
            if indeg[e.dst] == 0:
                queue.append(e.dst)
    return seen == len(q.vertices)


# -- census -------------------------------------------------------------------

@dataclass(frozen=True)
class Census:
    sinks: tuple[str, ...]
    sources: tuple[str, ...]
    isolated: tuple[str, ...]
    regular: tuple[str, ...]

    def counts(self) -> dict[str, int]:
        return {k: len(getattr(self, k)) for k in ("sinks", "sources", "isolated", "regular")}


def degree_census(q: Quiver) -> Census:
    sinks = tuple(v for v in q.vertices if not q.out_edges[v])
    sources = tuple(v for v in q.vertices if not q.in_edges[v])
    src = set(sources)
    return Census(
        sinks=sinks,
        sources=sources,
        isolated=tuple(v for v in sinks if v in src),
        regular=tuple(v for v in q.vertices if q.out_edges[v]),
    )


# -- cycles -------------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    """Closed simple path, rotated to start at its least vertex name."""

    edges: tuple[Edge, ...]

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(e.src for e in self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    @classmethod
    def canonical(cls, edges: Iterable[Edge]) -> Cycle:
        edges = tuple(edges)
        k = min(range(len(edges)), key=lambda i: edges[i].src)
        return cls(edges[k:] + edges[:k])

    def has_exit(self, q: Quiver) -> bool:
        # the cycle uses exactly one out-edge at each of its vertices
        return any(q.out_degree(v) > 1 for v in self.vertices)

    def __str__(self) -> str:
        return "".join(f"{e.name}" if i == 0 else f".{e.name}" for i, e in enumerate(self.edges))


def _vertex_cycles(q: Quiver) -> Iterator[list[str]]:
    """Johnson's algorithm on the underlying simple digraph (self-loops first)."""
    adj = {v: set(q.successors[v]) for v in q.vertices}
    for v in q.vertices:
        if v in adj[v]:
            yield [v]
            adj[v].discard(v)
    order = q.index
    sub = {v: set(adj[v]) for v in q.vertices}
    sccs = [c for c in strongly_connected_components(list(q.vertices), lambda x: sorted(sub[x], key=order.get))
            if len(c) > 1]
    while sccs:
        scc = sccs.pop()
        scc_set = set(scc)
        start = min(scc, key=order.get)
        path = [start]
        blocked = {start}
        closed: set[str] = set()
        blocked_by: dict[str, set[str]] = defaultdict(set)
        stack = [(start, sorted(sub[start] & scc_set, key=order.get))]
        while stack:
            node, nbrs = stack[-1]
            if nbrs:
                nxt = nbrs.pop()
                if nxt == start:
                    yield list(path)
                    closed.update(path)
                elif nxt not in blocked:
                    path.append(nxt)
                    stack.append((nxt, sorted(sub[nxt] & scc_set, key=order.get)))
                    closed.discard(nxt)
                    blocked.add(nxt)
                    continue
            if not nbrs:
                if node in closed:
                    pending = [node]
                    while pending:
                        u = pending.pop()
                        if u in blocked:
                            blocked.discard(u)
                            pending.extend(blocked_by[u])
                            blocked_by[u].clear()
                else:
                    for nb in sub[node] & scc_set:
                        blocked_by[nb].add(node)
                stack.pop()
                path.pop()
        scc_set.discard(start)
        rest = sorted(scc_set, key=order.get)
        sccs.extend(c for c in strongly_connected_components(
            rest, lambda x: sorted(sub[x] & scc_set, key=order.get)) if len(c) > 1)


def enumerate_cycles(q: Quiver, cap: int = DEFAULT_CYCLE_CAP) -> list[Cycle]:
    """All simple cycles; parallel edges give distinct cycles."""
    between: dict[tuple[str, str], list[Edge]] = defaultdict(list)
    for e in q.edges:
        between[(e.src, e.dst)].append(e)
    out: list[Cycle] = []
    for vs in _vertex_cycles(q):
        hops = [between[(vs[i], vs[(i + 1) % len(vs)])] for i in range(len(vs))]
        for choice in product(*hops):
            out.append(Cycle.canonical(choice))
            if len(out) > cap:
                raise CycleCapExceeded(f"more than {cap} simple cycles in {q.name}")
    out.sort(key=lambda c: (len(c), [q.index[v] for v in c.vertices], [e.name for e in c.edges]))
    return out


def exit_free_cycles(q: Quiver) -> list[Cycle]:
    """Cycles without exits: they live in the out-degree-one part of the quiver."""
    nxt = {v: q.out_edges[v][0] for v in q.vertices if q.out_degree(v) == 1}
    state: dict[str, int] = {}
    found = []
    for v in q.vertices:
        if v not in nxt or v in state:
            continue
        walk = []
        x = v
        while x in nxt and x not in state:
            state[x] = 1
            walk.append(x)
            x = nxt[x].dst
        if x in state and state[x] == 1 and x in walk:
            k = walk.index(x)
            found.append(Cycle.canonical(nxt[w] for w in walk[k:]))
        for w in walk:
            state[w] = 2
    return found


def condition_L(q: Quiver) -> bool:
    return not exit_free_cycles(q)


def first_return_count(q: Quiver, v: str, cap: int | None = None) -> int | float:
    """Number of closed paths based at v that do not revisit v before the end.

    Returns math.inf when a cycle avoiding v sits between v's out- and in-edges.
    """
    succ_wo = {x: [e for e in q.out_edges[x] if e.dst != v] for x in q.vertices if x != v}
    # forward from v's successors, backward from v's predecessors, both avoiding v
    fwd = set()
    stack = [e.dst for e in q.out_edges[v] if e.dst != v]
    while stack:
        x = stack.pop()
        if x in fwd:
            continue
        fwd.add(x)
        stack.extend(e.dst for e in succ_wo[x])
    bwd = set()
    stack = [e.src for e in q.in_edges[v] if e.src != v]
    while stack:
        x = stack.pop()
        if x in bwd:
            continue
        bwd.add(x)
        stack.extend(e.src for e in q.in_edges[x] if e.src != v)
    middle = fwd & bwd
    mid_succ = {x: [e for e in succ_wo[x] if e.dst in middle] for x in middle}
    comps = strongly_connected_components(sorted(middle, key=q.index.get),
                                          lambda x: [e.dst for e in mid_succ[x]])
    for c in comps:
        if len(c) > 1 or any(e.dst == c[0] for e in mid_succ[c[0]]):
            return math.inf
    # comps arrive in reverse topological order: sinks of the middle DAG first
    to_v: dict[str, int] = {}
    for c in comps:
        x = c[0]
        to_v[x] = sum(1 for e in q.out_edges[x] if e.dst == v) + sum(to_v[e.dst] for e in mid_succ[x])
    total = sum(1 for e in q.out_edges[v] if e.dst == v)
    total += sum(to_v[e.dst] for e in q.out_edges[v] if e.dst in middle)
    return total


def condition_K(q: Quiver) -> bool:
    for v in q.vertices:
        n = first_return_count(q, v)
        if n == 1:
            return False
    return True


def downward_directed(q: Quiver) -> bool:
    """Every pair of vertices reaches a common vertex (reachability is reflexive)."""
    n = len(q.vertices)
    # reachability bitsets via SCC condensation, processed sinks-first
    comps = strongly_connected_components(list(q.vertices), lambda x: q.successors[x])
    reach: dict[str, int] = {}
    for c in comps:
        bits = 0
        for x in c:
            bits |= 1 << q.index[x]
        for x in c:
            for y in q.successors[x]:
                if y in reach:
                    bits |= reach[y]
        for x in c:
            reach[x] = bits
    masks = [reach[v] for v in q.vertices]
    for i in range(n):
        for j in range(i + 1, n):
            if not masks[i] & masks[j]:
                return False
    return True


# -- hereditary saturated sets and line points ----------------------------------

def is_hereditary(q: Quiver, h: Iterable[str]) -> bool:
    h = set(h)
    return all(e.dst in h for v in h for e in q.out_edges[v])


def is_saturated(q: Quiver, h: Iterable[str]) -> bool:
    h = set(h)
    for v in q.vertices:
        if v not in h and q.is_regular(v) and all(e.dst in h for e in q.out_edges[v]):
            return False
    return True


def hereditary_saturated_closure(q: Quiver, seed: Iterable[str]) -> frozenset[str]:
    """Least hereditary saturated superset of `seed`, by fixpoint iteration."""
    h = set(seed)
    unknown = h - set(q.vertices)
    if unknown:
        raise QuiverError(f"unknown vertices {sorted(unknown)}")
    changed = True
    while changed:
        changed = False
        stack = list(h)
        while stack:
            x = stack.pop()
            for y in q.successors[x]:
                if y not in h:
                    h.add(y)
                    stack.append(y)
                    changed = True
        for v in q.vertices:
            if v not in h and q.is_regular(v) and all(e.dst in h for e in q.out_edges[v]):
                h.add(v)
                changed = True
    return frozenset(h)


def line_points(q: Quiver) -> frozenset[str]:
    """Vertices whose tree has no bifurcation and meets no cycle."""
    status: dict[str, bool] = {}
    for u in q.vertices:
        walk = []
        x = u
        seen = set()
        while True:
            if x in status:
                ok = status[x]
                break
            if x in seen or q.out_degree(x) > 1:
                ok = False
                break
            seen.add(x)
            walk.append(x)
            if q.out_degree(x) == 0:
                ok = True
                break
            x = q.out_edges[x][0].dst
        for w in walk:
            status[w] = ok
        status.setdefault(u, ok)
    return frozenset(v for v in q.vertices if status[v])


@dataclass(frozen=True)
class TowerStage:
    points: frozenset[str]
    closure: frozenset[str]


def line_point_tower(q: Quiver, max_stages: int = 64) -> list[TowerStage]:
    """Iterates P^{n+1} = P^n u P_l(Q minus closure(P^n)) until it stops growing."""
    points = line_points(q)
    closure = hereditary_saturated_closure(q, points)
    stages = [TowerStage(points, closure)]
    for _ in range(max_stages):
        new = line_points(remove_vertices(q, closure))
        if not new - points:
            break
        points = points | new
        closure = hereditary_saturated_closure(q, points)
        stages.append(TowerStage(points, closure))
    return stages


def second_stage_line_points(q: Quiver) -> frozenset[str]:
    h = hereditary_saturated_closure(q, line_points(q))
    return line_points(remove_vertices(q, h))


# -- cycle chains -------------------------------------------------------------

@dataclass(frozen=True)
class CycleChains:
    disjoint: bool
    d1: int | None
    d2: int | None
    cycles: tuple[tuple[str, ...], ...] = ()


def cycle_chains(q: Quiver) -> CycleChains:
    """Longest chains of cycles c1 => c2 => ... (a path runs from each to the next).

    d1 counts cycles on the longest chain, d2 on the longest chain whose last
    cycle has an exit. Only meaningful when no two cycles share a vertex.
    """
    comps = strongly_connected_components(list(q.vertices), lambda x: q.successors[x])
    comp_of = {x: i for i, c in enumerate(comps) for x in c}
    is_cycle = []
    has_exit = []
    for c in comps:
        members = set(c)
        internal = [e for x in c for e in q.out_edges[x] if e.dst in members]
        nontrivial = len(c) > 1 or bool(internal)
        if nontrivial and len(internal) != len(c):
            return CycleChains(False, None, None)
        is_cycle.append(nontrivial)
        has_exit.append(nontrivial and any(q.out_degree(x) > 1 for x in c))
    # comps are in reverse topological order; walk them source-first
    best = [0] * len(comps)
    preds: dict[int, set[int]] = defaultdict(set)
    for e in q.edges:
        a, b = comp_of[e.src], comp_of[e.dst]
        if a != b:
            preds[b].add(a)
    for i in reversed(range(len(comps))):
        best[i] = max((best[p] for p in preds[i]), default=0) + (1 if is_cycle[i] else 0)
    d1 = max((best[i] for i in range(len(comps)) if is_cycle[i]), default=0)
    d2 = max((best[i] for i in range(len(comps)) if has_exit[i]), default=0)
    cyc = tuple(tuple(sorted(c, key=q.index.get)) for c, flag in zip(comps, is_cycle) if flag)
    return CycleChains(True, d1, d2, cyc)


# -- path counting --------------------------------------------------------------

@dataclass(frozen=True)
class PathCount:
    cardinality: int | float  # math.inf for infinitely many paths
    histogram: dict[int, int] | None

    @property
    def finite(self) -> bool:
        return self.cardinality != math.inf

    def lengths(self) -> list[int]:
        """Multiset of path lengths, as a sorted list."""
        if self.histogram is None:
            raise ValueError("infinitely many paths")
        return [k for k in sorted(self.histogram) for _ in range(self.histogram[k])]


def paths_ending_at(q: Quiver, v: str, exclude: Iterable[str] = ()) -> PathCount:
    """Paths with range v (trivial path included) that avoid the excluded edges."""
    if v not in q.index:
        raise QuiverError(f"unknown vertex {v}")
    banned = set(exclude)
    ins = {x: [e for e in q.in_edges[x] if e.name not in banned] for x in q.vertices}
    back = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for e in ins[x]:
            if e.src not in back:
                back.add(e.src)
                stack.append(e.src)
    comps = strongly_connected_components(
        sorted(back, key=q.index.get), lambda x: [e.src for e in ins[x]])
    for c in comps:
        if len(c) > 1 or any(e.src == c[0] for e in ins[c[0]]):
            return PathCount(math.inf, None)
    hist: dict[int, int] = {}
    level = {v: 1}
    k = 0
    while level:
        hist[k] = sum(level.values())
        nxt: dict[str, int] = defaultdict(int)
        for y, n in level.items():
            for e in ins[y]:
                nxt[e.src] += n
        level = dict(nxt)
        k += 1
    return PathCount(sum(hist.values()), hist)


# -- vertex classification and the diagonal --------------------------------------

class VertexKind(str, Enum):
    SINK = "Sink"
    RAY_POINT = "RayPoint"
    LAURENT_VERTEX = "LaurentVertex"
    OTHER = "Other"


def classify_vertices(q: Quiver) -> dict[str, VertexKind]:
    out = {}
    for v in q.vertices:
        if q.is_sink(v):
            out[v] = VertexKind.SINK
            continue
        x, seen = v, set()
        while True:
            if q.out_degree(x) > 1:
                kind = VertexKind.OTHER
                break
            if q.out_degree(x) == 0:
                kind = VertexKind.RAY_POINT
                break
            if x in seen:
                # every vertex on the walk emits one edge, so the cycle has no exit
                kind = VertexKind.LAURENT_VERTEX
                break
            seen.add(x)
            x = q.out_edges[x][0].dst
        out[v] = kind
    return out


def diagonal_is_ideal(q: Quiver) -> bool:
    """Can L(Q), sitting on the diagonal of the Kronecker square, be an ideal there?

    The diagonal {v|v} must be hereditary and saturated, and every edge
    leaving it must be a diagonal edge e|e; an edge [e,f] with e != f between
    diagonal vertices is not in L(Q). Together: each vertex emits at most one
    edge and the diagonal is saturated.
    """
    sep = free_separator(q)
    sq = kronecker_square(q, sep)
    diag = {f"{v}{sep}{v}" for v in q.vertices}
    off_diagonal = any(e.src in diag and e.name.split(sep)[0] != e.name.split(sep)[1]
                       for e in sq.edges)
    return not off_diagonal and is_hereditary(sq, diag) and is_saturated(sq, diag)


def countable_separation_witness(q: Quiver) -> frozenset[str]:
    # for a finite quiver the whole vertex set is a (finite, hence countable) witness
    return frozenset(q.vertices)
