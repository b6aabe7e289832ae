"""Finite quivers and the graph constructions applied to them.

A quiver is an ordered list of vertex names plus an ordered list of named
edges. Order matters: it fixes the row/column indices of the adjacency
matrix, and the Kronecker product is laid out row-major in (left, right)
so that its adjacency matrix is literally the Kronecker product of the
factors' matrices.
"""

from __future__ import annotations

import json
import sys
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .matrix import IntMatrix

DEFAULT_SEPARATOR = "|"
ISOMORPHISM_VERTEX_CAP = 64


class QuiverError(ValueError):
    """Malformed quiver or an operation applied outside its domain."""


class Edge(NamedTuple):
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Quiver:
    name: str
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError(f"{self.name}: duplicate vertex names")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise QuiverError(f"{self.name}: duplicate edge names")
        vs = set(self.vertices)
        for e in self.edges:
            if e.src not in vs or e.dst not in vs:
                raise QuiverError(f"{self.name}: edge {e.name} has an undeclared endpoint")

    # cached lookups; safe because the dataclass is frozen
    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_by_name(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, tuple[Edge, ...]]:
        out = defaultdict(list)
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(out[v]) for v in self.vertices}

    @cached_property
    def in_edges(self) -> dict[str, tuple[Edge, ...]]:
        inn = defaultdict(list)
        for e in self.edges:
            inn[e.dst].append(e)
        return {v: tuple(inn[v]) for v in self.vertices}

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        return {v: tuple(dict.fromkeys(e.dst for e in self.out_edges[v]))
                for v in self.vertices}

    @cached_property
    def predecessors(self) -> dict[str, tuple[str, ...]]:
        return {v: tuple(dict.fromkeys(e.src for e in self.in_edges[v]))
                for v in self.vertices}

    def out_degree(self, v: str) -> int:
        return len(self.out_edges[v])

    def in_degree(self, v: str) -> int:
        return len(self.in_edges[v])

    def is_sink(self, v: str) -> bool:
        return not self.out_edges[v]

    def is_regular(self, v: str) -> bool:
        # every non-sink of a finite quiver emits finitely many edges
        return bool(self.out_edges[v])

    def __len__(self) -> int:
        return len(self.vertices)

    def renamed(self, name: str) -> Quiver:
        return Quiver(name, self.vertices, self.edges)

    def relabel(self, vertex_map: Mapping[str, str], edge_map: Mapping[str, str] | None = None,
                name: str | None = None, vertex_order: Sequence[str] | None = None) -> Quiver:
        """Rename vertices (and optionally edges); `vertex_order` reorders the result."""
        edge_map = edge_map or {}
        verts = [vertex_map.get(v, v) for v in self.vertices]
        if vertex_order is not None:
            if sorted(vertex_order) != sorted(verts):
                raise QuiverError("vertex_order must be a permutation of the relabelled vertices")
            verts = list(vertex_order)
        edges = [Edge(edge_map.get(e.name, e.name), vertex_map.get(e.src, e.src),
                      vertex_map.get(e.dst, e.dst)) for e in self.edges]
        return Quiver(name or self.name, tuple(verts), tuple(edges))

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "edges": [{"name": e.name, "src": e.src, "dst": e.dst} for e in self.edges],
        }

    @classmethod
    def from_json(cls, obj) -> Quiver:
        if not isinstance(obj, dict):
            raise QuiverError("quiver JSON must be an object")
        try:
            name = obj.get("name", "Q")
            vertices = obj["vertices"]
            edges = [Edge(e["name"], e["src"], e["dst"]) for e in obj.get("edges", [])]
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver JSON: missing {exc}") from None
        if not isinstance(vertices, list):
            raise QuiverError("'vertices' must be a list")
        if not isinstance(name, str) or not all(isinstance(v, str) for v in vertices):
            raise QuiverError("quiver names must be strings")
        if not all(isinstance(x, str) for e in edges for x in e):
            raise QuiverError("edge fields must be strings")
        return cls(name, tuple(vertices), tuple(edges))

    def dumps(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json(), indent=indent)

    @classmethod
    def loads(cls, text: str) -> Quiver:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverError(f"invalid JSON: {exc}") from None
        return cls.from_json(obj)

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{e.src}" -> "{e.dst}" [label="{e.name}"];' for e in self.edges]
        lines.append("}")
        return "\n".join(lines)


def quiver(name: str, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]] = ()) -> Quiver:
    """Convenience constructor taking (name, src, dst) triples."""
    return Quiver(name, tuple(vertices), tuple(Edge(*e) for e in edges))


def quiver_from_matrix(a: IntMatrix, name: str = "Q", prefix: str = "v") -> Quiver:
    """Quiver with vertices v0..v{n-1} and a[i, j] parallel edges i -> j."""
    if not a.is_square() or not a.is_nonnegative():
        raise QuiverError("adjacency matrices are square and nonnegative")
    verts = [f"{prefix}{i}" for i in range(a.rows)]
    edges = []
    for i in range(a.rows):
        for j in range(a.cols):
            for k in range(a[i, j]):
                edges.append(Edge(f"e{i}_{j}_{k}", verts[i], verts[j]))
    return Quiver(name, tuple(verts), tuple(edges))


def adjacency_matrix(q: Quiver) -> IntMatrix:
    n = len(q.vertices)
    data = [0] * (n * n)
    for e in q.edges:
        data[q.index[e.src] * n + q.index[e.dst]] += 1
    return IntMatrix(n, n, tuple(data))


def _check_separator(q: Quiver, sep: str):
    for name in list(q.vertices) + [e.name for e in q.edges]:
        if sep in name:
            raise QuiverError(
                f"name {name!r} in {q.name} contains the product separator {sep!r}"
            )


def kronecker_product(a: Quiver, b: Quiver, sep: str = DEFAULT_SEPARATOR,
                      name: str | None = None) -> Quiver:
    _check_separator(a, sep)
    _check_separator(b, sep)
    verts = tuple(f"{u}{sep}{v}" for u in a.vertices for v in b.vertices)
    edges = tuple(
        Edge(f"{e.name}{sep}{f.name}", f"{e.src}{sep}{f.src}", f"{e.dst}{sep}{f.dst}")
        for e in a.edges for f in b.edges
    )
    return Quiver(name or f"{a.name}(x){b.name}", verts, edges)


def free_separator(q: Quiver, candidates: Iterable[str] = ("|", "#", "~", "&", "||")) -> str:
    """First candidate separator that occurs in no vertex or edge name of q."""
    names = list(q.vertices) + [e.name for e in q.edges]
    for sep in candidates:
        if not any(sep in n for n in names):
            return sep
    raise QuiverError(f"no free product separator for {q.name}")


def kronecker_square(q: Quiver, sep: str = DEFAULT_SEPARATOR) -> Quiver:
    return kronecker_product(q, q, sep=sep, name=f"{q.name}^")


@dataclass(frozen=True)
class OutSplitPartition:
    """Ordered partition of s^-1(v) for every non-sink v."""

    blocks: Mapping[str, tuple[tuple[str, ...], ...]] = field(default_factory=dict)

    @classmethod
    def trivial(cls, q: Quiver) -> OutSplitPartition:
        return cls({v: (tuple(e.name for e in q.out_edges[v]),)
                    for v in q.vertices if not q.is_sink(v)})

    def validate(self, q: Quiver):
        for v in q.vertices:
            if q.is_sink(v):
                if v in self.blocks and any(self.blocks[v]):
                    raise QuiverError(f"sink {v} cannot be partitioned")
                continue
            if v not in self.blocks:
                raise QuiverError(f"partition is missing non-sink vertex {v}")
            seen = [name for block in self.blocks[v] for name in block]
            if any(not block for block in self.blocks[v]):
                raise QuiverError(f"partition of {v} has an empty block")
            expected = {e.name for e in q.out_edges[v]}
            if len(seen) != len(set(seen)) or set(seen) != expected:
                raise QuiverError(f"blocks at {v} do not partition its out-edges")
        unknown = set(self.blocks) - set(q.vertices)
        if unknown:
            raise QuiverError(f"partition mentions unknown vertices {sorted(unknown)}")


def out_split(q: Quiver, p: OutSplitPartition, name: str | None = None) -> Quiver:
    """Out-split graph: v becomes v1..vm (one per block), sinks are kept.

    An edge e in block i at s(e) becomes e1..e{m(r(e))} with e_j: s(e)_i -> r(e)_j,
    or stays a single edge e: s(e)_i -> r(e) when r(e) is a sink.
    """
    p.validate(q)
    m = {v: (0 if q.is_sink(v) else len(p.blocks[v])) for v in q.vertices}
    block_of = {}
    for v, blocks in p.blocks.items():
        for i, block in enumerate(blocks, start=1):
            for ename in block:
                block_of[ename] = i

    def copies(v):
        return [v] if m[v] == 0 else [f"{v}{i}" for i in range(1, m[v] + 1)]

    verts = [c for v in q.vertices for c in copies(v)]
    edges = []
    for e in q.edges:
        src = f"{e.src}{block_of[e.name]}"
        if m[e.dst] == 0:
            edges.append(Edge(e.name, src, e.dst))
        else:
            for j in range(1, m[e.dst] + 1):
                edges.append(Edge(f"{e.name}{j}", src, f"{e.dst}{j}"))
    try:
        return Quiver(name or f"{q.name}_s", tuple(verts), tuple(edges))
    except QuiverError as exc:
        raise QuiverError(f"out-split naming collision: {exc}") from None


def remove_vertices(q: Quiver, h: Iterable[str], name: str | None = None) -> Quiver:
    h = set(h)
    unknown = h - set(q.vertices)
    if unknown:
        raise QuiverError(f"unknown vertices {sorted(unknown)}")
    return Quiver(
        name or q.name,
        tuple(v for v in q.vertices if v not in h),
        tuple(e for e in q.edges if e.src not in h and e.dst not in h),
    )


def induced_subquiver(q: Quiver, keep: Iterable[str], name: str | None = None) -> Quiver:
    keep = set(keep)
    return remove_vertices(q, [v for v in q.vertices if v not in keep], name=name)


def weak_components(q: Quiver) -> list[Quiver]:
    """Weakly connected components, in order of first vertex appearance."""
    parent = {v: v for v in q.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in q.edges:
        a, b = find(e.src), find(e.dst)
        if a != b:
            parent[b] = a
    groups: dict[str, list[str]] = {}
    for v in q.vertices:
        groups.setdefault(find(v), []).append(v)
    return [induced_subquiver(q, vs, name=f"{q.name}[{k}]")
            for k, vs in enumerate(groups.values())]


# -- isomorphism ------------------------------------------------------------

@dataclass(frozen=True)
class Isomorphism:
    vertices: dict[str, str]
    edges: dict[str, str]


def quiver_isomorphic(a: Quiver, b: Quiver, cap: int = ISOMORPHISM_VERTEX_CAP) -> Isomorphism | None:
    """Vertex and edge bijection preserving source and range, or None.

    Exponential in the worst case, hence the vertex cap.
    """
    if max(len(a.vertices), len(b.vertices)) > cap:
        raise QuiverError(f"isomorphism search capped at {cap} vertices")
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return None

    def mult(q):
        return Counter((e.src, e.dst) for e in q.edges)

    ma, mb = mult(a), mult(b)
    # shared palette, so colours are comparable across the two quivers
    col_a, col_b = _joint_colors(a, b, rounds=min(len(a.vertices), 6))
    if Counter(col_a.values()) != Counter(col_b.values()):
        return None

    cand: dict[str, list[str]] = {}
    by_color = defaultdict(list)
    for v in b.vertices:
        by_color[col_b[v]].append(v)
    for v in a.vertices:
        cand[v] = by_color[col_a[v]]

    # most constrained first, then neighbours of already-placed vertices
    order: list[str] = []
    remaining = set(a.vertices)
    while remaining:
        placed = set(order)

        def key(v):
            touches = sum(1 for w in a.successors[v] + a.predecessors[v] if w in placed)
            return (-touches, len(cand[v]), a.index[v])

        v = min(remaining, key=key)
        order.append(v)
        remaining.discard(v)

    phi: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v, w):
        if ma[(v, v)] != mb[(w, w)]:
            return False
        for x, y in phi.items():
            if ma[(v, x)] != mb[(w, y)] or ma[(x, v)] != mb[(y, w)]:
                return False
        return True

    def search(k):
        if k == len(order):
            return True
        v = order[k]
        for w in cand[v]:
            if w in used or not consistent(v, w):
                continue
            phi[v] = w
            used.add(w)
            if search(k + 1):
                return True
            del phi[v]
            used.discard(w)
        return False

    if sys.getrecursionlimit() < len(order) + 100:
        sys.setrecursionlimit(len(order) + 100)
    if not search(0):
        return None

    pools = defaultdict(list)
    for e in b.edges:
        pools[(e.src, e.dst)].append(e.name)
    edge_map = {}
    for e in a.edges:
        edge_map[e.name] = pools[(phi[e.src], phi[e.dst])].pop(0)
    return Isomorphism(dict(phi), edge_map)


def _joint_colors(a: Quiver, b: Quiver, rounds: int):
    loops_a = Counter(e.src for e in a.edges if e.src == e.dst)
    loops_b = Counter(e.src for e in b.edges if e.src == e.dst)
    ca = {v: (a.in_degree(v), a.out_degree(v), loops_a[v]) for v in a.vertices}
    cb = {v: (b.in_degree(v), b.out_degree(v), loops_b[v]) for v in b.vertices}
    for _ in range(rounds):
        def sig(q, c, v):
            return (c[v],
                    tuple(sorted(c[e.dst] for e in q.out_edges[v])),
                    tuple(sorted(c[e.src] for e in q.in_edges[v])))
        sa = {v: sig(a, ca, v) for v in a.vertices}
        sb = {v: sig(b, cb, v) for v in b.vertices}
        palette = {s: i for i, s in enumerate(sorted(set(sa.values()) | set(sb.values()), key=repr))}
        ca = {v: palette[sa[v]] for v in a.vertices}
        cb = {v: palette[sb[v]] for v in b.vertices}
    return ca, cb


def verify_isomorphism(a: Quiver, b: Quiver, iso: Isomorphism) -> bool:
    if sorted(iso.vertices) != sorted(a.vertices) or sorted(iso.vertices.values()) != sorted(b.vertices):
        return False
    if sorted(iso.edges) != sorted(e.name for e in a.edges):
        return False
    if sorted(iso.edges.values()) != sorted(e.name for e in b.edges):
        return False
    for e in a.edges:
        f = b.edge_by_name[iso.edges[e.name]]
        if iso.vertices[e.src] != f.src or iso.vertices[e.dst] != f.dst:
            return False
    return True
