"""Brute-force reference implementations, deliberately naive and independent."""

from itertools import combinations, permutations

import networkx as nx


def digraph(q):
    g = nx.MultiDiGraph()
    g.add_nodes_from(q.vertices)
    for e in q.edges:
        g.add_edge(e.src, e.dst, key=e.name)
    return g


def simple_cycles_by_edges(q):
    """Every simple cycle as a frozenset of edge names, via DFS from each start vertex."""
    order = {v: i for i, v in enumerate(q.vertices)}
    found = set()

    def dfs(start, x, visited, used):
        for e in q.edges:
            if e.src != x:
                continue
            if e.dst == start:
                found.add(frozenset(used + [e.name]))
            elif e.dst not in visited and order[e.dst] > order[start]:
                dfs(start, e.dst, visited | {e.dst}, used + [e.name])

    for v in q.vertices:
        dfs(v, v, {v}, [])
    return found


def paths_into(q, v, max_len, banned=()):
    """All paths ending at v of length <= max_len, as tuples of edge names."""
    out = [((), v)]
    frontier = [((), v)]
    for _ in range(max_len):
        nxt = []
        for path, start in frontier:
            for e in q.edges:
                if e.dst == start and e.name not in banned:
                    nxt.append(((e.name,) + path, e.src))
        out += nxt
        frontier = nxt
    return out


def reach(q, v):
    return {v} | nx.descendants(digraph(q), v)


def hs_closure_bruteforce(q, seed):
    """Intersection of every hereditary saturated superset of seed."""
    vs = list(q.vertices)
    best = set(vs)
    for k in range(len(vs) + 1):
        for sub in combinations(vs, k):
            h = set(sub)
            if not set(seed) <= h:
                continue
            hereditary = all(e.dst in h for e in q.edges if e.src in h)
            saturated = all(
                v in h for v in vs
                if q.out_edges[v] and all(e.dst in h for e in q.out_edges[v]))
            if hereditary and saturated:
                best &= h
    return best


def isomorphic_bruteforce(a, b):
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False

    def mult(q):
        m = {}
        for e in q.edges:
            m[(e.src, e.dst)] = m.get((e.src, e.dst), 0) + 1
        return m

    ma, mb = mult(a), mult(b)
    for perm in permutations(b.vertices):
        f = dict(zip(a.vertices, perm))
        if all(mb.get((f[x], f[y]), 0) == c for (x, y), c in ma.items()):
            return True
    return False


def first_returns_capped(q, v, cap=2):
    """Closed paths at v not passing v in between, counted up to cap (length <= 3|Q0|)."""
    limit = 3 * len(q.vertices)
    count = 0
    stack = [(v, 0)]
    while stack:
        x, length = stack.pop()
        for e in q.out_edges[x]:
            if e.dst == v:
                count += 1
                if count >= cap:
                    return cap
            elif length + 1 < limit:
                stack.append((e.dst, length + 1))
    return count
