"""Generators-and-relations presentations of L(Q^) and of the face-algebra quotient.

Both presentations are compared by normal forms. A rewriting system is read
off the relations of one presentation (which symbols are idempotents, where
each arrow starts and ends, which ghost pairs with which edge, which CK2 sums
exist) and every relation of the other presentation is reduced with it. The
normal forms are the monomials a b* with r(a) = r(b), minus those where a and
b end in the same special edge; the CK2 relation at v is oriented as
e_v e_v* -> v - sum of the other f f*.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .quiver import Quiver, free_separator, kronecker_square

Word = tuple[str, ...]
LinComb = tuple[tuple[Word, int], ...]

VERTEX, EDGE, GHOST = "vertex", "edge", "ghost"


class RewriteBoundExceeded(RuntimeError):
    pass


def lincomb(terms: Iterable[tuple[Word, int]]) -> LinComb:
    acc: dict[Word, int] = defaultdict(int)
    for w, c in terms:
        acc[tuple(w)] += c
    return tuple(sorted((w, c) for w, c in acc.items() if c))


def format_lincomb(lc: LinComb) -> str:
    if not lc:
        return "0"
    out = []
    for i, (w, c) in enumerate(lc):
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)} "
        body = mag + " ".join(w)
        out.append(("-" + body if c < 0 else body) if i == 0 else f"{sign} {body}")
    return " ".join(out)


@dataclass(frozen=True)
class Relation:
    lhs: LinComb
    rhs: LinComb
    label: str = ""

    def difference(self) -> dict[Word, int]:
        acc: dict[Word, int] = defaultdict(int)
        for w, c in self.lhs:
            acc[w] += c
        for w, c in self.rhs:
            acc[w] -= c
        return {w: c for w, c in acc.items() if c}

    def symbols(self) -> set[str]:
        return {s for w, _ in self.lhs + self.rhs for s in w}

    def __str__(self) -> str:
        return f"{format_lincomb(self.lhs)} = {format_lincomb(self.rhs)}"


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple[tuple[str, str], ...]  # (symbol, kind)
    relations: tuple[Relation, ...]

    def __post_init__(self):
        declared = {s for s, _ in self.generators}
        for r in self.relations:
            missing = r.symbols() - declared
            if missing:
                raise ValueError(f"relation '{r}' uses undeclared symbols {sorted(missing)}")

    def kinds(self) -> dict[str, str]:
        return dict(self.generators)

    def renamed(self, rename) -> Presentation:
        gens = tuple((rename(s), k) for s, k in self.generators)
        rels = tuple(
            Relation(lincomb((tuple(map(rename, w)), c) for w, c in r.lhs),
                     lincomb((tuple(map(rename, w)), c) for w, c in r.rhs), r.label)
            for r in self.relations)
        return Presentation(self.name, gens, rels)

    def to_text(self) -> str:
        lines = [f"# {self.name}: {len(self.generators)} generators, {len(self.relations)} relations"]
        for kind in (VERTEX, EDGE, GHOST):
            syms = [s for s, k in self.generators if k == kind]
            lines.append(f"# {kind}: " + " ".join(syms))
        lines.extend(str(r) for r in self.relations)
        return "\n".join(lines) + "\n"


def _rel(lhs, rhs, label) -> Relation:
    return Relation(lincomb(lhs), lincomb(rhs), label)


# -- the two presentations ------------------------------------------------------

def lpa_presentation(q: Quiver) -> Presentation:
    """Vertices, edges, ghosts and relations of L(Q^), symbols [a,b] and [e,f]*."""
    sep = free_separator(q)
    sq = kronecker_square(q, sep)

    def sym(name: str) -> str:
        return "[" + ",".join(name.split(sep)) + "]"

    vs = {v: sym(v) for v in sq.vertices}
    es = {e.name: sym(e.name) for e in sq.edges}
    gs = {e.name: es[e.name] + "*" for e in sq.edges}
    gens = ([(vs[v], VERTEX) for v in sq.vertices] + [(es[e.name], EDGE) for e in sq.edges]
            + [(gs[e.name], GHOST) for e in sq.edges])
    rels = []
    for a in sq.vertices:
        for b in sq.vertices:
            rels.append(_rel([((vs[a], vs[b]), 1)], [((vs[a],), 1)] if a == b else [], "idempotent"))
    for e in sq.edges:
        x, g = es[e.name], gs[e.name]
        rels.append(_rel([((vs[e.src], x), 1)], [((x,), 1)], "source"))
        rels.append(_rel([((x, vs[e.dst]), 1)], [((x,), 1)], "range"))
        rels.append(_rel([((vs[e.dst], g), 1)], [((g,), 1)], "ghost-source"))
        rels.append(_rel([((g, vs[e.src]), 1)], [((g,), 1)], "ghost-range"))
    for e in sq.edges:
        for f in sq.edges:
            rhs = [((vs[e.dst],), 1)] if e.name == f.name else []
            rels.append(_rel([((gs[e.name], es[f.name]), 1)], rhs, "CK1"))
    for v in sq.vertices:
        if sq.out_edges[v]:
            rels.append(_rel([((vs[v],), 1)],
                             [((es[e.name], gs[e.name]), 1) for e in sq.out_edges[v]], "CK2"))
    return Presentation(f"L({sq.name})", tuple(gens), tuple(rels))


def face_quotient_presentation(q: Quiver) -> Presentation:
    """Face algebra of the double quiver on pairs of generators, modulo the CK-type ideal.

    Symbols are x[i,j] (vertex pairs), x[e,f] (edge pairs) and x[e*,f*]
    (ghost pairs). Only generators of length at most one are kept.
    """
    vp = [(i, j) for i in q.vertices for j in q.vertices]
    ep = [(e, f) for e in q.edges for f in q.edges]

    def xv(i, j):
        return f"x[{i},{j}]"

    def xe(e, f):
        return f"x[{e.name},{f.name}]"

    def xg(e, f):
        return f"x[{e.name}*,{f.name}*]"

    gens = ([(xv(i, j), VERTEX) for i, j in vp] + [(xe(e, f), EDGE) for e, f in ep]
            + [(xg(e, f), GHOST) for e, f in ep])
    rels = []
    for p in vp:
        for r in vp:
            rels.append(_rel([((xv(*p), xv(*r)), 1)], [((xv(*p),), 1)] if p == r else [],
                             "face-idempotent"))
    # arrows of the double quiver: edges (s -> r) and ghosts (r -> s)
    arrows = ([(xe(e, f), (e.src, f.src), (e.dst, f.dst)) for e, f in ep]
              + [(xg(e, f), (e.dst, f.dst), (e.src, f.src)) for e, f in ep])
    for x, start, end in arrows:
        for p in vp:
            rels.append(_rel([((xv(*p), x), 1)], [((x,), 1)] if p == start else [], "face-source"))
            rels.append(_rel([((x, xv(*p)), 1)], [((x,), 1)] if p == end else [], "face-range"))
    for group in (arrows[:len(ep)], arrows[len(ep):]):
        for x, _, end in group:
            for y, start, _ in group:
                if end != start:
                    rels.append(_rel([((x, y), 1)], [], "face-composable"))
    for e, f in ep:
        for e2, f2 in ep:
            same = e.name == e2.name and f.name == f2.name
            rels.append(_rel([((xg(e, f), xe(e2, f2)), 1)],
                             [((xv(e.dst, f.dst),), 1)] if same else [], "ideal-CK1"))
    for i, j in vp:
        if q.out_edges[i] and q.out_edges[j]:
            rels.append(_rel([((xv(i, j),), 1)],
                             [((xe(e, f), xg(e, f)), 1) for e in q.out_edges[i] for f in q.out_edges[j]],
                             "ideal-CK2"))
    return Presentation(f"A({q.name})", tuple(gens), tuple(rels))


def face_to_bracket(symbol: str) -> str:
    """x[a,b] -> [a,b] and x[e*,f*] -> [e,f]*; other symbols pass through."""
    if not symbol.startswith("x["):
        return symbol
    a, b = symbol[2:-1].split(",")
    if a.endswith("*") and b.endswith("*"):
        return f"[{a[:-1]},{b[:-1]}]*"
    return f"[{a},{b}]"


# -- rewriting ----------------------------------------------------------------------

Monomial = tuple[Word, Word, str]  # (alpha, beta, common range) for alpha beta*


@dataclass
class RewriteSystem:
    vertices: set[str]
    src: dict[str, str]
    dst: dict[str, str]
    star: dict[str, str]  # ghost symbol -> edge symbol
    ck2: dict[str, tuple[str, ...]]
    bound: int
    problems: list[str] = field(default_factory=list)

    @property
    def special(self) -> dict[str, str]:
        return {v: min(es) for v, es in self.ck2.items() if es}

    @classmethod
    def from_presentation(cls, p: Presentation) -> RewriteSystem:
        kinds = p.kinds()
        vertices = {s for s, k in kinds.items() if k == VERTEX}
        arrows = {s for s, k in kinds.items() if k != VERTEX}
        left: dict[str, str] = {}
        right: dict[str, str] = {}
        star: dict[str, str] = {}
        ck2: dict[str, tuple[str, ...]] = {}
        idem = set()
        diffs = [r.difference() for r in p.relations]
        for d in diffs:
            for sign in (1, -1):
                d2 = {w: sign * c for w, c in d.items()}
                one = [w for w, c in d2.items() if c == 1]
                neg = [w for w, c in d2.items() if c == -1]
                if len(d2) != 2 or len(one) != 1 or len(neg) != 1:
                    continue
                (w1,), (w0,) = one, neg
                if len(w1) != 2 or len(w0) != 1:
                    continue
                a, b = w1
                if a == b == w0[0] and a in vertices:
                    idem.add(a)
                elif a in vertices and b in arrows and w0[0] == b:
                    left[b] = a
                elif b in vertices and a in arrows and w0[0] == a:
                    right[a] = b
        for d in diffs:
            for sign in (1, -1):
                d2 = {w: sign * c for w, c in d.items()}
                heads = [w for w, c in d2.items() if len(w) == 1 and c == -1 and w[0] in vertices]
                if len(heads) == 1 and len(d2) == 2:
                    (w1,) = [w for w in d2 if w != heads[0]]
                    if (d2[w1] == 1 and len(w1) == 2 and kinds.get(w1[0]) == GHOST
                            and kinds.get(w1[1]) == EDGE):
                        star[w1[0]] = w1[1]
                heads = [w for w, c in d2.items() if len(w) == 1 and c == 1 and w[0] in vertices]
                rest = [w for w in d2 if w not in heads]
                if (len(heads) == 1 and rest and all(d2[w] == -1 and len(w) == 2 for w in rest)
                        and all(kinds.get(w[0]) == EDGE and kinds.get(w[1]) == GHOST for w in rest)):
                    ck2[heads[0][0]] = tuple(sorted(w[0] for w in rest))
        problems = []
        problems += [f"no idempotent relation for {v}" for v in sorted(vertices - idem)]
        problems += [f"no source relation for {a}" for a in sorted(arrows - set(left))]
        problems += [f"no range relation for {a}" for a in sorted(arrows - set(right))]
        ghosts = {s for s in arrows if kinds[s] == GHOST}
        problems += [f"no CK1 relation pairs {g} with an edge" for g in sorted(ghosts - set(star))]
        edges = {s for s in arrows if kinds[s] == EDGE}
        src = {e: left[e] for e in edges if e in left}
        dst = {e: right[e] for e in edges if e in right}
        for g, e in star.items():
            if left.get(g) != dst.get(e) or right.get(g) != src.get(e):
                problems.append(f"ghost {g} is not the reverse of {e}")
        for v, es in ck2.items():
            if any(src.get(e) != v for e in es):
                problems.append(f"CK2 at {v} mentions an edge that does not start there")
        return cls(vertices, src, dst, star, ck2, 2 * len(vertices) + 2, problems)

    # monomial arithmetic

    def _start(self, g: str) -> dict[Monomial, int]:
        if g in self.vertices:
            return {((), (), g): 1}
        if g in self.src:
            return {((g,), (), self.dst[g]): 1}
        e = self.star[g]
        return {((), (e,), self.dst[e]): 1}

    def _times(self, m: Monomial, g: str) -> dict[Monomial, int]:
        alpha, beta, x = m
        right_end = self.src[beta[0]] if beta else x
        if g in self.vertices:
            return {m: 1} if right_end == g else {}
        if g in self.src:
            if beta:
                return {(alpha, beta[1:], x): 1} if beta[0] == g else {}
            return {(alpha + (g,), (), self.dst[g]): 1} if x == self.src[g] else {}
        e = self.star[g]
        if right_end != self.dst[e]:
            return {}
        if len(alpha) + len(beta) + 1 > self.bound:
            raise RewriteBoundExceeded(f"monomial longer than {self.bound}")
        v = self.src[e]
        if not beta and alpha and alpha[-1] == e and self.special.get(v) == e:
            head = alpha[:-1]
            out = {(head, (), v): 1}
            for f in self.ck2[v]:
                if f != e:
                    out[(head + (f,), (f,), self.dst[f])] = -1
            return out
        return {(alpha, (e,) + beta, x): 1}

    def reduce_word(self, w: Word) -> dict[Monomial, int]:
        if len(w) > self.bound:
            raise RewriteBoundExceeded(f"word of length {len(w)} exceeds {self.bound}")
        acc = self._start(w[0])
        for g in w[1:]:
            nxt: dict[Monomial, int] = defaultdict(int)
            for m, c in acc.items():
                for m2, c2 in self._times(m, g).items():
                    nxt[m2] += c * c2
            acc = {m: c for m, c in nxt.items() if c}
        return acc

    def normal_form(self, terms: dict[Word, int]) -> dict[Monomial, int]:
        acc: dict[Monomial, int] = defaultdict(int)
        for w, c in terms.items():
            for m, c2 in self.reduce_word(w).items():
                acc[m] += c * c2
        return {m: c for m, c in acc.items() if c}

    def knows(self, symbols: Iterable[str]) -> bool:
        return all(s in self.vertices or s in self.src or s in self.star for s in symbols)


def format_monomial(m: Monomial) -> str:
    alpha, beta, x = m
    if not alpha and not beta:
        return x
    parts = list(alpha) + [b + "*" for b in reversed(beta)]
    return " ".join(parts)


@dataclass
class MatchReport:
    match: bool
    generators_only_left: list[str]
    generators_only_right: list[str]
    problems: list[str]
    diff: list[dict]
    checked: int

    def to_json(self) -> dict:
        return {
            "match": self.match,
            "checked": self.checked,
            "onlyLeft": self.generators_only_left,
            "onlyRight": self.generators_only_right,
            "problems": self.problems,
            "diff": self.diff,
        }


def presentations_match(a: Presentation, b: Presentation) -> MatchReport:
    """Does every relation of each presentation reduce to 0 under the other's rewriting?"""
    a = a.renamed(face_to_bracket)
    b = b.renamed(face_to_bracket)
    ga, gb = set(a.generators), set(b.generators)
    only_a = sorted(s for s, _ in ga - gb)
    only_b = sorted(s for s, _ in gb - ga)
    problems = []
    diff = []
    checked = 0
    for source, target in ((a, b), (b, a)):
        system = RewriteSystem.from_presentation(target)
        problems += [f"{target.name}: {p}" for p in system.problems]
        if system.problems:
            continue
        for r in source.relations:
            if not system.knows(r.symbols()):
                diff.append({"relation": str(r), "from": source.name, "under": target.name,
                             "residual": "unknown generator"})
                continue
            try:
                nf = system.normal_form(r.difference())
            except RewriteBoundExceeded as exc:
                problems.append(f"{source.name}: '{r}': {exc}")
                continue
            checked += 1
            if nf:
                residual = " + ".join(f"{c}*({format_monomial(m)})" for m, c in sorted(nf.items()))
                diff.append({"relation": str(r), "from": source.name, "under": target.name,
                             "residual": residual})
    ok = not (only_a or only_b or problems or diff)
    return MatchReport(ok, only_a, only_b, problems, diff, checked)
