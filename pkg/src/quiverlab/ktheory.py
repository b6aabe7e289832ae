"""Smith normal form, K0 of graph algebras, and shift-equivalence witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import IntMatrix
from .quiver import Quiver


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free elimination; exact over the integers."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """U @ A @ V = D with U, V unimodular and d1 | d2 | ... on the diagonal."""

    a: IntMatrix
    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    def __post_init__(self):
        if self.u @ self.a @ self.v != self.d:
            raise ArithmeticError("U A V != D")
        if abs(determinant(self.u)) != 1 or abs(determinant(self.v)) != 1:
            raise ArithmeticError("transform is not unimodular")
        diag = self.diagonal
        for i in range(self.d.rows):
            for j in range(self.d.cols):
                if i != j and self.d[i, j]:
                    raise ArithmeticError("D is not diagonal")
        for x, y in zip(diag, diag[1:]):
            if x < 0 or (x == 0 and y != 0) or (x and y % x):
                raise ArithmeticError("diagonal is not a divisibility chain")

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i, i] for i in range(min(self.d.rows, self.d.cols))]

    @property
    def invariant_factors(self) -> list[int]:
        return [x for x in self.diagonal if x]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(m: IntMatrix) -> SNFResult:
    r, c = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(r, c)):
        pivots = [(abs(a[i][j]), i, j) for i in range(t, r) for j in range(t, c) if a[i][j]]
        if not pivots:
            break
        _, pi, pj = min(pivots)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block; otherwise fold a row in
            bad = next((i for i in range(t + 1, r) for j in range(t + 1, c)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SNFResult(m, IntMatrix.from_rows(u, cols=r), IntMatrix.from_rows(a, cols=c),
                     IntMatrix.from_rows(v, cols=c))


# -- K0 ------------------------------------------------------------------------

@dataclass(frozen=True)
class K0Group:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"freeRank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def relation_matrix(q: Quiver) -> IntMatrix:
    """One row per regular vertex v: e_v minus the sum of e_r(e) over edges leaving v."""
    rows = []
    for v in q.vertices:
        if not q.out_edges[v]:
            continue
        row = [0] * len(q.vertices)
        row[q.index[v]] += 1
        for e in q.out_edges[v]:
            row[q.index[e.dst]] -= 1
        rows.append(row)
    return IntMatrix.from_rows(rows, cols=len(q.vertices))


def cokernel(m: IntMatrix) -> K0Group:
    """Z^cols modulo the row space of m."""
    snf = smith_normal_form(m)
    return K0Group(m.cols - snf.rank, tuple(d for d in snf.invariant_factors if d > 1))


def k0_group(q: Quiver) -> K0Group:
    return cokernel(relation_matrix(q))


# -- shift equivalence ---------------------------------------------------------------

@dataclass(frozen=True)
class ShiftEquivalenceWitness:
    a: IntMatrix
    b: IntMatrix
    r: IntMatrix
    s: IntMatrix
    lag: int = 1

    def __post_init__(self):
        n, m = self.a.rows, self.b.rows
        if not (self.a.is_square() and self.b.is_square()):
            raise ValueError("A and B must be square")
        if self.r.shape != (n, m) or self.s.shape != (m, n):
            raise ValueError(f"R must be {n}x{m} and S {m}x{n}, got {self.r.shape}, {self.s.shape}")

    def to_json(self) -> dict:
        return {"A": self.a.to_json(), "B": self.b.to_json(), "R": self.r.to_json(),
                "S": self.s.to_json(), "l": self.lag}

    @classmethod
    def from_json(cls, obj: dict) -> ShiftEquivalenceWitness:
        try:
            return cls(*(IntMatrix.from_json(obj[k]) for k in "ABRS"), lag=int(obj.get("l", 1)))
        except KeyError as exc:
            raise ValueError(f"witness JSON missing {exc}") from None


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failures: tuple[str, ...] = field(default=())


def verify_shift_equivalence(w: ShiftEquivalenceWitness) -> Verdict:
    failed = []
    if w.lag < 1:
        failed.append("l >= 1")
    if not w.r.is_nonnegative():
        failed.append("R >= 0")
    if not w.s.is_nonnegative():
        failed.append("S >= 0")
    if w.lag >= 1:
        if w.a ** w.lag != w.r @ w.s:
            failed.append("A^l = RS")
        if w.b ** w.lag != w.s @ w.r:
            failed.append("B^l = SR")
    if w.a @ w.r != w.r @ w.b:
        failed.append("AR = RB")
    if w.s @ w.a != w.b @ w.s:
        failed.append("SA = BS")
    return Verdict(not failed, tuple(failed))


def lift_shift_equivalence(w: ShiftEquivalenceWitness) -> ShiftEquivalenceWitness:
    """Kronecker-square every matrix; the mixed-product rule keeps all identities."""
    verdict = verify_shift_equivalence(w)
    if not verdict.ok:
        raise ValueError(f"not a shift equivalence: {', '.join(verdict.failures)}")
    return ShiftEquivalenceWitness(w.a.kron(w.a), w.b.kron(w.b), w.r.kron(w.r), w.s.kron(w.s), w.lag)


def witness_from_factors(r: IntMatrix, s: IntMatrix, lag: int = 1) -> ShiftEquivalenceWitness:
    """A = RS, B = SR; for lag l the witness uses R' = A^(l-1) R."""
    a, b = r @ s, s @ r
    return ShiftEquivalenceWitness(a, b, (a ** (lag - 1)) @ r, s, lag)
