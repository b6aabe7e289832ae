"""quiverlab command line.

Exit codes: 0 success or predicate true, 1 predicate false or mismatch,
2 unreadable or malformed input, 3 precondition unmet.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import analysis as an
from . import lpa
from .fixtures import write_fixtures
from .harness import SUITES, conjecture_check, run_suite
from .ktheory import (
    IntMatrix,
    ShiftEquivalenceWitness,
    k0_group,
    lift_shift_equivalence,
    verify_shift_equivalence,
)
from .presentation import face_quotient_presentation, lpa_presentation, presentations_match
from .quiver import OutSplitPartition, Quiver, QuiverError, kronecker_product, out_split

OK, FALSE, BAD_INPUT, PRECONDITION = 0, 1, 2, 3
SEED_ENV = "QUIVERLAB_SEED"


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _load_quiver(path: str) -> Quiver:
    try:
        return Quiver.from_json(_load_json(path))
    except QuiverError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_matrix(path: str) -> IntMatrix:
    try:
        return IntMatrix.from_json(_load_json(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _size(x):
    return "inf" if x == math.inf else x


def _render(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return pad + ", ".join(json.dumps(v) for v in obj)
        return "\n".join(f"{pad}-\n{_render(v, indent + 1)}" for v in obj)
    return pad + json.dumps(obj)


# -- subcommands: each returns (report, exit code) ------------------------------------

def cmd_validate(args):
    q = _load_quiver(args.quiver)
    return {"valid": True, "name": q.name, "vertices": len(q.vertices), "edges": len(q.edges)}, OK


def cmd_kron(args):
    a = _load_quiver(args.quiver)
    b = _load_quiver(args.other) if args.other else a
    try:
        return kronecker_product(a, b, sep=args.sep), OK
    except QuiverError as exc:
        raise InputError(str(exc)) from None


def cmd_outsplit(args):
    q = _load_quiver(args.quiver)
    raw = _load_json(args.partition)
    try:
        p = OutSplitPartition({v: tuple(tuple(block) for block in blocks) for v, blocks in raw.items()})
        return out_split(q, p), OK
    except (QuiverError, AttributeError, TypeError) as exc:
        raise InputError(f"bad partition: {exc}") from None


def _predicate(name, value, witness=None):
    return {"predicate": name, "value": value, "witness": witness}


def cmd_props(args):
    q = _load_quiver(args.quiver)
    props = lpa.ring_properties(q)
    free = an.exit_free_cycles(q)
    report = [
        _predicate("acyclic", an.is_acyclic(q)),
        _predicate("conditionL", not free, [e.name for e in free[0].edges] if free else None),
        _predicate("conditionK", an.condition_K(q)),
        _predicate("downwardDirected", props.prime),
        _predicate("diagonalIsIdeal", an.diagonal_is_ideal(q)),
    ]
    report += [_predicate(k, v) for k, v in props.to_json().items()]
    chains = an.cycle_chains(q)
    report.append(_predicate("disjointCycles", chains.disjoint,
                             {"d1": chains.d1, "d2": chains.d2} if chains.disjoint else None))
    report.append(_predicate("lineP", None, sorted(an.line_points(q), key=q.index.get)))
    kinds = an.classify_vertices(q)
    report.append(_predicate("vertexKinds", None, {v: kinds[v].value for v in q.vertices}))
    return report, OK


def cmd_census(args):
    q = _load_quiver(args.quiver)
    c = an.degree_census(q)
    return {k: list(getattr(c, k)) for k in ("sinks", "sources", "isolated", "regular")} | {
        "counts": c.counts()}, OK


def cmd_k0(args):
    return k0_group(_load_quiver(args.quiver)).to_json(), OK


def cmd_decompose(args):
    return lpa.decompose(_load_quiver(args.quiver)).to_json(), OK


def cmd_socle(args):
    q = _load_quiver(args.quiver)
    return lpa.socle_decomposition(q).to_json(q), OK


def cmd_dim(args):
    a = _load_quiver(args.quiver)
    if args.cross:
        b = _load_quiver(args.other) if args.other else a
        return {"dim": lpa.cross_product_dim(a, b, args.degree)}, OK
    if args.other:
        raise InputError("a second quiver is only meaningful with --cross")
    report = {"dim": lpa.dim_graded(a, args.degree)}
    if args.oracle:
        report["oracle"] = lpa.dim_graded_oracle(a, args.degree)
        return report, OK if report["oracle"] == report["dim"] else FALSE
    return report, OK


def cmd_gk(args):
    q = _load_quiver(args.quiver)
    chains = an.cycle_chains(q)
    return {"gk": _size(lpa.gk_dimension(q)), "d1": chains.d1, "d2": chains.d2}, OK


def cmd_gradediso(args):
    a, b = _load_quiver(args.quiver), _load_quiver(args.other)
    ia, ib = lpa.graded_iso_invariant(a), lpa.graded_iso_invariant(b)
    same = ia == ib
    return {"gradedIso": same, "invariants": [list(map(list, ia)), list(map(list, ib))]}, \
        OK if same else FALSE


def cmd_conjecture(args):
    r = conjecture_check(_load_quiver(args.quiver))
    return r.to_json(), FALSE if r.verdict == "Fail" else OK


def cmd_shifteq(args):
    try:
        w = ShiftEquivalenceWitness(_load_matrix(args.a), _load_matrix(args.b),
                                    _load_matrix(args.r), _load_matrix(args.s), args.l)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    v = verify_shift_equivalence(w)
    report = {"valid": v.ok, "failures": list(v.failures)}
    if args.lift and v.ok:
        lifted = lift_shift_equivalence(w)
        report["lifted"] = lifted.to_json()
        report["liftedValid"] = verify_shift_equivalence(lifted).ok
    return report, OK if v.ok else FALSE


def cmd_presentations(args):
    q = _load_quiver(args.quiver)
    left, right = lpa_presentation(q), face_quotient_presentation(q)
    if args.text:
        return left.to_text() + "\n" + right.to_text(), OK
    r = presentations_match(left, right)
    return r.to_json(), OK if r.match else FALSE


def cmd_proptest(args):
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV, "0")
        try:
            seed = int(env, 0)
        except ValueError:
            raise InputError(f"{SEED_ENV}={env!r} is not an integer") from None
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}")
    r = run_suite(args.suite, args.trials, seed)
    return r.to_json(), OK if r.ok else FALSE


def cmd_fixtures(args):
    paths = write_fixtures(args.directory)
    return {"written": [str(p) for p in paths]}, OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverlab", description="Kronecker squares of quivers and "
                                "invariants of their Leavitt path algebras.")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    p.add_argument("--dot", action="store_true", help="emit quiver results as Graphviz DOT")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, inputs="one"):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("quiver", help="quiver JSON file ('-' for stdin)")
        if inputs == "two":
            sp.add_argument("other", help="second quiver JSON file")
        if inputs == "optional":
            sp.add_argument("other", nargs="?", help="optional second quiver JSON file")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "parse and check a quiver file")
    k = add("kron", cmd_kron, "Kronecker product (square when one input)", "optional")
    k.add_argument("--sep", default="|", help="separator for paired names")
    o = add("outsplit", cmd_outsplit, "out-split by an edge partition")
    o.add_argument("--partition", required=True, help='JSON {"v": [["e1"], ["e2"]], ...}')
    add("props", cmd_props, "graph predicates and ring properties")
    add("census", cmd_census, "sinks, sources, isolated and regular vertices")
    add("k0", cmd_k0, "K0 of the Leavitt path algebra")
    add("decompose", cmd_decompose, "matrix decomposition (locally finite only)")
    add("socle", cmd_socle, "socle summands and quotient quiver")
    d = add("dim", cmd_dim, "dimension of a graded component", "optional")
    d.add_argument("--degree", type=int, default=0)
    d.add_argument("--cross", action="store_true", help="cross product with the second quiver")
    d.add_argument("--oracle", action="store_true", help="also compute via the decomposition")
    add("gk", cmd_gk, "Gelfand-Kirillov dimension")
    add("gradediso", cmd_gradediso, "graded-iso invariant comparison (acyclic)", "two")
    add("conjecture", cmd_conjecture, "socle-quotient check on Q and its square")
    s = sub.add_parser("shifteq", help="verify a shift-equivalence witness")
    for flag in ("--a", "--b", "--r", "--s"):
        s.add_argument(flag, required=True, help="matrix JSON file")
    s.add_argument("--l", type=int, default=1, help="lag")
    s.add_argument("--lift", action="store_true", help="also output the Kronecker-squared witness")
    s.set_defaults(fn=cmd_shifteq)
    pr = add("presentations", cmd_presentations, "compare the two presentations of L(Q^)")
    pr.add_argument("--text", action="store_true", help="print both presentations instead")
    t = sub.add_parser("proptest", help="run a property suite")
    t.add_argument("--suite", required=True, help=", ".join(sorted(SUITES)))
    t.add_argument("--trials", type=int, default=200)
    t.add_argument("--seed", type=lambda x: int(x, 0), default=None,
                   help=f"defaults to ${SEED_ENV} or 0")
    t.set_defaults(fn=cmd_proptest)
    f = sub.add_parser("fixtures", help="write the bundled quivers and their squares")
    f.add_argument("directory", nargs="?", default="fixtures")
    f.set_defaults(fn=cmd_fixtures)
    return p


def _emit(report, args):
    if isinstance(report, Quiver):
        if args.dot:
            print(report.to_dot(), end="")
            return
        report = report.to_json()
    if isinstance(report, str):
        print(report, end="")
    elif args.pretty:
        print(_render(report))
    else:
        print(json.dumps(report))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else BAD_INPUT
    try:
        report, code = args.fn(args)
    except (InputError, QuiverError) as exc:
        print(json.dumps({"error": str(exc)}))
        return BAD_INPUT
    except lpa.PreconditionError as exc:
        print(json.dumps({"error": str(exc), "precondition": True}))
        return PRECONDITION
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
