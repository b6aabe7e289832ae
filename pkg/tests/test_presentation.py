import pytest
from hypothesis import given

from quiverlab.fixtures import A2, E, EPRIME, ROSE2, T
from quiverlab.presentation import (
    Presentation,
    Relation,
    RewriteSystem,
    face_quotient_presentation,
    face_to_bracket,
    lincomb,
    lpa_presentation,
    presentations_match,
)
from quiverlab.quiver import kronecker_square, quiver

from conftest import quivers


@pytest.mark.parametrize("q", [A2, ROSE2, T, E, EPRIME], ids=lambda q: q.name)
def test_presentations_match(q):
    r = presentations_match(lpa_presentation(q), face_quotient_presentation(q))
    assert r.match, r.to_json()
    assert r.checked > 0


def test_edgeless_quiver_is_just_idempotents():
    q = quiver("P", ["v"])
    a, b = lpa_presentation(q), face_quotient_presentation(q)
    assert [k for _, k in a.generators] == ["vertex"]
    assert len(a.relations) == len(b.relations) == 1
    assert presentations_match(a, b).match


@given(quivers(max_vertices=3, max_edges=4))
def test_presentations_match_on_random_quivers(q):
    assert presentations_match(lpa_presentation(q), face_quotient_presentation(q)).match


def test_generator_counts():
    p = lpa_presentation(E)
    sq = kronecker_square(E)
    kinds = [k for _, k in p.generators]
    assert kinds.count("vertex") == 9 and kinds.count("edge") == kinds.count("ghost") == len(sq.edges)


def test_renaming():
    assert face_to_bracket("x[u,v]") == "[u,v]"
    assert face_to_bracket("x[e*,f*]") == "[e,f]*"
    assert face_to_bracket("[u,v]") == "[u,v]"


def _drop(p, pred):
    return Presentation(p.name, p.generators, tuple(r for r in p.relations if not pred(r)))


def test_missing_ck2_is_detected():
    face = face_quotient_presentation(E)
    broken = _drop(face, lambda r: r.label == "ideal-CK2" and "x[v,v]" in str(r))
    r = presentations_match(lpa_presentation(E), broken)
    assert not r.match
    assert any(d["relation"].startswith("[v,v] =") for d in r.diff)


def test_missing_ck1_is_detected():
    face = face_quotient_presentation(T)
    broken = _drop(face, lambda r: r.label == "ideal-CK1" and r.rhs)
    r = presentations_match(lpa_presentation(T), broken)
    assert not r.match and r.problems


def test_wrong_relation_is_detected():
    lpa = lpa_presentation(A2)
    bad = Relation(lincomb([(("[e,e]*", "[e,e]"), 1)]), lincomb([(("[v1,v1]",), 1)]), "bogus")
    tampered = Presentation(lpa.name, lpa.generators, lpa.relations + (bad,))
    r = presentations_match(tampered, face_quotient_presentation(A2))
    assert not r.match


def test_undeclared_symbol_rejected():
    with pytest.raises(ValueError):
        Presentation("p", (("a", "vertex"),), (Relation(lincomb([(("b",), 1)]), ()),))


def test_normal_form_ck2_rewrite():
    # in L(ROSE2^) the CK2 sum at the single vertex reduces to 0
    p = lpa_presentation(ROSE2)
    system = RewriteSystem.from_presentation(p)
    assert not system.problems
    ck2 = next(r for r in p.relations if r.label == "CK2")
    assert system.normal_form(ck2.difference()) == {}


def test_text_format():
    text = lpa_presentation(A2).to_text()
    lines = text.splitlines()
    assert "[e,e]* [e,e] = [v2,v2]" in lines
    assert "[v1,v1] = [e,e] [e,e]*" in lines
