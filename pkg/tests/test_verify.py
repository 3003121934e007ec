import random
from fractions import Fraction

import pytest

from nonproper.corpus import automorphism_corpus, nonproper_corpus
from nonproper.dicritical import ComponentParam, build_tree, enumerate_dicritical
from nonproper.errors import NonproperError
from nonproper.poly import BiPoly, PolyMap, normalize_monic
from nonproper.resultant import resultant_in_y
from nonproper.verify import (
    FAIL,
    PASS,
    VACUOUS,
    assertion_check,
    cross_substitution,
    cross_validate,
    fiber_count,
    geometric_degree_agreement,
    jacobian_constancy,
    random_shear,
    specialized_resultant,
    verify_cor2,
    verify_theorem1,
)

PREC = 256
u, v = BiPoly.gens(("u", "v"))
F = Fraction


def comp(p, q):
    return ComponentParam(None, tuple(F(c) for c in p), tuple(F(c) for c in q))


def test_jacobian_constancy():
    assert jacobian_constancy(PolyMap.parse("x + y^2", "y")) == 1
    assert jacobian_constancy(PolyMap.parse("x + y", "x*y + y^2")) is None
    assert jacobian_constancy(PolyMap.parse("x", "y")) == 1
    assert jacobian_constancy(PolyMap.parse("2*x", "3*y")) == 6


def test_theorem1_synthetic():
    assert verify_theorem1(None, [], A=1, B=1, d=1, e=2)["status"] == VACUOUS
    rep = verify_theorem1(None, [comp([0, 1, 0, 2], [1, 0, 0, 0, 0, 0, 4])], A=1, B=1, d=1, e=2)
    (row,) = rep["components"]
    assert rep["status"] == PASS and row["C"] == 2 and row["D"] == 3
    rep = verify_theorem1(None, [comp([0, 0, 1], [0, 0, 0, 1])], A=1, B=1, d=1, e=1)
    assert rep["status"] == FAIL


def test_cor2_synthetic():
    rep = verify_cor2(None, [comp([0, 1], [0, 0, 1])], A=1, B=1, d=1, e=2)
    (row,) = rep["components"]
    assert rep["status"] == PASS and row["c"] == 1
    assert row["relation_1"] and row["relation_2"]
    rep = verify_cor2(None, [comp([0, 1], [0, 0, 1]), comp([0, 1], [0, 0, -1])], A=1, B=1, d=1, e=2)
    assert rep["one_point_at_infinity"] is False and rep["status"] == FAIL
    assert verify_cor2(None, [], A=1, B=1, d=1, e=2)["status"] == VACUOUS


def test_cor2_constant_coordinate():
    nf = normalize_monic(PolyMap.parse("x", "x*y"))
    comps = enumerate_dicritical(nf, precision=PREC)
    rep = verify_cor2(nf, comps)
    assert rep["components"][0]["special"] == "constant_p"
    assert jacobian_constancy(nf.map) is None


def test_cross_validate_examples():
    (c,) = enumerate_dicritical(normalize_monic(PolyMap.parse("x", "x*y")), precision=PREC)
    rep = cross_validate(-u, [c], precision=PREC)
    assert rep["status"] == PASS and rep["residuals"] == [0]
    assert cross_validate(BiPoly.const(1, ("u", "v")), [], precision=PREC)["status"] == VACUOUS
    rep = cross_validate(u * u - v, [comp([0, 1], [0, 0, 1])], precision=PREC)
    assert rep["status"] == PASS and rep["residuals"] == [0]


def test_cross_validate_rejects_wrong_component():
    rep = cross_validate(u * u - v, [comp([0, 1], [0, 0, 2])], precision=PREC)
    assert rep["status"] == FAIL and not rep["forward"]
    # a missing component is caught by the converse sampling
    rep = cross_validate((u * u - v) * (u - 3), [comp([0, 1], [0, 0, 1])], precision=PREC)
    assert rep["status"] == FAIL and rep["forward"] and not rep["converse"]["passed"]


@pytest.mark.parametrize("f", nonproper_corpus())
def test_corpus_components_cross_validate(f):
    nf = normalize_monic(f)
    R0 = resultant_in_y(nf).R0
    comps = enumerate_dicritical(nf, precision=PREC)
    assert comps
    assert cross_validate(R0, comps, precision=PREC)["status"] == PASS


def test_fiber_count_examples():
    assert fiber_count(PolyMap.parse("x + y^2", "y"), (5, 1))[0] == 1
    assert fiber_count(PolyMap.parse("x", "x*y"))[0] == 1
    assert fiber_count(PolyMap.parse("x", "x*y^3 + y"))[0] == 3
    with pytest.raises(NonproperError) as info:
        fiber_count(PolyMap.parse("x", "x*y"), (0, 1))
    assert info.value.code == "theorem_verifier.degenerate_value"


def test_specialized_resultant_matches_symbolic():
    nf = normalize_monic(PolyMap.parse("x*y", "x*y^2 + y"))
    rd = resultant_in_y(nf)
    uv, vv = F(3, 2), F(-7)
    spec = specialized_resultant(nf, uv, vv)
    assert spec == rd.specialize(uv, vv)[: len(spec)]


@pytest.mark.parametrize("f", nonproper_corpus()[:6] + automorphism_corpus(3, seed=2, max_degree=5))
def test_fiber_count_equals_geometric_degree(f):
    N = resultant_in_y(normalize_monic(f)).N
    assert geometric_degree_agreement(f, N, samples=2, seed=1, precision=PREC)["status"] == PASS


@pytest.mark.parametrize("f", nonproper_corpus()[:5] + automorphism_corpus(3, seed=4, max_degree=5))
def test_coordinate_invariance(f):
    rng = random.Random(9)
    a = build_tree(normalize_monic(f), precision=PREC)
    g = f.compose_right(random_shear(rng))
    b = build_tree(normalize_monic(g), precision=PREC)
    R0a = resultant_in_y(a.nf).R0
    R0b = resultant_in_y(b.nf).R0
    assert cross_substitution(R0a, a.components, R0b, b.components, precision=PREC)["status"] == PASS


def test_assertion_check():
    nf = normalize_monic(PolyMap.parse("x + y^2", "y"))
    assert assertion_check(build_tree(nf, precision=PREC), 1)["status"] == VACUOUS
    nf = normalize_monic(PolyMap.parse("x", "x*y"))
    assert assertion_check(build_tree(nf, precision=PREC), None)["status"] == "N-A"
