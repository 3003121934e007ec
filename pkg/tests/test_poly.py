from fractions import Fraction

import pytest
from hypothesis import given

from conftest import bipolys, small_fractions
from nonproper.errors import DegreeError, NonDominantError, ParseError
from nonproper.poly import (
    BiPoly,
    PolyMap,
    jacobian,
    leading_relation_check,
    normalize_monic,
    parse_polynomial,
    shear,
)

x, y = BiPoly.gens()


def test_parse_examples():
    assert parse_polynomial("y^2 + x") == BiPoly({(1, 0): 1, (0, 2): 1})
    zero = parse_polynomial("0")
    assert zero.is_zero() and zero.terms == ()
    assert parse_polynomial("x*y - y*x").is_zero()


def test_parse_syntax():
    assert parse_polynomial("3/2*x^2*y - x + 1") == BiPoly({(2, 1): Fraction(3, 2), (1, 0): -1, (0, 0): 1})
    assert parse_polynomial("(x + y)**2") == x * x + 2 * x * y + y * y
    assert parse_polynomial("-(x - 1)/2") == BiPoly({(1, 0): Fraction(-1, 2), (0, 0): Fraction(1, 2)})
    assert parse_polynomial("u*v^2", ("u", "v")) == BiPoly({(1, 2): 1}, ("u", "v"))


@pytest.mark.parametrize("text", ["x +", "x ^ y", "2 * * x", "(x + 1", "z", "x / y", "x / 0", "1.5*x", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text)
    assert info.value.code == "poly_core.syntax"
    assert info.value.position >= 0


def test_canonical_printing_roundtrip():
    p = parse_polynomial("1 - x + 3/2*y*x^2")
    assert str(p) == "3/2*x^2*y - x + 1"
    assert parse_polynomial(str(p)) == p
    assert str(BiPoly()) == "0"


@given(bipolys())
def test_print_parse_roundtrip(p):
    assert parse_polynomial(str(p)) == p


def test_no_zero_terms_and_degrees():
    p = BiPoly({(2, 1): 3, (0, 0): 0, (1, 1): Fraction(0)})
    assert p.terms == (((2, 1), Fraction(3)),)
    assert p.degree() == 3 and p.degree_in(0) == 2 and p.degree_in(1) == 1
    assert BiPoly().degree() == -1


@given(bipolys(), bipolys(), bipolys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == BiPoly()


@given(bipolys(), bipolys(), bipolys())
def test_jacobian_is_derivation(p, q, r):
    lhs = jacobian(PolyMap(p, q * r)) if not (p.is_zero() or (q * r).is_zero()) else None
    if lhs is None:
        return
    rhs_a = jacobian(PolyMap(p, r)) if not r.is_zero() else BiPoly()
    rhs_b = jacobian(PolyMap(p, q)) if not q.is_zero() else BiPoly()
    assert lhs == q * rhs_a + r * rhs_b


def test_jacobian_examples():
    assert jacobian(PolyMap(x, y)) == BiPoly.const(1)
    assert jacobian(PolyMap.parse("x + y^2", "y")) == BiPoly.const(1)
    assert jacobian(PolyMap.parse("x + y", "x*y + y^2")) == x + y


@given(small_fractions, small_fractions, bipolys(max_degree=3))
def test_chain_rule_for_tame_factors(lam, mu, h):
    h_y = BiPoly({(0, j): c for (i, j), c in h.terms if i == 0})
    tri = PolyMap(x + h_y, y)
    lin = PolyMap(x * 2 + y * lam, x * mu + y)
    if jacobian(lin).is_zero():
        return
    assert jacobian(tri) == BiPoly.const(1)
    assert jacobian(shear(lam)) == BiPoly.const(1)
    for outer in (PolyMap(x * x + y, x), lin, shear(mu)):
        for inner in (tri, lin, shear(lam).compose_right(tri)):
            composite = outer.compose_right(inner)
            assert jacobian(composite) == jacobian(outer).compose(inner.P, inner.Q) * jacobian(inner)


def test_normalize_examples():
    nf = normalize_monic(PolyMap.parse("x + y^2", "y"))
    assert (nf.shear, nf.A, nf.B, nf.K, nf.d, nf.e) == (0, 1, 1, 1, 2, 1)
    nf = normalize_monic(PolyMap.parse("x", "x*y"))
    assert nf.shear == 1
    assert nf.map == PolyMap.parse("x + y", "x*y + y^2")
    assert (nf.A, nf.B, nf.K, nf.d, nf.e) == (1, 1, 1, 1, 2)
    nf = normalize_monic(PolyMap.parse("x^4 + y", "x^6 + y^2"))
    assert (nf.K, nf.d, nf.e) == (2, 2, 3)


def test_normalize_errors():
    with pytest.raises(NonDominantError):
        normalize_monic(PolyMap.parse("x", "x"))
    with pytest.raises(NonDominantError):
        normalize_monic(PolyMap.parse("x + y", "(x + y)^2"))
    with pytest.raises((DegreeError, NonDominantError)):
        normalize_monic(PolyMap.parse("1", "x"))


@given(bipolys(max_degree=3), bipolys(max_degree=3))
def test_normalize_invariants(p, q):
    if p.is_zero() or q.is_zero() or jacobian(PolyMap(p, q)).is_zero():
        return
    f = PolyMap(p, q)
    nf = normalize_monic(f)
    assert nf.P.degree_in(1) == nf.P.degree() == nf.K * nf.d
    assert nf.Q.degree_in(1) == nf.Q.degree() == nf.K * nf.e
    assert nf.A == nf.P.coeff(0, nf.deg_P) != 0
    assert nf.B == nf.Q.coeff(0, nf.deg_Q) != 0
    # J of the normalized pair is J of the input composed with the shear
    # (the shear has Jacobian 1)
    s = shear(nf.shear)
    assert jacobian(nf.map) == jacobian(f).compose(s.P, s.Q)


def test_leading_relation():
    nf = normalize_monic(PolyMap.parse("x + y^2", "y"))
    res = leading_relation_check(nf)
    assert res["applicable"] and res["holds"] and res["ratio"] == 1
    nf = normalize_monic(PolyMap.parse("x", "x*y"))
    assert leading_relation_check(nf)["applicable"] is False
    nf = normalize_monic(PolyMap.parse("y^4", "2*y^2 + x"))
    res = leading_relation_check(nf)
    assert (nf.A, nf.B, nf.d, nf.e) == (1, 2, 2, 1)
    assert res["holds"] is False and res["ratio"] == 4
    assert res["holds_reciprocal"] is True
