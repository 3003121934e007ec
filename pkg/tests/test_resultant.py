import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import bipolys, small_fractions
from nonproper.corpus import automorphism_corpus, nonproper_corpus
from nonproper.errors import ResourceLimitError
from nonproper.poly import BiPoly, PolyMap, jacobian, normalize_monic
from nonproper.resultant import (
    determinant_at,
    extract_R0,
    r0_shape_check,
    resultant_in_y,
)

u, v = BiPoly.gens(("u", "v"))


def _rd(p, q):
    nf = normalize_monic(PolyMap.parse(p, q))
    return nf, resultant_in_y(nf)


def test_examples():
    _, rd = _rd("x + y^2", "y")
    assert rd.N == 1 and [str(c) for c in rd.coeffs] == ["1", "v^2 - u"]
    _, rd = _rd("x", "x*y")
    assert rd.N == 1 and rd.R0 == -u and rd.coeffs[1] == u * u - v
    _, rd = _rd("x", "y")
    assert rd.N == 1 and rd.R0 == BiPoly.const(1, ("u", "v")) and rd.coeffs[1] == v - u


def test_extract_R0():
    _, rd = _rd("x + y^2", "y")
    assert extract_R0(rd)["A_f_empty"] is True
    _, rd = _rd("x", "x*y")
    info = extract_R0(rd)
    assert info["A_f_empty"] is False and info["N"] == 1 and info["R0"] == -u
    _, rd = _rd("x", "x*y^2 + y")
    assert rd.N == 2 and not extract_R0(rd)["A_f_empty"]


def _sympy_resultant(nf):
    X, Y, U, V = sympy.symbols("x y u v")
    P = sympy.sympify(str(nf.P).replace("^", "**"), locals={"x": X, "y": Y})
    Q = sympy.sympify(str(nf.Q).replace("^", "**"), locals={"x": X, "y": Y})
    return sympy.Poly(sympy.resultant(P - U, Q - V, Y), X, U, V)


def _coefficient_table(rd):
    table = {}
    for k, c in enumerate(rd.coeffs):
        for (i, j), a in c.terms:
            table[(rd.N - k, i, j)] = a
    return table


@pytest.mark.parametrize("f", nonproper_corpus()[:8] + automorphism_corpus(4, seed=7, max_degree=4))
def test_against_sympy(f):
    # sympy normalizes the sign its own way, so compare up to a global sign
    nf = normalize_monic(f)
    rd = resultant_in_y(nf)
    ref = _sympy_resultant(nf)
    assert ref.degree(sympy.Symbol("x")) == rd.N
    ours = _coefficient_table(rd)
    theirs = {m: Fraction(int(c.p), int(c.q)) for m, c in zip(ref.monoms(), ref.coeffs())}
    assert ours == theirs or ours == {m: -c for m, c in theirs.items()}


@pytest.mark.parametrize("f", nonproper_corpus()[:6])
def test_sign_is_product_over_fiber_of_Q(f):
    nf = normalize_monic(f)
    rd = resultant_in_y(nf)
    xv, uv, vv = Fraction(2, 3), Fraction(-1, 2), Fraction(5, 7)
    qy = [sum(c * xv ** i for (i, jj), c in nf.Q.terms if jj == j) for j in range(nf.deg_Q + 1)]
    qy[0] -= vv
    mp = lambda q: mpmath.mpf(q.numerator) / q.denominator
    with mpmath.workprec(200):
        roots = mpmath.polyroots([mp(c) for c in reversed(qy)], maxsteps=200, extraprec=200)
        prod = mp(qy[-1]) ** nf.deg_P
        for r in roots:
            prod *= sum(mp(c) * mp(xv) ** i * r ** j for (i, j), c in nf.P.terms) - mp(uv)
        assert abs(prod - mp(rd.evaluate(xv, uv, vv))) < mpmath.mpf(2) ** -100


@given(bipolys(max_degree=2), bipolys(max_degree=2), small_fractions, small_fractions, small_fractions)
def test_specialization_matches_direct_determinant(p, q, xv, uv, vv):
    if p.is_zero() or q.is_zero() or jacobian(PolyMap(p, q)).is_zero():
        return
    nf = normalize_monic(PolyMap(p, q))
    rd = resultant_in_y(nf)
    assert rd.evaluate(xv, uv, vv) == determinant_at(nf, xv, uv, vv)
    assert rd.N <= nf.deg_P * nf.deg_Q
    spec = rd.specialize(uv, vv)
    assert sum(c * xv ** k for k, c in enumerate(spec)) == rd.evaluate(xv, uv, vv)


def test_multiplicativity():
    # Res_y((y - a(x)) (y - b(x)) - u, ...) at u = 0 against monic g is g(a) g(b)
    rng = random.Random(5)
    x, y = BiPoly.gens()
    for _ in range(10):
        a = x * rng.randint(-3, 3) + rng.randint(-3, 3)
        b = x * rng.randint(-3, 3) + rng.randint(-3, 3)
        g = y ** 2 + x * rng.randint(-2, 2) * y + rng.randint(-4, 4)
        F = (y - a) * (y - b)
        f = PolyMap(F, g)
        if jacobian(f).is_zero():
            continue
        nf = normalize_monic(f)
        if nf.shear != 0:
            continue
        rd = resultant_in_y(nf)
        expected = g.compose(x, a) * g.compose(x, b)
        for xv in range(-2, 3):
            assert rd.evaluate(xv, 0, 0) == expected(xv, 0)


def test_term_cap():
    nf = normalize_monic(PolyMap.parse("x^3 + y^3 + x*y", "x^2*y + y^3 + x"))
    with pytest.raises(ResourceLimitError) as info:
        resultant_in_y(nf, term_cap=3)
    assert info.value.exit_status == 3


def test_shape_examples():
    rep = r0_shape_check(3 * (u ** 2 - v) ** 2 + u, A=1, B=1, d=1, e=2)
    assert rep.applicable and rep.C == 3 and rep.M == 2 and rep.leading_ok and rep.support_ok
    rep = r0_shape_check(-u, A=1, B=1, d=1, e=2)
    assert not rep.leading_ok and not rep.passed
    rep = r0_shape_check((u - v) ** 3, A=1, B=1, d=1, e=1)
    assert rep.C == 1 and rep.M == 3 and rep.passed
    rep = r0_shape_check(BiPoly.const(5, ("u", "v")), A=1, B=1, d=1, e=1)
    assert not rep.applicable and rep.passed


def test_shape_flags_support_violation():
    rep = r0_shape_check((u ** 2 - v) ** 2 + u ** 5, A=1, B=1, d=1, e=2)
    assert not rep.passed
    rep = r0_shape_check((u ** 2 - v) + u * v, A=1, B=1, d=1, e=2)
    assert not rep.passed


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), small_fractions, small_fractions)
def test_shape_accepts_binomial_powers(d, e, M, A, B):
    if A == 0 or B == 0 or sympy.gcd(d, e) != 1:
        return
    R0 = (u ** e * A ** e - v ** d * B ** d) ** M * Fraction(-2, 3) + u ** 0
    rep = r0_shape_check(R0, A=A, B=B, d=d, e=e)
    assert rep.passed and rep.M == M and rep.C == Fraction(-2, 3)
