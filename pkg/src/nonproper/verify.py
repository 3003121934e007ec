"""Theorem-level checks on a computed run, and the cross-checks between the
resultant route and the dicritical-search route to the non-proper value set.

Statuses are the strings PASS, FAIL, VACUOUS and N-A.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import upoly
from .dicritical import ComponentParam, DicriticalTree, _bezout, in_image, theorem_shape
from .errors import NonproperError
from .poly import BiPoly, NormalForm, PolyMap, jacobian, normalize_monic
from .resultant import R0ShapeReport, determinant_at
from .scalars import (
    DEFAULT_PRECISION,
    close,
    is_exact,
    match_tolerance,
    scalar_to_json,
    to_complex,
    zero_tolerance,
)

PASS, FAIL, VACUOUS, NA = "PASS", "FAIL", "VACUOUS", "N-A"

SAMPLE_RANGE = 10**6
MAX_RESAMPLES = 25


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def jacobian_constancy(f: PolyMap):
    """The value of J(P, Q) when it is a nonzero constant, else None."""
    J = jacobian(f)
    if J.is_constant() and not J.is_zero():
        return J.constant_term()
    return None


# ---------------------------------------------------------------- theorem


def _shape_data(nf, A, B, d, e):
    if nf is not None:
        A = nf.A if A is None else A
        B = nf.B if B is None else B
        d = nf.d if d is None else d
        e = nf.e if e is None else e
    return A, B, d, e


def verify_theorem1(nf: NormalForm | None, components, *, A=None, B=None, d=None, e=None) -> dict:
    """Check each component against ``(A C^d xi^(D d) + ..., B C^e xi^(D e) + ...)``.

    Leading data may be given explicitly for synthetic parametrizations.
    """
    A, B, d, e = _shape_data(nf, A, B, d, e)
    if not components:
        return {"status": VACUOUS, "components": []}
    results = []
    for comp in components:
        p, q = comp.f_phi
        res = theorem_shape(p, q, A, B, d, e)
        if res["holds"]:
            # after xi -> xi / C the leading coefficients must be exactly (A, B)
            np_, nq_ = res["normalized"]
            res["holds"] = close(upoly.lc(np_), A) and close(upoly.lc(nq_), B)
        results.append(res)
    return {"status": _status(all(r["holds"] for r in results)), "components": results}


def _point_at_infinity(p, q, d, e):
    """Key identifying where the curve ``(p, q)`` meets infinity.

    When deg p : deg q = d : e the key is the weighted direction, the class
    of (lc p, lc q) under (s, t) ~ (z^d s, z^e t), represented by
    ``lc(p)^e / lc(q)^d``; otherwise the ordinary projective point.
    """
    dp, dq = upoly.degree(p), upoly.degree(q)
    lp, lq = upoly.lc(p), upoly.lc(q)
    if dp > 0 and dq > 0 and dp * e == dq * d:
        return ("weighted", lp ** e / lq ** d)
    if dp > dq:
        return ("projective", (Fraction(1), Fraction(0)))
    if dq > dp:
        return ("projective", (Fraction(0), Fraction(1)))
    return ("projective", (Fraction(1), lq / lp))


def _same_key(k1, k2) -> bool:
    if k1[0] != k2[0]:
        return False
    if k1[0] == "weighted":
        return close(k1[1], k2[1])
    return all(close(a, b) for a, b in zip(k1[1], k2[1]))


def verify_cor2(nf: NormalForm | None, components, *, A=None, B=None, d=None, e=None) -> dict:
    """Branch-at-infinity data of every component.

    Along ``xi -> infinity`` a component ``u = lp xi^(D d) + ...,
    v = lq xi^(D e) + ...`` has ``u ~ c v^(d/e)`` with ``c^e = lp^e / lq^d``.
    Two relations are recorded without preferring either:

    * ``c^e B^d = A^e`` (what the normal-form leading coefficients give);
    * some e-th root c of ``lp^e / lq^d`` has ``c^d = B^d / A^e``.

    Components with a constant coordinate are axis-parallel lines and are
    reported separately.
    """
    A, B, d, e = _shape_data(nf, A, B, d, e)
    if not components:
        return {"status": VACUOUS, "components": [], "one_point_at_infinity": None}
    rows = []
    keys = []
    for comp in components:
        p, q = comp.f_phi
        dp, dq = upoly.degree(p), upoly.degree(q)
        keys.append(_point_at_infinity(p, q, d, e))
        if dp <= 0 or dq <= 0:
            rows.append({"special": "constant_p" if dp <= 0 else "constant_q",
                         "relation_1": None, "relation_2": None})
            continue
        if dp * e != dq * d:
            rows.append({"special": "degree_ratio", "degrees": [dp, dq],
                         "relation_1": False, "relation_2": False})
            continue
        lp, lq = upoly.lc(p), upoly.lc(q)
        gamma = lp ** e / lq ** d
        beta = Fraction(B) ** d / Fraction(A) ** e
        rel1 = close(gamma * Fraction(B) ** d, Fraction(A) ** e)
        s, t = _bezout(d, e)
        c = beta ** s * gamma ** t if gamma != 0 and beta != 0 else None
        rel2 = c is not None and close(c ** e, gamma) and close(c ** d, beta)
        rows.append({"special": None, "c_pow_e": gamma, "c": c,
                     "relation_1": rel1, "relation_2": rel2})
    one_point = all(_same_key(keys[0], k) for k in keys[1:])
    ok = one_point and all(r["relation_1"] or r["relation_2"] for r in rows if r["special"] is None)
    return {"status": _status(ok), "components": rows, "one_point_at_infinity": one_point}


# ------------------------------------------------------- cross-validation


def r0_along(R0: BiPoly, comp: ComponentParam) -> list:
    """``R0(p(xi), q(xi))`` as a coefficient list in xi."""
    p, q = comp.f_phi
    pp = [[Fraction(1)]]
    qp = [[Fraction(1)]]
    for _ in range(R0.degree_in(0)):
        pp.append(upoly.mul(pp[-1], p))
    for _ in range(R0.degree_in(1)):
        qp.append(upoly.mul(qp[-1], q))
    total: list = []
    for (i, j), c in R0.terms:
        total = upoly.add(total, upoly.scale(upoly.mul(pp[i], qp[j]), c))
    return total


def _residual(poly, reference_scale):
    if all(is_exact(c) for c in poly):
        return Fraction(max((abs(c) for c in poly), default=0))
    return upoly.max_abs(poly) / max(1, reference_scale)


def cross_validate(R0: BiPoly, components, *, seed: int = 0, samples: int = 6,
                   precision: int = DEFAULT_PRECISION, tol=None) -> dict:
    """Each component must lie on ``R0 = 0``; conversely sampled points of
    ``R0 = 0`` along a random line must lie on some component.

    Exact residuals must vanish; approximate ones must stay below ``tol``
    (relative to the size of the terms involved).
    """
    with mpmath.workprec(precision):
        tol = match_tolerance(precision) if tol is None else mpmath.mpf(tol)
        residuals = []
        for comp in components:
            along = r0_along(R0, comp)
            scale = max(1, upoly.max_abs(comp.p), upoly.max_abs(comp.q)) ** R0.degree() * max(
                (abs(c) for _, c in R0.terms), default=1)
            residuals.append(_residual(along, scale))
        forward = all(r == 0 if is_exact(r) else r <= tol for r in residuals)
        converse = _converse(R0, components, seed, samples, tol, precision)
        if R0.is_constant() and not components:
            status = VACUOUS
        else:
            status = _status(forward and converse["passed"])
        return {"status": status, "residuals": residuals, "forward": forward, "converse": converse}


def _converse(R0, components, seed, samples, tol, precision):
    if R0.is_constant():
        return {"passed": not components, "points": 0, "missed": []}
    rng = random.Random(seed)
    for _ in range(MAX_RESAMPLES):
        u0, v0, du, dv = (rng.randint(-50, 50) for _ in range(4))
        if du == 0 and dv == 0:
            continue
        line = r0_along(R0, ComponentParam(None, (Fraction(u0), Fraction(du)), (Fraction(v0), Fraction(dv))))
        if upoly.degree(line) >= 1 and upoly.degree(line) == R0.degree():
            break
    else:
        return {"passed": False, "points": 0, "missed": [], "reason": "no transversal line found"}
    pts = [(u0 + r * du, v0 + r * dv) for r, _ in upoly.roots(line, precision)][:samples]
    missed = [pt for pt in pts if not any(in_image(pt, c, tol) for c in components)]
    return {"passed": not missed, "points": len(pts), "missed": missed}


# ------------------------------------------------------------ fiber count


def _interpolate(xs, ys):
    """Newton interpolation over Q, coefficients low degree first."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [coef[-1]]
    for k in range(n - 2, -1, -1):
        poly = upoly.add(upoly.mul(poly, [-xs[k], Fraction(1)]), [coef[k]])
    return poly


def specialized_resultant(nf: NormalForm, u, v) -> list:
    """``Res_y(P - u, Q - v)`` at rational (u, v) as a polynomial in x, from
    exact determinant evaluations at integer x and interpolation."""
    bound = nf.deg_P * nf.deg_Q
    xs = [Fraction(k) for k in range(bound + 1)]
    ys = [determinant_at(nf, x, u, v) for x in xs]
    return upoly.trim(_interpolate(xs, ys))


def _lifts(nf, x0, u, v, tol) -> bool:
    """Do ``P(x0, y) = u`` and ``Q(x0, y) = v`` share a solution y?"""
    Pv, Qv = nf.P.coefficients_in(1), nf.Q.coefficients_in(1)
    py = [sum(c * x0 ** i for i, c in Pv[j].items()) for j in range(len(Pv))]
    py[0] = py[0] - u
    if is_exact(x0):
        qy = [sum(c * x0 ** i for i, c in Qv[j].items()) for j in range(len(Qv))]
        qy[0] = qy[0] - v
        return upoly.degree(upoly.gcd_exact(py, qy)) > 0
    xc = to_complex(x0)
    for y0, _ in upoly.roots(py):
        yc = to_complex(y0)
        scale = abs(to_complex(v)) + sum(abs(c) * abs(xc) ** i * abs(yc) ** j for (i, j), c in nf.Q.terms)
        if abs(nf.Q(xc, yc) - v) <= tol * max(1, scale):
            return True
    return False


def fiber_count(f: PolyMap, value=None, *, seed: int = 0, precision: int = DEFAULT_PRECISION):
    """Number of preimages, with multiplicity, of a generic value.

    The value (drawn from the seed when not given) is rejected when the
    specialized resultant has a repeated root or drops below the degree seen
    at two other random values; the count is
    the number of its roots x0 over which ``P(x0, y) = u``, ``Q(x0, y) = v``
    really share a solution.  Returns ``(count, (u, v))``.
    """
    nf = normalize_monic(f)
    rng = random.Random(seed)
    given = value is not None
    with mpmath.workprec(precision):
        tol = match_tolerance(precision)
        # the generic degree, from two independent random values
        ref = max(upoly.degree(specialized_resultant(
            nf, Fraction(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)),
            Fraction(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)))) for _ in range(2))
        for _ in range(MAX_RESAMPLES):
            if given:
                u, v = (Fraction(c) for c in value)
            else:
                u = Fraction(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE))
                v = Fraction(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE))
            R = specialized_resultant(nf, u, v)
            sq = upoly.gcd_exact(R, upoly.deriv(R)) if upoly.degree(R) > 0 else [Fraction(1)]
            degenerate = upoly.degree(sq) > 0 or upoly.degree(R) < ref
            if degenerate and given:
                raise NonproperError(f"value {(u, v)} is not generic", code="theorem_verifier.degenerate_value")
            if degenerate:
                continue
            count = sum(m for x0, m in upoly.roots(R, precision) if _lifts(nf, x0, u, v, tol))
            return count, (u, v)
    raise NonproperError("no generic value found after resampling", code="theorem_verifier.degenerate_value")


def geometric_degree_agreement(f: PolyMap, N: int, *, samples: int = 5, seed: int = 0,
                               precision: int = DEFAULT_PRECISION) -> dict:
    rng = random.Random(seed)
    counts = []
    values = []
    for _ in range(samples):
        c, val = fiber_count(f, seed=rng.randrange(2**32), precision=precision)
        counts.append(c)
        values.append(val)
    return {"status": _status(all(c == N for c in counts)), "N_resultant": N,
            "N_numeric": counts, "values": values}


# ---------------------------------------------------- coordinate changes


def random_shear(rng: random.Random) -> PolyMap:
    lam = Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 3))
    x, y = BiPoly.gens()
    return PolyMap(x + lam * y, y) if rng.random() < 0.5 else PolyMap(x, y + lam * x)


def cross_substitution(R0_a: BiPoly, comps_a, R0_b: BiPoly, comps_b, precision=DEFAULT_PRECISION,
                       tol=None) -> dict:
    """Components of each run must lie on the other run's ``R0 = 0``."""
    ab = cross_validate(R0_b, comps_a, precision=precision, tol=tol)
    ba = cross_validate(R0_a, comps_b, precision=precision, tol=tol)
    same_emptiness = R0_a.is_constant() == R0_b.is_constant()
    ok = same_emptiness and ab["forward"] and ba["forward"] and bool(comps_a) == bool(comps_b)
    return {"status": _status(ok), "a_on_b": ab["residuals"], "b_on_a": ba["residuals"],
            "same_emptiness": same_emptiness}


# ------------------------------------------------- associated-node checks


def assertion_check(tree: DicriticalTree, jconst) -> dict:
    """Under a constant Jacobian, at every internal node on a path to a
    dicritical leaf: ``a/b = #S/#T = d/e`` and ``pbar^e = qbar^d`` with
    ``pbar = p / A``, ``qbar = q / B``."""
    if jconst is None:
        return {"status": NA}
    nf = tree.nf
    d, e = nf.d, nf.e
    bad = []
    checked = 0

    def visit(node, path):
        nonlocal checked
        if node.status == "dicritical":
            for anc in path:
                checked += 1
                ok = anc.a * e == anc.b * d and len(anc.S) * e == len(anc.T) * d
                pb = upoly.power(upoly.scale(anc.p, 1 / anc.A), e)
                qb = upoly.power(upoly.scale(anc.q, 1 / anc.B), d)
                diff = upoly.trim(upoly.sub(pb, qb), zero_tolerance(tree.precision))
                if not ok or diff:
                    bad.append(anc.prefix)
        for ch in node.children:
            visit(ch, path + [node])

    visit(tree.root, [])
    if not checked:
        return {"status": VACUOUS, "checked": 0}
    return {"status": _status(not bad), "checked": checked, "failing": [str(p) for p in bad]}


# ---------------------------------------------------------------- report


@dataclass
class VerifierReport:
    jacobian_constant: object
    theorem1: dict
    cor1: R0ShapeReport | None
    cor2: dict
    cross_validation: dict
    fiber_count: dict | None = None
    lemma2: dict | None = None
    lemma3: dict | None = None
    assertion: dict | None = None
    extra: dict = field(default_factory=dict)

    @property
    def theorem1_applicable(self) -> bool:
        return self.jacobian_constant is not None and self.jacobian_constant != 0

    def statuses(self) -> dict:
        out = {
            "theorem1": self.theorem1["status"],
            "cor1": NA if self.cor1 is None else (
                (PASS if self.cor1.passed else FAIL) if self.cor1.applicable else VACUOUS),
            "cor2": self.cor2["status"],
            "cross_validation": self.cross_validation["status"],
        }
        for name in ("fiber_count", "lemma2", "lemma3", "assertion"):
            part = getattr(self, name)
            if part is not None:
                out[name] = part["status"]
        return out

    @property
    def passed(self) -> bool:
        return all(s != FAIL for s in self.statuses().values())

    def to_json(self) -> dict:
        return _jsonable({
            "jacobian_constant": self.jacobian_constant,
            "theorem1_applicable": self.theorem1_applicable,
            "statuses": self.statuses(),
            "theorem1": self.theorem1,
            "cor1": None if self.cor1 is None else self.cor1.to_json(),
            "cor2": self.cor2,
            "cross_validation": self.cross_validation,
            "fiber_count": self.fiber_count,
            "lemma2": self.lemma2,
            "lemma3": self.lemma3,
            "assertion": self.assertion,
        })

    def render_text(self) -> str:
        labels = {
            "theorem1": "Theorem 1 shape of every component",
            "cor1": "R0 shape C*(A^e u^e - B^d v^d)^M + lower",
            "cor2": "components share one point at infinity",
            "cross_validation": "components lie on R0 = 0 and cover it",
            "fiber_count": "geometric degree equals fiber count",
            "lemma2": "associated-sequence recursion on every edge",
            "lemma3": "J_i identity on every positive node",
            "assertion": "leading ratios on paths to dicritical leaves",
        }
        lines = [f"Jacobian constant: {'none' if self.jacobian_constant is None else self.jacobian_constant}"]
        for key, status in self.statuses().items():
            lines.append(f"  [{status:7}] {labels[key]}")
        return "\n".join(lines)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction) or isinstance(obj, (mpmath.mpc, mpmath.mpf)):
        return scalar_to_json(obj)
    if isinstance(obj, BiPoly):
        return str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


__all__ = [
    "PASS", "FAIL", "VACUOUS", "NA",
    "jacobian_constancy", "verify_theorem1", "verify_cor2", "cross_validate",
    "fiber_count", "specialized_resultant", "geometric_degree_agreement",
    "random_shear", "cross_substitution", "assertion_check", "r0_along",
    "in_image", "VerifierReport",
]
