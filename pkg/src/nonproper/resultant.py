"""Elimination of y: ``Res_y(P - u, Q - v)`` as a polynomial in x over Q[u, v].

The Sylvester matrix has entries in Z[x, u, v] once denominators are
cleared; its determinant is computed by Bareiss fraction-free elimination,
where every division is exact.  Polynomials in (x, u, v) are plain dicts
``{(i, j, k): int}``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ResourceLimitError
from .poly import BiPoly, NormalForm

__all__ = [
    "ResultantData",
    "R0ShapeReport",
    "sylvester_matrix",
    "resultant_in_y",
    "extract_R0",
    "r0_shape_check",
    "determinant_at",
]

DEFAULT_TERM_CAP = 2_000_000

# ------------------------------------------------- sparse Z[x,u,v] helpers


def _mul(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    for (i2, j2, k2), c2 in b.items():
        for (i1, j1, k1), c1 in a.items():
            key = (i1 + i2, j1 + j2, k1 + k2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _divexact(a: dict, b: dict) -> dict:
    """Quotient of an exact division in Z[x,u,v] (lex-leading-term division
    driven by a max-heap of remainder monomials)."""
    if len(b) == 1:
        ((eb, cb),) = b.items()
        out = {}
        for e, c in a.items():
            q, r = divmod(c, cb)
            if r:
                raise ArithmeticError("inexact division")
            out[(e[0] - eb[0], e[1] - eb[1], e[2] - eb[2])] = q
        return out
    rem = dict(a)
    lead = max(b)
    lb = b[lead]
    rest = [(e, c) for e, c in b.items() if e != lead]
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quo = {}
    while heap:
        e = tuple(-x for x in heapq.heappop(heap))
        c = rem.pop(e, 0)
        if not c:
            continue
        qe = (e[0] - lead[0], e[1] - lead[1], e[2] - lead[2])
        if min(qe) < 0:
            raise ArithmeticError("inexact division")
        qc, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact division")
        quo[qe] = qc
        for eb, cb in rest:
            key = (qe[0] + eb[0], qe[1] + eb[1], qe[2] + eb[2])
            v = rem.get(key, 0) - qc * cb
            if v:
                if key not in rem:
                    heapq.heappush(heap, tuple(-x for x in key))
                rem[key] = v
            else:
                rem.pop(key, None)
    return quo


# ---------------------------------------------------------------- matrix


def _shifted_rows(coeffs_hi_to_lo: list, count: int, size: int) -> list:
    rows = []
    for r in range(count):
        row = [dict() for _ in range(size)]
        for k, c in enumerate(coeffs_hi_to_lo):
            row[r + k] = c
        rows.append(row)
    return rows


def _y_coefficients(F: BiPoly, scale: int, const_var: int | None):
    """Coefficients of ``scale * (F - t)`` in y, high degree first, as dicts
    over (x, u, v); ``t`` is u (const_var=1) or v (const_var=2)."""
    n = F.degree_in(1)
    out = [dict() for _ in range(n + 1)]
    for (i, j), c in F.terms:
        out[n - j][(i, 0, 0)] = int(c * scale)
    key = (0, 1, 0) if const_var == 1 else (0, 0, 1)
    out[n][key] = out[n].get(key, 0) - scale
    return out


def _denominator_lcm(F: BiPoly) -> int:
    return math.lcm(*(c.denominator for _, c in F.terms)) if F.terms else 1


def sylvester_matrix(nf: NormalForm):
    """Integer Sylvester matrix of ``LP*(P - u)`` and ``LQ*(Q - v)`` in y.

    The deg_y Q rows built from P - u come first.  Returns the matrix and the
    factor by which its determinant exceeds the resultant.  The sign is
    chosen so that the resultant is ``prod (P(x, y_k) - u)`` over the roots
    y_k of ``Q = v`` (times the leading coefficient power), which is the
    Sylvester determinant times ``(-1)^(deg_y P * deg_y Q)``.
    """
    LP, LQ = _denominator_lcm(nf.P), _denominator_lcm(nf.Q)
    n, m = nf.P.degree_in(1), nf.Q.degree_in(1)
    size = n + m
    rows = _shifted_rows(_y_coefficients(nf.P, LP, 1), m, size)
    rows += _shifted_rows(_y_coefficients(nf.Q, LQ, 2), n, size)
    return rows, (-1) ** (n * m) * LP ** m * LQ ** n


def _bareiss(M: list, term_cap: int) -> dict:
    M = [list(row) for row in M]
    n = len(M)
    sign = 1
    prev = {(0, 0, 0): 1}
    for k in range(n - 1):
        candidates = [i for i in range(k, n) if M[i][k]]
        if not candidates:
            return {}
        piv = min(candidates, key=lambda i: len(M[i][k]))
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                t = _mul(M[i][j], pk) if M[i][j] else {}
                if mik and M[k][j]:
                    t = _sub(t, _mul(mik, M[k][j]))
                M[i][j] = _divexact(t, prev) if t else {}
                if len(M[i][j]) > term_cap:
                    raise ResourceLimitError(
                        f"resultant term count exceeds cap {term_cap}"
                    )
            M[i][k] = {}
        prev = pk
    det = M[n - 1][n - 1]
    return det if sign > 0 else {e: -c for e, c in det.items()}


# ----------------------------------------------------------------- public


@dataclass(frozen=True)
class ResultantData:
    """``coeffs[i]`` multiplies ``x^(N - i)``; ``coeffs[0]`` is R0."""

    coeffs: tuple[BiPoly, ...]
    N: int

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0].is_zero():
            raise ValueError("R0 must be nonzero")
        if len(self.coeffs) != self.N + 1:
            raise ValueError("coefficient count must be N + 1")

    @property
    def R0(self) -> BiPoly:
        return self.coeffs[0]

    def evaluate(self, x, u, v):
        return sum(c(u, v) * x ** (self.N - i) for i, c in enumerate(self.coeffs))

    def specialize(self, u, v) -> list:
        """Coefficients (low degree first) of the resultant at fixed (u, v)."""
        return [c(u, v) for c in reversed(self.coeffs)]

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": [str(c) for c in self.coeffs]}


def resultant_in_y(nf: NormalForm, term_cap: int = DEFAULT_TERM_CAP) -> ResultantData:
    M, scale = sylvester_matrix(nf)
    det = _bareiss(M, term_cap)
    N = max((e[0] for e in det), default=0)
    buckets = [dict() for _ in range(N + 1)]
    for (i, j, k), c in det.items():
        buckets[N - i][(j, k)] = Fraction(c, scale)
    coeffs = tuple(BiPoly(b, ("u", "v")) for b in buckets)
    rd = ResultantData(coeffs, N)
    if N > nf.deg_P * nf.deg_Q:
        raise AssertionError("Bezout bound violated")
    return rd


def determinant_at(nf: NormalForm, x, u, v) -> Fraction:
    """Exact determinant of the Sylvester matrix specialized at rational
    (x, u, v), by Gaussian elimination over Q.  Independent of the Bareiss
    route; used as its oracle."""
    M, scale = sylvester_matrix(nf)
    x, u, v = Fraction(x), Fraction(u), Fraction(v)
    A = [
        [sum(c * x ** i * u ** j * v ** k for (i, j, k), c in e.items()) for e in row]
        for row in M
    ]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return det / scale


def extract_R0(rd: ResultantData) -> dict:
    R0 = rd.R0
    return {"R0": R0, "N": rd.N, "A_f_empty": R0.is_constant()}


@dataclass(frozen=True)
class R0ShapeReport:
    applicable: bool
    C: Fraction | None
    M: int
    leading_ok: bool
    support_ok: bool
    violating_terms: tuple[tuple[int, int], ...] = ()
    diagnostic: str = ""

    @property
    def passed(self) -> bool:
        return not self.applicable or (self.leading_ok and self.support_ok)

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "C": None if self.C is None else str(self.C),
            "M": self.M,
            "leading_ok": self.leading_ok,
            "support_ok": self.support_ok,
            "violating_terms": [list(t) for t in self.violating_terms],
            "diagnostic": self.diagnostic,
        }


def r0_shape_check(R0: BiPoly, nf: NormalForm | None = None, *, A=None, B=None, d=None, e=None) -> R0ShapeReport:
    """Compare R0 with ``C*(A^e u^e - B^d v^d)^M + sum_{i*d + j*e < M*d*e} c_ij u^i v^j``.

    ``A, B, d, e`` are taken from ``nf`` unless given explicitly (synthetic
    data has no normal form).
    """
    if nf is not None:
        A = nf.A if A is None else A
        B = nf.B if B is None else B
        d = nf.d if d is None else d
        e = nf.e if e is None else e
    if R0.is_zero() or R0.is_constant():
        return R0ShapeReport(False, None, 0, True, True)
    de = d * e
    weight = lambda t: t[0] * d + t[1] * e  # noqa: E731
    top = max(weight(t) for t, _ in R0.terms)
    if top % de:
        return R0ShapeReport(
            True, None, 0, False, False, (),
            f"weighted degree {top} is not divisible by d*e = {de}",
        )
    M = top // de
    u, v = BiPoly.gens(("u", "v"))
    binom = (u ** e * Fraction(A) ** e - v ** d * Fraction(B) ** d) ** M
    lead = BiPoly({t: c for t, c in R0.terms if weight(t) == top}, ("u", "v"))
    # the constant is read off the pure u-power, which the binomial always has
    C = lead.coeff(M * e, 0) / binom.coeff(M * e, 0)
    leading_ok = C != 0 and lead == binom * C
    rest = R0 - binom * C if leading_ok else BiPoly({t: c for t, c in R0.terms if weight(t) != top}, ("u", "v"))
    violating = tuple(t for t, _ in rest.terms if weight(t) >= top)
    return R0ShapeReport(
        True, C if leading_ok else None, M, leading_ok, not violating, violating,
        "" if leading_ok else "weighted-leading part is not a multiple of the binomial power",
    )
