"""Newton-Puiseux roots at infinity of curves monic in y.

A root at infinity of ``F(x, y) = 0`` is a series ``y(x) = sum c_k x^(1 - k/m)``
in descending fractional powers of x.  Roots are found by the Newton
polygon method run directly at infinity: for the current truncation ``s``
the polynomial ``G(Y) = F(x, s + Y)`` is kept with Laurent coefficients
``g_j(x)``, and the next term ``c x^g`` of every root comes from an edge of
the upper hull of the points ``(j, deg_x g_j)``.

Exponents are stored as integers over a fixed denominator ``den`` (a
multiple of every ramification index that can occur), so Laurent
polynomials are dicts ``{int: coefficient}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import upoly
from .errors import PrecisionError, TruncationError
from .poly import BiPoly
from .scalars import format_scalar, is_exact, is_zero, scalar_to_json, to_complex

__all__ = [
    "PuiseuxSeries",
    "ParamSeries",
    "ShiftedPoly",
    "roots_at_infinity",
    "substitute_param",
    "factorization_check",
    "flatten_roots",
]


def common_denominator(n: int) -> int:
    return math.lcm(*range(1, max(n, 1) + 1))


# ---------------------------------------------------------- shifted polys


class ShiftedPoly:
    """``F(x, s(x) + Y)`` as a list of Laurent coefficients in x.

    Terms ``x^e Y^j`` whose weight ``e + j`` falls below ``weight_floor`` are
    discarded: substituting ``Y -> c x^g + Y`` with ``g <= 1`` never raises
    the weight, so such terms cannot influence anything of weight at least
    the floor.
    """

    __slots__ = ("g", "den", "weight_floor", "tol")

    def __init__(self, g, den: int, weight_floor: int, tol):
        self.g = g
        self.den = den
        self.weight_floor = weight_floor
        self.tol = tol

    @classmethod
    def from_poly(cls, F: BiPoly, den: int, weight_floor: Fraction | int, tol=None):
        n = F.degree_in(1)
        g = [dict() for _ in range(n + 1)]
        for (i, j), c in F.terms:
            g[j][i * den] = c
        wf = math.floor(Fraction(weight_floor) * den)
        out = cls(g, den, wf, tol)
        out._prune()
        return out

    def _prune(self):
        den, wf, tol = self.den, self.weight_floor, self.tol
        self.g = [
            {e: c for e, c in gj.items() if e + j * den >= wf and not is_zero(c, tol)}
            for j, gj in enumerate(self.g)
        ]

    def shift(self, c, exp: int) -> ShiftedPoly:
        """Substitute ``Y -> c x^(exp/den) + Y``."""
        if is_exact(c) and c == 0:
            return self
        n = len(self.g) - 1
        cpow = [1]
        for _ in range(n):
            cpow.append(cpow[-1] * c)
        new = [dict() for _ in range(n + 1)]
        for j, gj in enumerate(self.g):
            if not gj:
                continue
            for k in range(j + 1):
                f = math.comb(j, k) * cpow[j - k]
                off = exp * (j - k)
                tgt = new[k]
                for e, a in gj.items():
                    key = e + off
                    tgt[key] = tgt.get(key, 0) + f * a
        out = ShiftedPoly(new, self.den, self.weight_floor, self.tol)
        out._prune()
        return out

    def lead(self, j):
        """(degree, leading coefficient) of g_j, or None if g_j vanishes."""
        gj = self.g[j]
        if not gj:
            return None
        e = max(gj)
        return e, gj[e]

    def points(self):
        return [(j, *lj) for j in range(len(self.g)) if (lj := self.lead(j)) is not None]

    def value(self, gamma: int):
        """Leading x-exponent (times den**2 / den) of ``G(xi x^gamma)`` for generic xi:
        returned on the den scale, i.e. max_j (deg g_j + j*gamma)."""
        pts = self.points()
        if not pts:
            return None
        return max(e + j * gamma for j, e, _ in pts)

    def leading_poly(self, gamma: int):
        """(E, p) with ``G(xi x^gamma) = p(xi) x^E + lower``; E on the den scale."""
        E = self.value(gamma)
        if E is None:
            return None, []
        p = [0] * len(self.g)
        for j, e, c in self.points():
            if e + j * gamma == E:
                p[j] = c
        return E, upoly.trim(p)

    def coefficient_poly(self, gamma: int, target: int):
        """Coefficient polynomial in xi of ``x^target`` in ``G(xi x^gamma)``."""
        p = [gj.get(target - j * gamma, 0) for j, gj in enumerate(self.g)]
        return upoly.trim(p, self.tol)

    def expansion(self, gamma: int, lowest: int):
        """All terms of ``G(xi x^gamma)`` with exponent >= lowest, as
        {exponent: poly in xi}, exponents on the den scale."""
        out: dict[int, list] = {}
        for j, gj in enumerate(self.g):
            for e, c in gj.items():
                key = e + j * gamma
                if key < lowest:
                    continue
                poly = out.setdefault(key, [0] * len(self.g))
                poly[j] += c
        return {k: upoly.trim(v, self.tol) for k, v in out.items() if upoly.trim(v, self.tol)}

    def active_index(self, gamma: int) -> int | None:
        """Smallest j attaining the max at gamma: the monomial degree that
        leads for exponents just below gamma."""
        E = self.value(gamma)
        if E is None:
            return None
        return min(j for j, e, _ in self.points() if e + j * gamma == E)

    def edges_below(self, start: int, gamma_top=None):
        """Upper-hull edges walked leftwards from index ``start``.

        Yields ``(gamma, j_low, j_high, chi)`` with gamma decreasing, where chi
        is the characteristic polynomial of the edge (lowest degree first, in
        powers of Z shifted by j_low).  A final ``(None, j0, j0, None)`` marks
        the exact zero root of multiplicity j0 if g_0..g_{j0-1} vanish.
        """
        pts = {j: (e, c) for j, e, c in self.points()}
        jc = start
        while True:
            lower = [j for j in pts if j < jc]
            if not lower:
                if jc > 0:
                    yield None, 0, jc, None
                return
            ec = pts[jc][0]
            slopes = {j: Fraction(pts[j][0] - ec, jc - j) for j in lower}
            gamma = max(slopes.values())
            if gamma_top is not None and gamma >= gamma_top:
                raise PrecisionError(
                    "Newton polygon edge above the current exponent; a spurious "
                    "nonzero coefficient survived - raise precision"
                )
            on = sorted(j for j, s in slopes.items() if s == gamma)
            jl = on[0]
            if gamma.denominator != 1:
                raise AssertionError("exponent outside the common denominator")
            gamma = int(gamma)
            chi = [0] * (jc - jl + 1)
            chi[jc - jl] = pts[jc][1]
            for j in on:
                chi[j - jl] = pts[j][1]
            yield gamma, jl, jc, chi
            jc = jl
            gamma_top = gamma


# ---------------------------------------------------------------- series


@dataclass(frozen=True)
class PuiseuxSeries:
    """``sum c_k x^(1 - k/m)`` truncated after index ``order``.

    ``order`` is None for a finite series that is an exact root.
    ``multiplicity`` counts coinciding roots carried by one term list.
    """

    m: int
    terms: tuple[tuple[int, object], ...]
    order: int | None
    multiplicity: int = 1

    def __post_init__(self):
        ks = [k for k, _ in self.terms]
        if ks != sorted(set(ks)):
            raise ValueError("term indices must be strictly increasing")
        if math.gcd(self.m, *ks) != 1 and self.terms:
            raise ValueError("series is not primitive")

    @property
    def exact(self) -> bool:
        return self.order is None

    def exponent(self, k: int) -> Fraction:
        return 1 - Fraction(k, self.m)

    @property
    def floor_exponent(self) -> Fraction | None:
        return None if self.order is None else self.exponent(self.order)

    def coefficient_at(self, exponent: Fraction):
        k = (1 - Fraction(exponent)) * self.m
        if k.denominator != 1:
            return Fraction(0)
        for kk, c in self.terms:
            if kk == k:
                return c
        return Fraction(0)

    def known_to(self, exponent: Fraction) -> bool:
        return self.order is None or Fraction(exponent) >= self.floor_exponent

    def exponent_terms(self):
        return [(self.exponent(k), c) for k, c in self.terms]

    def conjugate(self, zeta) -> PuiseuxSeries:
        """Image under x^(1/m) -> zeta x^(1/m): c_k -> c_k zeta^(m - k)."""
        return PuiseuxSeries(
            self.m,
            tuple((k, c * zeta ** (self.m - k)) for k, c in self.terms),
            self.order,
            self.multiplicity,
        )

    def to_json(self) -> dict:
        out = {"m": self.m, "terms": [[k, scalar_to_json(c)] for k, c in self.terms]}
        out["order"] = self.order
        if self.multiplicity != 1:
            out["multiplicity"] = self.multiplicity
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms:
            e = self.exponent(k)
            parts.append(f"{format_scalar(c, 12)}*x^({e})")
        tail = "" if self.order is None else " + ..."
        return " + ".join(parts) + tail


def _make_series(terms_scaled, den, floor_scaled, multiplicity) -> PuiseuxSeries:
    exps = [Fraction(e, den) for e, _ in terms_scaled]
    m = math.lcm(1, *(x.denominator for x in exps))
    terms = tuple(
        (int((1 - x) * m), c) for x, (_, c) in zip(exps, terms_scaled) if not is_zero(c)
    )
    order = None
    if floor_scaled is not None:
        order = math.floor((1 - Fraction(floor_scaled, den)) * m)
    return PuiseuxSeries(m, terms, order, multiplicity)


def roots_at_infinity(F: BiPoly, max_order: int | None = None, precision: int | None = None):
    """All ``deg_y F`` roots at infinity of F, expanded down to ``x^(-max_order)``.

    Each returned series is either exact (finite) or carries every term with
    exponent >= -max_order.  A series with ``multiplicity > 1`` stands for
    roots that still coincide at that depth.
    """
    n = F.degree_in(1)
    if n < 1 or F.degree() != n:
        raise ValueError("F must be monic in y with deg_y F = deg F >= 1")
    if not F.coeff(0, n):
        raise ValueError("leading y coefficient must be constant")
    L = n if max_order is None else max_order
    bits = precision if precision is not None else mpmath.mp.prec
    den = common_denominator(n)
    floor_scaled = -L * den
    with mpmath.workprec(bits):
        G = ShiftedPoly.from_poly(F, den, -n * (L + 1))
        out: list[PuiseuxSeries] = []
        stack = [(G, (), n, None)]
        while stack:
            G, terms, r, top = stack.pop()
            for gamma, jl, jh, chi in G.edges_below(r, top):
                if gamma is None:
                    out.append(_make_series(terms, den, None, jh))
                    break
                if gamma < floor_scaled:
                    out.append(_make_series(terms, den, floor_scaled, jh))
                    break
                for d, mu in upoly.roots(chi, bits):
                    stack.append((G.shift(d, gamma), terms + ((gamma, d),), mu, gamma))
    count = sum(s.multiplicity for s in out)
    if count != n:
        raise PrecisionError(f"found {count} roots at infinity, expected {n}")
    return _sorted_series(out)


def _sorted_series(series):
    return sorted(series, key=lambda s: (
        [(float(s.exponent(k)) * -1, float(to_complex(c).real), float(to_complex(c).imag)) for k, c in s.terms],
    ))


def flatten_roots(series) -> list[PuiseuxSeries]:
    """One entry per root, repeating series with multiplicity > 1."""
    out = []
    for s in series:
        out.extend([s] * s.multiplicity)
    return out


# --------------------------------------------------------- substitution


@dataclass(frozen=True)
class ParamSeries:
    """``F(x, phi(x, xi))`` truncated: terms ``(exponent, poly in xi)`` with
    exponents strictly decreasing."""

    m: int
    terms: tuple[tuple[Fraction, tuple], ...]
    truncation: Fraction

    @property
    def leading(self):
        exp, poly = self.terms[0]
        return list(poly), exp

    def coefficient(self, exponent) -> list:
        for e, p in self.terms:
            if e == exponent:
                return list(p)
        return []


def substitute_param(F: BiPoly, prefix, trunc: int, precision: int | None = None) -> ParamSeries:
    """Expand ``F(x, phi(x, xi))`` for a prefix of the form
    ``sum c_k x^(g_k) + xi x^(g)`` keeping exponents >= -trunc.

    ``prefix`` is any object with ``terms`` (pairs exponent, coefficient)
    and ``param_exponent`` attributes, e.g. a :class:`DicriticalPrefix`.
    """
    exps = [Fraction(e) for e, _ in prefix.terms] + [Fraction(prefix.param_exponent)]
    den = math.lcm(common_denominator(F.degree_in(1)), *(e.denominator for e in exps))
    bits = precision if precision is not None else mpmath.mp.prec
    with mpmath.workprec(bits):
        G = ShiftedPoly.from_poly(F, den, -trunc)
        for e, c in prefix.terms:
            G = G.shift(c, int(Fraction(e) * den))
        gamma = int(Fraction(prefix.param_exponent) * den)
        exp = G.expansion(gamma, -trunc * den)
    if not exp:
        raise TruncationError("no nonzero term above the truncation bound; increase trunc")
    m = math.lcm(1, *(e.denominator for e in exps))
    terms = tuple((Fraction(k, den), tuple(exp[k])) for k in sorted(exp, reverse=True))
    return ParamSeries(m, terms, Fraction(-trunc))


# -------------------------------------------------------- factorization


def _laurent_mul(a: dict, b: dict, lowest) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = e1 + e2
            if k >= lowest:
                out[k] = out.get(k, 0) + c1 * c2
    return out


def factorization_check(F: BiPoly, roots, A, tol=None, return_residual: bool = False,
                        precision: int | None = None):
    """Multiply out ``A * prod (y - u_i(x))`` and compare with F.

    Only coefficients unaffected by truncation are compared: for the
    coefficient of ``y^j`` those with exponent >= f + (n - j - 1), where f is
    the shallowest truncation exponent among the roots.  Exact roots make the
    comparison exact.
    """
    bits = precision if precision is not None else mpmath.mp.prec
    with mpmath.workprec(bits):
        return _factorization_check(F, roots, A, tol, return_residual)


def _factorization_check(F, roots, A, tol, return_residual):
    flat = flatten_roots(roots)
    n = F.degree_in(1)
    if len(flat) != n:
        return (False, None) if return_residual else False
    floors = [s.floor_exponent for s in flat if s.floor_exponent is not None]
    f = min(floors) if floors else None
    den = math.lcm(common_denominator(n), *(s.m for s in flat))
    lowest = None if f is None else int(f * den) - n * den
    lowest_cut = -10 ** 9 if lowest is None else lowest
    # product as polynomial in y with Laurent coefficients (low degree first)
    prod = [{0: A}]
    for s in flat:
        root = {int(e * den): c for e, c in s.exponent_terms()}
        neg = {e: -c for e, c in root.items()}
        new = [dict() for _ in range(len(prod) + 1)]
        for j, cj in enumerate(prod):
            for e, c in cj.items():
                new[j + 1][e] = new[j + 1].get(e, 0) + c
            for e, c in _laurent_mul(cj, neg, lowest_cut).items():
                new[j][e] = new[j].get(e, 0) + c
        prod = new
    target = [dict() for _ in range(n + 1)]
    for (i, j), c in F.terms:
        target[j][i * den] = c
    worst = mpmath.mpf(0)
    ok = True
    for j in range(n + 1):
        bound = None if f is None else int((f + (n - j - 1)) * den)
        keys = set(prod[j]) | set(target[j])
        for e in keys:
            if bound is not None and e < bound:
                continue
            diff = prod[j].get(e, 0) - target[j].get(e, 0)
            if is_exact(diff):
                if diff != 0:
                    ok = False
                    worst = max(worst, abs(to_complex(diff)))
            else:
                mag = abs(to_complex(diff))
                worst = max(worst, mag)
                if tol is not None and mag > tol:
                    ok = False
                elif tol is None and not is_zero(diff):
                    ok = False
    return (ok, worst) if return_residual else ok
