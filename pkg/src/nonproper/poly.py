"""Exact bivariate polynomials over Q and plane polynomial maps.

A :class:`BiPoly` is an immutable sparse polynomial in an ordered pair of
variables (``("x", "y")`` for source coordinates, ``("u", "v")`` for target
coordinates).  Terms are kept in degree-lex order (total degree descending,
then exponent of the first variable descending), so two polynomials are
equal exactly when their term tuples are.

>>> p = parse_polynomial("y^2 + x")
>>> str(p)
'y^2 + x'
>>> str(jacobian(PolyMap(parse_polynomial("x + y"), parse_polynomial("x*y + y^2"))))
'x + y'
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DegreeError, NonDominantError, ParseError

__all__ = [
    "BiPoly",
    "PolyMap",
    "NormalForm",
    "parse_polynomial",
    "jacobian",
    "shear",
    "normalize_monic",
    "leading_relation_check",
]


def _deglex_key(exps):
    i, j = exps
    return (-(i + j), -i)


class BiPoly:
    __slots__ = ("_terms", "_dict", "vars")

    def __init__(self, terms: Mapping[tuple[int, int], object] | Iterable = (), vars=("x", "y")):
        acc: dict[tuple[int, int], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            acc[(i, j)] = acc.get((i, j), Fraction(0)) + Fraction(c)
        self._dict = {k: c for k, c in acc.items() if c != 0}
        self._terms = tuple(sorted(self._dict.items(), key=lambda t: _deglex_key(t[0])))
        self.vars = tuple(vars)

    # construction helpers

    @classmethod
    def const(cls, c, vars=("x", "y")) -> BiPoly:
        return cls({(0, 0): c}, vars)

    @classmethod
    def gens(cls, vars=("x", "y")) -> tuple[BiPoly, BiPoly]:
        return cls({(1, 0): 1}, vars), cls({(0, 1): 1}, vars)

    def _coerce(self, other) -> BiPoly:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.const(other, self.vars)
        return NotImplemented

    # queries

    @property
    def terms(self) -> tuple[tuple[tuple[int, int], Fraction], ...]:
        return self._terms

    def coeff(self, i: int, j: int) -> Fraction:
        return self._dict.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._dict)

    def constant_term(self) -> Fraction:
        return self.coeff(0, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._dict), default=-1)

    def degree_in(self, var: int) -> int:
        return max((k[var] for k in self._dict), default=-1)

    def homogeneous_part(self, k: int) -> BiPoly:
        return BiPoly({e: c for e, c in self._dict.items() if sum(e) == k}, self.vars)

    def leading_form(self) -> BiPoly:
        return self.homogeneous_part(self.degree())

    def coefficients_in(self, var: int) -> list[dict[int, Fraction]]:
        """Coefficient list (low to high) in variable ``var``; each entry maps
        the exponent of the other variable to its coefficient."""
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.degree_in(var) + 1)]
        for e, c in self._dict.items():
            out[e[var]][e[1 - var]] = c
        return out

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._dict)
        for e, c in other._dict.items():
            acc[e] = acc.get(e, 0) + c
        return BiPoly(acc, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({e: -c for e, c in self._dict.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._dict.items():
            for (i2, j2), c2 in other._dict.items():
                key = (i1 + i2, j1 + j2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return BiPoly(acc, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other, self.vars)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def diff(self, var: int) -> BiPoly:
        acc = {}
        for (i, j), c in self._dict.items():
            e = (i, j)[var]
            if e:
                key = (i - 1, j) if var == 0 else (i, j - 1)
                acc[key] = c * e
        return BiPoly(acc, self.vars)

    def __call__(self, a, b):
        """Evaluate at any values supporting ring operations (numbers,
        polynomials, series)."""
        powers_a = _powers(a, self.degree_in(0))
        powers_b = _powers(b, self.degree_in(1))
        total = 0
        for (i, j), c in self._terms:
            total = total + c * powers_a[i] * powers_b[j]
        return total

    def compose(self, first: BiPoly, second: BiPoly) -> BiPoly:
        """Substitute polynomials for both variables."""
        out = self(first, second)
        if not isinstance(out, BiPoly):
            out = BiPoly.const(out, first.vars)
        return out

    def with_vars(self, vars) -> BiPoly:
        return BiPoly(self._dict, vars)

    # printing

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for (i, j), c in self._terms:
            mono = []
            for name, e in zip(self.vars, (i, j)):
                if e == 1:
                    mono.append(name)
                elif e > 1:
                    mono.append(f"{name}^{e}")
            mag = abs(c)
            mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if not mono:
                body = mag_s
            elif mag == 1:
                body = "*".join(mono)
            else:
                body = "*".join([mag_s] + mono)
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"BiPoly({str(self)!r}, vars={self.vars})"


def _powers(a, n):
    out = [1]
    for _ in range(n):
        out.append(out[-1] * a)
    return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + stripped]!r}", pos + stripped)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, vars):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = tuple(vars)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> BiPoly:
        out = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return out

    def expr(self):
        out = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                out = out + rhs if val == "+" else out - rhs
            else:
                return out

    def term(self):
        out = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                if val == "*":
                    out = out * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        raise ParseError("division only by a nonzero constant", pos)
                    out = out * BiPoly.const(1 / rhs.constant_term(), self.vars)
            else:
                return out

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, exp, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            return base ** exp
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return BiPoly.const(val, self.vars)
        if kind == "name":
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r}", pos)
            return BiPoly.gens(self.vars)[self.vars.index(val)]
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a number, variable or '('", pos)


def parse_polynomial(text: str, vars=("x", "y")) -> BiPoly:
    """Parse an integer/rational-coefficient expression built from ``+ - * / ^``
    and parentheses (``**`` is accepted for ``^``)."""
    return _Parser(text, vars).parse()


# ----------------------------------------------------------------- maps


@dataclass(frozen=True)
class PolyMap:
    P: BiPoly
    Q: BiPoly

    def __post_init__(self):
        if self.P.is_zero() or self.Q.is_zero():
            raise ValueError("map components must be nonzero polynomials")

    @classmethod
    def parse(cls, p: str, q: str, vars=("x", "y")) -> PolyMap:
        return cls(parse_polynomial(p, vars), parse_polynomial(q, vars))

    def compose_right(self, other: PolyMap) -> PolyMap:
        """The map ``self o other``."""
        return PolyMap(self.P.compose(other.P, other.Q), self.Q.compose(other.P, other.Q))

    def __str__(self):
        return f"({self.P}, {self.Q})"


def jacobian(f: PolyMap) -> BiPoly:
    """``P_x Q_y - P_y Q_x``."""
    return f.P.diff(0) * f.Q.diff(1) - f.P.diff(1) * f.Q.diff(0)


def shear(lam, vars=("x", "y")) -> PolyMap:
    """The linear automorphism ``(x, y) -> (x + lam*y, y)``."""
    x, y = BiPoly.gens(vars)
    return PolyMap(x + y * Fraction(lam), y)


@dataclass(frozen=True)
class NormalForm:
    map: PolyMap
    shear: Fraction
    A: Fraction
    B: Fraction
    K: int
    d: int
    e: int

    @property
    def P(self) -> BiPoly:
        return self.map.P

    @property
    def Q(self) -> BiPoly:
        return self.map.Q

    @property
    def deg_P(self) -> int:
        return self.K * self.d

    @property
    def deg_Q(self) -> int:
        return self.K * self.e


def normalize_monic(f: PolyMap, max_shear: int = 10_000) -> NormalForm:
    """Bring ``f`` to monic-in-y form by the first shear ``x -> x + lam*y``
    (lam = 0, 1, 2, ...) for which both leading forms are nonzero at (lam, 1)."""
    if jacobian(f).is_zero():
        raise NonDominantError("map is not dominant: J(P, Q) is identically zero")
    dP, dQ = f.P.degree(), f.Q.degree()
    if dP <= 0 or dQ <= 0:
        raise DegreeError("both components must have positive degree")
    lp, lq = f.P.leading_form(), f.Q.leading_form()
    for lam in range(max_shear):
        a, b = lp(lam, 1), lq(lam, 1)
        if a != 0 and b != 0:
            break
    else:  # pragma: no cover - a nonzero binary form has finitely many roots
        raise DegreeError("no admissible shear found")
    g = f if lam == 0 else f.compose_right(shear(lam, f.P.vars))
    K = math.gcd(dP, dQ)
    nf = NormalForm(g, Fraction(lam), Fraction(a), Fraction(b), K, dP // K, dQ // K)
    assert g.P.degree_in(1) == dP and g.P.coeff(0, dP) == nf.A
    assert g.Q.degree_in(1) == dQ and g.Q.coeff(0, dQ) == nf.B
    return nf


def leading_relation_check(nf: NormalForm) -> dict:
    """Test ``P+^e == (B^d / A^e) * Q+^d`` for the leading forms.

    Returns ``{"applicable": False}`` when P is linear (deg P <= 1).  The
    reciprocal constant ``A^e / B^d`` (the one matching the y-leading
    coefficients of both sides) is tested too and reported separately.
    """
    if nf.deg_P <= 1:
        return {"applicable": False, "holds": None, "ratio": None}
    lhs = nf.P.leading_form() ** nf.e
    rhs = nf.Q.leading_form() ** nf.d
    ratio = nf.B ** nf.d / nf.A ** nf.e
    return {
        "applicable": True,
        "holds": lhs == rhs * ratio,
        "ratio": ratio,
        "holds_reciprocal": lhs == rhs * (1 / ratio),
    }
