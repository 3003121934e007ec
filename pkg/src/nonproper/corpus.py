"""Seeded test corpora: tame automorphisms, non-proper maps, random curves
monic in y, and synthetic R0 polynomials of the constant-Jacobian shape."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .poly import BiPoly, PolyMap

X, Y = BiPoly.gens()


def random_rational(rng: random.Random, height: int = 10, nonzero: bool = False) -> Fraction:
    while True:
        c = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if c or not nonzero:
            return c


def random_univariate(rng, degree: int, height: int = 10, var=Y) -> BiPoly:
    """A polynomial of exact degree ``degree`` in one variable."""
    out = BiPoly.const(0)
    for k in range(degree):
        if rng.random() < 0.6:
            out = out + random_rational(rng, height) * var ** k
    return out + random_rational(rng, height, nonzero=True) * var ** degree


def random_linear(rng, height: int = 10) -> PolyMap:
    while True:
        a, b, c, d = (random_rational(rng, height) for _ in range(4))
        if a * d - b * c != 0:
            return PolyMap(a * X + b * Y, c * X + d * Y)


def random_triangular(rng, max_h_degree: int = 4, height: int = 10) -> PolyMap:
    """``(x + h(y), y)`` with ``1 <= deg h <= max_h_degree``."""
    h = random_univariate(rng, rng.randint(1, max_h_degree), height)
    return PolyMap(X + h, Y)


def _total_degree(f: PolyMap) -> int:
    return max(f.P.degree(), f.Q.degree())


def random_tame_automorphism(rng: random.Random, *, max_factors: int = 4, max_h_degree: int = 4,
                             height: int = 10, max_degree: int = 8) -> PolyMap:
    """``L_0 o T_1 o L_1 o ... o T_k o L_k`` with k <= max_factors triangular
    factors; factors that would push the total degree past ``max_degree``
    are redrawn with smaller ``deg h`` (a linear-only map is allowed as the
    degenerate case)."""
    f = random_linear(rng, height)
    for _ in range(rng.randint(1, max_factors)):
        room = max_degree // max(1, _total_degree(f))
        if room < 2:
            break
        t = random_triangular(rng, min(max_h_degree, room), height)
        f = f.compose_right(t).compose_right(random_linear(rng, height))
    return f


def automorphism_corpus(count: int = 100, seed: int = 0, **kwargs) -> list[PolyMap]:
    rng = random.Random(seed)
    return [random_tame_automorphism(rng, **kwargs) for _ in range(count)]


# Maps with a nonempty non-proper value set (the Jacobian is never constant).
# Each is checked against its own R0 in the test-suite.
NONPROPER_MAPS = [
    ("x", "x*y"),
    ("x", "y*(x^2 + 1)"),
    ("x", "x*y^2 + y"),
    ("x*y", "x*y^2 + y"),
    ("x", "x^2*y"),
    ("x + x*y", "y"),
    ("x*y", "y"),
    ("x", "x*y^3 + y"),
    ("x^2*y + x", "x*y"),
    ("x*y - 1", "x^2*y - x + y"),
    ("x*y", "x*y + y^2"),
    ("x^2*y + x", "x*y + 1"),
    ("x", "x^2*y + x*y^2 + y"),
    ("x*(x*y - 1)", "y*(x*y - 1) + x"),
    ("x + x*y^2", "y"),
]


def nonproper_corpus() -> list[PolyMap]:
    return [PolyMap.parse(p, q) for p, q in NONPROPER_MAPS]


def random_monic(rng: random.Random, max_degree: int = 6, height: int = 10) -> BiPoly:
    """``y^n + sum_{j<n} a_j(x) y^j`` of total degree n <= max_degree."""
    n = rng.randint(1, max_degree)
    F = Y ** n
    for j in range(n):
        for i in range(n - j + 1):
            if rng.random() < 0.35:
                F = F + random_rational(rng, height) * X ** i * Y ** j
    return F


def _coprime_pair(rng):
    while True:
        d, e = rng.randint(1, 3), rng.randint(1, 3)
        if math.gcd(d, e) == 1:
            return d, e


def synthetic_r0(rng: random.Random, violate: bool = False):
    """A polynomial ``C (A^e u^e - B^d v^d)^M + lower`` where every lower
    term ``u^i v^j`` has ``i d + j e < M d e``; with ``violate`` one extra
    term of weight at least ``M d e`` is added.

    Returns ``(R0, A, B, d, e)``.
    """
    u, v = BiPoly.gens(("u", "v"))
    d, e = _coprime_pair(rng)
    M = rng.randint(1, 3)
    A = random_rational(rng, 5, nonzero=True)
    B = random_rational(rng, 5, nonzero=True)
    C = random_rational(rng, 5, nonzero=True)
    R0 = (u ** e * A ** e - v ** d * B ** d) ** M * C
    top = M * d * e
    for _ in range(rng.randint(0, 4)):
        i = rng.randint(0, top // d)
        j = rng.randint(0, top // e)
        if i * d + j * e < top:
            R0 = R0 + random_rational(rng, 5) * u ** i * v ** j
    if violate:
        while True:
            i = rng.randint(0, top // d + 1)
            j = rng.randint(0, top // e + 1)
            if i * d + j * e >= top and (i, j) != (M * e, 0) and (i, j) != (0, M * d):
                break
        R0 = R0 + random_rational(rng, 5, nonzero=True) * u ** i * v ** j
    return R0, A, B, d, e
