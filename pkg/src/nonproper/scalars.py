"""Coefficient helpers shared by every module.

Two kinds of scalar circulate:

* exact rationals (:class:`fractions.Fraction`, plain ``int`` accepted), used
  for everything at the polynomial level;
* complex midpoints (:class:`mpmath.mpc`) at a configurable binary precision,
  which appear only once a characteristic equation has irrational roots.
  Root isolation attaches an inclusion radius to each such value
  (:class:`Ball`); arithmetic downstream works on midpoints and zero tests
  use a precision-derived tolerance.

Python's numeric tower mixes the two transparently (``Fraction * mpc`` is an
``mpc``), so callers rarely need to care which kind they hold.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

Scalar = Union[Fraction, int, mpmath.mpc, mpmath.mpf]

DEFAULT_PRECISION = 256

# "exact": rational roots of rational polynomials are recovered exactly.
# "ball": every root is carried as a numerical midpoint.
_MODE: ContextVar[str] = ContextVar("nonproper_mode", default="exact")
MODES = ("exact", "ball")


def current_mode() -> str:
    return _MODE.get()


@contextmanager
def arithmetic_mode(mode: str):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    token = _MODE.set(mode)
    try:
        yield
    finally:
        _MODE.reset(token)


@dataclass(frozen=True)
class Ball:
    """Complex disc ``mid`` +- ``radius``."""

    mid: mpmath.mpc
    radius: mpmath.mpf

    def __post_init__(self):
        if not (self.radius >= 0 and mpmath.isfinite(self.radius)):
            raise ValueError("ball radius must be finite and non-negative")

    def contains(self, z) -> bool:
        return abs(to_complex(z) - self.mid) <= self.radius


def is_exact(c) -> bool:
    return isinstance(c, (Fraction, int))


def zero_tolerance(precision: int | None = None) -> mpmath.mpf:
    """Absolute threshold below which an approximate coefficient counts as zero."""
    bits = precision if precision is not None else mpmath.mp.prec
    return mpmath.ldexp(mpmath.mpf(1), -(bits // 2))


def match_tolerance(precision: int | None = None) -> mpmath.mpf:
    """Looser threshold for comparing values reached along different routes."""
    bits = precision if precision is not None else mpmath.mp.prec
    return mpmath.ldexp(mpmath.mpf(1), -(bits // 8))


def is_zero(c, tol=None) -> bool:
    if is_exact(c):
        return c == 0
    if tol is None:
        tol = zero_tolerance()
    return abs(c) <= tol


def to_complex(c) -> mpmath.mpc:
    if isinstance(c, Fraction):
        return mpmath.mpc(mpmath.mpf(c.numerator) / c.denominator)
    return mpmath.mpc(c)


def close(a, b, tol=None) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    if tol is None:
        tol = match_tolerance()
    return abs(to_complex(a) - to_complex(b)) <= tol * max(1, abs(to_complex(a)))


def magnitude(c) -> mpmath.mpf:
    return abs(to_complex(c))


def clean(c, tol=None):
    """Snap approximate values with negligible imaginary part, or that are
    negligible altogether, to something simpler; exact values pass through."""
    if is_exact(c):
        return Fraction(c)
    if tol is None:
        tol = zero_tolerance()
    c = mpmath.mpc(c)
    if abs(c) <= tol:
        return Fraction(0)
    if abs(c.imag) <= tol:
        return mpmath.mpc(c.real, 0)
    return c


def format_scalar(c, digits: int = 20) -> str:
    if is_exact(c):
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    c = mpmath.mpc(c)
    re = mpmath.nstr(c.real, digits)
    if c.imag == 0:
        return re
    im = mpmath.nstr(abs(c.imag), digits)
    sign = "-" if c.imag < 0 else "+"
    return f"({re} {sign} {im}*I)"


def scalar_to_json(c, radius=None, digits: int = 30):
    """Exact rationals become ``"p/q"`` text; approximate values a
    ``[re, im, radius]`` triple of decimal strings."""
    if is_exact(c):
        return format_scalar(c)
    c = mpmath.mpc(c)
    if radius is None:
        radius = zero_tolerance()
    return [mpmath.nstr(c.real, digits), mpmath.nstr(c.imag, digits), mpmath.nstr(radius, 5)]
