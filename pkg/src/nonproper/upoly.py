"""Dense univariate polynomials as coefficient lists, lowest degree first.

Coefficients may be exact rationals or mpmath complex numbers; the helpers
never convert an exact list to floating point unless asked to find roots.
The zero polynomial is the empty list.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .errors import PrecisionError
from .scalars import Ball, clean, current_mode, is_exact, is_zero, to_complex, zero_tolerance

# ------------------------------------------------------------------ basics


def trim(p, tol=None):
    p = list(p)
    while p and is_zero(p[-1], tol):
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def is_constant(p, tol=None) -> bool:
    return degree_tol(p, tol) <= 0


def degree_tol(p, tol=None) -> int:
    return len(trim(p, tol)) - 1


def lc(p):
    p = trim(p)
    return p[-1] if p else Fraction(0)


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, scale(q, -1))


def scale(p, c):
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if is_exact(a) and a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p, n: int):
    out = [Fraction(1)]
    base = p
    while n:
        if n & 1:
            out = mul(out, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return out


def deriv(p):
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p, z):
    acc = 0
    for c in reversed(p):
        acc = acc * z + c
    return acc


def compose_scale(p, s):
    """p(s * t)."""
    out = []
    sk = 1
    for c in p:
        out.append(c * sk)
        sk = sk * s
    return trim(out)


def taylor_coefficient(p, z, k: int):
    """k-th Taylor coefficient of p at z, i.e. p^(k)(z) / k!."""
    total = 0
    zp = [1]
    for _ in range(len(p)):
        zp.append(zp[-1] * z)
    for i in range(k, len(p)):
        total += math.comb(i, k) * p[i] * zp[i - k]
    return total


def multiplicity_at(p, z, tol=None) -> int:
    """Order of vanishing of p at z (exact, or relative to ``tol``)."""
    p = trim(p)
    if not p:
        raise ValueError("zero polynomial")
    exact = is_exact(z) and all(is_exact(c) for c in p)
    if tol is None:
        tol = zero_tolerance()
    absz = abs(to_complex(z))
    absp = [abs(to_complex(c)) for c in p]
    for k in range(len(p)):
        t = taylor_coefficient(p, z, k)
        if exact:
            if t != 0:
                return k
            continue
        # size of the terms summed into t, which bounds its rounding error
        scale_ = sum(math.comb(i, k) * absp[i] * absz ** (i - k) for i in range(k, len(p)))
        if abs(to_complex(t)) > tol * scale_:
            return k
    return len(p) - 1


def max_abs(p):
    return max((abs(to_complex(c)) for c in p), default=mpmath.mpf(0))


def to_str(p, var="xi", digits=20) -> str:
    from .scalars import format_scalar

    p = trim(p)
    if not p:
        return "0"
    pieces = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if is_zero(c):
            continue
        cs = format_scalar(c, digits)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            pieces.append(cs)
        elif cs == "1":
            pieces.append(mono)
        elif cs == "-1":
            pieces.append("-" + mono)
        else:
            pieces.append(f"{cs}*{mono}")
    return " + ".join(pieces).replace("+ -", "- ")


# ------------------------------------------------------- exact algorithms


def _monic(p):
    p = trim(p)
    return [c / p[-1] for c in p]


def divmod_exact(p, q):
    p = [Fraction(c) for c in trim(p)]
    q = [Fraction(c) for c in trim(q)]
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q) and p:
        c = p[-1] / q[-1]
        s = len(p) - len(q)
        quo[s] = c
        for i, b in enumerate(q):
            p[s + i] -= c * b
        p = trim(p)
    return trim(quo), p


def gcd_exact(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_exact(p, q)[1]
    return _monic(p) if p else []


def squarefree_decomposition(p):
    """Yun's algorithm over Q: list of (factor, multiplicity) with monic
    squarefree, pairwise coprime factors."""
    p = _monic([Fraction(c) for c in p])
    if len(p) <= 1:
        return []
    out = []
    dp = deriv(p)
    a = gcd_exact(p, dp)
    b = divmod_exact(p, a)[0]
    c = divmod_exact(dp, a)[0]
    d = sub(c, deriv(b))
    k = 1
    while len(b) > 1:
        a = gcd_exact(b, d)
        if len(a) > 1:
            out.append((a, k))
        b = divmod_exact(b, a)[0]
        c = divmod_exact(d, a)[0]
        d = sub(c, deriv(b))
        k += 1
    return out


# --------------------------------------------------------- root finding


def _cauchy_bound(p):
    an = abs(to_complex(p[-1]))
    return 1 + max(abs(to_complex(c)) / an for c in p[:-1])


def aberth(p, max_iter: int = 500):
    """Simultaneous approximation of all roots of p (Aberth-Ehrlich).

    Returns a list of :class:`Ball` whose radii are Newton inclusion radii
    ``n * |p(z) / p'(z)|``; each disc contains a root of p when the roots are
    simple.  Works at the ambient mpmath precision.
    """
    p = [to_complex(c) for c in trim(p)]
    n = len(p) - 1
    if n < 1:
        return []
    if n == 1:
        z = -p[0] / p[1]
        return [Ball(z, mpmath.mpf(0))]
    dp = [i * p[i] for i in range(1, n + 1)]
    r = _cauchy_bound(p)
    center = -p[n - 1] / (n * p[n])
    zs = [
        center + r * mpmath.expj(2 * mpmath.pi * k / n + mpmath.mpf(0.4)) * mpmath.mpf(0.5)
        for k in range(n)
    ]
    eps = mpmath.ldexp(mpmath.mpf(1), -mpmath.mp.prec + 8)
    loose = mpmath.ldexp(mpmath.mpf(1), -mpmath.mp.prec // 3)
    history = []
    for _ in range(max_iter):
        biggest = mpmath.mpf(0)
        new = list(zs)
        for i in range(n):
            z = zs[i]
            pv = evaluate(p, z)
            if pv == 0:
                continue
            ratio = pv / evaluate(dp, z)
            s = mpmath.fsum(1 / (z - zs[j]) for j in range(n) if j != i and zs[j] != z)
            step = ratio / (1 - ratio * s)
            new[i] = z - step
            biggest = max(biggest, abs(step) / max(1, abs(z)))
        zs = new
        if biggest < eps:
            break
        # multiple roots converge linearly and then stall at noise level
        history.append(biggest)
        if biggest < loose and len(history) > 6 and biggest > history[-6] / 4:
            break
    balls = []
    for z in zs:
        dv = evaluate(dp, z)
        rad = n * abs(evaluate(p, z) / dv) if dv != 0 else mpmath.inf
        balls.append(Ball(z, rad if mpmath.isfinite(rad) else mpmath.mpf(1)))
    return balls


def _rational_guess(z, bound_den):
    """Nearest rational with denominator up to ``bound_den`` to a numerically
    real value, or None."""
    z = to_complex(z)
    if abs(z.imag) > mpmath.ldexp(mpmath.mpf(1), -mpmath.mp.prec // 3) * max(1, abs(z)):
        return None
    x = Fraction(mpmath.nstr(z.real, mpmath.mp.dps, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
    return x.limit_denominator(max(1, bound_den))


def _newton_polish(pc, z, steps: int = 4):
    dp = deriv(pc)
    for _ in range(steps):
        dv = evaluate(dp, z)
        if dv == 0:
            break
        z = z - evaluate(pc, z) / dv
    return z


def _numeric_simple_roots(p):
    balls = aberth(p)
    # polish with Newton at the working precision
    dp = deriv([to_complex(c) for c in p])
    pc = [to_complex(c) for c in p]
    out = []
    for b in balls:
        z = b.mid
        for _ in range(4):
            dv = evaluate(dp, z)
            if dv == 0:
                break
            z = z - evaluate(pc, z) / dv
        dv = evaluate(dp, z)
        rad = len(pc) * abs(evaluate(pc, z) / dv) if dv != 0 else b.radius
        out.append(Ball(z, rad))
    return out


def _cluster(balls, precision):
    """Group numerically coincident approximations; return (center, count)."""
    n = len(balls)
    thresh = mpmath.ldexp(mpmath.mpf(1), -max(8, precision // (2 * max(n, 1))))
    groups: list[list] = []
    for b in balls:
        for g in groups:
            if abs(g[0] - b.mid) <= thresh * max(1, abs(b.mid)):
                g.append(b.mid)
                break
        else:
            groups.append([b.mid])
    return [(mpmath.fsum(g) / len(g), len(g)) for g in groups]


def roots(p, precision: int | None = None):
    """Roots of p with multiplicities, as a list of ``(root, multiplicity)``.

    Rational roots of rational polynomials are returned exactly as
    :class:`~fractions.Fraction`; other roots are mpmath complex numbers
    isolated by Aberth iteration.  Exact inputs are split by a squarefree
    decomposition over Q first, so numerical work only ever sees simple
    roots.  Approximate inputs with numerically multiple roots are grouped
    and each cluster is validated by derivative tests; a cluster that fails
    validation raises :class:`PrecisionError`.
    """
    p = trim(p)
    if len(p) <= 1:
        return []
    bits = precision if precision is not None else mpmath.mp.prec
    with mpmath.workprec(bits):
        found = _roots_exact(p) if all(is_exact(c) for c in p) else _roots_approx(p, bits)
        tol = zero_tolerance(bits)
        return [(clean(z, tol * max(1, abs(to_complex(z)))), m) for z, m in found]


def _roots_exact(p):
    out = []
    for factor, mult in squarefree_decomposition(p):
        f = factor
        den = math.lcm(*(Fraction(c).denominator for c in f))
        ints = [int(c * den) for c in f]
        content = math.gcd(*ints)
        ints = [c // content for c in ints]
        bound_den = abs(ints[-1])
        rational = []
        for ball in _numeric_simple_roots(f) if current_mode() == "exact" else ():
            guess = _rational_guess(ball.mid, bound_den)
            if guess is not None and evaluate(f, guess) == 0 and guess not in rational:
                rational.append(guess)
        for r in rational:
            f = divmod_exact(f, [-r, Fraction(1)])[0]
            out.append((r, mult))
        if len(f) > 1:
            for ball in _numeric_simple_roots(f):
                out.append((ball.mid, mult))
    return out


def _perfect_power_root(pc, tol):
    """r when pc is numerically ``lc * (t - r)^n``, else None."""
    n = len(pc) - 1
    r = -pc[n - 1] / (n * pc[n])
    ref = [pc[n] * math.comb(n, k) * (-r) ** (n - k) for k in range(n + 1)]
    scale_ = max(abs(c) for c in pc)
    if all(abs(a - b) <= tol * scale_ for a, b in zip(pc, ref)):
        return r
    return None


def _roots_approx(p, bits):
    pc = [to_complex(c) for c in p]
    if len(pc) > 2:
        r = _perfect_power_root(pc, mpmath.sqrt(zero_tolerance(bits)) ** 1.5)
        if r is not None:
            return [(r, len(pc) - 1)]
    balls = aberth(pc)
    out = []
    tol = zero_tolerance(bits)
    for center, count in _cluster(balls, bits):
        if count > 1:
            # refine the centre on the (count-1)-th derivative, where it is simple
            q = pc
            for _ in range(count - 1):
                q = deriv(q)
            dq = deriv(q)
            z = center
            for _ in range(8):
                dv = evaluate(dq, z)
                if dv == 0:
                    break
                z = z - evaluate(q, z) / dv
            if abs(z - center) > mpmath.mpf(2) ** (-8) * max(1, abs(center)):
                raise PrecisionError("root cluster does not resolve to a multiple root; raise precision")
            center = z
            mult = multiplicity_at(pc, center, tol=mpmath.sqrt(tol))
            if mult != count:
                raise PrecisionError("unresolved root cluster; raise precision")
        else:
            center = _newton_polish(pc, center)
        out.append((center, count))
    return out
