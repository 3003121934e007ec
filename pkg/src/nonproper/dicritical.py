"""Dicritical series of a plane polynomial map and the curves they sweep out.

A series ``phi(x, xi) = sum c_k x^(g_k) + xi x^(g)`` (exponents decreasing,
``g_0 = 1``) is dicritical for f = (P, Q) when ``f(x, phi(x, xi))`` tends, as
x -> infinity, to a non-constant polynomial curve ``f_phi(xi)``.  The union
of those curves is the non-proper value set of f.

The search walks the tree of associated prefixes.  A node fixes
``c_0, ..., c_{i-1}`` and leaves the coefficient of ``x^(g_i)`` free; along it

    P(x, phi_i(x, xi)) = p_i(xi) x^(a_i/m_i) + lower terms,
    Q(x, phi_i(x, xi)) = q_i(xi) x^(b_i/m_i) + lower terms.

A node whose positive-exponent leading polynomials share a zero ``c`` is
branched at ``c``; the child's exponent is the first one below ``g_i`` at
which either P or Q acquires a non-monomial leading coefficient (a root of
P = 0 or Q = 0 splits off) or a leading exponent reaches zero.  The root
lists of P = 0 and Q = 0 are carried along as index sets (``S_i``, ``T_i``)
so the bookkeeping identities linking parent and child can be audited from
an independent route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import upoly
from .errors import DepthCapError, PrecisionError, TruncationError
from .poly import NormalForm, jacobian
from .puiseux import (
    PuiseuxSeries,
    ShiftedPoly,
    common_denominator,
    flatten_roots,
    roots_at_infinity,
    substitute_param,
)
from .scalars import (
    DEFAULT_PRECISION,
    close,
    is_exact,
    match_tolerance,
    scalar_to_json,
    to_complex,
    zero_tolerance,
)

__all__ = [
    "DicriticalPrefix",
    "AssociatedNode",
    "ComponentParam",
    "DicriticalTree",
    "root_node",
    "classify_node",
    "admissible_roots",
    "expand_node",
    "build_tree",
    "enumerate_dicritical",
    "compute_f_phi",
    "theorem_shape",
    "lemma2_consistency",
    "lemma3_consistency",
    "same_image",
    "in_image",
]

BRANCHABLE = "branchable"
DICRITICAL = "dicritical"
DEAD = "dead"


# ----------------------------------------------------------------- prefix


@dataclass(frozen=True)
class DicriticalPrefix:
    """Fixed terms ``(exponent, c)`` plus the free slot ``xi x^param_exponent``."""

    terms: tuple[tuple[Fraction, object], ...]
    param_exponent: Fraction

    def __post_init__(self):
        exps = [Fraction(e) for e, _ in self.terms] + [Fraction(self.param_exponent)]
        if exps[0] != 1:
            raise ValueError("a prefix starts at exponent 1")
        if any(a <= b for a, b in zip(exps, exps[1:])):
            raise ValueError("exponents must strictly decrease")

    @classmethod
    def initial(cls) -> DicriticalPrefix:
        return cls((), Fraction(1))

    @property
    def exponents(self) -> list[Fraction]:
        return [Fraction(e) for e, _ in self.terms] + [Fraction(self.param_exponent)]

    @property
    def mult(self) -> int:
        return math.lcm(1, *(e.denominator for e in self.exponents))

    @property
    def level_ratios(self) -> list[Fraction]:
        """``n_k / m_k = 1 - exponent`` for each level, the last being the slot."""
        return [1 - e for e in self.exponents]

    @property
    def n(self) -> int:
        return int((1 - self.param_exponent) * self.mult)

    def coefficient_at(self, exponent):
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    def child(self, c, next_exponent) -> DicriticalPrefix:
        return DicriticalPrefix(self.terms + ((Fraction(self.param_exponent), c),), Fraction(next_exponent))

    def sort_key(self):
        return tuple(
            (-e, float(to_complex(c).real), float(to_complex(c).imag)) for e, c in self.terms
        ) + ((-self.param_exponent, 0.0, 0.0),)

    def to_json(self) -> dict:
        m = self.mult
        return {
            "m": m,
            "terms": [[int((1 - e) * m), scalar_to_json(c)] for e, c in self.terms],
            "param_k": int((1 - self.param_exponent) * m),
        }

    def __str__(self):
        from .scalars import format_scalar

        parts = [f"{format_scalar(c, 12)}*x^({e})" for e, c in self.terms]
        parts.append(f"xi*x^({self.param_exponent})")
        return " + ".join(parts)


# ------------------------------------------------------------------- node


@dataclass(frozen=True)
class Branch:
    c: object
    s0: int  # #S_i^0, multiplicity of c as a root of p_i
    t0: int  # #T_i^0
    child: AssociatedNode | None


@dataclass
class AssociatedNode:
    prefix: DicriticalPrefix
    p: list
    q: list
    a: Fraction
    b: Fraction
    A: object
    B: object
    S: tuple[int, ...]
    T: tuple[int, ...]
    status: str = BRANCHABLE
    depth: int = 0
    branches: list[Branch] = field(default_factory=list)
    escaped: list = field(default_factory=list)
    _gp: ShiftedPoly | None = field(default=None, repr=False, compare=False)
    _gq: ShiftedPoly | None = field(default=None, repr=False, compare=False)
    _ctx: _Context | None = field(default=None, repr=False, compare=False)

    @property
    def m(self) -> int:
        return self.prefix.mult

    @property
    def n(self) -> int:
        return self.prefix.n

    @property
    def exp_P(self) -> Fraction:
        """Leading x-exponent ``a_i / m_i`` of P along the node."""
        return Fraction(self.a) / self.m

    @property
    def exp_Q(self) -> Fraction:
        return Fraction(self.b) / self.m

    @property
    def children(self) -> list[AssociatedNode]:
        return [br.child for br in self.branches if br.child is not None]

    def walk(self):
        yield self
        for ch in self.children:
            yield from ch.walk()

    def to_json(self) -> dict:
        return {
            "prefix": self.prefix.to_json(),
            "p": upoly.to_str(self.p),
            "q": upoly.to_str(self.q),
            "a": str(self.a),
            "b": str(self.b),
            "m": self.m,
            "n": self.n,
            "S": list(self.S),
            "T": list(self.T),
            "status": self.status,
        }


@dataclass
class _Context:
    nf: NormalForm
    roots_P: list[PuiseuxSeries]
    roots_Q: list[PuiseuxSeries]
    floor: Fraction
    precision: int
    depth_cap: int
    den: int

    @property
    def tol(self):
        return match_tolerance(self.precision)


# --------------------------------------------------------------- matching


def _matching(roots, prefix: DicriticalPrefix, candidates=None) -> tuple[int, ...]:
    """Indices of roots ``y = phi(x, a + lower terms)`` for some a."""
    slot = Fraction(prefix.param_exponent)
    out = []
    idx = range(len(roots)) if candidates is None else candidates
    for k in idx:
        r = roots[k]
        if not r.known_to(slot):
            raise TruncationError(
                f"root expansion stops at x^({r.floor_exponent}), "
                f"needed down to x^({slot}); re-expand deeper"
            )
        exps = {e for e, _ in prefix.terms} | {e for e, _ in r.exponent_terms() if e > slot}
        if all(close(r.coefficient_at(e), prefix.coefficient_at(e)) for e in exps):
            out.append(k)
    return tuple(out)


def _coefficients_at_slot(roots, indices, exponent):
    return [roots[k].coefficient_at(exponent) for k in indices]


def _count_matching_value(roots, indices, exponent, c) -> int:
    return sum(1 for v in _coefficients_at_slot(roots, indices, exponent) if close(v, c))


# ----------------------------------------------------------- construction


def _make_node(ctx: _Context, prefix, gp, gq, depth, parent_S=None, parent_T=None):
    den = gp.den
    gamma = Fraction(prefix.param_exponent) * den
    if gamma.denominator != 1:
        raise AssertionError("slot exponent outside the common denominator")
    gamma = int(gamma)
    eP, p = gp.leading_poly(gamma)
    eQ, q = gq.leading_poly(gamma)
    m = prefix.mult
    S = _matching(ctx.roots_P, prefix, parent_S)
    T = _matching(ctx.roots_Q, prefix, parent_T)
    node = AssociatedNode(
        prefix=prefix,
        p=p,
        q=q,
        a=Fraction(eP, den) * m,
        b=Fraction(eQ, den) * m,
        A=upoly.lc(p),
        B=upoly.lc(q),
        S=S,
        T=T,
        depth=depth,
        _gp=gp,
        _gq=gq,
        _ctx=ctx,
    )
    node.status = classify_node(node)
    return node


def _context(nf, roots_P, roots_Q, max_order, precision, depth_cap, root_order=None):
    L = max(nf.deg_P, nf.deg_Q) if max_order is None else max_order
    depth = L if root_order is None else min(root_order, L)
    if roots_P is None:
        roots_P = roots_at_infinity(nf.P, depth, precision)
    if roots_Q is None:
        roots_Q = roots_at_infinity(nf.Q, depth, precision)
    if depth_cap is None:
        depth_cap = 4 * (nf.deg_P + nf.deg_Q)
    den = common_denominator(max(nf.deg_P, nf.deg_Q))
    return _Context(
        nf, flatten_roots(roots_P), flatten_roots(roots_Q), Fraction(-L), precision, depth_cap, den
    )


def root_node(nf: NormalForm, roots_P=None, roots_Q=None, *, max_order=None,
              precision: int = DEFAULT_PRECISION, depth_cap=None, root_order=None) -> AssociatedNode:
    """The node of ``phi_0 = xi x``: p_0, q_0 are the leading forms at (1, xi).

    ``max_order`` bounds the search (no slot below ``x^-max_order``);
    ``root_order`` bounds how deep the Puiseux roots are expanded, which may
    be shallower: matching raises :class:`TruncationError` when it is not
    enough.
    """
    with mpmath.workprec(precision):
        ctx = _context(nf, roots_P, roots_Q, max_order, precision, depth_cap, root_order)
        L = -ctx.floor
        gp = ShiftedPoly.from_poly(nf.P, ctx.den, -nf.deg_P * (L + 1))
        gq = ShiftedPoly.from_poly(nf.Q, ctx.den, -nf.deg_Q * (L + 1))
        node = _make_node(ctx, DicriticalPrefix.initial(), gp, gq, 0)
    if upoly.degree(node.p) != nf.deg_P or upoly.degree(node.q) != nf.deg_Q:
        raise AssertionError("deg p_0 / deg q_0 differ from deg P / deg Q")
    return node


def admissible_roots(node: AssociatedNode):
    """Common zeros of the leading polynomials whose exponent is positive,
    as ``(c, mult in p, mult in q)``."""
    active = [poly for poly, ex in ((node.p, node.a), (node.q, node.b)) if ex > 0]
    if not active:
        return []
    prec = node._ctx.precision if node._ctx else mpmath.mp.prec
    loose = mpmath.sqrt(zero_tolerance(prec))
    first = active[0]
    if all(is_exact(c) for c in node.p + node.q) and len(active) == 2:
        first = upoly.gcd_exact(node.p, node.q)
    out = []
    for c, _ in upoly.roots(first, prec):
        mults = []
        for poly in (node.p, node.q):
            mults.append(upoly.multiplicity_at(poly, c, tol=loose) if poly else 0)
        mp_, mq_ = mults
        if all(upoly.multiplicity_at(poly, c, tol=loose) > 0 for poly in active):
            out.append((c, mp_, mq_))
    return out


def classify_node(node: AssociatedNode) -> str:
    a, b = node.a, node.b
    if a <= 0 and b <= 0:
        if max(a, b) == 0 and (
            (a == 0 and upoly.degree(node.p) > 0) or (b == 0 and upoly.degree(node.q) > 0)
        ):
            return DICRITICAL
        return DEAD
    return BRANCHABLE if admissible_roots(node) else DEAD


def _rescaled(g: ShiftedPoly, factor: int) -> ShiftedPoly:
    if factor == 1:
        return g
    new = [{e * factor: c for e, c in gj.items()} for gj in g.g]
    return ShiftedPoly(new, g.den * factor, g.weight_floor * factor, g.tol)


def _next_exponent(gp, gq, s0, t0, gamma: int):
    """Largest exponent below ``gamma`` (den scale, as Fraction of x-exponent)
    where a root splits off or a leading exponent reaches zero."""
    den = gp.den
    candidates = []
    crossings = []
    for g, s in ((gp, s0), (gq, t0)):
        ja = g.active_index(gamma)
        if ja is not None and ja != s:
            raise PrecisionError(
                f"leading monomial degree {ja} below the slot differs from root multiplicity {s}"
            )
        brk = None
        if s > 0:
            edge = next(g.edges_below(s, gamma), None)
            if edge is not None and edge[0] is not None:
                brk = Fraction(edge[0], den)
                candidates.append(brk)
            es = g.lead(s)[0]
            cross = Fraction(-es, s * den)
            if cross < Fraction(gamma, den) and (brk is None or cross >= brk):
                crossings.append((cross, g))
    for cross, g in crossings:
        other = gq if g is gp else gp
        val = _value_at(other, cross)
        if val is None or val <= 0:
            candidates.append(cross)
    return max(candidates) if candidates else None


def _value_at(g: ShiftedPoly, exponent: Fraction):
    pts = g.points()
    if not pts:
        return None
    return max(Fraction(e, g.den) + j * exponent for j, e, _ in pts)


def expand_node(nf: NormalForm, node: AssociatedNode) -> list[AssociatedNode]:
    """Branch a node at each admissible root; returns the children."""
    if node.status != BRANCHABLE:
        return []
    ctx = node._ctx
    if node.depth + 1 > ctx.depth_cap:
        raise DepthCapError(f"depth cap {ctx.depth_cap} exceeded at prefix {node.prefix}")
    with mpmath.workprec(ctx.precision):
        gamma_frac = Fraction(node.prefix.param_exponent)
        for c, s0, t0 in admissible_roots(node):
            gp, gq = node._gp, node._gq
            gamma = int(gamma_frac * gp.den)
            gp = gp.shift(c, gamma)
            gq = gq.shift(c, gamma)
            nxt = _next_exponent(gp, gq, s0, t0, gamma)
            if nxt is None or nxt < ctx.floor:
                node.escaped.append((c, s0, t0))
                node.branches.append(Branch(c, s0, t0, None))
                continue
            factor = nxt.denominator // math.gcd(nxt.denominator, gp.den)
            gp, gq = _rescaled(gp, factor), _rescaled(gq, factor)
            prefix = node.prefix.child(c, nxt)
            child = _make_node(ctx, prefix, gp, gq, node.depth + 1, node.S, node.T)
            node.branches.append(Branch(c, s0, t0, child))
    return node.children


# -------------------------------------------------------------- components


@dataclass(frozen=True)
class ComponentParam:
    """A parametrized component ``xi -> (p(xi), q(xi))``; ``phi`` is absent
    for synthetic parametrizations that do not come from a search."""

    phi: DicriticalPrefix | None
    p: tuple
    q: tuple
    C_phi: object = None
    D_phi: int | None = None

    def __post_init__(self):
        if max(upoly.degree(list(self.p)), upoly.degree(list(self.q))) <= 0:
            raise ValueError("a dicritical component is a non-constant curve")

    @property
    def f_phi(self):
        return list(self.p), list(self.q)

    def __call__(self, xi):
        return upoly.evaluate(list(self.p), xi), upoly.evaluate(list(self.q), xi)

    def to_json(self) -> dict:
        return {
            "phi": None if self.phi is None else self.phi.to_json(),
            "f_phi": [upoly.to_str(list(self.p)), upoly.to_str(list(self.q))],
            "C_phi": None if self.C_phi is None else scalar_to_json(self.C_phi),
            "D_phi": self.D_phi,
        }


def _bezout(d: int, e: int):
    """(s, t) with s*d + t*e = 1."""
    if e == 0:
        return (1 if d > 0 else -1), 0
    s, t = _bezout(e, d % e)
    return t, s - (d // e) * t


def _nth_root(c, n: int):
    """An n-th root of c, rational when c is a rational n-th power."""
    if n == 1:
        return c
    if isinstance(c, Fraction) and c > 0:
        num, den = round(c.numerator ** (1 / n)), round(c.denominator ** (1 / n))
        for a in (num - 1, num, num + 1):
            for b in (den - 1, den, den + 1):
                if a > 0 and b > 0 and Fraction(a, b) ** n == c:
                    return Fraction(a, b)
    return mpmath.root(to_complex(c), n)


def theorem_shape(p, q, A, B, d: int, e: int) -> dict:
    """Is ``(p, q) = (A C^d xi^(D d) + ..., B C^e xi^(D e) + ...)`` for some
    C != 0 and positive integer D?  Reports C, D and the reparametrized pair
    ``(p(xi / g), q(xi / g))`` with ``g^D = C``, whose leading coefficients
    are (A, B)."""
    dp, dq = upoly.degree(p), upoly.degree(q)
    out = {"holds": False, "C": None, "D": None, "normalized": None}
    if dp <= 0 or dq <= 0 or dp % d or dq % e or dp // d != dq // e:
        out["reason"] = f"degrees ({dp}, {dq}) are not (D*{d}, D*{e})"
        return out
    D = dp // d
    alpha = upoly.lc(p) / A
    beta = upoly.lc(q) / B
    s, t = _bezout(d, e)
    C = alpha ** s * beta ** t
    if not (close(C ** d, alpha) and close(C ** e, beta)):
        out["D"] = D
        out["reason"] = "leading coefficients are not (A C^d, B C^e) for a common C"
        return out
    inv = 1 / _nth_root(C, D)
    out.update(holds=True, C=C, D=D,
               normalized=(upoly.compose_scale(p, inv), upoly.compose_scale(q, inv)))
    return out


def _x0_coefficient(F, phi, precision):
    try:
        ps = substitute_param(F, phi, 0, precision)
    except TruncationError:
        return []
    return ps.coefficient(Fraction(0))


def compute_f_phi(nf: NormalForm, phi: DicriticalPrefix, precision: int = DEFAULT_PRECISION) -> ComponentParam:
    """The curve ``f_phi`` swept by a dicritical prefix: the x^0 coefficients
    of ``P(x, phi)`` and ``Q(x, phi)``.  Under a constant nonzero Jacobian the
    constants ``C_phi``, ``D_phi`` of the normalized shape are attached."""
    with mpmath.workprec(precision):
        p = _x0_coefficient(nf.P, phi, precision)
        q = _x0_coefficient(nf.Q, phi, precision)
        C = D = None
        J = jacobian(nf.map)
        if J.is_constant() and not J.is_zero():
            shape = theorem_shape(p, q, nf.A, nf.B, nf.d, nf.e)
            if shape["holds"]:
                C, D = shape["C"], shape["D"]
        return ComponentParam(phi, tuple(p), tuple(q), C, D)


def in_image(point, comp: ComponentParam, tol) -> bool:
    u0, v0 = point
    p, q = comp.f_phi
    if upoly.degree(p) > 0:
        solve, other, target, check = p, q, u0, v0
    else:
        solve, other, target, check = q, p, v0, u0
    eq = upoly.sub(solve, [target])
    if not eq:
        return True
    for xi, _ in upoly.roots(eq):
        if abs(to_complex(upoly.evaluate(other, xi)) - to_complex(check)) <= tol * max(1, abs(to_complex(check))):
            return True
    return False


_SAMPLES = (Fraction(1, 3), Fraction(-7, 5), Fraction(11, 2))


def same_image(c1: ComponentParam, c2: ComponentParam, tol=None) -> bool:
    """Whether two parametrized curves coincide, by mutual point membership
    at a few sample parameters."""
    tol = match_tolerance() if tol is None else tol
    return all(in_image(c1(s), c2, tol) for s in _SAMPLES) and all(
        in_image(c2(s), c1, tol) for s in _SAMPLES
    )


# -------------------------------------------------------------------- tree


@dataclass
class DicriticalTree:
    nf: NormalForm
    root: AssociatedNode
    roots_P: list[PuiseuxSeries]
    roots_Q: list[PuiseuxSeries]
    leaves: list[AssociatedNode]
    components: list[ComponentParam]
    precision: int

    def nodes(self):
        return list(self.root.walk())

    def edges(self):
        for node in self.root.walk():
            for ch in node.children:
                yield node, ch


def build_tree(nf: NormalForm, *, max_order=None, precision: int = DEFAULT_PRECISION,
               depth_cap=None, roots_P=None, roots_Q=None) -> DicriticalTree:
    """Depth-first construction of the whole associated-prefix tree.

    Unless root lists are supplied, roots are first expanded down to ``x^-1``
    and re-expanded twice as deep whenever the search outruns them.
    """
    L = max(nf.deg_P, nf.deg_Q) if max_order is None else max_order
    supplied = roots_P is not None and roots_Q is not None
    order = L if supplied else min(1, L)
    while True:
        try:
            return _build_tree(nf, max_order=L, precision=precision, depth_cap=depth_cap,
                               roots_P=roots_P, roots_Q=roots_Q, root_order=order)
        except TruncationError:
            if supplied or order >= L:
                raise
            order = min(2 * order, L)


def _build_tree(nf, *, max_order, precision, depth_cap, roots_P, roots_Q, root_order):
    with mpmath.workprec(precision):
        root = root_node(nf, roots_P, roots_Q, max_order=max_order, precision=precision,
                         depth_cap=depth_cap, root_order=root_order)
        stack = [root]
        leaves = []
        while stack:
            node = stack.pop()
            if node.status == DICRITICAL:
                leaves.append(node)
            elif node.status == BRANCHABLE:
                stack.extend(reversed(expand_node(nf, node)))
        leaves.sort(key=lambda n: n.prefix.sort_key())
        comps: list[ComponentParam] = []
        for leaf in leaves:
            comp = compute_f_phi(nf, leaf.prefix, precision)
            if not any(same_image(comp, other) for other in comps):
                comps.append(comp)
        ctx = root._ctx
        return DicriticalTree(nf, root, ctx.roots_P, ctx.roots_Q, leaves, comps, precision)


def enumerate_dicritical(nf: NormalForm, **kwargs) -> list[ComponentParam]:
    """Parametrizations of the components of the non-proper value set, one
    per distinct curve, ordered by their representative prefix."""
    return build_tree(nf, **kwargs).components


# ------------------------------------------------------------ audit checks


def _eq(a, b) -> bool:
    return close(a, b)


def lemma2_consistency(parent: AssociatedNode, child: AssociatedNode) -> dict:
    """Audit the bookkeeping identities across one edge.

    The left sides come from the child's own substitution data; the right
    sides from the parent's data and root counts taken from the Puiseux
    root lists (``#S_(i-1)^0`` is the number of parent roots whose slot
    coefficient equals the chosen value).
    """
    ctx = parent._ctx
    with mpmath.workprec(ctx.precision):
        slot = Fraction(parent.prefix.param_exponent)
        c = child.prefix.coefficient_at(slot)
        s0 = _count_matching_value(ctx.roots_P, parent.S, slot, c)
        t0 = _count_matching_value(ctx.roots_Q, parent.T, slot, c)
        step = child.prefix.level_ratios[-1] - parent.prefix.level_ratios[-1]
        checks = {}
        rhs_A = upoly.taylor_coefficient(parent.p, c, s0)
        rhs_B = upoly.taylor_coefficient(parent.q, c, t0)
        checks["A"] = (child.A, rhs_A, _eq(child.A, rhs_A))
        checks["B"] = (child.B, rhs_B, _eq(child.B, rhs_B))
        rhs_a = parent.exp_P - s0 * step
        rhs_b = parent.exp_Q - t0 * step
        checks["a"] = (child.exp_P, rhs_a, child.exp_P == rhs_a)
        checks["b"] = (child.exp_Q, rhs_b, child.exp_Q == rhs_b)
        checks["deg_p"] = (upoly.degree(child.p), s0, upoly.degree(child.p) == s0 == len(child.S))
        checks["deg_q"] = (upoly.degree(child.q), t0, upoly.degree(child.q) == t0 == len(child.T))
    return {"passed": all(v[2] for v in checks.values()), "checks": checks}


def lemma3_consistency(node: AssociatedNode, jconst) -> dict:
    """Audit ``J_i = a p q' - b p' q`` against the Jacobian constant.

    With the chain rule applied to ``(t, xi) -> f(t^-m, phi(t^-m, xi))`` the
    matching-exponent case gives ``J_i = m * J``; the opposite sign is
    recorded as ``literal_sign_holds`` for comparison.
    """
    if jconst is None or jconst == 0:
        return {"applicable": False, "reason": "Jacobian is not a nonzero constant"}
    if not (node.a > 0 and node.b > 0):
        return {"applicable": False, "reason": "a_i and b_i must both be positive"}
    ctx = node._ctx
    prec = ctx.precision if ctx else mpmath.mp.prec
    with mpmath.workprec(prec):
        a, b, m, n = node.a, node.b, node.m, node.n
        p, q = node.p, node.q
        Ji = upoly.sub(upoly.scale(upoly.mul(p, upoly.deriv(q)), a),
                       upoly.scale(upoly.mul(upoly.deriv(p), q), b))
        Ji = upoly.trim(Ji, mpmath.sqrt(zero_tolerance(prec)) * max(1, upoly.max_abs(p) * upoly.max_abs(q)))
        edge = 2 * m - n
        out = {"applicable": True, "a": a, "b": b, "m": m, "n": n, "J_i": Ji}
        if a + b == edge:
            out["case"] = "equal"
            expected = [m * jconst]
            out["holds"] = len(Ji) == 1 and _eq(Ji[0], expected[0])
            out["literal_sign_holds"] = len(Ji) == 1 and _eq(Ji[0], -m * jconst)
        elif a + b > edge:
            out["case"] = "greater"
            out["holds"] = not Ji
        else:
            out["case"] = "less"
            out["holds"] = False
        if not Ji:
            g = math.gcd(int(a), int(b))
            lhs = upoly.power(p, int(b) // g)
            rhs = upoly.power(q, int(a) // g)
            C = upoly.lc(lhs) / upoly.lc(rhs)
            resid = upoly.trim(upoly.sub(lhs, upoly.scale(rhs, C)),
                               mpmath.sqrt(zero_tolerance(prec)) * max(1, upoly.max_abs(lhs)))
            out["proportional"] = not resid
            out["C"] = C
            if upoly.degree(p) > 0 and upoly.degree(q) > 0:
                zs = upoly.roots(p, prec)
                out["common_zero"] = any(
                    upoly.multiplicity_at(q, z, tol=mpmath.sqrt(zero_tolerance(prec))) > 0 for z, _ in zs
                )
            else:
                out["common_zero"] = None
        out["passed"] = bool(out["holds"]) and (bool(Ji) or out["proportional"])
    return out
