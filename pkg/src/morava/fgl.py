"""The height-s Honda formal group law at p = 2, truncated by total degree.

The law is built from its logarithm ``l(x) = sum_i x^(2^(s i)) / 2^i`` over
exact rationals as ``F(x, y) = e(l(x) + l(y))`` with ``e`` the compositional
inverse of ``l``, checked to be 2-integral term by term, and reduced mod 2.
That construction is independent of the two-term approximation
``F = x + y + Phi^(2^(s-1))``, which :func:`check_approximation` then tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np

from .poly import GF2, QQ, Poly, PolyRing, TruncatedRing, root_2k

X_QQ = PolyRing(("x",), QQ)
XY_QQ = PolyRing(("x", "y"), QQ)
X_F2 = PolyRing(("x",), GF2)
XY_F2 = PolyRing(("x", "y"), GF2)
XYZ_F2 = PolyRing(("x", "y", "z"), GF2)


class FglError(RuntimeError):
    """Internal fault: the rational oracle produced something impossible."""


class InsufficientDegreeError(ValueError):
    """The context's truncation degree cannot represent the requested computation."""


def _mul_trunc(p: Poly, q: Poly, D: int) -> Poly:
    """Product truncated at total degree ``D`` (no terms above ``D`` are formed)."""
    if not p or not q:
        return p.ring.zero()
    out: Dict[tuple, object] = {}
    gf2 = p.field is GF2
    qs = sorted(q.terms.items(), key=lambda t: sum(t[0]))
    for ea, ca in p.terms.items():
        budget = D - sum(ea)
        if budget < 0:
            continue
        for eb, cb in qs:
            if sum(eb) > budget:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            if gf2:
                if e in out:
                    del out[e]
                else:
                    out[e] = 1
            else:
                c = out.get(e, 0) + ca * cb
                if c:
                    out[e] = c
                else:
                    del out[e]
    return Poly(p.ring, out)


def compose(f: Poly, g: Poly, D: int) -> Poly:
    """``f(g)`` truncated at degree ``D``; ``f`` univariate, ``g`` without constant term.

    ``g`` may live in any ring over the same field; Horner's rule in that ring.
    """
    if f.ring.nvars != 1:
        raise ValueError("outer series must be univariate")
    if g.valuation() == 0:
        raise ValueError("inner series must have zero constant term")
    coeffs = {e[0]: c for e, c in f.terms.items()}
    top = max(coeffs, default=0)
    ring = g.ring
    result = ring.constant(coeffs.get(top, 0))
    for k in range(top - 1, -1, -1):
        result = _mul_trunc(result, g, D)
        if k in coeffs:
            result = result + ring.constant(coeffs[k])
    return result


def honda_log(s: int, D: int) -> Poly:
    """``sum_{i : 2^(s i) <= D} x^(2^(s i)) / 2^i`` over QQ."""
    if s < 1 or D < 1:
        raise ValueError("need s >= 1 and D >= 1")
    terms = {}
    i = 0
    while (1 << (s * i)) <= D:
        terms[(1 << (s * i),)] = Fraction(1, 1 << i)
        i += 1
    return X_QQ.from_dict(terms)


def derivative(f: Poly) -> Poly:
    """d/dx of a univariate series."""
    return f.ring.from_dict({(e[0] - 1,): c * e[0] for e, c in f.terms.items() if e[0]})


def series_inverse(f: Poly, D: int) -> Poly:
    """Multiplicative inverse of a univariate series with constant term 1, mod x^(D+1)."""
    if f.terms.get((0,)) != 1:
        raise ValueError("constant term must be 1")
    g = f.ring.one()
    prec = 1
    while prec <= D:
        prec = min(2 * prec, D + 1)
        # Newton step g <- g (2 - f g)
        fg = _mul_trunc(f, g, prec - 1)
        g = _mul_trunc(g, 2 - fg, prec - 1)
    return g.truncate(D)


def series_reverse(l: Poly, D: int) -> Poly:
    """Compositional inverse ``e`` of ``l = x + O(x^2)``, mod x^(D+1).

    Newton iteration ``e <- e - (l(e) - x) / l'(e)``, doubling precision.
    """
    if l.ring.nvars != 1:
        raise ValueError("series_reverse needs a univariate series")
    l = l.truncate(D)
    if l.coefficient((0,)) != 0 or l.coefficient((1,)) != 1:
        raise ValueError("series must be x + higher-order terms")
    x = l.ring.gen(l.ring.names[0])
    dl = derivative(l)
    e = x
    prec = 1
    while prec < D:
        prec = min(2 * prec, D)
        resid = compose(l, e, prec) - x
        dle = compose(dl, e, prec) if dl.degree() > 0 else dl
        e = (e - _mul_trunc(resid, series_inverse(dle, prec), prec)).truncate(prec)
    return e


def _two_integral(c: Fraction) -> bool:
    return c.denominator % 2 == 1


@dataclass(frozen=True)
class FglContext:
    """Truncated height-``s`` Honda law ``F`` over GF(2), exact up to total degree ``D``."""

    s: int
    D: int
    F: Poly
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def height(self) -> int:
        return self.s

    def n_series(self, n: int) -> Poly:
        return n_series(self, n)

    def euler_sum(self, e1: Poly, e2: Poly, ring: TruncatedRing) -> Poly:
        return euler_sum(self, e1, e2, ring)

    def F_of(self, g1: Poly, g2: Poly, D: Optional[int] = None) -> Poly:
        """``F(g1, g2)`` truncated at degree ``D`` (default ``self.D``); both series share a ring."""
        return _fgl_compose(self, g1, g2, self.D if D is None else D)

    def y_slices(self):
        """``F = sum_j y^j f_j(x)``, as ``{j: f_j}`` with ``f_j`` univariate over GF(2)."""
        if "y_slices" not in self._cache:
            slices: Dict[int, Dict[tuple, int]] = {}
            for (i, j) in self.F.terms:
                slices.setdefault(j, {})[(i,)] = 1
            self._cache["y_slices"] = {j: Poly(X_F2, t) for j, t in slices.items()}
        return self._cache["y_slices"]


def _fgl_rational(s: int, D: int) -> Poly:
    l = honda_log(s, D)
    e = series_reverse(l, D)
    lx = l.map_ring(XY_QQ)
    ly = Poly(XY_QQ, {(0, k[0]): c for k, c in l.terms.items()})
    return compose(e, lx + ly, D)


@lru_cache(maxsize=None)
def fgl_rational(s: int, D: int) -> Poly:
    """``e(l(x) + l(y))`` over QQ, truncated at total degree ``D``."""
    return _fgl_rational(s, D)


@lru_cache(maxsize=None)
def fgl_series(s: int, D: int) -> FglContext:
    """Build the mod-2 Honda law of height ``s`` up to degree ``D``.

    Raises :class:`FglError` if a rational coefficient has even denominator.
    """
    if s < 2:
        raise ValueError("height s must be at least 2")
    FQ = fgl_rational(s, D)
    terms = {}
    for e, c in FQ.terms.items():
        if not _two_integral(c):
            raise FglError(f"coefficient {c} of x^{e[0]} y^{e[1]} is not 2-integral")
        if c.numerator % 2:
            terms[e] = 1
    return FglContext(s, D, Poly(XY_F2, terms))


def _fgl_compose(ctx: FglContext, g1: Poly, g2: Poly, D: int) -> Poly:
    """``F(g1, g2)`` truncated at degree ``D`` by Horner in the second slot."""
    if g1.ring != g2.ring:
        raise ValueError("both arguments must share a ring")
    ring = g1.ring
    slices = ctx.y_slices()
    top = max(slices)
    result = ring.zero()
    for j in range(top, -1, -1):
        result = _mul_trunc(result, g2, D)
        if j in slices:
            result = result + compose(slices[j], g1, D)
    return result


def n_series(ctx: FglContext, n: int) -> Poly:
    """``[n](x)`` over GF(2) up to degree ``ctx.D``; ``n = -1`` is the formal inverse."""
    key = ("n", n)
    if key in ctx._cache:
        return ctx._cache[key]
    x = X_F2.gen("x")
    if n < -1:
        raise ValueError("n must be >= -1")
    if n == 0:
        out = X_F2.zero()
    elif n == 1:
        out = x
    elif n == -1:
        iota = x
        for _ in range(ctx.D + 1):
            nxt = iota + ctx.F_of(x, iota)
            if nxt == iota:
                break
            iota = nxt
        else:
            raise FglError("formal inverse iteration did not stabilise")
        out = iota
    else:
        out = ctx.F_of(x, n_series(ctx, n - 1))
    ctx._cache[key] = out
    return out


def _require_degree(ctx: FglContext, ring: TruncatedRing):
    top = ring.max_degree
    if top is None or top > ctx.D:
        raise InsufficientDegreeError(
            f"FGL truncated at degree {ctx.D}, but {ring} has nonzero monomials "
            f"up to degree {top}; rebuild the context with D >= {top}")


def euler_sum(ctx: FglContext, e1: Poly, e2: Poly, ring: TruncatedRing) -> Poly:
    """``F(e1, e2)`` evaluated in the truncated ring ``ring``."""
    _require_degree(ctx, ring)
    for e in (e1, e2):
        if ring.reduce(e).coefficient((0,) * ring.ring.nvars):
            raise ValueError("Euler classes must be nilpotent (no constant term)")
    if ring.dense:
        A, B = ring.to_dense(e1), ring.to_dense(e2)
        return ring.from_dense(dense_fgl(ctx, ring, A, B))
    return ring.reduce(_fgl_compose(ctx, ring.reduce(e1), ring.reduce(e2), ring.max_degree))


def _dense_horner(ring: TruncatedRing, exps, A: np.ndarray) -> np.ndarray:
    """Evaluate ``sum_{k in exps} A^k`` in the dense ring."""
    present = set(e for e in exps if e <= ring.max_degree)
    out = np.zeros(ring.shape, dtype=np.uint8)
    one = np.zeros(ring.shape, dtype=np.uint8)
    one[(0,) * one.ndim] = 1
    for k in range(max(present, default=0), -1, -1):
        out = ring.dense_mul(out, A)
        if k in present:
            out = out ^ one
    return out


def dense_fgl(ctx: FglContext, ring: TruncatedRing, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``F(A, B)`` for nilpotent dense elements of ``ring``."""
    _require_degree(ctx, ring)
    slices = ctx.y_slices()
    top = min(max(slices), ring.max_degree)
    out = np.zeros(ring.shape, dtype=np.uint8)
    for j in range(top, -1, -1):
        out = ring.dense_mul(out, B)
        if j in slices:
            out = out ^ _dense_horner(ring, [e[0] for e in slices[j].terms], A)
    return out


def dense_n_series(ctx: FglContext, ring: TruncatedRing, n: int, A: np.ndarray) -> np.ndarray:
    """``[n](A)`` for a nilpotent dense element ``A``."""
    _require_degree(ctx, ring)
    return _dense_horner(ring, [e[0] for e in n_series(ctx, n).terms], A)


# -- identity checks -------------------------------------------------------

def first_difference(p: Poly, q: Poly) -> Optional[Tuple[int, ...]]:
    """Lowest-degree monomial where ``p`` and ``q`` differ, or ``None``."""
    diff = p - q
    if not diff:
        return None
    return min(diff.terms, key=lambda e: (sum(e), e))


def tensor_square_sides(ctx: FglContext, D: Optional[int] = None) -> Tuple[Poly, Poly]:
    """Both sides of the tensor-square total Chern class identity for a split plane bundle.

    For ``zeta = L1 + L2`` with Euler classes ``x, y``:
    left  ``(1 + [2](x)) (1 + F(x,y))^2 (1 + [2](y))`` (total Chern class of the tensor square),
    right ``(1 + F(x,y)^2) (1 + (x+y)^(2^s) + (xy)^(2^s))``.
    """
    D = ctx.D if D is None else D
    if D > ctx.D:
        raise InsufficientDegreeError(f"need D <= {ctx.D}")
    x, y = XY_F2.gens()
    two = n_series(ctx, 2).truncate(D)
    two_x = two.map_ring(XY_F2)
    two_y = Poly(XY_F2, {(0, e[0]): 1 for e in two.terms})
    F = ctx.F.truncate(D)
    one = XY_F2.one()
    lhs = _mul_trunc(_mul_trunc(one + two_x, _mul_trunc(one + F, one + F, D), D), one + two_y, D)
    q = 1 << ctx.s
    rhs = _mul_trunc(one + _mul_trunc(F, F, D), (one + (x + y) ** q + (x * y) ** q).truncate(D), D)
    return lhs, rhs


def verify_tensor_square(ctx: FglContext, D: Optional[int] = None):
    """``(passed, first differing monomial or None)``."""
    lhs, rhs = tensor_square_sides(ctx, D)
    witness = first_difference(lhs, rhs)
    return witness is None, witness


def divides_homogeneous(m: Poly, r: Poly) -> bool:
    """Whether the homogeneous bivariate ``m`` divides ``r`` exactly (GF(2))."""
    def lead(p):
        return max(p.terms, key=lambda e: (sum(e), e))
    lm = lead(m)
    r = Poly(r.ring, dict(r.terms))
    while r:
        lr = lead(r)
        if any(a < b for a, b in zip(lr, lm)):
            return False
        q = r.ring.monomial(tuple(a - b for a, b in zip(lr, lm)))
        r = r + q * m
    return True


@dataclass
class ApproximationCheck:
    phi_exists: bool
    phi: Optional[Poly]
    remainder: Optional[Poly]
    divisible: bool
    known_degree: int

    @property
    def passed(self) -> bool:
        return self.phi_exists and self.divisible


def check_approximation(ctx: FglContext, D: Optional[int] = None) -> ApproximationCheck:
    """Test ``F = x + y + Phi^(2^(s-1))`` with ``Phi = xy + (xy)^h (x+y)`` modulo ``(xy)^h (x+y)^h``.

    ``h = 2^(s-1)``.  ``F`` known to degree ``D`` pins ``Phi`` to degree ``D // h``.
    """
    D = ctx.D if D is None else D
    s = ctx.s
    h = 1 << (s - 1)
    x, y = XY_F2.gens()
    G = ctx.F.truncate(D) + x + y
    phi = root_2k(G, s - 1)
    if phi is None:
        return ApproximationCheck(False, None, None, False, D // h)
    known = D // h
    phi = phi.truncate(known)
    r = (phi + x * y + (x * y) ** h * (x + y)).truncate(known)
    m = (x * y) ** h * (x + y) ** h
    if m.degree() > known:
        ok = r.is_zero()
    else:
        ok = divides_homogeneous(m, r)
    return ApproximationCheck(True, phi, r, ok, known)
