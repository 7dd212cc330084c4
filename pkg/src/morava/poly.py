"""Sparse multivariate polynomials over GF(2) and QQ, plus truncated rings.

A :class:`Poly` is a finite map from exponent tuples to nonzero coefficients.
Over GF(2) the only nonzero coefficient is ``1``; over QQ coefficients are
:class:`fractions.Fraction` (always in lowest terms, positive denominator).

Values are immutable after construction.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import signal

Exps = Tuple[int, ...]


class RingMismatchError(ValueError):
    """Operands live in different ambient rings."""


class Field:
    """Coefficient domain. Only the two module singletons exist."""

    def __init__(self, name: str, char: int):
        self.name = name
        self.char = char

    def __repr__(self):
        return self.name

    def convert(self, c):
        if self.char == 2:
            if isinstance(c, Fraction):
                if c.denominator % 2 == 0:
                    raise ValueError(f"{c} is not 2-integral")
                return c.numerator % 2
            return int(c) % 2
        return Fraction(c)


GF2 = Field("GF(2)", 2)
QQ = Field("QQ", 0)


def _degrevlex_key(e: Exps):
    return (sum(e), tuple(-x for x in reversed(e)))


class PolyRing:
    """Polynomial ring over ``field`` in the named variables (in that order)."""

    def __init__(self, names: Sequence[str], field: Field = GF2):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.field = field
        self.nvars = len(self.names)
        self._index = {n: i for i, n in enumerate(self.names)}

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.field is other.field)

    def __hash__(self):
        return hash((self.names, self.field.name))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, {self.field})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        return self.monomial((0,) * self.nvars, c)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        c = self.field.convert(coeff)
        if not c:
            return self.zero()
        return Poly(self, {tuple(exps): c})

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(self.gen(n) for n in self.names)

    def from_dict(self, terms: Mapping[Exps, object]) -> "Poly":
        """Build from ``{exps: coeff}``, dropping zero coefficients."""
        out = {}
        for e, c in terms.items():
            c = self.field.convert(c)
            if c:
                out[tuple(e)] = c
        return Poly(self, out)

    def parse(self, text: str) -> "Poly":
        """Inverse of :meth:`Poly.to_text`."""
        text = text.strip()
        if text == "0":
            return self.zero()
        out = self.zero()
        for term in text.split(" + "):
            coeff = Fraction(1)
            e = [0] * self.nvars
            for factor in term.strip().split("*"):
                if re.fullmatch(r"-?\d+(/\d+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                name, _, k = factor.partition("^")
                e[self.index(name)] += int(k) if k else 1
            out = out + self.monomial(e, coeff)
        return out


class Poly:
    """Element of a :class:`PolyRing`, stored as ``{exps: coeff}``."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Exps, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion helpers -------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    @property
    def field(self) -> Field:
        return self.ring.field

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field is GF2:
            a, b = self.terms, other.terms
            if len(a) < len(b):
                a, b = b, a
            out = dict(a)
            for e in b:
                if e in out:
                    del out[e]
                else:
                    out[e] = 1
            return Poly(self.ring, out)
        out = dict(self.terms)
        for e, c in other.terms.items():
            c = out.get(e, 0) + c
            if c:
                out[e] = c
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        if self.field is GF2:
            return self
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

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
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        out: Dict[Exps, object] = {}
        if self.field is GF2:
            for ea in a:
                for eb in b:
                    e = tuple(x + y for x, y in zip(ea, eb))
                    if e in out:
                        del out[e]
                    else:
                        out[e] = 1
            return Poly(self.ring, out)
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = out.get(e, 0) + ca * cb
                if c:
                    out[e] = c
                else:
                    del out[e]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exps, object]]:
        return iter(self.terms.items())

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> Iterator[Exps]:
        return iter(self.terms)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def valuation(self) -> int:
        """Lowest total degree of a term; ``-1`` for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(self.ring.names[i] for i in sorted(used))

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def lowest_terms(self) -> "Poly":
        """Homogeneous component of lowest degree."""
        return self.homogeneous_part(self.valuation())

    # -- transformations ----------------------------------------------------
    def truncate(self, degree: int) -> "Poly":
        """Drop every term of total degree above ``degree``."""
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) <= degree})

    def scale_exponents(self, k: int) -> "Poly":
        """Multiply every exponent by ``k`` (the Frobenius ``p -> p^k`` when k is a power of 2 over GF(2))."""
        return Poly(self.ring, {tuple(k * x for x in e): c for e, c in self.terms.items()})

    def map_ring(self, ring: PolyRing) -> "Poly":
        """Reinterpret in ``ring`` (variables matched by name, coefficients converted)."""
        idx = [ring.index(n) for n in self.ring.names]
        out = ring.zero()
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in zip(idx, e):
                ne[i] += x
            out = out + ring.monomial(ne, c)
        return out

    def substitute(self, assignment: Mapping[str, "Poly"],
                   ring: Optional[PolyRing] = None,
                   within: Optional["TruncatedRing"] = None) -> "Poly":
        return substitute(self, assignment, ring=ring, within=within)

    # -- text -------------------------------------------------------------
    def sorted_terms(self, ascending: bool = False):
        if ascending:
            # degrees increase, but within a degree keep the descending order
            key = lambda t: (sum(t[0]), tuple(x for x in reversed(t[0])))
            return sorted(self.terms.items(), key=key)
        return sorted(self.terms.items(), key=lambda t: _degrevlex_key(t[0]), reverse=True)

    def to_text(self, ascending: bool = False) -> str:
        """Render as ``"a^3*c + x2^2 + 1"``.

        Terms are ordered by degree-reverse-lexicographic order on the ring's
        variable sequence, largest first.  With ``ascending`` degrees increase instead, as is usual for
        power series.
        """
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(ascending):
            factors = []
            for name, x in zip(self.ring.names, e):
                if x == 1:
                    factors.append(name)
                elif x:
                    factors.append(f"{name}^{x}")
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()!r})"


def substitute(p: Poly, assignment: Mapping[str, Poly], ring: Optional[PolyRing] = None,
               within: Optional["TruncatedRing"] = None) -> Poly:
    """Ring-homomorphic image of ``p`` under ``name -> image``.

    Variables of ``p`` missing from ``assignment`` are an error unless the
    target ring is ``p.ring`` (then they map to themselves).  With ``within``
    all products are reduced in that truncated ring as they are formed.
    """
    if within is not None:
        ring = within.ring
    if ring is None:
        images = list(assignment.values())
        ring = images[0].ring if images else p.ring
    images = []
    for i, name in enumerate(p.ring.names):
        if name in assignment:
            img = assignment[name]
            if not isinstance(img, Poly):
                img = ring.constant(img)
            if img.ring != ring:
                raise RingMismatchError(f"image of {name} lives in {img.ring}, expected {ring}")
            images.append(img)
        elif ring == p.ring:
            images.append(ring.gen(name))
        elif any(e[i] for e in p.terms):
            raise KeyError(f"no image assigned to variable {name!r}")
        else:
            images.append(None)
    mul = within.mul if within is not None else (lambda x, y: x * y)
    powers: Dict[Tuple[int, int], Poly] = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            if k == 1:
                powers[key] = within.reduce(images[i]) if within is not None else images[i]
            else:
                half = power(i, k // 2)
                sq = mul(half, half)
                powers[key] = mul(sq, power(i, 1)) if k % 2 else sq
        return powers[key]

    acc: Dict[Exps, object] = {}
    for e, c in p.terms.items():
        term = ring.constant(c)
        for i, x in enumerate(e):
            if x:
                term = mul(term, power(i, x))
                if not term:
                    break
        _accumulate(acc, term)
    return Poly(ring, acc)


def _accumulate(acc: Dict[Exps, object], p: Poly) -> None:
    """In-place ``acc += p`` on a raw term dict."""
    if p.field is GF2:
        for e in p.terms:
            if e in acc:
                del acc[e]
            else:
                acc[e] = 1
        return
    for e, c in p.terms.items():
        c = acc.get(e, 0) + c
        if c:
            acc[e] = c
        else:
            acc.pop(e, None)


def root_2k(p: Poly, k: int) -> Optional[Poly]:
    """The unique ``q`` with ``q**(2**k) == p`` over GF(2), or ``None``."""
    if p.field is not GF2:
        raise ValueError("root_2k needs GF(2) coefficients")
    m = 1 << k
    out = {}
    for e in p.terms:
        if any(x % m for x in e):
            return None
        out[tuple(x // m for x in e)] = 1
    return Poly(p.ring, out)


def frobenius(p: Poly, k: int) -> Poly:
    """``p**(2**k)`` over GF(2), computed term-wise."""
    if p.field is not GF2:
        raise ValueError("frobenius needs GF(2) coefficients")
    return p.scale_exponents(1 << k)


class TruncatedRing:
    """Quotient of a polynomial ring by monomial caps and/or a degree bound.

    A monomial is zero when some variable reaches its cap ``caps[name]`` or
    when its total degree exceeds ``degree``.  Variables without a cap are
    unbounded.  When every variable is capped and the field is GF(2),
    multiplication runs through dense :mod:`numpy` arrays.
    """

    def __init__(self, ring: PolyRing, caps: Optional[Mapping[str, int]] = None,
                 degree: Optional[int] = None):
        self.ring = ring
        caps = dict(caps or {})
        for name in caps:
            ring.index(name)
        self.caps = tuple(caps.get(n) for n in ring.names)
        self.degree = degree
        self.dense = ring.field is GF2 and all(c is not None for c in self.caps) and degree is None

    def __repr__(self):
        caps = {n: c for n, c in zip(self.ring.names, self.caps) if c is not None}
        return f"TruncatedRing({list(self.ring.names)}, caps={caps}, degree={self.degree})"

    @classmethod
    def from_names(cls, names_caps: Mapping[str, int], field: Field = GF2) -> "TruncatedRing":
        return cls(PolyRing(list(names_caps), field), caps=names_caps)

    def survives(self, e: Exps) -> bool:
        if self.degree is not None and sum(e) > self.degree:
            return False
        return all(c is None or x < c for x, c in zip(e, self.caps))

    def reduce(self, p: Poly) -> Poly:
        if p.ring != self.ring:
            raise RingMismatchError(f"{p.ring} vs {self.ring}")
        return Poly(self.ring, {e: c for e, c in p.terms.items() if self.survives(e)})

    @property
    def max_degree(self) -> Optional[int]:
        """Largest total degree of a surviving monomial (``None`` if unbounded)."""
        if self.degree is not None:
            return self.degree
        if any(c is None for c in self.caps):
            return None
        return sum(c - 1 for c in self.caps)

    @property
    def shape(self) -> Tuple[int, ...]:
        if any(c is None for c in self.caps):
            raise ValueError("ring is not finite-dimensional")
        return tuple(self.caps)

    @property
    def dim(self) -> int:
        return int(np.prod(self.shape))

    def basis(self) -> Iterator[Exps]:
        """Surviving monomials, in lexicographic order of exponent tuples."""
        return product(*(range(c) for c in self.shape))

    # -- dense representation ----------------------------------------------
    def to_dense(self, p: Poly) -> np.ndarray:
        arr = np.zeros(self.shape, dtype=np.uint8)
        for e in self.reduce(p).terms:
            arr[e] = 1
        return arr

    def from_dense(self, arr: np.ndarray) -> Poly:
        return Poly(self.ring, {tuple(int(x) for x in idx): 1
                                for idx in zip(*np.nonzero(arr & 1))})

    def dense_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if not a.any() or not b.any():
            return np.zeros(self.shape, dtype=np.uint8)
        full = signal.convolve(a.astype(np.int64), b.astype(np.int64), method="auto")
        crop = tuple(slice(0, c) for c in self.shape)
        return (full[crop] & 1).astype(np.uint8)

    def dense_pow(self, a: np.ndarray, k: int) -> np.ndarray:
        result = np.zeros(self.shape, dtype=np.uint8)
        result[(0,) * len(self.shape)] = 1
        base = a
        while k:
            if k & 1:
                result = self.dense_mul(result, base)
            k >>= 1
            if k:
                base = self.dense_mul(base, base)
        return result

    # -- ring operations on Poly ---------------------------------------------
    def mul(self, p: Poly, q: Poly) -> Poly:
        if self.dense:
            return self.from_dense(self.dense_mul(self.to_dense(p), self.to_dense(q)))
        return self.reduce(self.reduce(p) * self.reduce(q))

    def pow(self, p: Poly, k: int) -> Poly:
        if self.dense:
            return self.from_dense(self.dense_pow(self.to_dense(p), k))
        result = self.reduce(self.ring.one())
        base = self.reduce(p)
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result


def reduce_truncated(p: Poly, ring: TruncatedRing) -> Poly:
    return ring.reduce(p)


def sum_polys(polys: Iterable[Poly], ring: PolyRing) -> Poly:
    acc: Dict[Exps, object] = {}
    for p in polys:
        _accumulate(acc, p)
    return Poly(ring, acc)
