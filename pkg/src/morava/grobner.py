"""Reduced Groebner bases over GF(2).

Buchberger's algorithm with the Gebauer-Moeller pair update (the coprime and
chain criteria) and the normal selection strategy.

Internally a monomial is one Python int ``(K << EB) | E``:

* ``E`` packs the raw exponents, ``W`` bits per variable with the top bit of
  each field kept clear as a guard, so ``m | p`` iff ``(E_p - E_m) & GUARD == 0``;
* ``K`` packs a linear image of the exponents whose integer order is the
  monomial order (lex: exponents by priority; degrevlex: total degree then
  partial sums), so comparing the ints compares the monomials.

Both parts are linear in the exponents, hence monomial product is integer
addition.  A polynomial is a descending list of such ints.
"""
from __future__ import annotations

import heapq
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .poly import GF2, Exps, Poly, PolyRing, RingMismatchError

log = logging.getLogger(__name__)

W = 16  # bits per exponent field; exponents and degrees must stay below 2**(W-1)
DEFAULT_PAIR_BUDGET = 200_000


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when Buchberger processes more S-pairs than its budget allows."""

    def __init__(self, pairs: int, basis_size: int, pending: int):
        super().__init__(f"pair budget exhausted after {pairs} S-pairs "
                         f"(basis size {basis_size}, {pending} pairs pending)")
        self.pairs = pairs
        self.basis_size = basis_size
        self.pending = pending


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``"lex"`` or ``"degrevlex"``; ``priority`` lists variables, largest first.

    Without ``priority`` the ring's own variable order is used.
    """

    kind: str = "degrevlex"
    priority: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.priority is not None:
            object.__setattr__(self, "priority", tuple(self.priority))

    def permutation(self, ring: PolyRing) -> Tuple[int, ...]:
        if self.priority is None:
            return tuple(range(ring.nvars))
        if sorted(self.priority) != sorted(ring.names):
            raise ValueError(f"priority {self.priority} is not a permutation of {ring.names}")
        return tuple(ring.index(n) for n in self.priority)

    def sort_key(self, ring: PolyRing):
        """Key function on exponent tuples realising this order."""
        perm = self.permutation(ring)
        if self.kind == "lex":
            return lambda e: tuple(e[i] for i in perm)
        return lambda e: (sum(e), tuple(-e[i] for i in reversed(perm)))

    def __str__(self):
        if self.priority is None:
            return self.kind
        return f"{self.kind}({','.join(self.priority)})"


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


class _Codec:
    """Packs exponent tuples of ``ring`` into order-compatible ints."""

    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        n = self.n = ring.nvars
        self.perm = order.permutation(ring)
        self.EB = n * W
        self.EMASK = (1 << self.EB) - 1
        self.GUARD = sum(1 << (i * W + W - 1) for i in range(n))
        self.FMASK = (1 << W) - 1
        # contribution of one unit of variable i to M
        self.unit = [self._encode_unit(i) for i in range(n)]

    def _encode_unit(self, var: int) -> int:
        n = self.n
        pos = self.perm.index(var)
        if self.order.kind == "lex":
            # priority j sits in field n-1-j of K
            k = 1 << ((n - 1 - pos) * W)
        else:
            # K fields: degree in field n-1, then partial sums S_{n-2} .. S_0
            k = 1 << ((n - 1) * W)
            for j in range(pos, n - 1):
                k += 1 << (j * W)
        return (k << self.EB) | (1 << (var * W))

    def encode(self, e: Sequence[int]) -> int:
        if sum(e) >= (1 << (W - 1)):
            raise OverflowError(f"monomial degree {sum(e)} too large for the packed encoding")
        m = 0
        for i, x in enumerate(e):
            if x:
                m += x * self.unit[i]
        return m

    def exps(self, m: int) -> Exps:
        E = m & self.EMASK
        return tuple((E >> (i * W)) & self.FMASK for i in range(self.n))

    def divides(self, a: int, b: int) -> bool:
        return not (((b & self.EMASK) - (a & self.EMASK)) & self.GUARD)

    def lcm(self, a: int, b: int) -> int:
        return self.encode([max(x, y) for x, y in zip(self.exps(a), self.exps(b))])

    def coprime(self, a: int, b: int) -> bool:
        return all(not (x and y) for x, y in zip(self.exps(a), self.exps(b)))

    def to_terms(self, p: Poly) -> List[int]:
        if p.field is not GF2:
            raise ValueError("Groebner engine works over GF(2) only")
        if p.ring != self.ring:
            raise RingMismatchError(f"{p.ring} vs {self.ring}")
        return sorted((self.encode(e) for e in p.terms), reverse=True)

    def to_poly(self, terms: Iterable[int]) -> Poly:
        return Poly(self.ring, {self.exps(m): 1 for m in terms})


def _reduce(codec: _Codec, terms: Iterable[int], leads: List[int],
            tails: List[List[int]]) -> List[int]:
    """Full remainder of ``terms`` modulo the basis given as (lead, tail) lists."""
    live = set()
    for m in terms:
        if m in live:
            live.remove(m)
        else:
            live.add(m)
    heap = [-m for m in live]
    heapq.heapify(heap)
    EMASK, GUARD = codec.EMASK, codec.GUARD
    lead_E = [g & EMASK for g in leads]
    rem: List[int] = []
    while heap:
        m = -heapq.heappop(heap)
        if m not in live:
            continue
        live.remove(m)
        mE = m & EMASK
        for g, gE, tail in zip(leads, lead_E, tails):
            if not ((mE - gE) & GUARD):
                q = m - g
                for t in tail:
                    mt = q + t
                    if mt in live:
                        live.remove(mt)
                    else:
                        live.add(mt)
                        heapq.heappush(heap, -mt)
                break
        else:
            rem.append(m)
    return rem


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of an ideal of ``ring`` for ``order``.

    ``basis`` is sorted by leading monomial, largest first; every element is
    monic (over GF(2) automatically).
    """

    ring: PolyRing
    order: MonomialOrder
    basis: Tuple[Poly, ...]
    stats: Dict[str, int] = field(default_factory=dict)
    _codec: _Codec = field(default=None, repr=False, compare=False)
    _enc: List[List[int]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._codec is None:
            self._codec = _Codec(self.ring, self.order)
        if self._enc is None:
            self._enc = [self._codec.to_terms(g) for g in self.basis]

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order and self.basis == other.basis)

    def leading_monomials(self) -> List[Exps]:
        return [self._codec.exps(g[0]) for g in self._enc]

    def leading_term(self, p: Poly) -> Exps:
        return self._codec.exps(max(self._codec.encode(e) for e in p.terms))

    def normal_form(self, p: Poly) -> Poly:
        return normal_form(p, self)

    def contains(self, p: Poly) -> bool:
        return not normal_form(p, self)

    def standard_monomials(self) -> Optional[List[Exps]]:
        return standard_monomials(self)

    def dimension(self) -> Optional[int]:
        """Dimension of the quotient over GF(2), ``None`` if infinite."""
        sm = standard_monomials(self)
        return None if sm is None else len(sm)

    def is_groebner(self) -> bool:
        """Post-hoc Buchberger criterion: every S-polynomial reduces to zero."""
        codec = self._codec
        leads = [g[0] for g in self._enc]
        tails = [g[1:] for g in self._enc]
        for i in range(len(leads)):
            for j in range(i + 1, len(leads)):
                if not _reduce(codec, _spoly(codec, self._enc[i], self._enc[j]), leads, tails):
                    continue
                return False
        return True

    def is_reduced(self) -> bool:
        codec = self._codec
        for i, g in enumerate(self._enc):
            for j, h in enumerate(self._enc):
                if i != j and any(codec.divides(h[0], t) for t in g):
                    return False
        return True

    def to_text(self) -> str:
        return "\n".join(g.to_text() for g in self.basis)


def _spoly(codec: _Codec, f: List[int], g: List[int]) -> List[int]:
    l = codec.lcm(f[0], g[0])
    qf, qg = l - f[0], l - g[0]
    out = {qf + t for t in f[1:]}
    for t in g[1:]:
        m = qg + t
        if m in out:
            out.remove(m)
        else:
            out.add(m)
    return sorted(out, reverse=True)


def pair_budget_from_env(default: int = DEFAULT_PAIR_BUDGET) -> int:
    value = os.environ.get("MORAVA_PAIR_BUDGET")
    if not value:
        return default
    try:
        budget = int(value)
    except ValueError:
        raise ValueError(f"MORAVA_PAIR_BUDGET must be an integer, got {value!r}") from None
    if budget <= 0:
        raise ValueError("MORAVA_PAIR_BUDGET must be positive")
    return budget


def buchberger(generators: Sequence[Poly], order: MonomialOrder = DEGREVLEX,
               ring: Optional[PolyRing] = None,
               max_pairs: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    The result depends only on the ideal and the order.  ``max_pairs`` bounds
    the number of S-polynomials reduced; beyond it
    :class:`GroebnerBudgetExceeded` is raised.
    """
    gens = [g for g in generators]
    if ring is None:
        if not gens:
            raise ValueError("need at least one generator or an explicit ring")
        ring = gens[0].ring
    if max_pairs is None:
        max_pairs = pair_budget_from_env()
    codec = _Codec(ring, order)
    polys: List[List[int]] = []
    for g in gens:
        t = codec.to_terms(g)
        if t:
            polys.append(t)

    # inter-reduce the input (cheap, and keeps the pair queue small)
    polys = _autoreduce(codec, polys)
    if not polys:
        return GroebnerBasis(ring, order, (), {"pairs": 0, "zero_reductions": 0})
    if any(p[0] == 0 for p in polys):
        one = (ring.one(),)
        return GroebnerBasis(ring, order, one, {"pairs": 0, "zero_reductions": 0})

    f: List[List[int]] = []
    G: List[int] = []        # indices into f of the would-be basis
    B: Dict[Tuple[int, int], int] = {}  # pair -> lcm
    heap: List[Tuple[int, int, int]] = []

    def update(ih: int):
        nonlocal G, B
        mh = f[ih][0]
        C = list(G)
        D: List[int] = []
        lcm_h = {ig: codec.lcm(mh, f[ig][0]) for ig in C}
        while C:
            ig = C.pop()
            L = lcm_h[ig]
            if codec.coprime(mh, f[ig][0]) or not (
                    any(codec.divides(lcm_h[o], L) for o in C)
                    or any(codec.divides(lcm_h[o], L) for o in D)):
                D.append(ig)
        new_pairs = [(ig, ih) for ig in D if not codec.coprime(mh, f[ig][0])]
        B_new = {}
        for (i1, i2), L in B.items():
            if (not codec.divides(mh, L) or codec.lcm(f[i1][0], mh) == L
                    or codec.lcm(f[i2][0], mh) == L):
                B_new[(i1, i2)] = L
        for pr in new_pairs:
            L = lcm_h[pr[0]]
            B_new[pr] = L
            heapq.heappush(heap, (L, pr[0], pr[1]))
        B = B_new
        G = [ig for ig in G if not codec.divides(mh, f[ig][0])] + [ih]

    for p in sorted(polys, key=lambda t: t[0]):
        f.append(p)
        update(len(f) - 1)

    pairs_done = zero = 0
    while B:
        while True:
            L, i, j = heapq.heappop(heap)
            if B.get((i, j)) == L:
                break
        del B[(i, j)]
        pairs_done += 1
        if pairs_done > max_pairs:
            raise GroebnerBudgetExceeded(pairs_done - 1, len(G), len(B) + 1)
        Gs = sorted(G, key=lambda ig: f[ig][0])
        leads = [f[ig][0] for ig in Gs]
        tails = [f[ig][1:] for ig in Gs]
        h = _reduce(codec, _spoly(codec, f[i], f[j]), leads, tails)
        if not h:
            zero += 1
            continue
        f.append(h)
        update(len(f) - 1)
        if pairs_done % 1000 == 0:
            log.debug("pairs %d, basis %d, pending %d", pairs_done, len(G), len(B))

    basis = _interreduce(codec, [f[ig] for ig in G])
    polys_out = tuple(codec.to_poly(t) for t in basis)
    stats = {"pairs": pairs_done, "zero_reductions": zero, "size": len(basis)}
    return GroebnerBasis(ring, order, polys_out, stats, codec, basis)


def _autoreduce(codec: _Codec, polys: List[List[int]]) -> List[List[int]]:
    while True:
        out: List[List[int]] = []
        for p in polys:
            r = _reduce(codec, p, [q[0] for q in out], [q[1:] for q in out])
            if r:
                out.append(r)
        if out == polys:
            return out
        polys = out


def _interreduce(codec: _Codec, polys: List[List[int]]) -> List[List[int]]:
    """Minimalise, then fully reduce each element by the others."""
    polys = sorted(polys, key=lambda p: p[0])
    minimal: List[List[int]] = []
    for p in polys:
        if not any(codec.divides(q[0], p[0]) for q in minimal):
            minimal.append(p)
    out = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = _reduce(codec, p[1:], [q[0] for q in others], [q[1:] for q in others])
        out.append([p[0]] + tail)
    out.sort(key=lambda p: p[0], reverse=True)
    return out


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    """Unique remainder of ``p`` modulo ``gb``."""
    codec = gb._codec
    leads = [g[0] for g in gb._enc]
    tails = [g[1:] for g in gb._enc]
    return codec.to_poly(_reduce(codec, codec.to_terms(p), leads, tails))


def standard_monomials(gb: GroebnerBasis) -> Optional[List[Exps]]:
    """Monomials divisible by no leading monomial, or ``None`` if there are infinitely many."""
    n = gb.ring.nvars
    leads = gb.leading_monomials()
    bound = [None] * n
    for e in leads:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            i = nz[0]
            bound[i] = e[i] if bound[i] is None else min(bound[i], e[i])
        elif not nz:
            return []
    if any(b is None for b in bound):
        return None

    out: List[Exps] = []
    cur = [0] * n

    def blocked():
        return any(all(c >= l for c, l in zip(cur, e)) for e in leads)

    def rec(i):
        if i == n:
            out.append(tuple(cur))
            return
        for k in range(bound[i]):
            cur[i] = k
            if blocked():
                break
            rec(i + 1)
        cur[i] = 0

    rec(0)
    key = gb.order.sort_key(gb.ring)
    out.sort(key=key, reverse=True)
    return out


def gf2_rank_bitsets(rows: Iterable[int]) -> int:
    """Rank over GF(2) of row vectors given as int bitsets."""
    pivots: Dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank


def coordinates(polys: Sequence[Poly], gb: GroebnerBasis) -> List[int]:
    """Normal forms as bitsets over the standard monomials of ``gb``."""
    sm = standard_monomials(gb)
    if sm is None:
        raise ValueError("quotient is infinite-dimensional")
    index = {e: i for i, e in enumerate(sm)}
    rows = []
    for p in polys:
        bits = 0
        for e in normal_form(p, gb).terms:
            bits |= 1 << index[e]
        rows.append(bits)
    return rows


def independent_in_quotient(polys: Sequence[Poly], gb: GroebnerBasis) -> bool:
    """Whether the images of ``polys`` in ``ring / ideal`` are linearly independent over GF(2)."""
    return gf2_rank_bitsets(coordinates(polys, gb)) == len(polys)
