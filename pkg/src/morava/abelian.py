"""K(s)*(BH) for the maximal abelian subgroup H, with its involution and restriction map.

For G34/G35, ``H = C4 x C4`` and ``K(s)*(BH) = F2[u, v]/(u^(4^s), v^(4^s))``.
For G36/G37, ``H = C2 x C4 x C2`` and the ring is
``F2[u, v, m]/(u^(2^s), v^(4^s), m^(2^s))``.  The deck transformation ``t``
of the double cover ``BH -> BG`` acts on the Euler classes and the restriction
``rho*`` is given on the eight presentation generators.  All arithmetic is
dense over GF(2).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .fgl import FglContext, dense_fgl, dense_n_series, fgl_series
from .poly import Poly, TruncatedRing
from .presentations import GroupId, GroupPresentation, VARIABLES
from .report import VerificationReport

CHERN_MODES = ("sum", "fgl")


def ring_caps(group, s: int) -> Dict[str, int]:
    group = GroupId.parse(group)
    if group in (GroupId.G34, GroupId.G35):
        return {"u": 4 ** s, "v": 4 ** s}
    return {"u": 2 ** s, "v": 4 ** s, "m": 2 ** s}


def required_degree(group, s: int) -> int:
    """Smallest FGL truncation degree that is exact on the abelian ring."""
    return sum(c - 1 for c in ring_caps(group, s).values())


class DenseEvaluator:
    """Evaluate polynomials at fixed dense images, caching powers."""

    def __init__(self, ring: TruncatedRing, images: Dict[str, np.ndarray]):
        self.ring = ring
        self.images = images
        self._one = np.zeros(ring.shape, dtype=np.uint8)
        self._one[(0,) * len(ring.shape)] = 1
        self._powers: Dict[Tuple[str, int], np.ndarray] = {}

    def power(self, name: str, k: int) -> np.ndarray:
        if k == 0:
            return self._one
        if k == 1:
            return self.images[name]
        key = (name, k)
        if key not in self._powers:
            half = self.power(name, k // 2)
            out = self.ring.dense_mul(half, half)
            if k & 1:
                out = self.ring.dense_mul(out, self.images[name])
            self._powers[key] = out
        return self._powers[key]

    def monomial(self, names: Sequence[str], e: Sequence[int]) -> np.ndarray:
        term = self._one
        for name, k in zip(names, e):
            if k:
                term = self.ring.dense_mul(term, self.power(name, k))
                if not term.any():
                    break
        return term

    def __call__(self, p: Poly) -> np.ndarray:
        out = np.zeros(self.ring.shape, dtype=np.uint8)
        for e, _ in p:
            out ^= self.monomial(p.ring.names, e)
        return out


@dataclass
class AbelianModel:
    group: GroupId
    s: int
    ring: TruncatedRing
    t: Dict[str, Poly]
    rho: Dict[str, Poly]
    chern: str = "sum"
    _t_dense: Dict[str, np.ndarray] = field(default_factory=dict, repr=False)
    _rho_dense: Dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.ring.ring.names

    @property
    def dim(self) -> int:
        return self.ring.dim

    def apply_t(self, p: Poly) -> Poly:
        return self.ring.from_dense(DenseEvaluator(self.ring, self._t_dense)(p))

    def restrict(self, p: Poly) -> Poly:
        """``rho*(p)`` for a polynomial in the presentation variables."""
        return self.ring.from_dense(self.restriction_evaluator()(p))

    def restriction_evaluator(self) -> DenseEvaluator:
        return DenseEvaluator(self.ring, self._rho_dense)

    def involution_evaluator(self) -> DenseEvaluator:
        return DenseEvaluator(self.ring, self._t_dense)


def abelian_model(group, ctx: FglContext, chern: str = "sum") -> AbelianModel:
    """Build ``K(s)*(BH)``, ``t`` and ``rho*`` for ``group`` at height ``ctx.s``.

    ``chern`` fixes the image of ``x1`` and ``y1``, the first Chern classes
    of the plane bundles induced from a line bundle with Euler class ``w``:
    ``"sum"`` gives ``w + t(w)`` (sum of the Chern roots), ``"fgl"`` gives
    the formal sum ``F(w, t(w))``, which is the Euler class of the
    determinant line instead.
    """
    group = GroupId.parse(group)
    if chern not in CHERN_MODES:
        raise ValueError(f"chern must be one of {CHERN_MODES}")
    s = ctx.s
    ring = TruncatedRing.from_names(ring_caps(group, s))
    # raises InsufficientDegreeError when ctx.D is too small
    unit = {n: ring.to_dense(ring.ring.gen(n)) for n in ring.ring.names}
    mul = ring.dense_mul
    U, V = unit["u"], unit["v"]
    tV = dense_n_series(ctx, ring, 3, V)
    if group in (GroupId.G34, GroupId.G35):
        tU = dense_n_series(ctx, ring, 3, U)
        t = {"u": tU, "v": tV}
        a, b = dense_n_series(ctx, ring, 2, U), dense_n_series(ctx, ring, 2, V)
    else:
        M = unit["m"]
        tU = dense_fgl(ctx, ring, U, M)
        t = {"u": tU, "v": tV, "m": M}
        a, b = dense_n_series(ctx, ring, 2, V), M

    def c1(w, tw):
        return w ^ tw if chern == "sum" else dense_fgl(ctx, ring, w, tw)

    zero = np.zeros(ring.shape, dtype=np.uint8)
    # x-classes come from the plane bundle induced from u, y-classes from v
    x1, x2 = c1(U, tU), mul(U, tU)
    y1, y2 = c1(V, tV), mul(V, tV)
    T = mul(U, V) ^ mul(tU, tV)
    rho = {"a": a, "b": b, "c": zero, "x1": x1, "x2": x2, "y1": y1, "y2": y2, "T": T}
    return AbelianModel(group, s, ring,
                        t={n: ring.from_dense(x) for n, x in t.items()},
                        rho={n: ring.from_dense(rho[n]) for n in VARIABLES},
                        chern=chern, _t_dense=t, _rho_dense=rho)


def model_for(group, s: int, degree: Optional[int] = None, chern: str = "sum") -> AbelianModel:
    D = required_degree(group, s) if degree is None else degree
    return abelian_model(group, fgl_series(s, D), chern=chern)


def _witness(model: AbelianModel, arr: np.ndarray) -> Tuple[str, int]:
    p = model.ring.from_dense(arr)
    e = min(p.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    return Poly(p.ring, {e: 1}).to_text(), sum(e)


def verify_restrictions(model: AbelianModel, pres: GroupPresentation,
                        extra: bool = True) -> VerificationReport:
    """Restrict every generator (and extra relation) to H and test for zero."""
    if pres.group is not model.group or pres.s != model.s:
        raise ValueError(f"model is for {model.group.value}, s={model.s}; "
                         f"presentation is for {pres.group.value}, s={pres.s}")
    start = time.perf_counter()
    report = VerificationReport(model.group.value, model.s)
    tev = model.involution_evaluator()
    names = model.names
    for n in names:
        twice = tev(model.t[n])
        ok = model.ring.from_dense(twice) == model.ring.ring.gen(n)
        report.add(f"involution:{n}", ok, None if ok else model.ring.from_dense(twice).to_text())
    for n in VARIABLES:
        image = model._rho_dense[n]
        diff = tev(model.rho[n]) ^ image
        w = _witness(model, diff) if diff.any() else (None, None)
        report.add(f"t-invariant:{n}", not diff.any(), w[0],
                   None if w[1] is None else f"degree {w[1]}")
    rev = model.restriction_evaluator()
    items = [("restriction", pres.ideal)]
    if extra:
        items.append(("extra", pres.extra_relations))
    for kind, gens in items:
        for name, p in gens:
            image = rev(p)
            if image.any():
                mono, deg = _witness(model, image)
                report.add(f"{kind}:{name}", False, mono, f"degree {deg}")
            else:
                report.add(f"{kind}:{name}", True)
    report.runtime_ms = (time.perf_counter() - start) * 1000
    return report


# -- C2-module decomposition -------------------------------------------------

@dataclass(frozen=True)
class ModuleDecomposition:
    dim: int
    f: int
    tau: int
    chi: int

    def __post_init__(self):
        if self.dim != 2 * self.f + self.tau:
            raise ValueError("dim != 2f + tau")


def gf2_rank_dense(matrix: np.ndarray) -> int:
    """Rank over GF(2) of a 0/1 matrix, by row reduction on packed bytes."""
    M = np.packbits(np.asarray(matrix, dtype=np.uint8) & 1, axis=1)
    nrows, ncols = matrix.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        byte, mask = col >> 3, np.uint8(0x80 >> (col & 7))
        hits = np.nonzero(M[rank:, byte] & mask)[0]
        if hits.size == 0:
            continue
        piv = rank + hits[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        others = rank + hits[1:]
        if others.size:
            M[others, byte:] ^= M[rank, byte:]
        rank += 1
    return rank


def involution_matrix(model: AbelianModel) -> np.ndarray:
    """Matrix of ``1 + t`` on the monomial basis; row k is the image of basis monomial k."""
    ring = model.ring
    ev = model.involution_evaluator()
    names = model.names
    one = np.zeros(ring.shape, dtype=np.uint8)
    one[(0,) * len(ring.shape)] = 1
    prefixes: Dict[Tuple[int, ...], np.ndarray] = {(): one}

    def image(e: Tuple[int, ...]) -> np.ndarray:
        head = e[:-1]
        if head not in prefixes:
            prefixes[head] = image(head)
        base = prefixes[head]
        k = e[-1]
        return ring.dense_mul(base, ev.power(names[len(e) - 1], k)) if k else base

    rows = np.zeros((ring.dim, ring.dim), dtype=np.uint8)
    for idx, e in enumerate(ring.basis()):
        img = image(tuple(e)).copy()
        img[tuple(e)] ^= 1
        rows[idx] = img.reshape(-1)
    return rows


def decompose(model: AbelianModel, s: Optional[int] = None) -> ModuleDecomposition:
    """Split ``K(s)*(BH)`` into free and trivial ``C2``-summands.

    ``f`` is the rank of ``1 + t``; the rest are trivial summands.
    """
    s = model.s if s is None else s
    f = gf2_rank_dense(involution_matrix(model))
    tau = model.dim - 2 * f
    return ModuleDecomposition(model.dim, f, tau, f + 2 ** s * tau)


def decompose_matrix(matrix: np.ndarray, s: int) -> ModuleDecomposition:
    """Decomposition for an explicit ``1 + t`` matrix (used for toy models)."""
    f = gf2_rank_dense(matrix)
    dim = matrix.shape[0]
    return ModuleDecomposition(dim, f, dim - 2 * f, f + 2 ** s * (dim - 2 * f))
