"""The verification pipeline: each function runs one family of checks and returns a report."""
from __future__ import annotations

import time
from typing import Optional

from .abelian import decompose, model_for, required_degree, verify_restrictions
from .fgl import (XYZ_F2, X_QQ, XY_F2, check_approximation, compose, fgl_rational,
                  fgl_series, first_difference, honda_log, n_series, series_reverse,
                  verify_tensor_square)
from .grobner import (DEGREVLEX, GroebnerBasis, GroebnerBudgetExceeded, MonomialOrder,
                      buchberger, independent_in_quotient)
from .poly import Poly
from .presentations import (GroupId, RING, basis_recipe_sets, expected_chi, presentation,
                            solve_implicit)
from .report import VerificationReport

CHECKS = ("fgl", "restriction", "dimension", "extra", "basis", "module")
GROEBNER_CHECKS = ("dimension", "extra", "basis")

FGL_DEGREE = 64
APPROX_DEGREE = 40


def _mono_text(ring, e) -> Optional[str]:
    return None if e is None else Poly(ring, {tuple(e): 1}).to_text()


def _timed(report: VerificationReport, start: float) -> VerificationReport:
    report.runtime_ms = (time.perf_counter() - start) * 1000
    return report


def fgl_report(s: int, D: int = FGL_DEGREE, approx_degree: int = APPROX_DEGREE) -> VerificationReport:
    """Soundness of the truncated law plus the approximation and tensor-square identities."""
    start = time.perf_counter()
    rep = VerificationReport(None, s)
    ctx = fgl_series(s, D)  # raises FglError on a non-2-integral coefficient
    rep.add("fgl:2-integral", all(c.denominator % 2 for _, c in fgl_rational(s, D)))

    l = honda_log(s, D)
    x = X_QQ.gen("x")
    round_trip = compose(series_reverse(l, D), l, D)
    rep.add("fgl:exp-log", round_trip == x, _mono_text(X_QQ, first_difference(round_trip, x)))

    F = ctx.F
    swapped = Poly(XY_F2, {(j, i): 1 for (i, j) in F.terms})
    rep.add("fgl:commutative", F == swapped, _mono_text(XY_F2, first_difference(F, swapped)))
    X, Y = XY_F2.gens()
    unit = Poly(XY_F2, {e: 1 for e in F.terms if e[1] == 0})
    rep.add("fgl:unital", unit == X, _mono_text(XY_F2, first_difference(unit, X)))

    x3, y3, z3 = XYZ_F2.gens()
    left = ctx.F_of(ctx.F_of(x3, y3), z3)
    right = ctx.F_of(x3, ctx.F_of(y3, z3))
    rep.add("fgl:associative", left == right, _mono_text(XYZ_F2, first_difference(left, right)))

    two = n_series(ctx, 2)
    target = two.ring.gen("x") ** (1 << s)
    target = target.truncate(D)
    rep.add("fgl:2-series", two == target, _mono_text(two.ring, first_difference(two, target)))

    inv = n_series(ctx, -1)
    xf = inv.ring.gen("x")
    twice = ctx.F_of(inv, xf).truncate(D)
    rep.add("fgl:inverse", not twice and compose(inv, inv, D) == xf,
            _mono_text(inv.ring, first_difference(twice, inv.ring.zero())))

    approx = check_approximation(ctx, min(D, approx_degree))
    witness = None
    if approx.remainder is not None and not approx.divisible:
        witness = approx.remainder.lowest_terms().to_text()
    rep.add("fgl:approximation", approx.passed, witness,
            None if approx.phi_exists else "F - x - y is not a 2^(s-1)-th power")

    ok, w = verify_tensor_square(ctx, D)
    rep.add("fgl:tensor-square", ok, _mono_text(XY_F2, w))
    return _timed(rep, start)


def restriction_report(group, s: int, degree: Optional[int] = None, reading: str = "induced",
                       chern: str = "sum") -> VerificationReport:
    start = time.perf_counter()
    D = required_degree(group, s) if degree is None else degree
    model = model_for(group, s, D, chern=chern)
    rep = verify_restrictions(model, presentation(group, s, reading))
    return _timed(rep, start)


def module_report(group, s: int, degree: Optional[int] = None) -> VerificationReport:
    start = time.perf_counter()
    group = GroupId.parse(group)
    dec = decompose(model_for(group, s, degree))
    rep = VerificationReport(group.value, s, f=dec.f, tau=dec.tau, chi=dec.chi)
    expected = expected_chi(s)
    rep.add("module:chi", dec.chi == expected, str(dec.chi), f"expected {expected}")
    if group in (GroupId.G34, GroupId.G35):
        f0, tau0 = (16 ** s - 4 ** s) // 2, 4 ** s
        rep.add("module:free-trivial", (dec.f, dec.tau) == (f0, tau0),
                f"f={dec.f}, tau={dec.tau}", f"expected f={f0}, tau={tau0}")
    return _timed(rep, start)


def groebner_basis(group, s: int, order: MonomialOrder = DEGREVLEX, reading: str = "induced",
                   max_pairs: Optional[int] = None) -> GroebnerBasis:
    return buchberger(presentation(group, s, reading).generators, order, RING, max_pairs=max_pairs)


def groebner_report(group, s: int, checks=GROEBNER_CHECKS, order: MonomialOrder = DEGREVLEX,
                    reading: str = "induced", max_pairs: Optional[int] = None) -> VerificationReport:
    """Dimension, consequence relations and (G36/G37) the monomial basis, from one Groebner basis."""
    start = time.perf_counter()
    group = GroupId.parse(group)
    pres = presentation(group, s, reading)
    rep = VerificationReport(group.value, s)
    try:
        gb = buchberger(pres.generators, order, RING, max_pairs=max_pairs)
    except GroebnerBudgetExceeded as exc:
        for name in checks:
            rep.add(f"{name}:groebner", False, None, str(exc))
        return _timed(rep, start)
    expected = pres.expected_dimension
    if "dimension" in checks:
        dim = gb.dimension()
        rep.dimension = dim
        rep.add("dimension", dim == expected, "infinite" if dim is None else str(dim),
                f"expected {expected}")
    if "extra" in checks:
        for name, p in pres.extra_relations:
            nf = gb.normal_form(p)
            rep.add(f"extra:{name}", not nf, nf.lowest_terms().to_text() if nf else None)
        for w in "xy":
            try:
                sol = solve_implicit(gb, group, s, w)
                ok = gb.contains(RING.gen(w + "1") + sol)
                rep.add(f"extra:{w}1-fixed-point", ok, None if ok else sol.to_text())
            except RuntimeError as exc:
                rep.add(f"extra:{w}1-fixed-point", False, None, str(exc))
    if "basis" in checks and group in (GroupId.G36, GroupId.G37):
        sets = basis_recipe_sets(group, s)
        monos = [RING.monomial(e) for fam in sets for e in fam]
        sizes = [len(fam) for fam in sets]
        rep.add("basis:count", len(monos) == expected, str(len(monos)),
                "set sizes " + "+".join(map(str, sizes)))
        rep.add("basis:independent", independent_in_quotient(monos, gb))
    return _timed(rep, start)


def mutate_generator(p: Poly) -> Poly:
    """Multiply the lowest non-constant term of ``p`` by its first variable (``bc -> b^2c``)."""
    order = sorted(p.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    for e in order:
        if sum(e):
            i = next(k for k, x in enumerate(e) if x)
            bumped = e[:i] + (e[i] + 1,) + e[i + 1:]
            return p + p.ring.monomial(e) + p.ring.monomial(bumped)
    raise ValueError("cannot mutate a constant")


def negative_control_report(group, s: int = 2, reading: str = "induced") -> VerificationReport:
    """Mutate each generator in turn; a check passes when restriction or dimension catches it."""
    start = time.perf_counter()
    group = GroupId.parse(group)
    pres = presentation(group, s, reading)
    evaluate = model_for(group, s).restriction_evaluator()
    rep = VerificationReport(group.value, s)
    gens = pres.generators
    for i, (name, p) in enumerate(pres.ideal):
        q = mutate_generator(p)
        restricts_to_zero = not evaluate(q).any()
        dim = buchberger(gens[:i] + [q] + gens[i + 1:], DEGREVLEX, RING).dimension()
        caught = not restricts_to_zero or dim != pres.expected_dimension
        rep.add(f"control:{name}", caught, q.to_text(),
                f"restriction {'zero' if restricts_to_zero else 'nonzero'}, dimension {dim}")
    return _timed(rep, start)
