"""Presented rings K(s)*(BG) for the order-32 groups G34, G35, G36, G37.

Every ring is a quotient of GF(2)[a, b, c, x1, x2, y1, y2, T] (``v_s = 1``).
``x1`` and ``y1`` are adjoined as variables; their implicit defining
equations are ideal generators.

Two readings of the G34/G35 relation list are available:

``"induced"`` (default)
    for G34/G35 the classes ``x_i`` are the Chern classes of the plane bundle
    induced from the line bundle on which ``a`` acts, so ``x`` pairs with
    ``a`` (and ``y`` with ``b``) in the annihilation and decomposition
    relations, and the ``x2`` decomposition picks up ``c^2`` for G35 because
    the determinant of that bundle is trivial there (the same mechanism that
    separates G37 from G36).
``"crossed"``
    ``x`` pairs with ``b`` and ``y`` with ``a`` in those relations instead.
    This fails both the restriction test and the dimension count.

For G36/G37 both readings agree.  :data:`CROSSED_DIFFERENCES` lists the
relations that change.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

from .grobner import MonomialOrder
from .poly import GF2, Exps, Poly, PolyRing

VARIABLES = ("a", "b", "c", "x1", "x2", "y1", "y2", "T")
RING = PolyRing(VARIABLES, GF2)

READINGS = ("induced", "crossed")

#: Groebner orders used in the basis argument for G36/G37.
LEX_QUOTIENT_ORDER = MonomialOrder("lex", ("T", "a", "b", "y2", "x2", "y1", "x1", "c"))
LEX_KERNEL_ORDER = MonomialOrder("lex", ("T", "x1", "y1", "a", "b", "x2", "y2", "c"))

#: What the crossed reading changes (G34, G35 only).
CROSSED_DIFFERENCES = {
    "a-annihilation": "induced a(a + x1 + ...), crossed a(a + y1 + ...)",
    "b-annihilation": "induced b(b + y1 + ...), crossed b(b + x1 + ...)",
    "x2-power": "induced x2^(2^s) + a^2 + ac (+ c^2 for G35), crossed x2^(2^s) + b^2 + bc",
    "y2-power": "induced y2^(2^s) + b^2 + bc, crossed y2^(2^s) + a^2 + ac",
    "x1-power": "induced x1^(2^s) + (ac)^(2^(s-1)), crossed x1^(2^s) + (bc)^(2^(s-1))",
    "y1-power": "induced y1^(2^s) + (bc)^(2^(s-1)), crossed y1^(2^s) + (ac)^(2^(s-1))",
}


class GroupId(str, Enum):
    G34 = "g34"
    G35 = "g35"
    G36 = "g36"
    G37 = "g37"

    @classmethod
    def parse(cls, value) -> "GroupId":
        if isinstance(value, GroupId):
            return value
        text = str(value).lower()
        if not text.startswith("g"):
            text = "g" + text
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"unknown group {value!r}; expected one of g34, g35, g36, g37") from None

    @property
    def number(self) -> int:
        return int(self.value[1:])


ALL_GROUPS = tuple(GroupId)


def _check_s(s: int):
    if not isinstance(s, int) or s < 2:
        raise ValueError(f"height s={s} not supported: the transfer formula requires s > 1")


def _check_reading(reading: str):
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}; expected one of {READINGS}")


def expected_chi(s: int) -> int:
    """Euler characteristic ``16^s/2 - 4^s/2 + 8^s``."""
    if s < 1:
        raise ValueError("s must be positive")
    return (16 ** s - 4 ** s) // 2 + 8 ** s


def gens():
    return {n: RING.gen(n) for n in VARIABLES}


def transfer_class(z: Poly, w1: Poly, w2: Poly, s: int) -> Poly:
    """``z + w1 + sum_{i=1}^{s-1} z^(2^s - 2^i) w2^(2^(i-1))``.

    The shape of a transferred first Chern class, with ``z`` the Euler class
    of the covering line bundle and ``w1, w2`` the Chern classes of the
    induced plane bundle.
    """
    q = 1 << s
    out = z + w1
    for i in range(1, s):
        out = out + z ** (q - (1 << i)) * w2 ** (1 << (i - 1))
    return out


def implicit_deltas(group, s: int) -> Tuple[Poly, Poly]:
    """The constant terms ``(delta_x, delta_y)`` of the ``x1``/``y1`` equations."""
    group = GroupId.parse(group)
    g = gens()
    b, c = g["b"], g["c"]
    zero = RING.zero()
    return {
        GroupId.G34: (c, c),
        GroupId.G35: (zero, c),
        GroupId.G36: (b, c),
        GroupId.G37: (b + c + (b * c) ** (1 << (s - 1)), zero),
    }[group]


def _named_ideal(group: GroupId, s: int, reading: str) -> List[Tuple[str, Poly]]:
    g = gens()
    a, b, c, x1, x2, y1, y2, T = (g[n] for n in VARIABLES)
    q = 1 << s
    h = 1 << (s - 1)

    def tr(z, w1, w2):
        return transfer_class(z, w1, w2, s)

    out = [
        ("a-nilpotent", a ** q),
        ("b-nilpotent", b ** q),
        ("c-nilpotent", c ** q),
        ("c-transfer-x", c * tr(c, x1, x2)),
        ("c-transfer-y", c * tr(c, y1, y2)),
    ]
    t_square = T ** 2 + T * x1 * y1 + x2 * y1 * tr(c, y1, y2) + x1 * y2 * tr(c, x1, x2)
    if group in (GroupId.G36, GroupId.G37):
        out += [
            ("a-annihilation", a * tr(a, y1, y2)),
            ("b-annihilation", b * tr(b, x1, x2)),
            ("bT-product", tr(c, y1, y2) * tr(b, x1, x2) + b ** (q - 1) * T),
            ("aT-product", tr(c, x1, x2) * tr(a, y1, y2) + a ** (q - 1) * T),
            ("T-square", t_square),
            ("T-linear-b", T * tr(b, x1, x2) + b ** (q - 1) * x2 * (c + y1)),
            ("T-linear-a", T * tr(a, y1, y2) + a ** (q - 1) * y2 * (c + x1)),
            ("cT", c * T),
        ]
        if group is GroupId.G36:
            out += [("x2-power", x2 ** q + c ** 2 + b * c),
                    ("y2-power", y2 ** q + a ** 2 + a * c)]
        else:
            out += [("x2-power", x2 ** q + b * c),
                    ("y2-power", y2 ** q + a ** 2 + a * c + c ** 2)]
    else:
        induced = reading == "induced"
        if induced:
            out += [("a-annihilation", a * tr(a, x1, x2)),
                    ("b-annihilation", b * tr(b, y1, y2))]
        else:
            out += [("a-annihilation", a * tr(a, y1, y2)),
                    ("b-annihilation", b * tr(b, x1, x2))]
        out += [
            ("bT-product", tr(c, x1, x2) * tr(b, y1, y2) + b ** (q - 1) * T),
            ("aT-product", tr(c, y1, y2) * tr(a, x1, x2) + a ** (q - 1) * T),
            ("T-square", t_square),
            ("T-linear-a", T * tr(a, x1, x2) + a ** (q - 1) * x2 * (c + y1)),
            ("T-linear-b", T * tr(b, y1, y2) + b ** (q - 1) * y2 * (c + x1)),
            ("cT", c * T),
        ]
        if induced:
            x2_rhs = a ** 2 + a * c + (c ** 2 if group is GroupId.G35 else 0)
            out += [("x2-power", x2 ** q + x2_rhs),
                    ("y2-power", y2 ** q + b ** 2 + b * c)]
        else:
            out += [("x2-power", x2 ** q + b ** 2 + b * c),
                    ("y2-power", y2 ** q + a ** 2 + a * c)]
    dx, dy = implicit_deltas(group, s)
    out += [
        ("x1-definition", x1 + (x2 + x1 * x2 ** h) ** h + dx),
        ("y1-definition", y1 + (y2 + y1 * y2 ** h) ** h + dy),
    ]
    return out


def solve_implicit(gb, group, s: int, which: str = "x", max_steps: int = 64) -> Poly:
    """Solve ``w1 = (w2 + w1 w2^h)^h + delta`` by iteration inside ``F2[...]/I``.

    Starts from 0 and reapplies the right-hand side (reduced by ``gb``)
    until it stabilises, which happens because ``w2`` is nilpotent.  Raises
    ``RuntimeError`` if ``max_steps`` is exhausted.
    """
    from .grobner import normal_form

    h = 1 << (s - 1)
    w2 = RING.gen("x2" if which == "x" else "y2")
    delta = implicit_deltas(group, s)[0 if which == "x" else 1]
    w1 = RING.zero()
    for _ in range(max_steps):
        nxt = normal_form((w2 + w1 * w2 ** h) ** h + delta, gb)
        if nxt == w1:
            return w1
        w1 = nxt
    raise RuntimeError(f"implicit {which}1 equation did not stabilise in {max_steps} steps")


def build_ideal(group, s: int, reading: str = "induced") -> List[Poly]:
    """Generators of the relation ideal, in the order they are stated."""
    return [p for _, p in named_ideal(group, s, reading)]


def named_ideal(group, s: int, reading: str = "induced") -> List[Tuple[str, Poly]]:
    group = GroupId.parse(group)
    _check_s(s)
    _check_reading(reading)
    return _named_ideal(group, s, reading)


def named_extra_relations(group, s: int, reading: str = "induced") -> List[Tuple[str, Poly]]:
    group = GroupId.parse(group)
    _check_s(s)
    _check_reading(reading)
    g = gens()
    a, b, c, x1, y1 = g["a"], g["b"], g["c"], g["x1"], g["y1"]
    q = 1 << s
    h = 1 << (s - 1)
    swap = group in (GroupId.G34, GroupId.G35) and reading == "induced"
    out = [
        ("a2c=ac2", a ** 2 * c + a * c ** 2),
        ("b2c=bc2", b ** 2 * c + b * c ** 2),
        ("x1-power", x1 ** q + ((a if swap else b) * c) ** h),
        ("y1-power", y1 ** q + ((b if swap else a) * c) ** h),
    ]
    for z, name in ((a, "a"), (b, "b")):
        for i in range(1, q + 1):
            j = q + 1 - i
            out.append((f"{name}^{i}c^{j}", z ** i * c ** j))
    return out


def build_extra_relations(group, s: int, reading: str = "induced") -> List[Poly]:
    """Consequence relations: ``a^2c = ac^2``, ``b^2c = bc^2``, the ``x1, y1`` powers,
    and ``a^i c^j = b^i c^j = 0`` for ``i + j = 2^s + 1``, ``i, j >= 1``."""
    return [p for _, p in named_extra_relations(group, s, reading)]


def _mono(**exps) -> Exps:
    return tuple(exps.get(n, 0) for n in VARIABLES)


def basis_recipe_sets(group, s: int) -> List[List[Exps]]:
    """The five monomial families spanning K(s)*(BG) for G36 and G37."""
    group = GroupId.parse(group)
    _check_s(s)
    if group not in (GroupId.G36, GroupId.G37):
        raise ValueError("a basis recipe is only available for g36 and g37")
    q = 1 << s
    h = 1 << (s - 1)
    r = range
    first = [_mono(x1=i, y1=j, x2=k, y2=l) for i in r(q) for j in r(q) for k in r(h) for l in r(h)]
    second = [_mono(a=1, x2=k + h, y2=l) for k in r(h) for l in r(h)]
    third = ([_mono(x1=i, a=1, x2=k, y2=l) for i in r(q) for k in r(h) for l in r(h)]
             + [_mono(y1=i, x2=k + h, y2=l) for i in r(q) for k in r(h) for l in r(h)])
    fourth = [_mono(T=1, x1=i, y1=j, x2=k, y2=l)
              for i in r(q - 1) for j in r(q - 1) for k in r(h) for l in r(h)]
    fifth = ([_mono(c=i, x2=j, y2=k) for i in r(1, q) for j in r(q) for k in r(h)]
             + [_mono(c=i, a=1, x2=j, y2=k) for i in r(1, q) for j in r(q) for k in r(h)])
    return [first, second, third, fourth, fifth]


def basis_recipe(group, s: int) -> List[Poly]:
    return [RING.monomial(e) for family in basis_recipe_sets(group, s) for e in family]


@dataclass
class GroupPresentation:
    group: GroupId
    s: int
    reading: str = "induced"
    variables: Tuple[str, ...] = VARIABLES
    ideal: List[Tuple[str, Poly]] = field(init=False)
    extra_relations: List[Tuple[str, Poly]] = field(init=False)
    expected_dimension: int = field(init=False)

    def __post_init__(self):
        self.group = GroupId.parse(self.group)
        self.ideal = named_ideal(self.group, self.s, self.reading)
        self.extra_relations = named_extra_relations(self.group, self.s, self.reading)
        self.expected_dimension = expected_chi(self.s)

    @property
    def ring(self) -> PolyRing:
        return RING

    @property
    def generators(self) -> List[Poly]:
        return [p for _, p in self.ideal]

    def basis_recipe(self) -> List[Poly]:
        return basis_recipe(self.group, self.s)

    def dump(self) -> str:
        return "\n".join(p.to_text() for p in self.generators)


def presentation(group, s: int, reading: str = "induced") -> GroupPresentation:
    return GroupPresentation(GroupId.parse(group), s, reading)


def generators_by_name(pres: GroupPresentation) -> Dict[str, Poly]:
    return dict(pres.ideal)
