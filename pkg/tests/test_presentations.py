import pytest

from conftest import cached_gb
from morava.presentations import (ALL_GROUPS, CROSSED_DIFFERENCES, LEX_KERNEL_ORDER, RING, GroupId,
                                  basis_recipe, basis_recipe_sets, build_extra_relations,
                                  build_ideal, expected_chi, implicit_deltas, named_ideal,
                                  presentation, solve_implicit)

g = {n: RING.gen(n) for n in RING.names}
a, b, c, x1, x2, y1, y2, T = (g[n] for n in ("a", "b", "c", "x1", "x2", "y1", "y2", "T"))


def gen(group, name, s=2, reading="induced"):
    return dict(named_ideal(group, s, reading))[name]


def test_group_parse():
    assert GroupId.parse("G36") is GroupId.G36
    assert GroupId.parse(37) is GroupId.G37
    with pytest.raises(ValueError):
        GroupId.parse("g38")


def test_expected_chi():
    assert expected_chi(2) == 184
    assert expected_chi(3) == 2528
    assert expected_chi(1) == 14  # 8 - 2 + 8; the formula is out of scope at s = 1


def test_fourth_generator_g36():
    assert build_ideal("g36", 2)[3] == c * (c + x1 + c ** 2 * x2)


def test_transfer_sum_at_s3():
    assert gen("g36", "c-transfer-x", 3) == c * (c + x1 + c ** 6 * x2 + c ** 4 * x2 ** 2)


def test_decompositions():
    assert gen("g37", "x2-power") == x2 ** 4 + b * c
    assert gen("g36", "x2-power") == x2 ** 4 + c ** 2 + b * c
    assert gen("g34", "x2-power", reading="crossed") == x2 ** 4 + b ** 2 + b * c
    assert gen("g34", "x2-power") == x2 ** 4 + a ** 2 + a * c
    assert gen("g35", "x2-power") == x2 ** 4 + a ** 2 + a * c + c ** 2


@pytest.mark.parametrize("group", ALL_GROUPS)
@pytest.mark.parametrize("s", [2, 3])
def test_ideal_shape(group, s):
    pres = presentation(group, s)
    q = 2 ** s
    gens = pres.generators
    assert len(gens) == 17
    for z in (a, b, c):
        assert z ** q in gens
    names = [n for n, _ in pres.ideal]
    assert names.count("x1-definition") == names.count("y1-definition") == 1
    assert pres.expected_dimension == expected_chi(s)


def test_deltas():
    h = 2
    assert implicit_deltas("g36", 2) == (b, c)
    assert implicit_deltas("g37", 2) == (b + c + (b * c) ** h, RING.zero())
    assert implicit_deltas("g34", 2) == (c, c)
    assert implicit_deltas("g35", 2) == (RING.zero(), c)
    assert gen("g36", "x1-definition") == x1 + (x2 + x1 * x2 ** 2) ** 2 + b


def test_readings_agree_for_g36_g37():
    for group in ("g36", "g37"):
        assert build_ideal(group, 2, "crossed") == build_ideal(group, 2, "induced")


def test_readings_differ_exactly_on_amendments():
    for group in ("g34", "g35"):
        crossed = dict(named_ideal(group, 2, "crossed"))
        induced = dict(named_ideal(group, 2, "induced"))
        changed = {n for n in crossed if crossed[n] != induced[n]}
        assert changed <= set(CROSSED_DIFFERENCES)
        assert changed == {"a-annihilation", "b-annihilation", "x2-power", "y2-power"}


def test_extra_relations():
    extra = build_extra_relations("g36", 2)
    assert a ** 2 * c + a * c ** 2 in extra
    assert x1 ** 4 + b ** 2 * c ** 2 in extra
    for i in range(1, 5):
        assert a ** i * c ** (5 - i) in extra
        assert b ** i * c ** (5 - i) in extra
    assert len(extra) == 4 + 8


def test_invalid_inputs():
    with pytest.raises(ValueError):
        build_ideal("g36", 1)
    with pytest.raises(ValueError):
        build_ideal("g36", 2, "other")
    with pytest.raises(ValueError):
        basis_recipe("g34", 2)


@pytest.mark.parametrize("group", ["g36", "g37"])
def test_basis_recipe_counts(group):
    sets = basis_recipe_sets(group, 2)
    assert [len(f) for f in sets] == [64, 4, 32, 36, 48]
    monos = basis_recipe(group, 2)
    assert len(set(monos)) == 184
    assert x1 ** 3 * y1 ** 3 * x2 * y2 in monos
    assert c ** 3 * a * x2 ** 3 * y2 in monos
    assert sum(len(f) for f in basis_recipe_sets(group, 3)) == 2528


@pytest.mark.parametrize("group", ALL_GROUPS)
def test_dimension_and_consequences(group):
    gb = cached_gb(group)
    assert gb.dimension() == 184
    for p in build_extra_relations(group, 2):
        assert not gb.normal_form(p)


@pytest.mark.parametrize("group,dim", [("g34", 100), ("g35", 82)])
def test_crossed_reading_dimension(group, dim):
    # the crossed pairing is not consistent with the count 184
    assert cached_gb(group, reading="crossed").dimension() == dim


@pytest.mark.parametrize("group", ["g36", "g37"])
def test_basis_recipe_independent(group):
    from morava.grobner import independent_in_quotient
    assert independent_in_quotient(basis_recipe(group, 2), cached_gb(group))


@pytest.mark.parametrize("group", ALL_GROUPS)
def test_implicit_solutions(group):
    gb = cached_gb(group, 2, LEX_KERNEL_ORDER)
    for w in "xy":
        sol = solve_implicit(gb, group, 2, w)
        # the kernel order eliminates x1, y1 so the solution is explicit
        assert w + "1" not in sol.variables()
        assert gb.contains(RING.gen(w + "1") + sol)
        h = 2
        w2 = RING.gen(w + "2")
        delta = implicit_deltas(group, 2)["xy".index(w)]
        assert gb.contains(sol + (w2 + sol * w2 ** h) ** h + delta)
