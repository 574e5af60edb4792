from math import ceil, gcd

import pytest

import codes
import reference_example as ref
from curvelrc import errors, linalg, recipes, scurve
from curvelrc.actions import INF
from curvelrc.gf import make_field


@pytest.mark.parametrize("name", list(codes.INSTANCES))
def test_shape_and_rank(name):
    c = codes.code(name)
    assert c.k == c.t * c.r + 1 == linalg.rank(c.field, c.generator)
    assert c.n == c.m * (c.r + c.delta - 1)
    cols = sorted(j for g in c.groups for j in g)
    assert cols == list(range(c.n))
    assert all(len(g) == c.r + c.delta - 1 for g in c.groups)
    assert len(set(c.places)) == c.n and INF not in c.places
    assert len(set(c.z_values)) == c.m


@pytest.mark.parametrize("name", list(codes.INSTANCES))
def test_groups_avoid_defining_fiber(name):
    p = codes.plan(name)
    used = {P for g in p.groups for P in g}
    assert not used & set(p.defining)
    assert all(p.curve.contains(P) for P in used)


EXPECTED = {
    "genus2-example": (36, 5, 30, 4, 3),
    "eff-inv-64-h3": (12, 5, 6, 4, 3),
    "eff-inv-64-h3-r2": (12, 3, 6, 2, 5),
    "eff-noninv-64": (18, 8, 9, 7, 3),
    "hyper-25-g0": (10, 4, 5, 3, 3),
    "hyper-25-g1": (10, 3, 5, 2, 4),
    "normtrace-4": (6, 3, 3, 2, 2),
    "hermitian-9-b2": (15, 3, 12, 2, 2),
    "hermitian-9-b1": (8, 3, 4, 2, 3),
}


@pytest.mark.parametrize("name,params", list(EXPECTED.items()))
def test_declared_parameters(name, params):
    c = codes.code(name)
    assert (c.n, c.k, c.d_designed, c.r, c.delta) == params


def test_ell_values():
    assert codes.plan("eff-inv-64-h3").ell == (81 - 3) // 6 - 1 == 12
    assert codes.plan("eff-noninv-64").ell == (64 + 16 - 8) // 9 == 8
    g2 = codes.plan("genus2-example")
    assert g2.ell == 2 * ceil((25 + 20 - 25) / 12) - 1 == 3
    assert g2.usable == 6
    assert codes.plan("hyper-25-g0").ell == (25 + 4 * 5) // 5 == 9
    assert codes.plan("normtrace-4").ell == 2
    assert codes.plan("hermitian-9-b2").ell == (9 + 6) // 3 == 5
    assert codes.plan("hermitian-9-b1").ell == (9 + 18) // 4 == 6


@pytest.mark.parametrize("name,qbar,s,b,c", [("normtrace-9", 3, 2, 2, 1), ("normtrace-16", 2, 4, 5, 1)])
def test_normtrace_ell_small_M(name, qbar, s, b, c):
    q = qbar ** s
    N = qbar ** (s - c)
    g0 = gcd(b, (qbar ** c - 1) // (qbar - 1))
    assert codes.plan(name).ell == (g0 * (q - 1) * q // (b * qbar ** c) + q // qbar ** c) // N


@pytest.mark.parametrize("name", list(codes.INSTANCES))
def test_usable_groups_not_below_ell(name):
    p = codes.plan(name)
    assert p.usable >= p.ell


def test_group_orders():
    assert codes.plan("eff-inv-64-h3").notes["group_order"] == 6
    assert codes.plan("eff-noninv-64").notes["group_order"] == 9


def test_reversed_defining_list():
    a, b = codes.plan("eff-inv-64-h3"), codes.plan("eff-inv-64-h3-r2")
    assert b.defining == a.defining[::-1]
    assert (b.r, b.delta) == (a.delta - 1, a.r + 1)
    assert a.groups == b.groups
    a, b = codes.plan("eff-noninv-64"), codes.plan("eff-noninv-64-r2")
    assert (b.r, b.delta) == (a.delta - 1, a.r + 1) and a.groups == b.groups


def test_example_groups_match_reference():
    F = make_field(5, 2, ref.MODULUS)
    ours = {frozenset(g) for g in codes.plan("genus2-example").groups}
    assert ours == {frozenset(g) for g in ref.groups(F)}


def test_example_generator_spans_reference_code():
    F = make_field(5, 2, ref.MODULUS)
    c = codes.code("genus2-example")
    theirs = ref.matrix(F)
    assert linalg.rank(F, theirs) == 5
    reference_places = [P for g in ref.groups(F) for P in g]
    col = {P: j for j, P in enumerate(c.places)}
    ours = [[row[col[P]] for P in reference_places] for row in c.generator]
    assert linalg.rank(F, ours + theirs) == 5


def test_example_defining_fiber():
    F = make_field(5, 2, ref.MODULUS)
    p = codes.plan("genus2-example")
    reference = [ref.place(F, t) if t != "inf" else INF for t in ref.DEFINING]
    assert sorted(map(str, p.defining)) == sorted(map(str, reference))


def test_genus2_group_excludes_involution():
    p = codes.plan("genus2-example")
    C = p.curve
    assert all(scurve.is_reduced(C, g) for g in p.groups)


def test_swapping_groups_permutes_columns():
    p = codes.plan("hermitian-9-b2")
    base = recipes.build_code(p)
    swapped = recipes.EvaluationPlan(**{**p.__dict__, "groups": [p.groups[1], p.groups[0]] + p.groups[2:]})
    other = recipes.build_code(swapped)
    size = len(p.groups[0])
    perm = list(range(size, 2 * size)) + list(range(size)) + list(range(2 * size, base.n))
    assert [[row[j] for j in perm] for row in base.generator] == other.generator


def test_degenerate_top_t():
    c = recipes.recipe_hermitian(3, 1, 2, 0, 4, 5)
    assert c.k == 4 * 2 + 1 == linalg.rank(c.field, c.generator)


def test_parameter_errors():
    with pytest.raises(errors.ParameterOutOfRange):
        recipes.eff_involution_plan(16, 5, 1, 2)
    with pytest.raises(errors.ParameterOutOfRange):
        recipes.eff_involution_plan(64, 3, 1, 13)
    with pytest.raises(errors.ParameterOutOfRange):
        recipes.eff_involution_plan(64, 3, 2, 2)
    with pytest.raises(errors.ParameterOutOfRange):
        recipes.normtrace_plan(2, 2, 3, 1, 0, 1, 2)
    with pytest.raises(errors.ParameterOutOfRange):
        recipes.hermitian_plan(3, 1, 2, 1, 1, 2)
    with pytest.raises(errors.ParameterOutOfRange):
        recipes.hermitian_plan(3, 1, 2, 0, 1, 9)
    with pytest.raises(errors.ParameterOutOfRange):
        recipes.hyperell_plan(2, 25, 2, 1, 2)
    with pytest.raises(errors.ParameterOutOfRange):
        recipes.genus2_plan(25, 1, 7)
    with pytest.raises(errors.EvenSWithoutTwist):
        recipes.hermitian_plan(3, 2, 1, 0, 1, 2)


def test_bad_variant():
    with pytest.raises(errors.ParameterOutOfRange):
        recipes.eff_involution_plan(64, 3, 1, 2, variant="r7")
