"""Finite abelian and permutation group machinery."""
from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equifix import groupcore
from equifix.groupcore import (
    AbelianGroup,
    PermGroup,
    SubgroupHandle,
    automorphisms,
    characteristic_core,
    classify,
    commuting_core,
    jordan_verify,
    minimal_abelian_index,
    power_core,
    prime_factors,
    subgroups,
    sylow,
    torsion_subgroup,
)

FACTOR_LISTS = st.lists(
    st.sampled_from([2, 3, 4, 5, 8, 9]), min_size=0, max_size=3)


def s3():
    return PermGroup(3, [[1, 0, 2], [1, 2, 0]])


# ---------------------------------------------------------------- groups

def test_abelian_group_basics():
    g = AbelianGroup([4, 3])
    assert g.order() == 12
    assert g.rank == 2
    assert g.identity == (0, 0)
    x = (1, 1)
    assert g.op(x, g.inv(x)) == g.identity
    assert g.element_order((1, 0)) == 4
    assert g.element_order((0, 1)) == 3
    assert g.element_order((1, 1)) == 12
    assert len(list(g.elements())) == 12


def test_abelian_group_rejects_non_prime_power_factors():
    with pytest.raises(ValueError):
        AbelianGroup([12])
    with pytest.raises(ValueError):
        AbelianGroup([6])


def test_trivial_group():
    g = AbelianGroup([])
    assert g.order() == 1
    assert list(g.elements()) == [()]


@settings(max_examples=40)
@given(FACTOR_LISTS)
def test_group_axioms(factors):
    g = AbelianGroup(factors)
    els = list(g.elements())
    assert len(els) == g.order() == math.prod(factors)
    for x in els[:6]:
        assert g.op(x, g.identity) == x
        assert g.op(g.inv(x), x) == g.identity
        order = g.element_order(x)
        assert g.order() % order == 0  # Lagrange for cyclic subgroups
        assert g.scale(order, x) == g.identity


def test_perm_group_s3():
    g = s3()
    assert g.order() == 6
    cls = classify(g)
    assert not cls.is_p and cls.is_t and cls.is_a
    assert cls.p == 2 and cls.q == 3
    assert cls.sylow_complement.order == 2
    assert cls.normal_sylow.order == 3


def test_group_json_round_trip():
    g = AbelianGroup([2, 4])
    data = g.to_json()
    assert data == {"type": "abelian", "factors": [2, 4]}
    assert groupcore.group_from_json(data).factors == g.factors
    h = s3()
    h2 = groupcore.group_from_json(h.to_json())
    assert h2.order() == 6


# ------------------------------------------------------------- subgroups

SUBGROUP_COUNTS = {
    (2, 2): 5,
    (3, 3): 6,
    (4,): 3,
    (2, 3): 4,
    (2, 2, 2): 16,
}


def test_subgroup_counts():
    for factors, count in SUBGROUP_COUNTS.items():
        assert len(subgroups(AbelianGroup(list(factors)))) == count


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 5]), min_size=0, max_size=2))
def test_subgroups_satisfy_lagrange(factors):
    g = AbelianGroup(factors)
    for sub in subgroups(g):
        assert g.order() % sub.order == 0
        members = set(sub.members)
        assert g.identity in members
        for x in list(members)[:4]:
            assert g.inv(x) in members


def test_subgroups_within():
    g = AbelianGroup([2, 2])
    whole = SubgroupHandle(g, set(g.elements()))
    assert len(subgroups(g, within=whole)) == 5
    line = SubgroupHandle(g, {(0, 0), (1, 0)})
    inner = subgroups(g, within=line)
    assert sorted(s.order for s in inner) == [1, 2]


def test_sylow():
    g = AbelianGroup([4, 3])
    assert sylow(g, 2).order == 4
    assert sylow(g, 3).order == 3
    assert sylow(g, 5).order == 1
    h = s3()
    assert sylow(h, 3).order == 3


def test_torsion_subgroup():
    g = AbelianGroup([4, 3])
    assert torsion_subgroup(g, 2).order == 2
    assert torsion_subgroup(g, 6).order == 6
    assert torsion_subgroup(g, 12).order == 12


# ------------------------------------------------------------ power core

def test_power_core_small():
    g = AbelianGroup([4])
    core = power_core(g, 1)
    assert core.order == 2  # squares of Z/4
    assert power_core(g, 2).order == 1


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from([2, 4, 8]), min_size=1, max_size=2),
       st.integers(0, 3))
def test_power_core_contained_in_bounded_index_subgroups(factors, n):
    g = AbelianGroup(factors)
    core = power_core(g, n, p=2)
    assert core.order * 2 ** (n * g.rank) >= g.order()  # index bound
    members = set(core.members)
    for sub in subgroups(g):
        if g.order() // sub.order <= 2 ** n:
            assert members <= set(sub.members)


def test_power_core_rejects_mixed_group_without_prime():
    g = AbelianGroup([4, 3])
    with pytest.raises(Exception):
        power_core(g, 1)


# --------------------------------------------------------- automorphisms

AUT_COUNTS = {(4,): 2, (2, 2): 6, (2, 4): 8, (3, 3): 48}


def test_automorphism_counts():
    for factors, count in AUT_COUNTS.items():
        assert len(automorphisms(AbelianGroup(list(factors)))) == count


def test_automorphisms_are_bijective_homomorphisms():
    g = AbelianGroup([2, 4])
    for phi in automorphisms(g):
        images = [phi.apply(x) for x in g.elements()]
        assert len(set(images)) == g.order()
        for x in g.elements():
            for y in g.elements():
                assert phi.apply(g.op(x, y)) == g.op(phi.apply(x), phi.apply(y))


def test_characteristic_core_is_characteristic():
    g = AbelianGroup([2, 4])
    q0 = SubgroupHandle(g, {(0, 0), (1, 0)})
    core = characteristic_core(g, q0)
    members = set(core.members)
    assert members <= set(q0.members)
    for phi in automorphisms(g):
        assert {phi.apply(x) for x in members} == members


def test_commuting_core_trivial_p_part():
    report = commuting_core(AbelianGroup([]), AbelianGroup([4]), [])
    assert report.b_order == 2
    assert report.kernel.order == 1


# ------------------------------------------------------- jordan wrappers

def test_minimal_abelian_index_s3():
    report = minimal_abelian_index(s3())
    assert report.index == 2
    assert report.witness.order == 3
    assert report.generator_count == 1


def test_minimal_abelian_index_abelian_is_whole():
    g = AbelianGroup([2, 2])
    report = minimal_abelian_index(g)
    assert report.index == 1
    assert report.witness.order == 4


def test_jordan_verify_family():
    fam = [AbelianGroup([2, 2]), AbelianGroup([8]), s3()]
    report = jordan_verify(fam, constant=2, generator_bound=2)
    assert report.passed
    assert len(report.entries) == 3
    report_bad = jordan_verify([s3()], constant=1, generator_bound=2)
    assert not report_bad.passed


def test_prime_factors():
    assert prime_factors(12) == {2: 2, 3: 1}
    assert prime_factors(1) == {}
    assert prime_factors(97) == {97: 1}
