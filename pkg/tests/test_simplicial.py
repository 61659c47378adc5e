"""Simplicial complexes, group actions, homology, and trace identities."""
from __future__ import annotations

import pytest

from equifix.errors import NotAChain, NotAnAction
from equifix.groupcore import AbelianGroup
from equifix.simplicial import (
    Complex,
    SimplicialAction,
    barycentric_subdivision,
    betti,
    census_chain_check,
    chain_bound,
    ensure_good,
    fixed_subcomplex,
    homology_action,
    is_good,
    lefschetz_number,
    small_orbit_simplex,
    subdivided_action,
)

# the 6-vertex triangulation of the real projective plane
RP2_FACETS = [
    (0, 1, 2), (0, 2, 3), (0, 1, 5), (0, 4, 5), (0, 3, 4),
    (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5),
]

# the octahedron (boundary of the cross-polytope), antipodal map 0<->3 etc.
OCTA_FACETS = [(i, j, k) for i in (0, 3) for j in (1, 4) for k in (2, 5)]
ANTIPODE = [3, 4, 5, 0, 1, 2]


def octahedron_action():
    cx = Complex.from_facets(OCTA_FACETS)
    return SimplicialAction(cx, AbelianGroup([2]), [ANTIPODE])


def circle(n):
    return Complex.from_facets([(i, (i + 1) % n) for i in range(n)])


# ----------------------------------------------------------------- complexes

def test_complex_closure_and_euler():
    cx = Complex.from_facets(RP2_FACETS)
    assert cx.f_vector() == (6, 15, 10)
    assert cx.euler_characteristic() == 1
    assert cx.dim == 2
    tri = Complex.from_facets([(0, 1, 2)])
    assert tri.f_vector() == (3, 3, 1)
    assert tri.euler_characteristic() == 1


def test_complex_validation():
    with pytest.raises(ValueError):
        Complex(2, [(0,), (5,)])  # vertex out of range
    with pytest.raises(ValueError):
        Complex(3, [(1, 1)])  # repeated vertex
    with pytest.raises(ValueError):
        Complex(3, [(0, 1, 2)])  # faces missing: not closed


def test_betti_projective_plane():
    cx = Complex.from_facets(RP2_FACETS)
    assert betti(cx, "Q").values == (1, 0, 0)
    assert betti(cx, 2).values == (1, 1, 1)
    assert betti(cx, 3).values == (1, 0, 0)


def test_betti_sphere_and_circle():
    octa = Complex.from_facets(OCTA_FACETS)
    assert betti(octa, "Q").values == (1, 0, 1)
    assert betti(octa, 2).values == (1, 0, 1)
    assert betti(circle(5), "Q").values == (1, 1)


def test_barycentric_subdivision_preserves_homology():
    cx = Complex.from_facets(RP2_FACETS)
    sd = barycentric_subdivision(cx)
    assert sd.euler_characteristic() == cx.euler_characteristic()
    assert betti(sd, 2).values == betti(cx, 2).values
    assert sd.f_vector()[0] == 6 + 15 + 10  # one new vertex per simplex


def test_complex_json_round_trip():
    cx = Complex.from_facets(RP2_FACETS)
    back = Complex.from_json(cx.to_json())
    assert back.simplices == cx.simplices
    assert back.n_vertices == cx.n_vertices


# ------------------------------------------------------------------- actions

def test_action_validation():
    octa = Complex.from_facets(OCTA_FACETS)
    with pytest.raises(NotAnAction):
        # transposition (0 1) does not preserve the octahedron's faces
        SimplicialAction(octa, AbelianGroup([2]), [[1, 0, 2, 3, 4, 5]])


def test_antipodal_action_is_good_and_free():
    act = octahedron_action()
    assert is_good(act)
    fixed = fixed_subcomplex(act)
    assert len(fixed.simplices) == 0  # free action: empty fixed subcomplex


def test_lefschetz_antipodal_map():
    act = octahedron_action()
    rep = lefschetz_number(act, (1,))
    assert rep.value == 0
    assert rep.chain_trace == 0
    assert rep.homology_trace == 0
    assert rep.chi_fixed == 0
    assert not rep.subdivided
    ident = lefschetz_number(act, (0,))
    assert ident.value == act.complex.euler_characteristic() == 2
    assert ident.chi_fixed == 2


def test_lefschetz_on_reflection_with_fixed_circle():
    # reflection of the octahedron swapping one antipodal pair: the fixed
    # set is the equator square, so every trace flavour gives chi = 0
    octa = Complex.from_facets(OCTA_FACETS)
    act = SimplicialAction(octa, AbelianGroup([2]), [[0, 1, 5, 3, 4, 2]])
    assert is_good(act)
    rep = lefschetz_number(act, (1,))
    assert rep.value == rep.chain_trace == rep.homology_trace == rep.chi_fixed
    assert rep.value == 0
    fixed = fixed_subcomplex(act)
    assert fixed.euler_characteristic() == 0
    assert fixed.f_vector() == (4, 4)


def test_ensure_good_subdivides_an_edge_flip():
    # reflecting a 3-cycle fixes one edge setwise but not pointwise,
    # so the action only becomes good after barycentric subdivision
    act = SimplicialAction(circle(3), AbelianGroup([2]), [[0, 2, 1]])
    assert not is_good(act)
    good, was_subdivided = ensure_good(act)
    assert was_subdivided
    assert is_good(good)
    rep = lefschetz_number(good, (1,))
    assert rep.value == rep.chi_fixed == 2
    assert fixed_subcomplex(good).f_vector() == (2,)


def test_good_rotation_needs_no_subdivision():
    act = SimplicialAction(circle(3), AbelianGroup([3]), [[1, 2, 0]])
    assert is_good(act)
    good, was_subdivided = ensure_good(act)
    assert not was_subdivided
    assert lefschetz_number(good, (1,)).value == 0  # free rotation


def test_subdivided_action_is_good():
    act = SimplicialAction(circle(3), AbelianGroup([2]), [[0, 2, 1]])
    sd = subdivided_action(act)
    assert sd.complex.euler_characteristic() == 0
    assert is_good(sd)


def test_small_orbit_simplex():
    act = octahedron_action()
    rep = small_orbit_simplex(act, 2)
    assert rep.orbit_size < 2 ** 2
    assert rep.simplex in rep.complex.simplices


def test_homology_action_octahedron():
    act = octahedron_action()
    rep = homology_action(act)
    assert rep.betti_q == (1, 0, 1)
    assert rep.b_squared == 2
    assert rep.passed
    assert rep.index == 2
    assert rep.bound == 3 ** rep.b_squared
    # antipodal map acts by -1 on top homology, so the kernel is trivial
    assert rep.kernel.order == 1


# -------------------------------------------------------------- chain bounds

def test_chain_bound_values():
    assert chain_bound(0, 0) == 1
    assert chain_bound(1, 1) == 3
    assert chain_bound(2, 1) == 4
    assert chain_bound(2, 2) == 10


def test_census_chain_check_accepts_increasing_chain():
    tri = Complex.from_facets([(0, 1, 2)])
    point = tri.subcomplex_on([0])
    edge = tri.subcomplex_on([0, 1])
    assert census_chain_check([point, edge, tri], 2, 1)


def test_census_chain_check_rejects_stalls_and_overruns():
    tri = Complex.from_facets([(0, 1, 2)])
    assert not census_chain_check([tri, tri], 2, 1)  # census stalls
    assert not census_chain_check([tri], 1, 1)  # dimension exceeds m
    point = tri.subcomplex_on([0])
    with pytest.raises(NotAChain):
        census_chain_check([tri, point], 2, 1)  # not nested upward
