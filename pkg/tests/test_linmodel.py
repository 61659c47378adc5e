"""Linear sphere/disk models: characters, fixed sets, and the two theorems."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equifix import linmodel as lm
from equifix.errors import (
    NotElementaryAbelian,
    OddDimensionalSphere,
    PreconditionViolated,
    UnsupportedKind,
)
from equifix.groupcore import AbelianGroup, SubgroupHandle, subgroups

Z2 = AbelianGroup([2])
Z22 = AbelianGroup([2, 2])
Z3 = AbelianGroup([3])


def sign_rep(group, trivial, signs):
    return lm.RealRep(group, trivial_dim=trivial, sign_chars=signs)


# ---------------------------------------------------------------- characters

def test_character_vec_basics():
    cv = lm.CharacterVec(Z22, (1, 0))
    assert cv.order() == 2
    assert not cv.is_trivial()
    assert cv.value((1, 0)) == Fraction(1, 2)
    assert cv.value((0, 1)) == 0
    assert sorted(cv.kernel_members()) == [(0, 0), (0, 1)]
    assert cv.vanishes_on([(0, 0), (0, 1)])
    assert not cv.vanishes_on([(1, 0)])
    assert lm.CharacterVec(Z22, (0, 0)).is_trivial()


def test_character_neg_and_canonical():
    g4 = AbelianGroup([4])
    cv = lm.CharacterVec(g4, (1,))
    assert cv.neg().exponents == (3,)
    assert cv.canonical().exponents == cv.neg().canonical().exponents


# ------------------------------------------------------------------ real rep

def test_real_rep_dimensions():
    rep = lm.RealRep(Z22, trivial_dim=1, sign_chars=[(1, 0)],
                     rot_chars=[])
    assert rep.dim == 2
    rep6 = lm.RealRep(AbelianGroup([2, 3]), trivial_dim=1,
                      sign_chars=[(1, 0)], rot_chars=[(0, 1)])
    assert rep6.dim == 4  # trivial + sign + 2-dim rotation block


def test_real_rep_rejects_invalid_sign_character():
    with pytest.raises(PreconditionViolated):
        lm.RealRep(AbelianGroup([4]), trivial_dim=1, sign_chars=[(1,)])


def test_fixed_dim_and_vanishing_blocks():
    rep = sign_rep(Z22, 2, [(1, 0), (0, 1)])
    assert rep.fixed_dim((0, 0)) == 4
    assert rep.fixed_dim((1, 0)) == 3
    assert rep.fixed_dim((1, 1)) == 2
    assert rep.vanishing_blocks((0, 0)) == (0, 1)
    assert rep.vanishing_blocks((1, 0)) == (0,)
    sub = SubgroupHandle(Z22, {(0, 0), (1, 0)})
    assert rep.fixed_dim(sub) == 3
    assert lm.fixed_dim(rep, sub) == 3


def test_det_sign():
    rep = sign_rep(Z22, 2, [(1, 0), (0, 1)])
    assert rep.det_sign((0, 0)) == 1
    assert rep.det_sign((1, 0)) == -1
    assert rep.det_sign((1, 1)) == 1


@settings(max_examples=30)
@given(st.lists(st.sampled_from([(1, 0), (0, 1), (1, 1)]),
                min_size=0, max_size=4),
       st.integers(0, 2))
def test_fixed_dim_antitone_in_subgroup(signs, trivial):
    rep = sign_rep(Z22, trivial, signs)
    fds = {sub.members: rep.fixed_dim(sub) for sub in subgroups(Z22)}
    for small, fd_small in fds.items():
        for big, fd_big in fds.items():
            if set(small) <= set(big):
                assert fd_big <= fd_small


def test_p_part_rep_preserves_dimension():
    rep = lm.RealRep(AbelianGroup([2, 3]), trivial_dim=1,
                     sign_chars=[(1, 0)], rot_chars=[(0, 1)])
    r2 = lm.p_part_rep(rep, 2)
    r3 = lm.p_part_rep(rep, 3)
    assert r2.dim == r3.dim == rep.dim
    assert r2.group.factors == (2,)
    assert r3.group.factors == (3,)


def test_rep_json_round_trip():
    rep = lm.RealRep(AbelianGroup([2, 3]), trivial_dim=2,
                     sign_chars=[(1, 0)], rot_chars=[(0, 1)])
    back = lm.RealRep.from_json(rep.to_json())
    assert back.to_json() == rep.to_json()
    assert back.dim == rep.dim


# ------------------------------------------------------------- borel formula

def test_borel_formula_full_sign_rep():
    rep = lm.RealRep(Z22, trivial_dim=1,
                     sign_chars=[(1, 0), (0, 1), (1, 1)])
    report = lm.borel_check(rep)
    assert report.passed
    assert report.lhs == report.rhs == 3
    assert report.p == 2 and report.rank == 2


def test_borel_rejects_non_elementary_abelian():
    with pytest.raises(NotElementaryAbelian):
        lm.borel_check(lm.RealRep(AbelianGroup([4]), trivial_dim=1,
                                  sign_chars=[(2,)]))


def test_gz_constraint_truth_table():
    assert lm.gz_constraint(5, 2, 3)
    assert not lm.gz_constraint(5, 2, 1)
    assert not lm.gz_constraint(7, 2, 3)


# -------------------------------------------------------------------- models

def test_disk_model_shape():
    dm = lm.DiskModel(sign_rep(Z22, 2, [(1, 0), (0, 1)]))
    assert dm.dim == 4
    assert dm.euler() == 1
    assert dm.betti() == (1, 0, 0, 0, 0)
    assert dm.chi_fixed((1, 0)) == 1  # fixed set of a disk model is a disk


def test_sphere_model_shape():
    sm = lm.SphereModel(lm.RealRep(Z3, trivial_dim=1,
                                   rot_chars=[(1,), (1,)]))
    assert sm.dim == 4  # sphere dimension, one less than the rep dimension
    assert sm.euler() == 2
    assert sm.betti() == (1, 0, 0, 0, 1)


def test_model_json_round_trip_and_unknown_kind():
    dm = lm.DiskModel(sign_rep(Z22, 2, [(1, 0), (0, 1)]))
    data = dm.to_json()
    assert data["kind"] == "disk"
    assert lm.model_from_json(data).to_json() == data
    sm = lm.SphereModel(lm.RealRep(Z3, trivial_dim=1, rot_chars=[(1,)]))
    assert lm.model_from_json(sm.to_json()).to_json() == sm.to_json()
    with pytest.raises(UnsupportedKind):
        lm.model_from_json({"kind": "nonsense"})


def test_dim_function_is_antitone():
    dm = lm.DiskModel(sign_rep(Z22, 2, [(1, 0), (0, 1)]))
    df = lm.dim_function(dm)
    assert df.kind == "disk"
    assert len(df.values) == 5  # one entry per subgroup of (Z/2)^2
    for small, fd_small in df.values.items():
        for big, fd_big in df.values.items():
            if small <= big:
                assert fd_big <= fd_small


# ------------------------------------------------------------- disk theorem

def test_disk_theorem_skip_branch():
    # every prime part fixes a disk of dimension <= 2: nothing to certify,
    # the published subgroup is the whole group
    dm = lm.DiskModel(sign_rep(Z22, 2, [(1, 0), (0, 1)]))
    handle, cert = lm.disk_theorem(Z22, dm)
    assert cert.branch == "contractible-skip"
    assert cert.gamma is None
    assert cert.index == 1 and cert.f_k == 1 and cert.k == 0
    assert handle.order == 4
    assert cert.checks["index_divides_f_k"]
    assert cert.checks["chi_fixed_is_one"]
    assert cert.checks["gamma_fixed_set_matches"] is None
    assert all(step.skipped for step in cert.steps)


def test_disk_theorem_gamma_branch():
    # D^7 with a 3-dimensional fixed disk carries a real certificate
    dm = lm.DiskModel(sign_rep(Z2, 3, [(1,)] * 4))
    handle, cert = lm.disk_theorem(Z2, dm)
    assert cert.branch == "reductions"
    assert cert.gamma == (1,)
    assert cert.k == 2 and cert.f_k == 4
    assert cert.f_k % cert.index == 0
    assert cert.fixed_dim_core == 3
    assert cert.chi_fixed == 1
    assert all(v for v in cert.checks.values())
    # published subgroup has the same fixed set as gamma ...
    rep = dm.rep
    assert rep.vanishing_blocks(handle) == rep.vanishing_blocks(cert.gamma)
    # ... and is the full stabilizer of that fixed set
    vb = set(rep.vanishing_blocks(cert.gamma))
    members = set(handle.members)
    for x in Z2.elements():
        assert (set(rep.vanishing_blocks(x)) >= vb) == (x in members)


def test_disk_reduction_trace():
    dm = lm.DiskModel(sign_rep(Z22, 2, [(1, 0), (0, 1)]))
    gamma, handle, trace = lm.disk_reduction(Z22, dm)
    assert gamma == (1, 1)
    assert handle.order == 4
    assert trace.fixed_dim_whole == 2
    assert trace.fixed_dim_gamma == 2
    assert trace.fixed_dim_core == 2
    assert trace.divisor == 2


# ----------------------------------------------------------- sphere theorem

def test_sphere_theorem_two_points_branch():
    sm = lm.SphereModel(lm.RealRep(Z3, trivial_dim=1,
                                   rot_chars=[(1,), (1,)]))
    handle, cert = lm.sphere_theorem(Z3, sm)
    assert cert.m == 2
    assert cert.branch == "two-points"
    assert cert.divisor == 16
    assert cert.index == 1
    assert cert.checks["index_divides"]
    assert cert.checks["two_fixed_points"]


def test_sphere_theorem_reductions_branch():
    rep = sign_rep(Z22, 3, [(1, 0), (0, 1), (1, 1), (1, 0)])
    sm = lm.SphereModel(rep)
    assert sm.dim == 6
    handle, cert = lm.sphere_theorem(Z22, sm)
    assert cert.branch == "reductions"
    assert cert.gamma is not None
    assert cert.divisor % cert.index == 0
    assert cert.checks["gamma_fixed_set_matches"]
    # the published subgroup is exactly the stabilizer of gamma's fixed set
    vb = set(rep.vanishing_blocks(cert.gamma))
    members = set(handle.members)
    for x in Z22.elements():
        assert (set(rep.vanishing_blocks(x)) >= vb) == (x in members)


def test_sphere_theorem_rejects_odd_spheres():
    with pytest.raises(OddDimensionalSphere):
        lm.sphere_theorem(Z2, lm.SphereModel(sign_rep(Z2, 2, [])))


# -------------------------------------------------------------- fingerprints

def test_fingerprint_of_disk_model():
    dm = lm.DiskModel(sign_rep(Z22, 2, [(1, 0), (0, 1)]))
    fp = lm.fingerprint(dm)
    assert fp.dim == 4
    assert fp.chi == 1
    assert fp.mu == 2
    assert fp.betti_q == (1, 0, 0, 0, 0)


def test_fingerprint_of_sphere_model():
    sm = lm.SphereModel(lm.RealRep(Z3, trivial_dim=1,
                                   rot_chars=[(1,), (1,)]))
    fp = lm.fingerprint(sm)
    assert fp.dim == 4
    assert fp.chi == 2
    assert fp.betti_q == (1, 0, 0, 0, 1)
    assert fp.source == "sphere"
