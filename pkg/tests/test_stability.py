"""Fingerprints, lambda-stability, descent, and the certified pipeline."""
from __future__ import annotations

import pytest

from equifix import corpus, linmodel, stability
from equifix.errors import OddCohomology, PreconditionViolated
from equifix.groupcore import AbelianGroup, subgroups, sylow
from equifix.stability import (
    ActionFingerprint,
    ComponentRecord,
    SubgroupRecord,
    chi_core,
    generic_element,
    is_lambda_stable,
    member_key,
    parse_member_key,
    precedes,
    stable_descent,
    stable_subgroup,
    theorem13_pipeline,
    verify_certificate,
)

Z22 = AbelianGroup([2, 2])


def disk_fp():
    dm = linmodel.DiskModel(
        linmodel.RealRep(Z22, trivial_dim=2, sign_chars=[(1, 0), (0, 1)]))
    return linmodel.fingerprint(dm)


# ------------------------------------------------------------- fingerprints

def test_fingerprint_requires_mod_p_data_for_group_primes():
    with pytest.raises(PreconditionViolated):
        ActionFingerprint(Z22, dim=1, chi=0, betti_q=(1, 1))


def test_fingerprint_record_shapes():
    fp = disk_fp()
    rec = fp.record(sylow(Z22, 2))
    assert len(rec.components) == 1
    comp = rec.components[0]
    assert comp.dim == 2 and comp.chi == 1  # whole group fixes a 2-disk
    assert rec.linear_dim == 2
    assert len(comp.chars) == 2  # one normal character per sign block


def test_member_key_round_trip():
    key = member_key([(1, 0), (0, 0)])
    assert key == "0,0;1,0"
    assert parse_member_key(key) == frozenset({(0, 0), (1, 0)})


# ----------------------------------------------------------------- precedes

def test_precedes_axioms():
    a = SubgroupRecord(components=(ComponentRecord(dim=1, chi=0),))
    b = SubgroupRecord(components=(ComponentRecord(dim=1, chi=0),
                                   ComponentRecord(dim=2, chi=1)))
    empty = SubgroupRecord(components=())
    assert precedes(a, a)  # reflexive
    assert precedes(a, b)
    assert not precedes(b, a)
    assert precedes(empty, a)  # empty fixed set precedes everything
    # counted with multiplicity
    twice = SubgroupRecord(components=(ComponentRecord(dim=1, chi=0),) * 2)
    assert not precedes(twice, a)
    assert precedes(a, twice)


# ---------------------------------------------------------------- stability

def test_whole_group_is_not_stable_for_the_standard_disk():
    fp = disk_fp()
    verdict = is_lambda_stable(fp, sylow(Z22, 2), 4)
    assert not verdict.stable
    assert verdict.subgroups_checked == 5


def test_corrupted_fingerprint_yields_chi_witness():
    fp, gamma_p = corpus.corrupted_fingerprint(0)
    verdict = is_lambda_stable(fp, gamma_p, 4)
    assert not verdict.stable
    assert verdict.witness.kind == "chi"
    assert verdict.witness.members == ((0, 0), (0, 1))


def test_stable_descent_reaches_a_stable_subgroup():
    fp = disk_fp()
    start = sylow(Z22, 2)
    final, trace = stable_descent(start, fp, 4)
    assert final.order == 1
    assert trace.verdict.stable
    assert len(trace.steps) <= trace.e_bound
    # each step has index at most lambda and strictly shrinks the subgroup
    for step in trace.steps:
        assert 1 < step.index <= 4
    # the final subgroup has index lam^steps at most
    assert start.order % final.order == 0
    assert start.order // final.order <= 4 ** len(trace.steps)


def test_descent_on_stable_input_is_a_no_op():
    fp = disk_fp()
    trivial = stability.SubgroupHandle(Z22, {(0, 0)})
    final, trace = stable_descent(trivial, fp, 4)
    assert final.order == 1
    assert len(trace.steps) == 0


# ----------------------------------------------------------------- chi core

def test_chi_core_of_standard_disk():
    fp = disk_fp()
    core = chi_core(sylow(Z22, 2), fp)
    assert core.p == 2
    assert core.order == 1
    assert core.index == 4
    assert core.index <= core.bound == 2 ** (core.exponent * fp.mu)


# ----------------------------------------------------- generic elements

def test_generic_element_requires_stable_input():
    fp = disk_fp()
    with pytest.raises(PreconditionViolated):
        generic_element(sylow(Z22, 2), fp, 4)


def test_generic_element_after_descent():
    fp = disk_fp()
    final, _ = stable_descent(sylow(Z22, 2), fp, 4)
    x, cert = generic_element(final, fp, 4)
    assert x == (0, 0)
    assert cert.union_size <= cert.subgroup_order
    assert cert.char_count <= cert.char_bound


# ------------------------------------------------------------ the pipeline

def test_stable_subgroup_result():
    fp = disk_fp()
    res = stable_subgroup(sylow(Z22, 2), fp, 4)
    assert res.handle.order == 1
    assert res.index == 4
    assert res.index <= res.bound
    assert list(res.cores) == [2]
    assert list(res.parts) == [2]


LEDGER_NAMES = [
    "no-odd-cohomology",
    "homology-kernel",
    "stable-subgroup",
    "generic-elements",
    "power-recovery",
    "fixed-set-equality",
    "euler-characteristic",
    "final-index",
]


def test_theorem13_pipeline_standard_disk():
    fp = disk_fp()
    cert = theorem13_pipeline(Z22, fp)
    assert [line.name for line in cert.lines] == LEDGER_NAMES
    assert all(line.passed for line in cert.lines)
    assert cert.index_total == 4
    assert cert.index_total <= cert.bound_total
    assert cert.b_sq == 1
    ok, lines = verify_certificate(fp, cert)
    assert ok
    assert [line.name for line in lines] == LEDGER_NAMES
    assert all(line.passed for line in lines)


def test_theorem13_rejects_odd_cohomology():
    fp_odd = ActionFingerprint(Z22, dim=1, chi=0, betti_q=(1, 1),
                               betti_p={2: (1, 1)})
    with pytest.raises(OddCohomology):
        theorem13_pipeline(Z22, fp_odd)


def test_sphere_fingerprint_has_homology_kernel():
    sm = linmodel.SphereModel(
        linmodel.RealRep(AbelianGroup([2]), trivial_dim=2,
                         sign_chars=[(1,)]))
    fp = linmodel.fingerprint(sm)
    assert fp.homology_kernel == frozenset({(0,)})


def test_pipeline_respects_verified_bound_on_sphere():
    g3 = AbelianGroup([3])
    sm = linmodel.SphereModel(
        linmodel.RealRep(g3, trivial_dim=1, rot_chars=[(1,), (1,)]))
    fp = linmodel.fingerprint(sm)
    cert = theorem13_pipeline(g3, fp)
    ok, _ = verify_certificate(fp, cert)
    assert ok
    assert cert.index_total <= cert.bound_total
