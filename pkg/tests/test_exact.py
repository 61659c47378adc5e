"""Integer and rational linear algebra oracles."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equifix import exact


def small_matrix(max_dim=4, lo=-6, hi=6):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                min_size=m, max_size=m)))


def test_identity_and_multiplication():
    i3 = exact.identity_matrix(3)
    a = [[1, 2, 0], [0, 1, 5], [7, 0, 1]]
    assert exact.mat_mul(a, i3) == [list(r) for r in a]
    assert exact.mat_mul(i3, a) == [list(r) for r in a]
    assert exact.mat_vec(a, [1, 0, 0]) == [1, 0, 7]


def test_rank_oracles():
    assert exact.rank_rational([[1, 2], [2, 4]]) == 1
    assert exact.rank_rational([[1, 0], [0, 1]]) == 2
    assert exact.rank_rational([[0, 0], [0, 0]]) == 0
    # the matrix (2) has rank 1 over Q but vanishes mod 2
    assert exact.rank_rational([[2]]) == 1
    assert exact.rank_mod_p([[2]], 2) == 0
    assert exact.rank_mod_p([[2]], 3) == 1


def test_smith_normal_form_known_values():
    d, u, v = exact.smith_normal_form([[2, 4], [6, 8]])
    assert d == [2, 4]
    d, _, _ = exact.smith_normal_form([[1, 0], [0, 1]])
    assert d == [1, 1]
    d, _, _ = exact.smith_normal_form([[6, 0], [0, 10]])
    assert d == [2, 30]


@settings(max_examples=60)
@given(small_matrix())
def test_smith_normal_form_properties(rows):
    m, n = len(rows), len(rows[0])
    d, u, v = exact.smith_normal_form(rows)
    # u * a * v is the diagonal matrix d
    prod = exact.mat_mul(exact.mat_mul(u, rows), v)
    for i in range(m):
        for j in range(n):
            want = d[i] if i == j and i < len(d) else 0
            assert prod[i][j] == want
    # divisibility chain, and invariant factors nonnegative
    for a, b in zip(d, d[1:]):
        if b:
            assert a != 0 and b % a == 0
        assert a >= 0
    # transforms are unimodular: integer inverses exist
    exact.invert_unimodular(u)
    exact.invert_unimodular(v)
    # rank is preserved
    assert sum(1 for x in d if x) == exact.rank_rational(rows)


@settings(max_examples=40)
@given(small_matrix())
def test_kernel_basis_annihilates(rows):
    basis = exact.kernel_basis(rows)
    n = len(rows[0])
    assert len(basis) == n - exact.rank_rational(rows)
    for vec in basis:
        assert exact.mat_vec(rows, vec) == [0] * len(rows)


def test_solve_rational():
    sol = exact.solve_rational([[2, 0], [0, 4]], [1, 1])
    assert sol == [Fraction(1, 2), Fraction(1, 4)]
    assert exact.solve_rational([[1, 1], [1, 1]], [0, 1]) is None


def test_solve_integer_round_trip():
    a = [[2, 1], [1, 1]]
    x = exact.solve_integer(a, [3, 2])
    assert exact.mat_vec(a, x) == [3, 2]


def test_invert_unimodular_round_trip():
    u = [[1, 2], [1, 3]]
    w = exact.invert_unimodular(u)
    assert exact.mat_mul(u, w) == exact.identity_matrix(2)


def test_mod_reduction_injectivity():
    i2 = exact.identity_matrix(2)
    neg = [[-x for x in row] for row in i2]
    ok, witness = exact.mod_reduction_injective([i2, neg], 2)
    assert not ok and witness == neg
    ok, _ = exact.mod_reduction_injective([i2, neg], 3)
    assert ok
    rot4 = [[0, -1], [1, 0]]
    rot4_sq = [[-1, 0], [0, -1]]
    rot4_cu = [[0, 1], [-1, 0]]
    ok, _ = exact.mod_reduction_injective([i2, rot4, rot4_sq, rot4_cu], 3)
    assert ok
