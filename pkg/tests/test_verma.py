"""Tests for truncated Verma modules."""

import cmath

import numpy as np
import pytest

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.numerics import operator_norm
from uqsl2_studio.algebra.pbw import numeric_mode
from uqsl2_studio.algebra.scalars import generic_lambda_field, q, q_int_lambda
from uqsl2_studio.algebra.verma import (
    build_verma, entry_bounds, invariant_scan, norm_growth, raw_relation_residual,
    relation_residual, top_left,
)
from uqsl2_studio.core.types import DomainError


def test_generic_entries():
    _, lam = generic_lambda_field()
    trunc = build_verma(lam, 4)
    E = mx.entries(trunc.E)
    F = mx.entries(trunc.F)
    for i in range(3):
        assert E[i][i + 1] == -q_int_lambda(i + 1, lam)
        assert F[i + 1][i] != 0
    assert mx.entry(trunc.K, 0, 0) == lam


def test_residual_confined_to_corner():
    _, lam = generic_lambda_field()
    N = 5
    rows = mx.entries(relation_residual(build_verma(lam, N)))
    for i in range(N):
        for j in range(N):
            if (i, j) == (N - 1, N - 1):
                assert rows[i][j] != 0
            else:
                assert rows[i][j] == 0


def test_raw_residual_is_diagonal_but_nonzero():
    _, lam = generic_lambda_field()
    R = raw_relation_residual(build_verma(lam, 3))
    assert mx.is_diagonal(R)
    assert mx.entry(R, 0, 0) != 0


def test_top_left_compatibility():
    _, lam = generic_lambda_field()
    small, big = build_verma(lam, 4), build_verma(lam, 7)
    cut = top_left(big, 4)
    assert mx.equal(cut.E, small.E)
    assert mx.equal(cut.F, small.F)
    assert mx.equal(cut.K, small.K)
    with pytest.raises(DomainError):
        top_left(big, 8)


def test_invariant_scan_exact():
    assert invariant_scan(q**3, 6) == [3]
    assert invariant_scan(-q**2, 5) == [2]
    assert invariant_scan(q**0, 5) == []
    for n0 in range(1, 9):
        for eps in (1, -1):
            assert invariant_scan(eps * q**n0, 10) == [n0]


def test_invariant_scan_generic_lambda():
    _, lam = generic_lambda_field()
    assert invariant_scan(lam, 6) == []


def test_invariant_scan_numeric():
    unimodular = numeric_mode(cmath.exp(1j))
    assert invariant_scan(1.7, 40, unimodular) == []
    mode = numeric_mode(1.1)
    assert invariant_scan(1.1 ** 3, 10, mode) == [3]


def test_lambda_zero_rejected():
    with pytest.raises(DomainError):
        build_verma(0, 3)
    with pytest.raises(DomainError):
        build_verma(0.0, 3, numeric_mode(1.1))
    with pytest.raises(DomainError):
        build_verma(q, 0)


def test_norms_bounded_on_unit_circle():
    qv = cmath.exp(1j)
    bounds = entry_bounds(1.0, qv)
    for row in norm_growth(1.0, qv, [25, 50, 100, 200]):
        assert row.normE <= bounds["E"] * (1 + 1e-9)
        assert row.normF <= bounds["F"] * (1 + 1e-9)
        assert row.normK == pytest.approx(1.0)


def test_norms_grow_off_the_circle():
    rows = norm_growth(1.0, 1.1, [100, 200])
    assert rows[1].normE / rows[0].normE >= 1.1 ** 90 / 2
    assert rows[1].normF > rows[0].normF


def test_numeric_norm_matches_svd():
    trunc = build_verma(1.3, 12, numeric_mode(cmath.exp(0.7j)))
    for A in (trunc.E, trunc.F, trunc.K):
        expected = np.linalg.norm(A, 2)
        assert operator_norm(A) == pytest.approx(expected, rel=1e-8)


def test_entry_bounds_need_unit_circle():
    with pytest.raises(DomainError):
        entry_bounds(1.0, 1.1)
    with pytest.raises(DomainError):
        norm_growth(1.0, cmath.exp(1j), [1])
