"""Tests for norms, conjugation scaling and roots of unity."""

import numpy as np
import pytest

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.numerics import (
    center_exponent, condition_number, conjugation_growth, nilpotency_index,
    operator_norm, root_unity_center_check,
)
from uqsl2_studio.algebra.pbw import numeric_mode
from uqsl2_studio.algebra.repkit import build_rep_q
from uqsl2_studio.core.types import DomainError, PreconditionError, RepLabelQ


def test_operator_norm():
    assert operator_norm(np.diag([3.0, -4.0]).astype(complex)) == pytest.approx(4.0)
    A = np.array([[1, 2], [3, 4]], dtype=complex)
    assert operator_norm(A) == pytest.approx(np.linalg.norm(A, 2), rel=1e-8)
    assert operator_norm(np.zeros((3, 3), dtype=complex)) == 0.0
    rng = np.random.default_rng(7)
    B = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    assert operator_norm(B) == pytest.approx(np.linalg.norm(B, 2), rel=1e-6)


def test_operator_norm_needs_numeric_matrix():
    with pytest.raises(DomainError):
        operator_norm(build_rep_q(RepLabelQ(1, 1)).E)


def test_condition_number():
    a = np.diag([2.0, 0.5]).astype(complex)
    assert condition_number(a) == pytest.approx(4.0)


def test_nilpotency_index():
    rep = build_rep_q(RepLabelQ(2, 1), numeric_mode(1.1))
    assert nilpotency_index(rep.E) == 3
    assert nilpotency_index(rep.F) == 3
    assert nilpotency_index(rep.K) is None
    exact = build_rep_q(RepLabelQ(3, -1))
    assert nilpotency_index(exact.E) == 4


@pytest.mark.parametrize("qv", [1.1, 2.0])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_growth_of_e_and_f(n, qv):
    rep = build_rep_q(RepLabelQ(n, 1), numeric_mode(qv))
    trace = conjugation_growth(rep.K, rep.E, qv ** 2)
    assert trace.holds
    assert trace.nilpotent_at == n + 1
    assert trace.condition == pytest.approx(qv ** (2 * n))
    trace = conjugation_growth(mx.inverse(rep.K), rep.F, qv ** 2)
    assert trace.holds
    assert trace.nilpotent_at == n + 1


def test_growth_precondition():
    rep = build_rep_q(RepLabelQ(2, 1), numeric_mode(2.0))
    with pytest.raises(PreconditionError):
        conjugation_growth(rep.K, rep.E, 3.0)
    with pytest.raises(PreconditionError):
        conjugation_growth(np.eye(3, dtype=complex), rep.E, 2.0)


def test_center_exponent():
    assert center_exponent(3) == 3
    assert center_exponent(5) == 5
    assert center_exponent(4) == 2
    assert center_exponent(6) == 3
    assert center_exponent(8) == 4


@pytest.mark.parametrize("d", [3, 4, 5, 6, 8])
def test_root_unity_center(d):
    report = root_unity_center_check(d)
    assert report.passed, [c.name for c in report.failures()]


def test_root_unity_guards():
    with pytest.raises(DomainError):
        root_unity_center_check(2)
