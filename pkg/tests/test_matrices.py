"""Tests for the exact/numeric matrix helpers."""

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.scalars import q


A = mx.from_rows([[q, 1], [0, q**-1]])


def test_identity_and_zeros_mix_with_built_matrices():
    assert mx.equal(mx.matmul(mx.identity(2), A), A)
    assert mx.equal(mx.matmul(A, mx.identity(2)), A)
    assert mx.equal(mx.zeros(2) + A, A)
    assert mx.equal(A - mx.zeros(2), A)


def test_zeroth_power_is_identity():
    one = mx.mat_pow(A, 0)
    assert mx.equal(one, mx.identity(2))
    assert mx.equal(mx.matmul(one, A), A)
    assert mx.equal(mx.matmul(A, one) + one, A + mx.identity(2))


def test_powers():
    assert mx.equal(mx.mat_pow(A, 2), mx.matmul(A, A))
    assert mx.equal(mx.matmul(mx.mat_pow(A, -1), A), mx.identity(2))


def test_nullspace_of_empty_system():
    basis = mx.nullspace(mx.zeros(0, 2))
    assert len(basis) == 2
