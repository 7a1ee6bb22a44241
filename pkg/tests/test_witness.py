"""Tests for the Laurent witness in the ideal generated by E^m."""

import dataclasses

import pytest

from uqsl2_studio.algebra.pbw import LaurentPoly, gap_inverse, numeric_mode, SYMBOLIC
from uqsl2_studio.algebra.scalars import root_of_unity
from uqsl2_studio.algebra.witness import (
    CLAUSE_CHAIN, CLAUSE_NONZERO, CLAUSE_P, CLAUSE_PRODUCT, Cofactor,
    annihilation_check, build_witness, certificate_from_dict, certificate_to_dict,
    chain_sides, geometric_cofactor, printed_recursion_diagnostic,
    specialize_certificate, verify_witness,
)
from uqsl2_studio.algebra.pbw import p_poly
from uqsl2_studio.core.types import DomainError, ModeMismatchError, SizeGuardError


def test_witness_m1():
    cert = build_witness(1)
    G = gap_inverse(SYMBOLIC)
    assert cert.R0 == LaurentPoly({1: G, -1: -G})
    assert verify_witness(cert).ok
    assert annihilation_check(cert).passed


def test_witness_m2():
    cert = build_witness(2)
    verdict = verify_witness(cert)
    assert verdict.ok, verdict.message
    assert not cert.R0.is_zero()
    assert [lv.n for lv in cert.levels] == [2, 1]
    assert annihilation_check(cert).passed
    for level in cert.levels:
        lhs, rhs = chain_sides(level, cert.mode)
        assert lhs == rhs


@pytest.mark.slow
def test_witness_m3():
    cert = build_witness(3)
    assert verify_witness(cert).ok
    assert annihilation_check(cert).passed
    assert specialize_certificate(cert, 1.1).passed


def test_witness_numeric():
    cert = build_witness(2, numeric_mode(1.1))
    assert verify_witness(cert).ok


def test_witness_guards():
    with pytest.raises(DomainError):
        build_witness(0)
    with pytest.raises(SizeGuardError):
        build_witness(7)
    with pytest.raises(DomainError):
        build_witness(2, numeric_mode(root_of_unity(5)))


def test_tampered_r0():
    cert = build_witness(2)
    bad = dataclasses.replace(cert, R0=LaurentPoly())
    verdict = verify_witness(bad)
    assert not verdict.ok
    assert verdict.clause == CLAUSE_NONZERO


def test_tampered_p():
    cert = build_witness(2)
    top = cert.levels[0]
    cert.levels[0] = dataclasses.replace(top, P=top.P * 2)
    verdict = verify_witness(cert)
    assert not verdict.ok
    assert verdict.clause == CLAUSE_P
    assert verdict.level == 2


def test_tampered_product():
    cert = build_witness(2)
    low = cert.levels[1]
    cert.levels[1] = dataclasses.replace(low, R_next=low.R_next + 1)
    verdict = verify_witness(cert)
    assert verdict.clause == CLAUSE_PRODUCT
    assert verdict.level == 1


def test_tampered_cofactor_sign():
    cert = build_witness(2)
    top = cert.levels[0]
    flipped = [Cofactor(c.left, c.right, -c.sign) for c in top.cofactors]
    cert.levels[0] = dataclasses.replace(top, cofactors=flipped)
    verdict = verify_witness(cert)
    assert verdict.clause == CLAUSE_CHAIN
    assert verdict.level == 2


def test_certificate_serialization():
    cert = build_witness(2)
    back = certificate_from_dict(certificate_to_dict(cert))
    assert back.R0 == cert.R0
    assert verify_witness(back).ok
    with pytest.raises(ModeMismatchError):
        certificate_to_dict(build_witness(1, numeric_mode(1.1)))


def test_specialize_certificate():
    cert = build_witness(2)
    assert specialize_certificate(cert, 1.3).passed
    assert specialize_certificate(cert, 0.7 + 0.2j).passed
    with pytest.raises(DomainError):
        specialize_certificate(cert, root_of_unity(6))


def test_geometric_cofactor():
    for n in (1, 2):
        for k in (1, 2):
            t, s = p_poly(n).coeffs[1], -p_poly(n).coeffs[-1]
            outer = LaurentPoly({2 * k: t ** (2 * k), -2 * k: -s ** (2 * k)})
            assert outer == p_poly(n) * geometric_cofactor(n, k)


def test_printed_recursion_is_not_a_witness():
    diag = printed_recursion_diagnostic(2)
    assert all(level.factorization_holds for level in diag.levels)
    assert not diag.usable_as_witness
