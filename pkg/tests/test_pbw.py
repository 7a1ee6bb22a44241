"""Tests for the PBW normal-form engine."""

import pytest

from uqsl2_studio.algebra.pbw import (
    SYMBOLIC, LaurentPoly, PBWElement, bracket_identity_residuals, casimir,
    commutator, em_f_closed_form, em_f_coeffs, em_f_diagnostic, gap_inverse,
    generator, generators, is_central, multiply, normalize, numeric_mode,
    p_poly, parse_word, random_element, random_word, rewrite_once, sigma_pow,
    word_to_element,
)
from uqsl2_studio.algebra.scalars import q
from uqsl2_studio.core.types import DomainError, ModeMismatchError


E, F, K, Ki = generators()
G = gap_inverse(SYMBOLIC)


def test_defining_relations():
    assert normalize("KE") == PBWElement({(0, 1, 1): 1})
    assert normalize("EK") == PBWElement({(0, 1, 1): q**-2})
    assert normalize("KF") == PBWElement({(1, 1, 0): q**-2})
    assert normalize("FK") == PBWElement({(1, 1, 0): 1})
    assert normalize("K K^-1") == 1
    assert normalize("Ki K") == 1
    assert normalize("E·F") == PBWElement({(1, 0, 1): 1, (0, 1, 0): G, (0, -1, 0): -G})
    assert commutator(E, F) == (K - Ki) * G


def test_kek_inverse():
    assert multiply(multiply(K, E), Ki) == E.scale(q**2)
    assert multiply(multiply(K, F), Ki) == F.scale(q**-2)


def test_parse_word():
    assert parse_word("KK^-1") == ("K", "Ki")
    assert parse_word("E·F·K⁻¹") == ("E", "F", "Ki")
    assert word_to_element(("K", "Ki")) == 1
    with pytest.raises(DomainError):
        parse_word("EG")


def test_associativity(rng):
    for _ in range(25):
        a, b, c = (random_element(rng) for _ in range(3))
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_rewrites_agree_with_normal_form(rng):
    for _ in range(40):
        word = random_word(rng, rng.randint(2, 5))
        target = word_to_element(word)
        for pos in range(len(word) - 1):
            step = rewrite_once(word, pos)
            if step is None:
                continue
            total = PBWElement.zero()
            for c, w in step:
                total = total + word_to_element(w).scale(c)
            assert total == target


def test_rewrite_once_out_of_range():
    assert rewrite_once(("E",), 0) is None
    assert rewrite_once(("F", "E"), 1) is None
    assert rewrite_once(("F", "K"), 0) is not None
    assert rewrite_once(("F", "E", "K"), 0)[0][1] == ("E", "F", "K")


def test_powers_and_bilinearity():
    assert E ** 0 == 1
    assert (E + F) ** 2 == multiply(E, E) + multiply(E, F) + multiply(F, E) + multiply(F, F)
    with pytest.raises(DomainError):
        E ** -1


def test_em_f_coefficients():
    t, s = em_f_coeffs(1)
    assert t == G and s == G
    for m in range(1, 5):
        assert em_f_coeffs(m) == em_f_closed_form(m)
        c = commutator(E ** m, F)
        expected = multiply(E ** (m - 1), p_poly(m).to_element())
        assert c == expected


def test_em_f_diagnostic_flags_sign_of_s():
    for m in (1, 2, 3):
        diag = em_f_diagnostic(m)
        assert diag.closed_form_matches
        assert diag.printed_t_matches
        assert not diag.printed_s_matches
        assert diag.printed_s_is_negated


def test_sigma():
    R = LaurentPoly({1: 1, -2: q})
    assert sigma_pow(R, 1) == LaurentPoly({1: q**2, -2: q**-3})
    assert sigma_pow(sigma_pow(R, 3), -3) == R
    # R(K)·F = F·σ⁻¹(R)(K)
    assert multiply(R.to_element(), F) == multiply(F, sigma_pow(R, -1).to_element())


def test_bracket_identities():
    for R in (LaurentPoly.one(), LaurentPoly({2: 1, -1: q})):
        for n in (1, 2):
            printed, corrected = bracket_identity_residuals(n, R)
            assert corrected.is_zero()
    printed, _ = bracket_identity_residuals(1, LaurentPoly.one())
    assert not printed.is_zero()


def test_casimir_is_central():
    C = casimir()
    assert is_central(C)
    assert not is_central(E)
    assert not is_central(K)


def test_laurent_poly():
    R = LaurentPoly({2: 1, -1: 3})
    assert R.span() == (-1, 2)
    assert (R * LaurentPoly.monomial(1)).span() == (0, 3)
    assert R.evaluate(q) == q**2 + 3 * q**-1
    with pytest.raises(DomainError):
        R ** -1


def test_monomial_guards():
    with pytest.raises(DomainError):
        PBWElement.monomial(-1, 0, 0)
    with pytest.raises(DomainError):
        generator("G")


def test_numeric_mode():
    mode = numeric_mode(2.0)
    x = normalize("EF", mode)
    assert x.coefficient(0, 1, 0) == pytest.approx(2 / 3)
    assert x.coefficient(0, -1, 0) == pytest.approx(-2 / 3)
    assert x.coefficient(1, 0, 1) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        numeric_mode(1.0)
    with pytest.raises(DomainError):
        numeric_mode(-1.0)
    with pytest.raises(DomainError):
        numeric_mode(0)


def test_specialize_matches_numeric_product(rng):
    mode = numeric_mode(1.3)
    for _ in range(10):
        a, b = random_element(rng), random_element(rng)
        exact = multiply(a, b).specialize(mode)
        direct = multiply(a.specialize(mode), b.specialize(mode))
        diff = exact - direct
        assert not diff.terms or diff.max_abs_coeff() < 1e-8 * max(1.0, exact.max_abs_coeff())


def test_modes_do_not_mix():
    En = generator("E", numeric_mode(2.0))
    with pytest.raises(ModeMismatchError):
        multiply(E, En)
    with pytest.raises(ModeMismatchError):
        E + En
    assert E != En


def test_degree_and_support():
    x = normalize("F F K E") + 3
    assert x.degree() == 4
    assert x.support() == [(0, 0, 0), (2, 1, 1)]


@pytest.mark.slow
def test_associativity_full_suite(rng):
    for _ in range(100):
        a, b, c = (random_element(rng) for _ in range(3))
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@pytest.mark.slow
def test_confluence_full_suite(rng):
    for _ in range(200):
        word = random_word(rng, rng.randint(1, 8))
        target = word_to_element(word)
        for pos in range(len(word) - 1):
            step = rewrite_once(word, pos)
            if step is not None:
                assert sum((word_to_element(w).scale(c) for c, w in step), PBWElement.zero()) == target


@pytest.mark.slow
def test_em_f_coefficients_up_to_six():
    for m in range(1, 7):
        t, s = em_f_coeffs(m)
        assert t and s
        assert (t, s) == em_f_closed_form(m)
    for n in range(1, 7):
        _, corrected = bracket_identity_residuals(n, LaurentPoly({1: 1, -1: 2}))
        assert corrected.is_zero()


def test_twisting_identities():
    Kp = LaurentPoly({1: 1})
    for n in range(1, 7):
        assert multiply(K, E ** n) == multiply(E ** n, sigma_pow(Kp, n).to_element())
        assert multiply(K, F ** n) == multiply(F ** n, sigma_pow(Kp, -n).to_element())
    assert multiply(K, E ** 2) == PBWElement({(0, 1, 2): q**4})


@pytest.mark.parametrize("k", [1, 2, 4])
def test_sigma_inverse_difference_has_two_terms(k, rng):
    a, b, c, d = (rng.choice([-3, -2, -1, 1, 2, 3]) * q ** rng.randint(-2, 2) for _ in range(4))
    R = LaurentPoly({k: a, -k: -b}) * LaurentPoly({k: c, -k: -d})
    diff = sigma_pow(R, -1) - R
    assert set(diff.coeffs) == {2 * k, -2 * k}
    assert all(diff.coeffs.values())
