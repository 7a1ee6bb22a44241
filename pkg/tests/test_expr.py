"""Tests for the expression front-end."""

import pytest

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.pbw import generator, normalize, numeric_mode
from uqsl2_studio.algebra.scalars import q
from uqsl2_studio.algebra.repkit import build_rep_hbar
from uqsl2_studio.cli.expr import (
    Bracket, Gen, Int, Mul, Neg, Pow, Scalar, Sub, element_to_expr, evaluate_on_matrices,
    parse_expr, print_expr, random_ast, scalar_to_expr, tokenize,
)
from uqsl2_studio.core.types import DomainError, ExprSyntaxError, RepLabelHbar


def test_tokenize_positions():
    toks = tokenize("E +\n  {q^2}")
    assert [(t.kind, t.line, t.column) for t in toks] == [
        ("NAME", 1, 1), ("OP", 1, 3), ("SCALAR", 2, 3), ("EOF", 2, 8),
    ]


def test_parse_shapes():
    assert parse_expr("[E,F]") == Bracket(Gen("E"), Gen("F"))
    assert parse_expr("K^-1") == Pow(Gen("K"), -1)
    assert parse_expr("E^(2)") == Pow(Gen("E"), 2)
    assert parse_expr("-E*F") == Mul(Neg(Gen("E")), Gen("F"))
    assert parse_expr("E - -2") == Sub(Gen("E"), Neg(Int(2)))
    assert parse_expr("q^2*E") == Mul(Pow(Scalar("q"), 2), Gen("E"))


def test_relations_through_the_parser():
    assert normalize(parse_expr("K*E - q^2*E*K")).is_zero()
    assert normalize(parse_expr("K^-1*K")) == 1
    assert normalize(parse_expr("Kinv")) == generator("Ki")
    c = normalize(parse_expr("[E,F] - {1/(q - q^-1)}*(K - K^-1)"))
    assert c.is_zero()


@pytest.mark.parametrize("text", ["E^(1/2)", "E^1.5", "E^q", "E^(2"])
def test_non_integer_exponent(text):
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr(text)
    assert err.value.kind == "non-integer exponent"


def test_error_locations():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("E + * F")
    assert (err.value.line, err.value.column) == (1, 5)
    assert "E" in err.value.expected

    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("E +\n  )")
    assert (err.value.line, err.value.column) == (2, 3)

    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("[E F]")
    assert err.value.expected == [","]


def test_lexical_errors():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("E*G")
    assert err.value.kind == "lexical"
    assert err.value.column == 3
    with pytest.raises(ExprSyntaxError):
        parse_expr("E + {q")
    with pytest.raises(ExprSyntaxError):
        parse_expr("E $ F")


def test_h_only_when_allowed():
    with pytest.raises(ExprSyntaxError):
        parse_expr("H*E")
    node = parse_expr("H*E", allow_h=True)
    assert node.uses_h()
    with pytest.raises(DomainError):
        node.to_element()


def test_negative_power_of_non_invertible():
    with pytest.raises(DomainError):
        normalize(parse_expr("E^-1"))
    assert normalize(parse_expr("2^-1*E")) == normalize(parse_expr("{1/2}*E"))


def test_print_parse_round_trip(rng):
    for _ in range(200):
        tree = random_ast(rng, depth=4, allow_h=True)
        assert parse_expr(print_expr(tree), allow_h=True) == tree


def test_normal_form_text_parses_back():
    for text in ("E*F", "[E^2, F]", "K*E*F*K^-1 + 3", "(E + F)^2"):
        x = normalize(parse_expr(text))
        assert normalize(parse_expr(element_to_expr(x))) == x


def test_scalar_text_parses_back():
    for c in (q**2 + 1, (q - 1) / (q**3 + 2), -q**-1):
        assert normalize(parse_expr(scalar_to_expr(c))).coefficient(0, 0, 0) == c


def test_numeric_literals():
    mode = numeric_mode(2.0)
    x = normalize(parse_expr("1.5*E"), mode)
    assert x.coefficient(0, 0, 1) == pytest.approx(1.5)
    x = normalize(parse_expr("{0.5+2j}*E"), mode)
    assert x.coefficient(0, 0, 1) == pytest.approx(0.5 + 2j)
    with pytest.raises(DomainError):
        normalize(parse_expr("{0.5+2j}*E"))
    y = normalize(parse_expr("E*F"), mode)
    z = normalize(parse_expr(element_to_expr(y)), mode)
    assert set(z.terms) == set(y.terms)
    for key, c in y.terms.items():
        assert z.terms[key] == pytest.approx(c, rel=1e-10)


def test_evaluate_with_h():
    rep = build_rep_hbar(RepLabelHbar(1, 0, 1))
    gens = {"E": rep.E, "F": rep.F, "K": rep.K, "Kinv": mx.inverse(rep.K),
            "H": rep.H.real.convert_to(rep.E.domain)}
    assert mx.is_zero(evaluate_on_matrices(parse_expr("[H,E] - 2*E", allow_h=True), gens))
    assert mx.is_zero(evaluate_on_matrices(parse_expr("[H,F] + 2*F", allow_h=True), gens))
    assert mx.equal(evaluate_on_matrices(parse_expr("K^-1*K"), gens), mx.identity(2))
