"""Expression grammar and problem-document loading."""

import json
from fractions import Fraction

import pytest

from conftest import Q, fe, var
from jetspace.document import parse_document
from jetspace.errors import DenominatorNotUnit, InputError, ParseError
from jetspace.exact import BaseField, SparsePolynomial
from jetspace.exprs import parse_polynomial, parse_series_expression
from jetspace.series import OrderValue


class TestParsePolynomial:
    def test_cusp_generator(self):
        p = parse_polynomial("y^2 - x^3", Q, ("x", "y"))
        x, y = var("x"), var("y")
        assert p == y * y - x ** 3

    def test_rational_coefficients(self):
        p = parse_polynomial("3/2*x^2*y - 1/2", Q, ("x", "y"))
        x, y = var("x"), var("y")
        expected = (x * x * y).scale(Fraction(3, 2)) - SparsePolynomial.constant(Q, Fraction(1, 2))
        assert p == expected

    def test_unknown_symbol_reports_column(self):
        with pytest.raises(ParseError) as info:
            parse_polynomial("x + qq", Q, ("x", "y"), context="variety.generators[0]")
        assert info.value.column == 5
        assert "variety.generators[0]" in str(info.value)

    def test_scalar_division_only(self):
        assert parse_polynomial("x/2", Q, ("x",)) == var("x").scale(Fraction(1, 2))
        with pytest.raises(ParseError):
            parse_polynomial("x/y", Q, ("x", "y"))

    def test_parentheses_and_unary_minus(self):
        p = parse_polynomial("-(x - 2)*(x + 2)", Q, ("x",))
        x = var("x")
        assert p == SparsePolynomial.constant(Q, 4) - x * x

    def test_prime_field_coefficients(self):
        f5 = BaseField(5)
        p = parse_polynomial("7*x + 1/2", f5, ("x",))
        x5 = SparsePolynomial.variable(f5, "x")
        assert p == x5.scale(2) + SparsePolynomial.constant(f5, 3)

    def test_rendered_polynomials_reparse(self):
        x, y = var("x"), var("y")
        original = y * y - x ** 3 + SparsePolynomial.constant(Q, Fraction(1, 2))
        assert parse_polynomial(str(original), Q, ("x", "y")) == original

    def test_bad_syntax(self):
        for text in ("x +", "^2", "(x", "x ^ y", "2 3"):
            with pytest.raises(ParseError):
                parse_polynomial(text, Q, ("x", "y"))


class TestParseSeriesExpression:
    def test_rational_in_t(self):
        e = parse_series_expression("(t + t^2)/(1 + t)", Q, ())
        expanded = e.expand(5)
        assert expanded.order() == OrderValue.finite(1)
        assert expanded.coeffs[1] == fe(1)
        assert all(expanded.coeffs[i].is_zero() for i in (0, 2, 3, 4))

    def test_transcendental_coefficients(self):
        e = parse_series_expression("u1*t + t^2", Q, ("u1",))
        assert str(e.expand(3).coeffs[1]) == "u1"

    def test_t_reserved(self):
        with pytest.raises(ParseError):
            parse_series_expression("t + u", Q, ("t", "u"))

    def test_unknown_symbol(self):
        with pytest.raises(ParseError):
            parse_series_expression("t + x", Q, ("u",))

    def test_non_unit_denominator(self):
        with pytest.raises(DenominatorNotUnit):
            parse_series_expression("1/t", Q, ())


def _doc(**overrides):
    raw = {
        "field": "rationals",
        "variety": {
            "name": "cusp",
            "variables": ["x", "y"],
            "generators": ["y^2 - x^3"],
            "declared_dim": 1,
        },
        "arcs": {"main": {"components": ["t^2", "t^3"]}},
    }
    raw.update(overrides)
    return raw


class TestParseDocument:
    def test_round_trip(self):
        doc = parse_document(_doc())
        arc = doc.build_arc("main", 10)
        assert arc.precision == 10
        assert doc.default_arc_name() == "main"

    def test_prime_field(self):
        raw = _doc(field={"prime": 5})
        raw["variety"]["generators"] = ["y^2 - x^3"]
        doc = parse_document(raw)
        assert doc.field.characteristic == 5

    def test_generic_component(self):
        raw = _doc()
        raw["variety"] = {"variables": ["x"], "declared_dim": 1}
        raw["arcs"] = {"g": {"components": [{"generic": {"start": 2}}]}}
        doc = parse_document(raw)
        arc = doc.build_arc("g", 8)
        assert arc.expansions[0].coeffs[1].is_zero()
        assert not arc.expansions[0].coeffs[2].is_zero()

    def test_component_count_checked(self):
        raw = _doc()
        raw["arcs"]["main"]["components"] = ["t^2"]
        with pytest.raises(InputError):
            parse_document(raw)

    def test_arc_on_morphism_source(self):
        raw = _doc(
            variety={"variables": ["x", "y"], "declared_dim": 2, "name": "plane"},
            morphism={
                "source": {"variables": ["u", "v"], "declared_dim": 2},
                "components": ["u", "u*v"],
            },
            arcs={"beta": {"on": "source", "components": ["t", "1"]}},
        )
        doc = parse_document(raw)
        beta = doc.build_arc("beta", 8)
        assert beta.variety is doc.morphism.source

    def test_unknown_param_rejected(self):
        with pytest.raises(InputError):
            parse_document(_doc(params={"bogus": 1}))

    def test_reserved_t_variable(self):
        raw = _doc()
        raw["variety"]["variables"] = ["t", "y"]
        with pytest.raises(InputError):
            parse_document(raw)

    def test_transcendental_collision(self):
        with pytest.raises(InputError):
            parse_document(_doc(transcendentals=["x"]))

    def test_bad_field_spec(self):
        with pytest.raises(InputError):
            parse_document(_doc(field="reals"))

    def test_unknown_arc_name(self):
        doc = parse_document(_doc())
        with pytest.raises(InputError):
            doc.build_arc("missing")
