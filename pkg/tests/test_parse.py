"""Grammar, error reporting and canonical-printing round trips."""

from fractions import Fraction

import numpy as np
import pytest

from polymap.parse import ParseError, format_poly, format_poly_map, parse_poly, parse_poly_map
from polymap.poly import GaussRat, MPoly

from test_poly import rand_poly

V2 = ("z", "w")


class TestParsing:
    def test_plane_map_terms(self):
        p = parse_poly("z + z^2*w", V2)
        assert p.terms == {(1, 0): GaussRat.ONE, (2, 1): GaussRat.ONE}

    def test_zero(self):
        p = parse_poly("0", V2)
        assert p.is_zero() and p.degree() == -1

    def test_two_component_map(self):
        g = parse_poly_map("z; z*t^2 + w", ("z", "w", "t"))
        assert (g.n, g.m) == (3, 2)
        assert g.components[0] == parse_poly("z", ("z", "w", "t"))

    def test_rational_and_imaginary_literals(self):
        p = parse_poly("3/2*z + 1.25 - i*w", V2)
        assert p.terms[(1, 0)] == GaussRat.of(Fraction(3, 2))
        assert p.terms[(0, 0)] == GaussRat.of(Fraction(5, 4))
        assert p.terms[(0, 1)] == GaussRat.of(0, -1)

    def test_implicit_multiplication_and_parens(self):
        assert parse_poly("2 z (w + 1)", V2) == parse_poly("2*z*w + 2*z", V2)

    def test_unary_minus(self):
        assert parse_poly("-z + w", V2) == parse_poly("w - z", V2)

    def test_power_binds_tighter(self):
        assert parse_poly("2*z^2", V2) == parse_poly("2*(z^2)", V2)


class TestErrors:
    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse_poly("z + * w", V2)
        assert err.value.position == 4

    def test_unknown_identifier(self):
        with pytest.raises(ParseError, match="unknown identifier"):
            parse_poly("z + q", V2)

    def test_negative_exponent(self):
        with pytest.raises(ParseError, match="non-negative"):
            parse_poly("z^-1", V2)

    def test_fractional_exponent(self):
        with pytest.raises(ParseError, match="non-negative"):
            parse_poly("z^1/2 + w", V2)

    def test_reserved_imaginary_unit(self):
        with pytest.raises(ValueError, match="reserved"):
            parse_poly("i", ("i", "w"))

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_poly("z + w)", V2)


class TestRoundTrip:
    def test_parse_print_identity_random(self):
        rng = np.random.default_rng(23)
        for _ in range(300):
            p = rand_poly(rng, arity=2, max_terms=5, max_exp=4)
            assert parse_poly(format_poly(p, V2), V2) == p

    def test_canonical_fixed_point(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            p = rand_poly(rng)
            text = format_poly(p, V2)
            assert format_poly(parse_poly(text, V2), V2) == text

    def test_map_round_trip(self, three_var_map):
        text = format_poly_map(three_var_map)
        again = parse_poly_map(text, three_var_map.variables)
        assert again.components == three_var_map.components

    def test_term_order_is_graded_lex(self):
        p = parse_poly("w + z + z*w + z^2", V2)
        assert format_poly(p, V2) == "z^2 + z*w + z + w"
