"""Ring, calculus and evaluation contracts of the exact polynomial core."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polymap.parse import format_poly, parse_poly
from polymap.poly import GaussRat, MPoly, PolyMap

V2 = ("z", "w")


def rand_gauss(rng) -> GaussRat:
    return GaussRat.of(
        Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))),
        Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))),
    )


def rand_poly(rng, arity=2, max_terms=4, max_exp=3) -> MPoly:
    terms = {}
    for _ in range(int(rng.integers(0, max_terms + 1))):
        mono = tuple(int(rng.integers(0, max_exp + 1)) for _ in range(arity))
        terms[mono] = rand_gauss(rng)
    return MPoly(arity, terms)


class TestGaussRat:
    def test_field_ops(self):
        a = GaussRat.of(Fraction(3, 2), 1)
        b = GaussRat.of(-2, Fraction(1, 3))
        assert (a * b) / b == a
        assert a + (-a) == GaussRat.ZERO
        assert a * a.inverse() == GaussRat.ONE

    def test_exact_from_float(self):
        g = GaussRat.from_value(0.5 + 0.25j)
        assert g.re == Fraction(1, 2) and g.im == Fraction(1, 4)


class TestArithmetic:
    def test_degree_sentinel(self):
        assert MPoly.zero(2).degree() == -1
        assert MPoly.one(2).degree() == 0

    def test_ring_laws_random(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            p, q, r = (rand_poly(rng) for _ in range(3))
            assert (p + q) * r == p * r + q * r
            assert p * q == q * p
            assert (p * q) * r == p * (q * r)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_ring_laws_hypothesis(self, seed):
        rng = np.random.default_rng(seed)
        p, q, r = (rand_poly(rng) for _ in range(3))
        assert (p + q) * r == p * r + q * r
        assert p - p == MPoly.zero(2)

    def test_pow_matches_repeated_product(self):
        rng = np.random.default_rng(3)
        p = rand_poly(rng)
        assert p**3 == p * p * p
        assert p**0 == MPoly.one(2)


class TestEvaluate:
    @pytest.mark.parametrize(
        "point,expected",
        [((1, 1), 2), ((0, 5), 0), ((1 + 1j, 0), 1 + 1j)],
    )
    def test_plane_map_values(self, plane_poly, point, expected):
        assert plane_poly.evaluate(point) == pytest.approx(expected)

    def test_arity_mismatch(self, plane_poly):
        with pytest.raises(ValueError):
            plane_poly.evaluate((1,))

    def test_multiplicativity_numeric(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            p, q = rand_poly(rng), rand_poly(rng)
            x = tuple(rng.standard_normal(2) * 3 + 1j * rng.standard_normal(2) * 3)
            lhs = (p * q).evaluate(x)
            rhs = p.evaluate(x) * q.evaluate(x)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))

    def test_exact_evaluation(self, plane_poly):
        val = plane_poly.evaluate_exact((1, Fraction(1, 2)))
        assert val == GaussRat.of(Fraction(3, 2))


class TestCalculus:
    def test_partials_of_plane_map(self, plane_poly):
        assert plane_poly.derivative(0) == parse_poly("1 + 2*z*w", V2)
        assert plane_poly.derivative(1) == parse_poly("z^2", V2)
        assert MPoly.const(2, 7).derivative(0).is_zero()

    def test_derivative_index_error(self, plane_poly):
        with pytest.raises(IndexError):
            plane_poly.derivative(2)

    def test_leibniz_exact(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            p, q = rand_poly(rng), rand_poly(rng)
            for var in (0, 1):
                lhs = (p * q).derivative(var)
                rhs = p.derivative(var) * q + p * q.derivative(var)
                assert lhs == rhs

    def test_leading_form_examples(self, plane_poly):
        assert plane_poly.leading_form() == parse_poly("z^2*w", V2)
        assert parse_poly("z", V2).leading_form() == parse_poly("z", V2)
        p = parse_poly("z*t^2 + w", ("z", "w", "t"))
        assert p.leading_form() == parse_poly("z*t^2", ("z", "w", "t"))

    def test_leading_form_multiplicative(self):
        rng = np.random.default_rng(9)
        for _ in range(60):
            p, q = rand_poly(rng), rand_poly(rng)
            if p.is_zero() or q.is_zero():
                continue
            assert (p * q).leading_form() == p.leading_form() * q.leading_form()

    def test_leading_form_of_zero(self):
        with pytest.raises(ValueError):
            MPoly.zero(2).leading_form()


class TestSubstitute:
    def test_untouched_variable(self):
        z = parse_poly("z", V2)
        assert z.substitute(1, parse_poly("z^2 + 1", V2)) == z

    def test_simple(self):
        zw = parse_poly("z*w", V2)
        assert zw.substitute(1, parse_poly("z", V2)) == parse_poly("z^2", V2)

    def test_cleared_linear_solve(self):
        """Substituting w -> (lam - a*z)/b into a*z + b*w, cleared by b,
        collapses to lam*b; checked exactly and through evaluation."""
        V = ("z", "a", "b", "lam")
        p = parse_poly("a*z + b*w", ("z", "w", "a", "b", "lam"))
        repl = parse_poly("lam - a*z", ("z", "w", "a", "b", "lam"))
        b = parse_poly("b", ("z", "w", "a", "b", "lam"))
        # degree of p in w is 1: cleared substitution is sum_k c_k * repl^k * b^(1-k)
        coeffs = p.coefficients_in(1)
        cleared = coeffs[0] * b + coeffs[1] * repl
        assert cleared == parse_poly("lam*b", ("z", "w", "a", "b", "lam"))
        rng = np.random.default_rng(2)
        for _ in range(10):
            z, a, bb, lam = (complex(x, y) for x, y in rng.standard_normal((4, 2)))
            w = (lam - a * z) / bb
            direct = bb * p.evaluate((z, w, a, bb, lam))
            assert abs(direct - cleared.evaluate((z, 0, a, bb, lam))) <= 1e-10 * max(1, abs(direct))

    def test_index_error(self, plane_poly):
        with pytest.raises(IndexError):
            plane_poly.substitute(5, plane_poly)


class TestPolyMap:
    def test_shape_validation(self):
        with pytest.raises(ValueError):
            PolyMap(("z",), (MPoly.one(1), MPoly.one(1)))  # m > n

    def test_complex_jacobian(self, plane_map):
        jac = plane_map.complex_jacobian()
        assert jac[0][0] == parse_poly("1 + 2*z*w", V2)
        assert jac[0][1] == parse_poly("z^2", V2)
