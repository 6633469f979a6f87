"""Resultants, discriminants, gcd machinery and the root finder."""

import numpy as np
import pytest

from polymap.elim import (
    ElimError,
    UniPoly,
    cluster_values,
    content_in,
    discriminant,
    exact_divide,
    gcd_mpoly,
    resultant,
    roots,
    squarefree_part,
)
from polymap.parse import format_poly, parse_poly
from polymap.poly import MPoly

from test_poly import rand_poly

V2 = ("z", "w")
V6 = ("z", "w", "a", "b", "t", "lam")


def norm(p: MPoly) -> MPoly:
    return p.monic_normalized()


class TestResultant:
    def test_linear_pair_hand_oracle(self):
        """Res_w of (z + z^2*w - t, a*z + b*w - lam) equals the 2x2
        coefficient determinant, expanded independently here."""
        f = parse_poly("z + z^2*w - t", V6)
        g = parse_poly("a*z + b*w - lam", V6)
        res = resultant(f, g, 1)
        det = parse_poly("z^2", V6) * parse_poly("a*z - lam", V6) - parse_poly("b", V6) * parse_poly("z - t", V6)
        assert res == det or res == -det
        # the classical cubic in z with parameters (a, b, t, lam)
        cubic = parse_poly("a*z^3 - lam*z^2 - b*z + b*t", V6)
        assert res == cubic or res == -cubic

    def test_constant_difference(self):
        f = parse_poly("w - z", V2)
        g = parse_poly("w - 2", V2)
        res = resultant(f, g, 1)
        assert res == parse_poly("z - 2", V2) or res == parse_poly("2 - z", V2)

    def test_degree_zero_rejected(self):
        with pytest.raises(ElimError):
            resultant(parse_poly("z", V2), parse_poly("w", V2), 0)

    def test_vanishing_iff_common_root(self):
        """At random specialisations of z, the resultant in w vanishes
        exactly when the two specialised polynomials share a clustered root."""
        rng = np.random.default_rng(31)
        pairs = 0
        while pairs < 4:
            f = rand_poly(rng, max_terms=4, max_exp=3)
            g = rand_poly(rng, max_terms=4, max_exp=3)
            if f.degree_in(1) < 1 or g.degree_in(1) < 1:
                continue
            pairs += 1
            res = resultant(f, g, 1)
            for _ in range(20):
                z0 = complex(rng.standard_normal(), rng.standard_normal())
                rv = res.evaluate((z0, 0))
                fu = UniPoly.from_complex([c.evaluate((z0, 0)) for c in f.coefficients_in(1)]).trimmed(1e-9)
                gu = UniPoly.from_complex([c.evaluate((z0, 0)) for c in g.coefficients_in(1)]).trimmed(1e-9)
                if fu.degree < 1 or gu.degree < 1:
                    continue
                rf, rg = roots(fu).values(), roots(gu).values()
                sep = min(abs(x - y) for x in rf for y in rg)
                shared = sep < 1e-6 * max(1.0, max(abs(x) for x in rf))
                scale = max(1.0, max(abs(c.to_complex()) for c in res.terms.values()))
                assert shared == (abs(rv) < 1e-6 * scale * max(1.0, abs(z0)) ** max(res.degree(), 0))


class TestDiscriminant:
    def test_parabola(self):
        d = discriminant(parse_poly("w^2 - z", V2), 1)
        assert norm(d) == norm(parse_poly("4*z", V2))

    def test_linear_is_unit(self):
        d = discriminant(parse_poly("z*w - 1", V2), 1)
        assert d == MPoly.one(2)

    def test_repeated_root_collapses(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            r, s = int(rng.integers(-4, 5)), int(rng.integers(-4, 5))
            if r == s:
                continue
            w = parse_poly("w", V2)
            f = (w - MPoly.const(2, r)) ** 2 * (w - MPoly.const(2, s))
            assert discriminant(f, 1).is_zero()
            squarefree = (w - MPoly.const(2, r)) * (w - MPoly.const(2, s))
            assert not discriminant(squarefree, 1).is_zero()


class TestSquarefreeAndContent:
    def test_planted_square(self):
        f = parse_poly("(w - z)^2*(w + 1)", V2)
        assert norm(squarefree_part(f, 1)) == norm(parse_poly("(w - z)*(w + 1)", V2))

    def test_already_squarefree(self):
        f = parse_poly("w^2 - z", V2)
        assert norm(squarefree_part(f, 1)) == norm(f)

    def test_random_planted_square_removed(self):
        rng = np.random.default_rng(17)
        done = 0
        while done < 12:
            a = rand_poly(rng, max_terms=2, max_exp=2)
            b = rand_poly(rng, max_terms=2, max_exp=2)
            if a.degree_in(1) < 1 or b.degree_in(1) < 1:
                continue
            prod = a * a * b
            if prod.degree_in(1) < 1:
                continue
            done += 1
            sf = squarefree_part(prod, 1)
            gcd_ab = gcd_mpoly(a, b)
            expected = norm(exact_divide(a * b, gcd_ab))
            assert norm(sf) == expected

    @pytest.mark.parametrize(
        "text,expected",
        [("z + z^2*w", "z"), ("w^2 + z*w", "1"), ("z*(w^2 + 1)", "z")],
    )
    def test_content_examples(self, text, expected):
        c = content_in(parse_poly(text, V2), 1)
        assert c == parse_poly(expected, V2)


class TestRoots:
    def test_cube_roots_of_unity(self):
        rs = roots(UniPoly.from_complex([-1, 0, 0, 1]))
        assert rs.distinct_count == 3
        for r, mult in rs.roots:
            assert mult == 1
            assert abs(r**3 - 1) < 1e-10

    def test_parametrised_cubic_vieta(self):
        # the z-eliminant of the plane map against z + w at (a,b,t,lam)=(1,1,0,1)
        rs = roots(UniPoly.from_complex([0, 1, 1, -1]))
        assert rs.distinct_count == 3
        assert abs(sum(rs.values()) - 1.0) < 1e-10  # sum of roots = lam/a

    def test_double_root_cluster(self):
        rs = roots(UniPoly.from_complex([4, -4, 1]))
        assert rs.distinct_count == 1
        (r, m), = rs.roots
        assert m == 2 and abs(r - 2) < 1e-6

    def test_degree_zero_rejected(self):
        with pytest.raises(ElimError):
            roots(UniPoly.from_complex([3.0]))

    def test_vieta_random_sweep(self):
        rng = np.random.default_rng(43)
        for _ in range(150)            :
            deg = int(rng.integers(1, 9))
            coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
            coeffs[-1] += 3.0  # keep the leading coefficient well away from zero
            rs = roots(UniPoly.from_complex(list(coeffs)))
            assert rs.total_multiplicity == deg
            vals = rs.all_roots()
            e1 = sum(vals)
            target = -coeffs[-2] / coeffs[-1]
            assert abs(e1 - target) <= 1e-8 * max(1.0, abs(target))

    def test_cluster_values_merges(self):
        reps = cluster_values([1.0, 1.0 + 1e-9, 5.0, 5.0 + 2e-7j])
        assert [m for _, m in reps] == [2, 2]


class TestExactDivide:
    def test_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            a, b = rand_poly(rng), rand_poly(rng)
            if b.is_zero():
                continue
            assert exact_divide(a * b, b) == a

    def test_inexact_rejected(self):
        with pytest.raises(ElimError):
            exact_divide(parse_poly("z + 1", V2), parse_poly("z^2", V2))
