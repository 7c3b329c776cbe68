"""Exact power series arithmetic: examples and algebraic properties."""

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critplanar.series import (
    FixedPointDivergence,
    PowerSeries,
    log_inv_one_minus,
    poly_residual,
    solve_fixed_point,
)


def series(*coeffs, order=None):
    return PowerSeries([F(c) if not isinstance(c, F) else c for c in coeffs], order=order)


small_fraction = st.fractions(min_value=-5, max_value=5, max_denominator=30)


def series_strategy(order=8):
    return st.lists(small_fraction, min_size=0, max_size=order + 1).map(
        lambda cs: PowerSeries(cs[: order + 1], order)
    )


class TestAdd:
    def test_cancellation(self):
        a = series(1, 1, order=4)
        b = series(1, -1, order=4)
        assert a + b == series(2, order=4)

    def test_identity(self):
        z2 = PowerSeries.monomial(2, 5)
        assert z2 + PowerSeries.zero(5) == z2

    def test_exact_rational(self):
        a = PowerSeries.monomial(2, 3, F(5, 24))
        b = PowerSeries.monomial(2, 3, F(1, 24))
        assert (a + b)[2] == F(1, 4)

    def test_order_mismatch_rejected(self):
        with pytest.raises(ValueError, match="mismatched truncation"):
            PowerSeries.one(3) + PowerSeries.one(4)


class TestMul:
    def test_difference_of_squares(self):
        one_plus = series(1, 1, order=3)
        one_minus = series(1, -1, order=3)
        assert one_plus * one_minus == series(1, 0, -1, order=3)

    def test_rooted_tree_square(self):
        # T = sum n^(n-1) z^n / n!; (T^2) through degree 4 recomputed by
        # direct convolution of those coefficients.
        t = PowerSeries([F(0)] + [F(n ** (n - 1), math.factorial(n)) for n in (1, 2, 3, 4)], 4)
        expected = [F(0)] * 5
        for i in range(1, 5):
            for j in range(1, 5 - i):
                expected[i + j] += t[i] * t[j]
        assert t * t == PowerSeries(expected, 4)
        assert (t * t)[4] == F(4)  # = 2*(1)*(3/2) + 1*1

    def test_truncation_drops_top(self):
        z = PowerSeries.monomial(1, 3)
        zN = PowerSeries.monomial(3, 3)
        assert zN * z == PowerSeries.zero(3)


class TestDiv:
    def test_geometric(self):
        one = PowerSeries.one(6)
        one_minus_z = series(1, -1, order=6)
        assert one / one_minus_z == PowerSeries([1] * 7, 6)

    def test_exact_quotient(self):
        num = series(1, 0, -1, order=4)
        den = series(1, -1, order=4)
        assert num / den == series(1, 1, order=4)

    def test_matches_fixed_point(self):
        # S = C^2 - C*S has the closed form S = C^2/(1+C).
        from critplanar.enumeration import solve_planar_system

        sol = solve_planar_system(12)
        c = sol.C
        one = PowerSeries.one(12)
        assert (c * c) / (one + c) == sol.S

    def test_zero_constant_rejected(self):
        with pytest.raises(ValueError, match="constant term"):
            PowerSeries.one(3) / PowerSeries.monomial(1, 3)


class TestExpLog:
    def test_exp_zero(self):
        assert PowerSeries.zero(5).exp() == PowerSeries.one(5)

    def test_exp_z(self):
        e = PowerSeries.monomial(1, 6).exp()
        assert all(e[n] == F(1, math.factorial(n)) for n in range(7))

    def test_exp_requires_zero_constant(self):
        with pytest.raises(ValueError):
            PowerSeries.one(3).exp()

    def test_log_inv_one_minus_basics(self):
        assert log_inv_one_minus(PowerSeries.zero(5)) == PowerSeries.zero(5)
        lz = log_inv_one_minus(PowerSeries.monomial(1, 6))
        assert all(lz[n] == F(1, n) for n in range(1, 7))

    def test_exp_of_connected_gf(self):
        from critplanar.enumeration import solve_planar_system

        sol = solve_planar_system(8)
        g = sol.G1.exp()
        assert g[0] == 1
        assert g[2] == F(5, 24)
        assert g[4] == F(385, 1152)


class TestSqrt:
    def test_square_roundtrip(self):
        b = series(1, 2, 3, -1, order=8)
        s = b.sqrt()
        assert s * s == b

    def test_requires_unit_constant(self):
        with pytest.raises(ValueError):
            series(4, 1, order=3).sqrt()


class TestFixedPoint:
    def test_rooted_trees(self):
        z = PowerSeries.monomial(1, 5)
        (t,) = solve_fixed_point([lambda s: z * s[0].exp()], 5)
        assert t == PowerSeries([0, 1, 1, F(3, 2), F(8, 3), F(125, 24)], 5)

    def test_direct_assignment(self):
        z = PowerSeries.monomial(1, 4)
        (x,) = solve_fixed_point([lambda s: z], 4)
        assert x == z

    def test_planar_system_first_terms(self):
        from critplanar.enumeration import solve_planar_system

        c = solve_planar_system(8).C
        assert [c[k] for k in (2, 4, 6, 8)] == [F(1), F(25, 8), F(59, 4), F(11339, 128)]

    def test_divergence_detected(self):
        one = PowerSeries.one(4)
        with pytest.raises(FixedPointDivergence):
            solve_fixed_point([lambda s: s[0] + one], 4)


class TestPolyResidual:
    def test_linear(self):
        z = PowerSeries.monomial(1, 5)
        assert poly_residual([-z, PowerSeries.one(5)], z).is_zero()

    def test_quadratic(self):
        one_plus_z = series(1, 1, order=6)
        poly = [-(one_plus_z * one_plus_z), PowerSeries.zero(6), PowerSeries.one(6)]
        assert poly_residual(poly, one_plus_z).is_zero()

    def test_nonic_at_solved_c(self):
        from critplanar.enumeration import nonic_residual, solve_planar_system

        assert nonic_residual(solve_planar_system(12).C).is_zero()


class TestAlgebraicProperties:
    @settings(max_examples=60, deadline=None)
    @given(series_strategy(), series_strategy(), series_strategy())
    def test_associativity_and_distributivity(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)

    @settings(max_examples=60, deadline=None)
    @given(series_strategy(), series_strategy())
    def test_div_contract(self, a, b):
        if b.constant_term() == 0:
            b = b + 1
        assert (a / b) * b == a

    @settings(max_examples=40, deadline=None)
    @given(series_strategy())
    def test_exp_log_roundtrip(self, a):
        a = a - a.constant_term()  # force zero constant term
        one = PowerSeries.one(a.order)
        assert log_inv_one_minus(one - (-a).exp()) == a


class TestTreeSeriesIdentities:
    def test_cayley(self):
        from critplanar.enumeration import tree_series

        t = tree_series(12).rooted
        assert all(t[n] == F(n ** (n - 1), math.factorial(n)) for n in range(1, 13))

    def test_unrooted(self):
        from critplanar.enumeration import tree_series

        u = tree_series(12).unrooted
        assert all(u[n] == F(n) ** (n - 2) / math.factorial(n) for n in range(1, 13))

    def test_unicyclic_forest_closed_form(self):
        from critplanar.enumeration import tree_series

        ts = tree_series(14)
        t = ts.rooted
        one = PowerSeries.one(14)
        closed = (-t / 2 - t * t / 4).exp() / (one - t).sqrt()
        assert ts.unicyclic_forests == closed
