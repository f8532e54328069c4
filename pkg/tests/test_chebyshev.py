import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetalab.chebyshev import (
    MAX_EXACT_DEGREE,
    cheb_coefficients,
    cheb_eval_closed,
    cheb_eval_recurrence,
    cheb_lower_bound,
)


def eval_exact(g: int, x: Fraction) -> Fraction:
    """Oracle: exact rational evaluation through the integer coefficients."""
    coeffs = cheb_coefficients(g)
    total = Fraction(0)
    power = Fraction(1)
    for c in coeffs:
        total += c * power
        power *= x
    return total


class TestRecurrence:
    def test_t3_at_2(self):
        assert cheb_eval_recurrence(3, 2.0) == 26.0

    def test_value_one_at_one(self):
        assert cheb_eval_recurrence(5, 1.0) == 1.0

    def test_t5_at_1_1(self):
        exact = eval_exact(5, Fraction(11, 10))
        assert exact == Fraction(464816, 100000)
        assert abs(cheb_eval_recurrence(5, 1.1) - float(exact)) < 1e-12

    def test_matches_exact_oracle(self):
        for g in (1, 2, 3, 7, 12, 25):
            for num in (-37, -11, 0, 3, 10, 19):
                x = Fraction(num, 10)
                expected = float(eval_exact(g, x))
                got = cheb_eval_recurrence(g, float(x))
                assert got == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_degree_validation(self):
        with pytest.raises(ValueError):
            cheb_eval_recurrence(0, 1.0)


class TestClosedForm:
    def test_value_one_at_one(self):
        assert cheb_eval_closed(7, 1.0) == 1.0

    def test_t3_at_2(self):
        assert abs(cheb_eval_closed(3, 2.0) - 26.0) < 1e-9

    def test_agrees_with_recurrence_near_one(self):
        for g in range(1, 33, 2):
            for i in range(1000):
                x = 1.0 + 0.1 * i / 999
                a = cheb_eval_closed(g, x)
                b = cheb_eval_recurrence(g, x)
                assert abs(a - b) <= 1e-9 * max(1.0, abs(b)), (g, x)

    def test_rejects_below_one(self):
        with pytest.raises(ValueError):
            cheb_eval_closed(3, 0.999)


class TestCoefficients:
    @pytest.mark.parametrize(
        "g,expected",
        [(1, [0, 1]), (2, [-1, 0, 2]), (3, [0, -3, 0, 4]), (5, [0, 5, 0, -20, 0, 16])],
    )
    def test_small_degrees(self, g, expected):
        assert cheb_coefficients(g) == expected

    def test_odd_degree_parity(self):
        for g in range(1, MAX_EXACT_DEGREE + 1, 2):
            coeffs = cheb_coefficients(g)
            assert all(coeffs[i] == 0 for i in range(0, len(coeffs), 2)), g

    def test_leading_coefficient(self):
        for g in (1, 5, 20, 63):
            assert cheb_coefficients(g)[-1] == 2 ** (g - 1)

    def test_against_factorial_formula(self):
        # T_g(x) = (g/2) * sum_k (-1)^k (g-k-1)! / (k! (g-2k)!) (2x)^(g-2k)
        for g in (4, 9, 33, 63):
            coeffs = cheb_coefficients(g)
            expected = [0] * (g + 1)
            for k in range(g // 2 + 1):
                term = (
                    Fraction(g, 2)
                    * (-1) ** k
                    * Fraction(math.factorial(g - k - 1), math.factorial(k) * math.factorial(g - 2 * k))
                    * 2 ** (g - 2 * k)
                )
                assert term.denominator == 1
                expected[g - 2 * k] = int(term)
            assert coeffs == expected

    def test_degree_cap(self):
        with pytest.raises(ValueError, match="63"):
            cheb_coefficients(64)


class TestParityAndFloor:
    @given(st.floats(-5.0, 5.0), st.sampled_from(range(1, 64, 2)))
    @settings(max_examples=500, deadline=None)
    def test_odd_parity(self, x, g):
        forward = cheb_eval_recurrence(g, x)
        backward = cheb_eval_recurrence(g, -x)
        assert abs(forward + backward) <= 1e-9 * max(1.0, abs(forward))

    def test_odd_parity_exact_in_rationals(self):
        for g in range(1, 64, 2):
            x = Fraction(17, 16)
            assert eval_exact(g, x) == -eval_exact(g, -x)

    @given(st.floats(-1.0, 5.0), st.sampled_from(range(1, 64, 2)))
    @settings(max_examples=500, deadline=None)
    def test_floor_above_minus_one(self, x, g):
        assert cheb_eval_recurrence(g, x) >= -1.0 - 1e-12

    def test_floor_random_grid(self):
        import random

        rng = random.Random(99)
        for _ in range(10_000):
            g = rng.randrange(1, 64, 2)
            x = rng.uniform(-1.0, 5.0)
            assert cheb_eval_recurrence(g, x) >= -1.0 - 1e-12


class TestLowerBound:
    def test_at_one(self):
        assert cheb_lower_bound(5, 1.0) == 0.5

    def test_frozen_values(self):
        v = cheb_lower_bound(5, 1.1)
        expected = 0.5 * (1.0 + math.sqrt(0.21)) ** 5
        assert v == pytest.approx(expected, rel=1e-15)
        assert v == pytest.approx(3.2971689511167, abs=1e-10)
        assert v <= cheb_eval_closed(5, 1.1)
        w = cheb_lower_bound(3, 2.0)
        assert w == pytest.approx(0.5 * (1.0 + math.sqrt(3.0)) ** 3, rel=1e-15)
        assert w == pytest.approx(10.196, abs=5e-4)
        assert w <= 26.0

    def test_below_closed_form_on_grid(self):
        for g in range(1, 33, 2):
            for i in range(200):
                x = 1.0 + 0.1 * i / 199
                assert cheb_lower_bound(g, x) <= cheb_eval_closed(g, x) + 1e-12

    def test_requires_odd(self):
        with pytest.raises(ValueError, match="odd"):
            cheb_lower_bound(4, 1.5)

    def test_requires_x_at_least_one(self):
        with pytest.raises(ValueError):
            cheb_lower_bound(3, 0.5)
