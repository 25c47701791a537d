"""
Tests for exact arithmetic in Z[zeta].
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintessa.cyclo5 import (
    LAMBDA,
    LAMBDA_COFACTOR,
    ONE,
    ZETA,
    CycInt,
    add,
    divides,
    eval_at_one,
    euclid_div,
    exact_quotient,
    galois,
    gcd,
    mul,
    neg,
    norm,
    normalize,
    sub,
    valuation,
    zeta_power,
)
from quintessa.exceptions import InvalidArgument

PI1_19 = CycInt(3, 0, 4, 4)
PI2_19 = CycInt(1, 0, 4, 4)

small = st.integers(min_value=-50, max_value=50)
cyc_ints = st.builds(CycInt, small, small, small, small)
wide = st.integers(min_value=-1000, max_value=1000)
wide_cyc_ints = st.builds(CycInt, wide, wide, wide, wide)


class TestRingOperations:
    def test_zeta_times_zeta_cubed(self):
        assert ZETA * zeta_power(3) == CycInt(-1, -1, -1, -1)

    def test_cyclotomic_value_at_one(self):
        product = (1 - ZETA) * (1 - zeta_power(2)) * (1 - zeta_power(3)) * (1 - zeta_power(4))
        assert product == CycInt(5)

    def test_pi_pair_product_over_19(self):
        assert PI1_19 * PI2_19 == CycInt(19)

    def test_zeta_has_order_five(self):
        assert ZETA**5 == ONE
        assert ZETA**4 == CycInt(-1, -1, -1, -1)

    def test_negative_power_rejected(self):
        with pytest.raises(InvalidArgument):
            ZETA ** -1

    def test_integers_coerce(self):
        assert 3 + ZETA == CycInt(3, 1, 0, 0)
        assert 2 * ZETA == CycInt(0, 2, 0, 0)
        assert 1 - ZETA == LAMBDA

    @given(cyc_ints, cyc_ints, cyc_ints)
    def test_ring_laws(self, x, y, z):
        """Associativity, commutativity and distributivity hold exactly."""
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert (x + y) - y == x
        assert x + (-x) == CycInt(0)

    @given(cyc_ints, cyc_ints)
    def test_functions_match_operators(self, x, y):
        assert add(x, y) == x + y
        assert sub(x, y) == x - y
        assert neg(x) == -x
        assert mul(x, y) == x * y

    def test_functions_accept_integers(self):
        assert add(3, ZETA) == CycInt(3, 1, 0, 0)
        assert mul(19, 1) == CycInt(19)
        assert sub(1, ZETA) == LAMBDA


class TestParsing:
    def test_parse_four_coordinates(self):
        assert CycInt.parse("0,1,0,0") == ZETA
        assert CycInt.parse(" -1,2,-3,4 ") == CycInt(-1, 2, -3, 4)

    def test_parse_plain_integer(self):
        assert CycInt.parse("7") == CycInt(7)

    @pytest.mark.parametrize("text", ["", "1,2", "a,b,c,d", "1,2,3,4,5", "1.5"])
    def test_parse_rejects_malformed_text(self, text):
        with pytest.raises(InvalidArgument):
            CycInt.parse(text)

    def test_text_form(self):
        assert str(PI1_19) == "3,0,4,4"
        assert CycInt.parse(str(PI1_19)) == PI1_19


class TestGalois:
    def test_identity(self):
        assert galois(PI1_19, 1) == PI1_19

    def test_tau_swaps_pi_pair(self):
        assert galois(PI1_19, 2) == -PI2_19

    def test_tau_squared_of_zeta(self):
        assert galois(galois(ZETA, 2), 2) == CycInt(-1, -1, -1, -1)

    @pytest.mark.parametrize("i", [0, 5, -1])
    def test_index_out_of_range(self, i):
        with pytest.raises(InvalidArgument):
            galois(ZETA, i)

    @given(cyc_ints)
    def test_composition(self, x):
        for i in range(1, 5):
            for j in range(1, 5):
                assert galois(galois(x, i), j) == galois(x, (i * j) % 5)

    @given(cyc_ints, cyc_ints)
    def test_ring_homomorphism(self, x, y):
        for i in range(1, 5):
            assert galois(x * y, i) == galois(x, i) * galois(y, i)
            assert galois(x + y, i) == galois(x, i) + galois(y, i)


class TestNorm:
    def test_examples(self):
        assert norm(LAMBDA) == 5
        assert norm(PI1_19) == 361
        assert norm(7) == 2401

    @given(cyc_ints)
    def test_conjugate_product_is_rational(self, x):
        product = x * galois(x, 2) * galois(x, 3) * galois(x, 4)
        assert product.is_rational
        assert product.c0 == norm(x)
        assert (norm(x) == 0) == (not x)

    @given(cyc_ints, cyc_ints)
    def test_multiplicative(self, x, y):
        assert norm(x * y) == norm(x) * norm(y)


class TestEuclideanDivision:
    def test_five_by_lambda(self):
        _, r = euclid_div(5, LAMBDA)
        assert r == CycInt(0)

    def test_zeta_by_zeta(self):
        assert euclid_div(ZETA, ZETA) == (ONE, CycInt(0))

    def test_nineteen_by_pi1(self):
        q, r = euclid_div(19, PI1_19)
        assert r == CycInt(0)
        assert q * PI1_19 == CycInt(19)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            euclid_div(ZETA, 0)

    @settings(max_examples=10_000, deadline=None)
    @given(wide_cyc_ints, wide_cyc_ints)
    def test_remainder_norm_bound(self, a, b):
        if not b:
            return
        q, r = euclid_div(a, b)
        assert a == q * b + r
        assert abs(norm(r)) < abs(norm(b))


class TestGcd:
    def test_no_prime_over_19_at_four(self):
        assert norm(gcd(19, ZETA - 4)) == 1

    def test_degree_one_prime_over_11(self):
        g = gcd(11, ZETA - 3)
        assert norm(g) == 11
        assert divides(g, 11)
        assert divides(g, ZETA - 3)

    def test_gcd_with_itself_is_associate(self):
        g = gcd(PI1_19, PI1_19)
        assert divides(g, PI1_19) and divides(PI1_19, g)

    def test_gcd_with_zero(self):
        g = gcd(PI1_19, 0)
        assert norm(g) == norm(PI1_19)

    def test_both_zero(self):
        with pytest.raises(InvalidArgument):
            gcd(0, 0)

    @given(cyc_ints)
    def test_normalize_is_unit_invariant(self, x):
        if not x:
            return
        rep = normalize(x)
        for i in range(5):
            assert normalize(zeta_power(i) * x) == rep
            assert normalize(-zeta_power(i) * x) == rep
        if eval_at_one(x):
            assert eval_at_one(rep) in (1, 2)


class TestLambda:
    def test_eval_at_one(self):
        assert eval_at_one(LAMBDA) == 0
        assert eval_at_one(PI1_19) == 1
        assert eval_at_one(PI2_19) == 4

    def test_cofactor(self):
        assert LAMBDA * LAMBDA_COFACTOR == CycInt(5)

    def test_five_is_lambda_fourth_times_unit(self):
        unit = exact_quotient(5, LAMBDA**4)
        assert unit * LAMBDA**4 == CycInt(5)
        assert norm(unit) == 1

    def test_valuation(self):
        assert valuation(5, LAMBDA) == 4
        assert valuation(25 * ZETA, LAMBDA) == 8
        assert valuation(PI1_19, LAMBDA) == 0
        with pytest.raises(InvalidArgument):
            valuation(0, LAMBDA)

    def test_exact_quotient_requires_divisor(self):
        with pytest.raises(ArithmeticError):
            exact_quotient(7, LAMBDA)
