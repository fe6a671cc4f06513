import math

import pytest

from rfso.specfun import clngamma, digamma, gamma_upper_reg, ln_gamma_signed, trigamma


class TestLnGammaSigned:
    def test_gamma_one(self):
        lg, sign = ln_gamma_signed(1.0)
        assert lg == pytest.approx(0.0, abs=1e-15)
        assert sign == 1

    def test_gamma_half(self):
        lg, sign = ln_gamma_signed(0.5)
        assert lg == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)
        assert sign == 1

    def test_reflection_minus_three_halves(self):
        # Gamma(-3/2) = 4 sqrt(pi) / 3
        lg, sign = ln_gamma_signed(-1.5)
        assert sign == 1
        assert lg == pytest.approx(math.log(4.0 * math.sqrt(math.pi) / 3.0), rel=1e-13)

    def test_sign_alternation(self):
        assert ln_gamma_signed(-0.5)[1] == -1
        assert ln_gamma_signed(-2.5)[1] == -1
        assert ln_gamma_signed(-3.5)[1] == 1

    @pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
    def test_poles_raise(self, x):
        with pytest.raises(ValueError):
            ln_gamma_signed(x)

    def test_roundtrip_against_math_gamma(self):
        for x in [0.1, 0.9, 3.7, 12.0, 101.5, -0.3, -4.2, -9.9]:
            lg, sign = ln_gamma_signed(x)
            assert sign * math.exp(lg) == pytest.approx(math.gamma(x), rel=1e-13)


class TestGammaUpperReg:
    def test_at_zero(self):
        assert gamma_upper_reg(1.0, 0.0) == 1.0
        assert gamma_upper_reg(3.3, 0.0) == 1.0

    def test_exponential_case(self):
        assert gamma_upper_reg(1.0, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-14)

    def test_erfc_identity(self):
        # Q(1/2, x) = erfc(sqrt(x))
        assert gamma_upper_reg(0.5, 1.0) == pytest.approx(math.erfc(1.0), rel=1e-13)
        assert gamma_upper_reg(0.5, 7.3) == pytest.approx(math.erfc(math.sqrt(7.3)), rel=1e-12)

    def test_monotone_in_x(self):
        vals = [gamma_upper_reg(2.7, x) for x in [0.0, 0.5, 1.0, 2.0, 5.0, 20.0]]
        assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))
        assert all(0.0 <= v <= 1.0 for v in vals)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            gamma_upper_reg(0.0, 1.0)
        with pytest.raises(ValueError):
            gamma_upper_reg(1.0, -0.1)


class TestComplexLogGamma:
    def test_matches_real_lgamma_on_axis(self):
        for x in [0.05, 0.5, 1.5, 7.25, 170.0]:
            assert clngamma(complex(x, 0.0)).real == pytest.approx(math.lgamma(x), rel=1e-13, abs=1e-13)
            assert clngamma(complex(x, 0.0)).imag == pytest.approx(0.0, abs=1e-13)

    def test_functional_equation(self):
        # lnGamma(z+1) = lnGamma(z) + ln z, checked off the real axis
        for z in [complex(0.3, 2.0), complex(4.0, -11.0), complex(1.2, 35.0)]:
            left = clngamma(z + 1.0)
            right = clngamma(z) + complex(math.log(abs(z)), math.atan2(z.imag, z.real))
            assert abs(left - right) < 1e-12 * max(1.0, abs(left))

    def test_rejects_left_half_plane(self):
        with pytest.raises(ValueError):
            clngamma(complex(-1.0, 2.0))


class TestPolygammas:
    def test_digamma_one_is_minus_euler(self):
        assert digamma(1.0) == pytest.approx(-0.5772156649015329, rel=1e-13)

    def test_digamma_recurrence(self):
        for x in [0.2, 1.7, 9.4]:
            assert digamma(x + 1.0) == pytest.approx(digamma(x) + 1.0 / x, rel=1e-12)

    def test_trigamma_one_is_pi2_over_6(self):
        assert trigamma(1.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-12)

    def test_trigamma_recurrence(self):
        for x in [0.3, 2.9, 14.0]:
            assert trigamma(x) == pytest.approx(trigamma(x + 1.0) + 1.0 / x**2, rel=1e-12)
