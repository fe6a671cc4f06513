import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rfso.specfun import (
    MeijerGError,
    MeijerGOrder,
    SeriesControl,
    UnsupportedOrderError,
    bessel_k,
    gg_order,
    jensen_order,
    ln_gamma_signed,
    meijer_g,
    meijer_g_small_z,
    outage_order,
)

ALPHA, BETA = 14.110873888160052, 12.537941854873207


class TestOrderValidation:
    def test_supported_orders(self):
        MeijerGOrder(2, 0, 0, 2, (), (0.5, -0.5))
        MeijerGOrder(5, 0, 0, 5, (), (1.1, 2.2, 3.3, 4.4, 0.0))
        MeijerGOrder(5, 1, 1, 5, (0.7,), (1.1, 2.2, 3.3, 4.4, 0.7))

    @pytest.mark.parametrize("mnpq", [(1, 0, 0, 1), (2, 1, 1, 2), (4, 0, 0, 4), (5, 0, 1, 5)])
    def test_unsupported_orders_rejected(self, mnpq):
        with pytest.raises(UnsupportedOrderError):
            MeijerGOrder(*mnpq, a=(0.0,) * mnpq[2], b=(0.0,) * mnpq[3])

    def test_parameter_counts_enforced(self):
        with pytest.raises(ValueError):
            MeijerGOrder(2, 0, 0, 2, (), (0.5,))
        with pytest.raises(ValueError):
            MeijerGOrder(5, 1, 1, 5, (), (1.0, 2.0, 3.0, 4.0, 5.0))

    def test_series_control_invariants(self):
        with pytest.raises(ValueError):
            SeriesControl(rtol=0.0)
        with pytest.raises(ValueError):
            SeriesControl(pole_eps=-1.0)
        with pytest.raises(ValueError):
            SeriesControl(max_terms=0)

    def test_z_domain(self):
        order = gg_order(ALPHA, BETA)
        with pytest.raises(ValueError):
            meijer_g(order, 0.0)
        with pytest.raises(ValueError):
            meijer_g(order, -1.0)
        with pytest.raises(ValueError):
            meijer_g(order, 1.0, path="bogus")


class TestKnownValues:
    def test_bessel_identity_integer_order(self):
        # G^{2,0}_{0,2}(1 | 0.5, -0.5) = 2 K_1(2): the logarithmic case routes
        # through the exact Bessel form.
        order = MeijerGOrder(2, 0, 0, 2, (), (0.5, -0.5))
        assert meijer_g(order, 1.0) == pytest.approx(2.0 * bessel_k(1.0, 2.0), rel=1e-12)

    def test_small_z_limit_is_gamma_product(self):
        order = outage_order(ALPHA, BETA)
        want = 1.0
        for bj in order.b:
            if bj != 0.0:
                lg, sg = ln_gamma_signed(bj)
                want *= sg * math.exp(lg)
        assert meijer_g_small_z(order, 0.0) == pytest.approx(want, rel=1e-14)
        assert meijer_g(order, 1e-12) == pytest.approx(want, rel=1e-6)

    def test_small_z_zero_limits_other_signs(self):
        strictly_positive = MeijerGOrder(5, 0, 0, 5, (), (1.1, 2.2, 3.3, 4.4, 0.6))
        assert meijer_g_small_z(strictly_positive, 0.0) == 0.0
        with_negative = MeijerGOrder(5, 0, 0, 5, (), (1.1, 2.2, 3.3, 4.4, -0.6))
        with pytest.raises(ArithmeticError):
            meijer_g_small_z(with_negative, 0.0)


class TestBesselConsistency:
    @settings(max_examples=60, deadline=None)
    @given(
        z=st.floats(min_value=1e-3, max_value=10.0),
        nu=st.floats(min_value=0.05, max_value=5.0),
        half=st.floats(min_value=-0.5, max_value=0.5),
    )
    def test_identity_random(self, z, nu, half):
        # G^{2,0}_{0,2}(z | a, b) = 2 z^{(a+b)/2} K_{a-b}(2 sqrt z); keep the
        # order difference away from the perturbation band around integers.
        if abs(nu - round(nu)) < 1e-4:
            nu += 1e-3
        a, b = half + nu / 2.0, half - nu / 2.0
        order = MeijerGOrder(2, 0, 0, 2, (), (a, b))
        want = 2.0 * z ** ((a + b) / 2.0) * bessel_k(nu, 2.0 * math.sqrt(z))
        assert meijer_g(order, z) == pytest.approx(want, rel=1e-9)


class TestPathAgreement:
    def test_series_vs_contour_on_fixture_grid(self, meijer_fixture_records):
        checked = 0
        for rec in meijer_fixture_records:
            if rec.get("convention") == "pole_split":
                continue
            z = rec["inputs"]["z"]
            if not 1e-4 <= z <= 10.0:
                continue
            order = MeijerGOrder(
                *(int(v) for v in rec["inputs"]["order"]),
                a=tuple(rec["inputs"]["a"]),
                b=tuple(rec["inputs"]["b"]),
            )
            try:
                s = meijer_g(order, z, path="series")
            except MeijerGError:
                # The series may legitimately decline (cancellation); the
                # agreement property only covers the overlap region.
                continue
            c = meijer_g(order, z, path="contour")
            assert s == pytest.approx(c, rel=1e-6), f"paths disagree at {rec['inputs']}"
            checked += 1
        assert checked >= 10


class TestDegenerateParameters:
    DEGENERATE_B = (1.0, 1.5, 2.0, 2.5, 0.0)

    @pytest.mark.parametrize("z", [1e-8, 0.5, 5.0])
    def test_richardson_stability_full(self, z):
        # Halving the perturbation scale must not move the value by more
        # than 1e-6 relative (the split is extrapolated internally).
        order = MeijerGOrder(5, 0, 0, 5, (), self.DEGENERATE_B)
        v1 = meijer_g(order, z, SeriesControl(pole_eps=1e-6))
        v2 = meijer_g(order, z, SeriesControl(pole_eps=5e-7))
        assert v1 == pytest.approx(v2, rel=1e-6)

    def test_truncated_sum_is_convention_valued(self):
        # The truncated expansion keeps only leading powers, so on
        # integer-spaced b it is defined by the documented eps split: the
        # value must be deterministic and finite, but carries no eps -> 0
        # limit (the pole partners live in the dropped series terms).
        order = MeijerGOrder(5, 0, 0, 5, (), self.DEGENERATE_B)
        v1 = meijer_g_small_z(order, 1e-8)
        v2 = meijer_g_small_z(order, 1e-8)
        assert math.isfinite(v1)
        assert v1 == v2


class TestTruncatedExpansion:
    def test_matches_full_evaluator_at_small_z(self):
        order = outage_order(ALPHA, BETA)
        for z in [1e-8, 1e-6]:
            full = meijer_g(order, z)
            trunc = meijer_g_small_z(order, z)
            assert trunc == pytest.approx(full, rel=0.01)

    def test_requires_g5005(self):
        with pytest.raises(UnsupportedOrderError):
            meijer_g_small_z(gg_order(ALPHA, BETA), 1e-8)

    def test_k_terms_bounds(self):
        order = outage_order(ALPHA, BETA)
        with pytest.raises(ValueError):
            meijer_g_small_z(order, 1e-8, k_terms=0)
        # Fewer families keep the leading powers: at tiny z the single
        # smallest-exponent family already dominates.
        assert meijer_g_small_z(order, 1e-10, k_terms=1) == pytest.approx(
            meijer_g_small_z(order, 1e-10, k_terms=5), rel=1e-6
        )


def test_jensen_order_shape():
    order = jensen_order(ALPHA, BETA)
    assert order.a[0] == order.b[4]
    assert order.b[0] == pytest.approx((ALPHA - BETA) / 4.0)
