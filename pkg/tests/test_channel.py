import math

import numpy as np
import pytest
from scipy.integrate import quad

from rfso.channel import (
    FadingParams,
    PrsParams,
    gg_pdf,
    prs_cdf,
    prs_mean,
    prs_pdf,
    rytov_to_shapes,
    sample_gamma1,
    sample_gamma2,
)
from tests.conftest import gg_cdf_on, ks_statistic

# 20-digit reference values of the shape formulas (independent
# arbitrary-precision evaluation, frozen).
RYTOV_REFERENCE = {
    0.16: (14.110873888160050859, 12.537941854873206969),
    1.0: (4.393859025392146787, 2.5636319795036949506),
    4.0: (4.3406625433269419682, 1.3088026792833824015),
    100.0: (14.110474717858739905, 1.0033399512212884628),
}


class TestRytovShapes:
    def test_reference_values(self):
        for s, (a_ref, b_ref) in RYTOV_REFERENCE.items():
            a, b = rytov_to_shapes(s)
            assert a == pytest.approx(a_ref, rel=1e-12)
            assert b == pytest.approx(b_ref, rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            rytov_to_shapes(0.0)
        with pytest.raises(ValueError):
            rytov_to_shapes(-0.5)

    def test_alpha_dominates_beta(self):
        for s in np.logspace(-2, 2, 25):
            a, b = rytov_to_shapes(float(s))
            assert a > 0.0 and b > 0.0
            assert a >= b

    def test_beta_saturates_in_strong_turbulence(self):
        betas = [rytov_to_shapes(float(s))[1] for s in [1.0, 4.0, 20.0, 100.0]]
        assert all(b2 <= b1 for b1, b2 in zip(betas, betas[1:]))
        assert betas[-1] == pytest.approx(1.0, abs=0.01)


class TestPrsParams:
    def test_invariants(self):
        with pytest.raises(ValueError):
            PrsParams(n_relays=0, rank=1, rho=0.5, gbar1=1.0)
        with pytest.raises(ValueError):
            PrsParams(n_relays=5, rank=6, rho=0.5, gbar1=1.0)
        with pytest.raises(ValueError):
            PrsParams(n_relays=5, rank=2, rho=1.5, gbar1=1.0)
        with pytest.raises(ValueError):
            PrsParams(n_relays=5, rank=2, rho=0.5, gbar1=0.0)


class TestPrsCdf:
    @pytest.mark.parametrize("n_relays", [1, 2, 5, 8])
    @pytest.mark.parametrize("rho", [0.0, 0.5, 0.9, 1.0])
    def test_valid_cdf_over_corners(self, n_relays, rho):
        xs = np.logspace(-3, 2, 60)
        for rank in range(1, n_relays + 1):
            p = PrsParams(n_relays, rank, rho, 1.0)
            vals = prs_cdf(xs, p)
            assert prs_cdf(0.0, p) == pytest.approx(0.0, abs=1e-12)
            assert np.all(np.diff(vals) >= -1e-12)
            assert np.all(vals <= 1.0 + 1e-12) and np.all(vals >= -1e-12)
            assert prs_cdf(1e4, p) == pytest.approx(1.0, abs=1e-9)

    def test_single_relay_is_exponential(self):
        p = PrsParams(1, 1, 0.7, 2.0)
        xs = np.linspace(0.0, 10.0, 20)
        assert prs_cdf(xs, p) == pytest.approx(1.0 - np.exp(-xs / 2.0), rel=1e-13)

    def test_uncorrelated_selection_is_uninformative(self):
        xs = np.linspace(0.0, 8.0, 15)
        for rank in (1, 3, 5):
            p = PrsParams(5, rank, 0.0, 1.0)
            assert prs_cdf(xs, p) == pytest.approx(1.0 - np.exp(-xs), rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            prs_cdf(-1.0, PrsParams(5, 2, 0.9, 1.0))

    def test_rank_stochastic_order_at_full_correlation(self):
        xs = np.logspace(-3, 1, 40)
        for rank in range(1, 5):
            f_lo = prs_cdf(xs, PrsParams(5, rank, 1.0, 1.0))
            f_hi = prs_cdf(xs, PrsParams(5, rank + 1, 1.0, 1.0))
            assert np.all(f_hi <= f_lo + 1e-12)


class TestPrsMean:
    def test_single_relay(self):
        assert prs_mean(PrsParams(1, 1, 0.3, 3.7)) == pytest.approx(3.7, rel=1e-14)

    @pytest.mark.parametrize(
        "params", [(5, 2, 0.9, 1.0), (5, 5, 0.5, 2.0), (8, 3, 0.0, 0.5), (2, 1, 1.0, 10.0)]
    )
    def test_matches_survival_quadrature(self, params):
        p = PrsParams(*params)
        ref, err = quad(lambda x: 1.0 - prs_cdf(x, p), 0.0, np.inf, limit=300)
        assert prs_mean(p) == pytest.approx(ref, rel=1e-8)

    def test_correlation_preserves_selection_gain(self):
        gain = prs_mean(PrsParams(5, 5, 1.0, 1.0))
        nogain = prs_mean(PrsParams(5, 5, 0.0, 1.0))
        assert gain >= nogain

    def test_pdf_matches_cdf_derivative(self):
        p = PrsParams(5, 2, 0.9, 1.0)
        for x in [0.1, 0.7, 2.3]:
            h = 1e-6
            fd = (prs_cdf(x + h, p) - prs_cdf(x - h, p)) / (2.0 * h)
            assert prs_pdf(x, p) == pytest.approx(fd, rel=1e-7)


class TestSampleGamma1:
    def test_full_correlation_single_relay_is_exponential(self):
        rng = np.random.default_rng(1)
        p = PrsParams(1, 1, 1.0, 1.0)
        s = np.sort(sample_gamma1(rng, p, size=200_000))
        ks = ks_statistic(s, 1.0 - np.exp(-s))
        assert ks < 0.004

    @pytest.mark.parametrize("rho", [0.0, 0.9])
    def test_matches_closed_form_cdf(self, rho):
        rng = np.random.default_rng(7)
        p = PrsParams(5, 2, rho, 1.0)
        s = np.sort(sample_gamma1(rng, p, size=200_000))
        ks = ks_statistic(s, prs_cdf(s, p))
        assert ks < 0.004

    def test_scalar_draw(self):
        rng = np.random.default_rng(3)
        v = sample_gamma1(rng, PrsParams(5, 2, 0.9, 10.0))
        assert isinstance(v, float) and v >= 0.0


class TestFadingParams:
    def test_scintillation_index(self):
        f = FadingParams(alpha=14.110873888160052, beta=12.537941854873207, gbar2=1.0)
        want = 1 / f.alpha + 1 / f.beta + 1 / (f.alpha * f.beta)
        assert f.sigma_si2 == pytest.approx(want, rel=1e-15)
        assert f.gbar2 == pytest.approx((f.sigma_si2 + 1.0) * f.mu2, rel=1e-15)

    def test_invariants(self):
        with pytest.raises(ValueError):
            FadingParams(alpha=0.0, beta=1.0, gbar2=1.0)
        with pytest.raises(ValueError):
            FadingParams(alpha=1.0, beta=1.0, gbar2=0.0)

    def test_from_rytov(self):
        f = FadingParams.from_rytov(0.16, 2.0)
        assert f.sigma_r2 == 0.16
        assert f.alpha == pytest.approx(14.110873888160052, rel=1e-14)


class TestGgPdf:
    @pytest.fixture(scope="class")
    def fading(self):
        return FadingParams.from_rytov(0.16, 1.0)

    def test_normalization(self, fading):
        total, err = quad(lambda t: gg_pdf(t, fading), 0.0, np.inf, limit=400)
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_mean_is_gbar2(self):
        for gbar2 in (1.0, 50.0):
            f = FadingParams.from_rytov(0.16, gbar2)
            mean, err = quad(lambda t: t * gg_pdf(t, f), 0.0, np.inf, limit=400)
            assert mean == pytest.approx(gbar2, rel=1e-7)

    def test_domain(self, fading):
        with pytest.raises(ValueError):
            gg_pdf(0.0, fading)
        with pytest.raises(ValueError):
            gg_pdf(-1.0, fading)


class TestSampleGamma2:
    def test_mean_consistency(self):
        rng = np.random.default_rng(11)
        f = FadingParams.from_rytov(0.16, 5.0)
        s = sample_gamma2(rng, f, size=400_000)
        stderr = s.std() / math.sqrt(s.size)
        assert abs(s.mean() - 5.0) < 3.0 * stderr

    def test_matches_quadrature_cdf(self):
        rng = np.random.default_rng(13)
        f = FadingParams.from_rytov(0.16, 1.0)
        s = np.sort(sample_gamma2(rng, f, size=200_000))
        ks = ks_statistic(s, gg_cdf_on(s, f))
        assert ks < 0.004

    def test_weak_scintillation_concentrates(self):
        rng = np.random.default_rng(17)
        f = FadingParams(alpha=5e4, beta=4e4, gbar2=1.0)
        s = sample_gamma2(rng, f, size=20_000)
        assert s.std() < 0.02
        assert abs(s.mean() - 1.0) < 0.01
