import math

import pytest
from scipy.special import kv as scipy_kv

from rfso.specfun import bessel_k


def test_half_integer_closed_forms():
    # K_{1/2}(x) = sqrt(pi/2x) e^-x, with the recurrence giving 3/2 and 5/2.
    for x in [0.2, 1.0, 3.7, 20.0]:
        base = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
        assert bessel_k(0.5, x) == pytest.approx(base, rel=1e-13)
        assert bessel_k(1.5, x) == pytest.approx(base * (1.0 + 1.0 / x), rel=1e-13)
        assert bessel_k(2.5, x) == pytest.approx(base * (1.0 + 3.0 / x + 3.0 / x**2), rel=1e-13)


def test_order_symmetry():
    assert bessel_k(-2.0, 3.0) == bessel_k(2.0, 3.0)
    assert bessel_k(-7.3, 0.9) == bessel_k(7.3, 0.9)


def test_against_scipy_over_working_range():
    worst = 0.0
    for nu in [0.0, 0.25, 0.9, 1.58, 2.0, 5.5, 11.0, 19.5, 30.0]:
        for x in [0.02, 0.3, 1.0, 1.99, 2.0, 2.01, 7.0, 18.0, 50.0]:
            ref = float(scipy_kv(nu, x))
            rel = abs(bessel_k(nu, x) - ref) / ref
            worst = max(worst, rel)
    assert worst < 1e-10


def test_domain_error():
    with pytest.raises(ValueError):
        bessel_k(1.0, 0.0)
    with pytest.raises(ValueError):
        bessel_k(1.0, -2.0)
