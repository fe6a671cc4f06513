import json
from pathlib import Path

import numpy as np
import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURE_DIR = REPO_ROOT / "fixtures"
CONFIG_DIR = REPO_ROOT / "configs"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def meijer_fixture_records() -> list[dict]:
    return json.loads((FIXTURE_DIR / "meijer_g.json").read_text())


def ks_statistic(sorted_samples: np.ndarray, cdf_at_samples: np.ndarray) -> float:
    """Two-sided Kolmogorov-Smirnov distance of an empirical sample."""
    n = len(sorted_samples)
    grid_hi = np.arange(1, n + 1) / n
    grid_lo = np.arange(0, n) / n
    return float(
        max(np.max(np.abs(cdf_at_samples - grid_hi)), np.max(np.abs(cdf_at_samples - grid_lo)))
    )


def gg_cdf_on(samples_sorted: np.ndarray, fading) -> np.ndarray:
    """CDF of the Gamma-Gamma SNR at each sample, via a dense quadrature grid."""
    from scipy.integrate import cumulative_trapezoid

    from rfso.channel import gg_pdf

    lo = max(samples_sorted[0] * 0.5, 1e-12 * fading.gbar2)
    hi = samples_sorted[-1] * 1.05
    grid = np.logspace(np.log10(lo), np.log10(hi), 6000)
    cdf = cumulative_trapezoid(gg_pdf(grid, fading), grid, initial=0.0)
    # Mass below the grid start is negligible at these shape values.
    return np.interp(samples_sorted, grid, cdf)
