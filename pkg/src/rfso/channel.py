"""Fading models for the two hops.

First hop: correlated Rayleigh SNR seen through partial relay selection
(rank-m out of N, selection CSI decorrelated from transmission CSI by a
power correlation rho).  Second hop: Gamma-Gamma turbulence expressed
directly in SNR.  Every distribution is available both in closed form and
as a seeded sampler, and the two are tested against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .specfun import bessel_k

__all__ = [
    "PrsParams",
    "FadingParams",
    "rytov_to_shapes",
    "selection_terms",
    "prs_cdf",
    "prs_pdf",
    "prs_mean",
    "sample_gamma1",
    "gg_pdf",
    "gg_cdf",
    "sample_gamma2",
]


@dataclass(frozen=True)
class PrsParams:
    """Partial relay selection over correlated Rayleigh first-hop links.

    n_relays: number of parallel relays N.
    rank: selection rank m, 1 = worst ... N = best available.
    rho: power correlation between selection-time and transmission-time SNR.
    gbar1: average per-branch first-hop SNR (linear).
    """

    n_relays: int
    rank: int
    rho: float
    gbar1: float

    def __post_init__(self) -> None:
        if self.n_relays < 1:
            raise ValueError(f"PrsParams: need at least one relay, got {self.n_relays}")
        if not 1 <= self.rank <= self.n_relays:
            raise ValueError(
                f"PrsParams: rank must be in 1..{self.n_relays}, got {self.rank}"
            )
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"PrsParams: rho must be in [0, 1], got {self.rho}")
        if not self.gbar1 > 0.0:
            raise ValueError(f"PrsParams: gbar1 must be > 0, got {self.gbar1}")


@dataclass(frozen=True)
class FadingParams:
    """Gamma-Gamma turbulence on the optical hop, in SNR terms.

    alpha, beta: large- and small-scale shape parameters.
    gbar2: average second-hop SNR (linear), gbar2 = (sigma_si2 + 1) * mu2.
    sigma_r2: Rytov variance the shapes came from, if applicable.
    """

    alpha: float
    beta: float
    gbar2: float
    sigma_r2: float | None = None
    sigma_si2: float = field(init=False)
    mu2: float = field(init=False)

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0 and self.beta > 0.0):
            raise ValueError(
                f"FadingParams: shapes must be > 0, got alpha={self.alpha}, beta={self.beta}"
            )
        if not self.gbar2 > 0.0:
            raise ValueError(f"FadingParams: gbar2 must be > 0, got {self.gbar2}")
        si2 = 1.0 / self.alpha + 1.0 / self.beta + 1.0 / (self.alpha * self.beta)
        object.__setattr__(self, "sigma_si2", si2)
        object.__setattr__(self, "mu2", self.gbar2 / (si2 + 1.0))

    @classmethod
    def from_rytov(cls, sigma_r2: float, gbar2: float) -> "FadingParams":
        alpha, beta = rytov_to_shapes(sigma_r2)
        return cls(alpha=alpha, beta=beta, gbar2=gbar2, sigma_r2=sigma_r2)


def rytov_to_shapes(sigma_r2: float) -> tuple[float, float]:
    """Gamma-Gamma shapes (alpha, beta) from the Rytov variance."""
    if sigma_r2 < 0.0:
        raise ValueError(f"rytov_to_shapes: Rytov variance must be >= 0, got {sigma_r2}")
    if sigma_r2 == 0.0:
        raise ValueError("rytov_to_shapes: shapes diverge at zero Rytov variance")
    s65 = sigma_r2 ** 1.2  # sigma_R^{12/5}
    alpha = 1.0 / math.expm1(0.49 * sigma_r2 / (1.0 + 1.11 * s65) ** (7.0 / 6.0))
    beta = 1.0 / math.expm1(0.51 * sigma_r2 / (1.0 + 0.69 * s65) ** (5.0 / 6.0))
    return alpha, beta


def selection_terms(p: PrsParams) -> tuple[float, list[tuple[float, float, float]]]:
    """Common mixture decomposition of the selected-SNR law.

    Returns (prefactor, terms) with terms = [(K_n, c_n, A_n)] such that the
    CDF is 1 - prefactor * sum_n A_n * exp(-K_n x / (c_n gbar1)).
    """
    n_rel, m = p.n_relays, p.rank
    pref = m * math.comb(n_rel, m)
    terms = []
    for n in range(m):
        k_n = float(n_rel - m + n + 1)
        c_n = (n_rel - m + n) * (1.0 - p.rho) + 1.0
        a_n = math.comb(m - 1, n) * ((-1.0) ** n) / k_n
        terms.append((k_n, c_n, a_n))
    return float(pref), terms


def prs_cdf(x, p: PrsParams):
    """CDF of the transmission-time SNR of the rank-m selected relay."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("prs_cdf: require x >= 0")
    pref, terms = selection_terms(p)
    acc = np.zeros_like(x)
    for k_n, c_n, a_n in terms:
        acc += a_n * np.exp(-k_n * x / (c_n * p.gbar1))
    out = 1.0 - pref * acc
    return out if out.ndim else float(out)


def prs_pdf(x, p: PrsParams):
    """Density matching prs_cdf."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("prs_pdf: require x >= 0")
    pref, terms = selection_terms(p)
    acc = np.zeros_like(x)
    for k_n, c_n, a_n in terms:
        rate = k_n / (c_n * p.gbar1)
        acc += a_n * rate * np.exp(-rate * x)
    out = pref * acc
    return out if out.ndim else float(out)


def prs_mean(p: PrsParams) -> float:
    """Mean selected SNR: term-wise integral of the survival function."""
    pref, terms = selection_terms(p)
    return pref * sum(a_n * c_n * p.gbar1 / k_n for k_n, c_n, a_n in terms)


def sample_gamma1(rng: np.random.Generator, p: PrsParams, size: int | None = None):
    """Draw transmission-time SNR(s) of the selected relay.

    Selection ranks the instantaneous powers of N i.i.d. complex-Gaussian
    gains; the transmission-time gain then mixes the selected gain with a
    fresh one using amplitude correlation sqrt(rho), which realizes power
    correlation rho.  Ties are broken by branch index (stable sort).
    """
    n_draws = 1 if size is None else int(size)
    n_rel = p.n_relays
    re = rng.standard_normal((n_draws, n_rel))
    im = rng.standard_normal((n_draws, n_rel))
    g = (re + 1j * im) / math.sqrt(2.0)
    power = g.real**2 + g.imag**2
    order = np.argsort(power, axis=1, kind="stable")
    sel = np.take_along_axis(g, order[:, p.rank - 1 : p.rank], axis=1)[:, 0]
    wre = rng.standard_normal(n_draws)
    wim = rng.standard_normal(n_draws)
    w = (wre + 1j * wim) / math.sqrt(2.0)
    # Gain correlation sqrt(rho) makes the squared-envelope correlation rho.
    rho_h = math.sqrt(p.rho)
    h = rho_h * sel + math.sqrt(1.0 - rho_h * rho_h) * w
    out = p.gbar1 * (h.real**2 + h.imag**2)
    return float(out[0]) if size is None else out


def gg_pdf(x, f: FadingParams):
    """Density of the Gamma-Gamma second-hop SNR (Bessel-K form).

    The scale inside the density is the electrical SNR mu2, so the SNR mean
    comes out as gbar2 = (sigma_si2 + 1) * mu2.
    """
    scalar = np.isscalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0.0):
        raise ValueError("gg_pdf: require x > 0")
    a, b = f.alpha, f.beta
    ln_pref = (
        0.5 * (a + b) * math.log(a * b)
        - math.lgamma(a)
        - math.lgamma(b)
        - 0.25 * (a + b) * math.log(f.mu2)
    )
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        kval = bessel_k(a - b, 2.0 * math.sqrt(a * b) * (xi / f.mu2) ** 0.25)
        if kval <= 0.0:
            out[i] = 0.0
            continue
        out[i] = math.exp(
            ln_pref + (0.25 * (a + b) - 1.0) * math.log(xi) + math.log(kval)
        )
    return float(out[0]) if scalar else out


def gg_cdf(x: float, f: FadingParams) -> float:
    """CDF of the Gamma-Gamma SNR by adaptive quadrature of gg_pdf."""
    from scipy.integrate import quad

    if x <= 0.0:
        return 0.0
    val, _ = quad(lambda t: gg_pdf(t, f), 0.0, x, limit=200)
    return min(max(val, 0.0), 1.0)


def sample_gamma2(rng: np.random.Generator, f: FadingParams, size: int | None = None):
    """Draw second-hop SNR(s): product of two unit-mean Gamma variates,
    squared and normalized so the SNR mean is gbar2."""
    n_draws = 1 if size is None else int(size)
    xx = rng.gamma(shape=f.alpha, scale=1.0 / f.alpha, size=n_draws)
    yy = rng.gamma(shape=f.beta, scale=1.0 / f.beta, size=n_draws)
    irr = xx * yy
    second_moment = (1.0 + 1.0 / f.alpha) * (1.0 + 1.0 / f.beta)
    out = f.gbar2 * irr * irr / second_moment
    return float(out[0]) if size is None else out
