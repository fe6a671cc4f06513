"""Hardware impairment models.

Relay side: memoryless high-power-amplifier nonlinearities (soft envelope
limiter and Saleh-model TWTA) reduced to Bussgang form -- a linear scale
delta plus uncorrelated distortion of power sigma_d2 for a complex-Gaussian
input of power sigma2.  Destination side: IQ imbalance expressed through
the image-leakage ratio.  The kappa ratio ties both into the end-to-end
SNDR denominator.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from scipy.integrate import quad

__all__ = [
    "HpaModel",
    "BussgangCoeffs",
    "IqImbalance",
    "RelayGain",
    "amam_ampm",
    "bussgang",
    "sel_delta_closed_form",
    "iq_coeffs",
    "kappa",
]

_QUAD_KW = dict(epsabs=1e-13, epsrel=1e-12, limit=200)


@dataclass(frozen=True)
class HpaModel:
    """Amplifier characteristic operating at a given input back-off.

    kind: "ideal", "sel" (soft envelope limiter) or "twta" (Saleh).
    ibo: input back-off A_sat^2 / sigma2, linear scale.
    sigma2: mean signal power at the amplifier input.
    phi0: peak TWTA phase rotation (radians).
    """

    kind: str
    ibo: float = math.inf
    sigma2: float = 1.0
    phi0: float = math.pi / 3.0

    def __post_init__(self) -> None:
        if self.kind not in ("ideal", "sel", "twta"):
            raise ValueError(f"HpaModel: unknown kind {self.kind!r}")
        if self.kind != "ideal" and not self.ibo > 0.0:
            raise ValueError(f"HpaModel: ibo must be > 0, got {self.ibo}")
        if not self.sigma2 > 0.0:
            raise ValueError(f"HpaModel: sigma2 must be > 0, got {self.sigma2}")

    @property
    def a_sat(self) -> float:
        """Saturation amplitude; IBO * sigma2 = A_sat^2."""
        if self.kind == "ideal":
            return math.inf
        return math.sqrt(self.ibo * self.sigma2)

    @classmethod
    def from_ibo_db(
        cls, kind: str, ibo_db: float, sigma2: float = 1.0, phi0: float = math.pi / 3.0
    ) -> "HpaModel":
        return cls(kind=kind, ibo=10.0 ** (ibo_db / 10.0), sigma2=sigma2, phi0=phi0)


@dataclass(frozen=True)
class BussgangCoeffs:
    """Linearized amplifier: output = delta * input + distortion.

    delta: magnitude of the complex Bussgang scale.
    sigma_d2: distortion power.
    xi: normalized total output power, delta^2 + sigma_d2 / sigma2.
    """

    delta: float
    sigma_d2: float
    xi: float

    def __post_init__(self) -> None:
        if not 0.0 < self.delta <= 1.0 + 1e-12:
            raise ValueError(f"BussgangCoeffs: delta must be in (0, 1], got {self.delta}")
        if self.sigma_d2 < 0.0:
            raise ValueError(f"BussgangCoeffs: sigma_d2 must be >= 0, got {self.sigma_d2}")


@dataclass(frozen=True)
class IqImbalance:
    """Receive IQ imbalance (magnitude zeta, phase theta radians)."""

    zeta: float
    theta: float = 0.0
    omega1: complex = field(init=False)
    omega2: complex = field(init=False)
    ilr: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.zeta > 0.0:
            raise ValueError(f"IqImbalance: zeta must be > 0, got {self.zeta}")
        w1 = (1.0 + self.zeta * cmath.exp(-1j * self.theta)) / 2.0
        w2 = (1.0 - self.zeta * cmath.exp(1j * self.theta)) / 2.0
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega2", w2)
        object.__setattr__(self, "ilr", abs(w2 / w1) ** 2)

    @classmethod
    def ideal(cls) -> "IqImbalance":
        return cls(zeta=1.0, theta=0.0)

    @classmethod
    def from_ilr(cls, ilr: float) -> "IqImbalance":
        """Magnitude-only imbalance (theta = 0) hitting a target leakage ratio."""
        if not 0.0 <= ilr < 1.0:
            raise ValueError(f"IqImbalance.from_ilr: need 0 <= ilr < 1, got {ilr}")
        if ilr == 0.0:
            return cls.ideal()
        r = math.sqrt(ilr)
        return cls(zeta=(1.0 + r) / (1.0 - r), theta=0.0)

    @classmethod
    def from_ilr_db(cls, ilr_db: float) -> "IqImbalance":
        return cls.from_ilr(10.0 ** (ilr_db / 10.0))


@dataclass(frozen=True)
class RelayGain:
    """Fixed relay amplification G with G^2 = sigma2 / (E|h|^2 P1 + sigma0_2)."""

    gain: float

    def __post_init__(self) -> None:
        if not self.gain > 0.0:
            raise ValueError(f"RelayGain: gain must be > 0, got {self.gain}")

    @classmethod
    def from_link(
        cls, p1: float, mean_h2: float, sigma0_2: float, sigma2: float
    ) -> "RelayGain":
        return cls(gain=math.sqrt(sigma2 / (mean_h2 * p1 + sigma0_2)))

    @classmethod
    def from_mean_snr(cls, gbar1: float, sigma0_2: float, sigma2: float) -> "RelayGain":
        """Same, expressed through the mean input SNR: E|h|^2 P1 = gbar1 sigma0_2."""
        return cls(gain=math.sqrt(sigma2 / (sigma0_2 * (gbar1 + 1.0))))


def amam_ampm(model: HpaModel, r: float) -> tuple[float, float]:
    """(output amplitude, added phase) of the amplifier at input envelope r."""
    if r < 0.0:
        raise ValueError(f"amam_ampm: envelope must be >= 0, got {r}")
    if model.kind == "ideal":
        return r, 0.0
    a2 = model.a_sat * model.a_sat
    if model.kind == "sel":
        return min(r, model.a_sat), 0.0
    den = a2 + r * r
    return a2 * r / den, model.phi0 * r * r / den


def sel_delta_closed_form(ibo: float) -> float:
    """Bussgang scale of the soft limiter for Rayleigh input."""
    return 1.0 - math.exp(-ibo) + 0.5 * math.sqrt(math.pi * ibo) * math.erfc(math.sqrt(ibo))


def bussgang(model: HpaModel) -> BussgangCoeffs:
    """Bussgang coefficients of the amplifier for complex-Gaussian input.

    delta = |E[r A(r) e^{j P(r)}]| / E[r^2] and sigma_d2 = E[A(r)^2] - delta^2
    sigma2 with r Rayleigh, E[r^2] = sigma2.  The soft limiter has closed
    forms; the TWTA moments are integrated numerically (u = r^2 / sigma2).
    """
    if model.kind == "ideal":
        return BussgangCoeffs(delta=1.0, sigma_d2=0.0, xi=1.0)
    sig2 = model.sigma2
    if model.kind == "sel":
        delta = sel_delta_closed_form(model.ibo)
        out_power = sig2 * -math.expm1(-model.ibo)  # E[min(r, A)^2]
        sigma_d2 = max(out_power - delta * delta * sig2, 0.0)
        return BussgangCoeffs(delta=delta, sigma_d2=sigma_d2, xi=out_power / sig2)
    ibo, phi0 = model.ibo, model.phi0

    def gain_re(u: float) -> float:
        c = u / (ibo + u)
        return ibo * c * math.cos(phi0 * c) * math.exp(-u)

    def gain_im(u: float) -> float:
        c = u / (ibo + u)
        return ibo * c * math.sin(phi0 * c) * math.exp(-u)

    def out_sq(u: float) -> float:
        c = u / (ibo + u)
        return ibo * ibo * c * c / u * math.exp(-u) if u > 0.0 else 0.0

    dre, _ = quad(gain_re, 0.0, math.inf, **_QUAD_KW)
    dim, _ = quad(gain_im, 0.0, math.inf, **_QUAD_KW)
    delta = math.hypot(dre, dim)
    e_a2, _ = quad(out_sq, 0.0, math.inf, **_QUAD_KW)
    sigma_d2 = max(sig2 * (e_a2 - delta * delta), 0.0)
    return BussgangCoeffs(delta=delta, sigma_d2=sigma_d2, xi=e_a2)


def iq_coeffs(zeta: float, theta: float = 0.0) -> IqImbalance:
    """Mixing coefficients and leakage ratio for a (zeta, theta) imbalance."""
    return IqImbalance(zeta=zeta, theta=theta)


def kappa(coeffs: BussgangCoeffs, relay_gain: RelayGain, sigma0_2: float) -> float:
    """Received-SNR to transmitted-SNDR ratio at the relay, >= 1."""
    if not sigma0_2 > 0.0:
        raise ValueError(f"kappa: sigma0_2 must be > 0, got {sigma0_2}")
    g2 = relay_gain.gain * relay_gain.gain
    return 1.0 + coeffs.sigma_d2 / (coeffs.delta * coeffs.delta * g2 * sigma0_2)
