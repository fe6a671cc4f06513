"""Performance analysis of mixed RF/FSO amplify-and-forward relaying with
partial relay selection under outdated CSI, nonlinear amplification at the
relays and IQ imbalance at the destination.

Closed-form outage, diversity, capacity bounds and BER live in
:mod:`rfso.analytics`; their Monte Carlo counterparts in
:mod:`rfso.simulate`; channel laws and samplers in :mod:`rfso.channel`;
hardware models in :mod:`rfso.impairments`; and the special-function core
in :mod:`rfso.specfun`.
"""

from .analytics import (
    BerParams,
    CapacityConvention,
    OutageQuery,
    SystemConfig,
    ber,
    capacity_approx,
    capacity_ceiling,
    diversity_gain,
    jensen_J,
    jensen_bound,
    outage,
    outage_high_snr,
    sndr,
    sndr_star,
)
from .channel import (
    FadingParams,
    PrsParams,
    gg_pdf,
    prs_cdf,
    prs_mean,
    rytov_to_shapes,
    sample_gamma1,
    sample_gamma2,
)
from .impairments import (
    BussgangCoeffs,
    HpaModel,
    IqImbalance,
    RelayGain,
    amam_ampm,
    bussgang,
    iq_coeffs,
    kappa,
)
from .simulate import McEstimate, McRun, mc_ber, mc_capacity, mc_jensen_J, mc_outage

__version__ = "0.1.0"

__all__ = [
    "BerParams",
    "CapacityConvention",
    "OutageQuery",
    "SystemConfig",
    "ber",
    "capacity_approx",
    "capacity_ceiling",
    "diversity_gain",
    "jensen_J",
    "jensen_bound",
    "outage",
    "outage_high_snr",
    "sndr",
    "sndr_star",
    "FadingParams",
    "PrsParams",
    "gg_pdf",
    "prs_cdf",
    "prs_mean",
    "rytov_to_shapes",
    "sample_gamma1",
    "sample_gamma2",
    "BussgangCoeffs",
    "HpaModel",
    "IqImbalance",
    "RelayGain",
    "amam_ampm",
    "bussgang",
    "iq_coeffs",
    "kappa",
    "McEstimate",
    "McRun",
    "mc_ber",
    "mc_capacity",
    "mc_jensen_J",
    "mc_outage",
    "__version__",
]
