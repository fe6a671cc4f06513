"""Special-function core: gamma family, Bessel K, and Meijer-G evaluators."""

from .besselk import bessel_k
from .gammafn import clngamma, digamma, gamma_upper_reg, ln_gamma_signed, trigamma
from .meijer import (
    MeijerGError,
    MeijerGOrder,
    SeriesControl,
    UnsupportedOrderError,
    gg_order,
    jensen_order,
    meijer_g,
    meijer_g_small_z,
    outage_order,
)

__all__ = [
    "bessel_k",
    "clngamma",
    "digamma",
    "gamma_upper_reg",
    "ln_gamma_signed",
    "trigamma",
    "MeijerGError",
    "MeijerGOrder",
    "SeriesControl",
    "UnsupportedOrderError",
    "gg_order",
    "jensen_order",
    "meijer_g",
    "meijer_g_small_z",
    "outage_order",
]
