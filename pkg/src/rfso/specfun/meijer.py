"""Meijer-G evaluation for the three orders the closed-form metrics need:
G^{2,0}_{0,2}, G^{5,0}_{0,5} and G^{5,1}_{1,5} with real parameters and
real positive argument.

Two evaluation paths back each other up:

* a residue (Slater) series over the pole families of the integrand, used
  for small arguments, with all Gamma prefactors carried in log space;
* a Mellin-Barnes contour integral along the vertical line through the
  real saddle point of the integrand, evaluated by an adaptively refined
  trapezoid rule, used for large arguments or when the series cancels
  catastrophically.

Parameter lists whose pairwise differences are (near-)integers collide
poles of the integrand; they are handled by a deterministic symmetric
epsilon-perturbation (documented error O(eps)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .gammafn import clngamma, digamma, ln_gamma_signed, trigamma

__all__ = [
    "MeijerGOrder",
    "SeriesControl",
    "MeijerGError",
    "UnsupportedOrderError",
    "meijer_g",
    "meijer_g_small_z",
    "gg_order",
    "outage_order",
    "jensen_order",
]

_SUPPORTED = {(2, 0, 0, 2), (5, 0, 0, 5), (5, 1, 1, 5)}


class UnsupportedOrderError(ValueError):
    """Raised for (m, n, p, q) combinations outside the supported set."""


class MeijerGError(ArithmeticError):
    """Raised when neither evaluation path produces a trustworthy value."""


@dataclass(frozen=True)
class MeijerGOrder:
    """One of the supported G^{m,n}_{p,q} instances with its parameters."""

    m: int
    n: int
    p: int
    q: int
    a: tuple[float, ...] = ()
    b: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if (self.m, self.n, self.p, self.q) not in _SUPPORTED:
            raise UnsupportedOrderError(
                f"unsupported Meijer-G order (m,n,p,q)=({self.m},{self.n},{self.p},{self.q})"
            )
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if len(self.a) != self.p:
            raise ValueError(f"expected {self.p} numerator parameters, got {len(self.a)}")
        if len(self.b) != self.q:
            raise ValueError(f"expected {self.q} denominator parameters, got {len(self.b)}")


@dataclass
class SeriesControl:
    """Knobs for the series/contour evaluation."""

    rtol: float = 1e-12
    max_terms: int = 2000
    pole_eps: float = 1e-6
    contour_threshold: float = 10.0

    def __post_init__(self) -> None:
        if not self.rtol > 0.0:
            raise ValueError("SeriesControl: rtol must be > 0")
        if not self.pole_eps > 0.0:
            raise ValueError("SeriesControl: pole_eps must be > 0")
        if self.max_terms < 1:
            raise ValueError("SeriesControl: max_terms must be >= 1")


_DEFAULT_CTL = SeriesControl()


def gg_order(alpha: float, beta: float) -> MeijerGOrder:
    """G^{2,0}_{0,2} order of the Gamma-Gamma SNR density."""
    return MeijerGOrder(2, 0, 0, 2, (), ((alpha - beta) / 2.0, (beta - alpha) / 2.0))


def outage_order(alpha: float, beta: float) -> MeijerGOrder:
    """G^{5,0}_{0,5} order of the outage closed form."""
    b = (alpha / 2.0, (alpha + 1.0) / 2.0, beta / 2.0, (beta + 1.0) / 2.0, 0.0)
    return MeijerGOrder(5, 0, 0, 5, (), b)


def jensen_order(alpha: float, beta: float) -> MeijerGOrder:
    """G^{5,1}_{1,5} order of the capacity upper-bound closed form."""
    lam0 = -(alpha + beta) / 4.0
    lam1 = (
        (alpha - beta) / 4.0,
        (alpha - beta + 2.0) / 4.0,
        (beta - alpha) / 4.0,
        (beta - alpha + 2.0) / 4.0,
        lam0,
    )
    return MeijerGOrder(5, 1, 1, 5, (lam0,), lam1)


class _SeriesCancellation(MeijerGError):
    """Series digits lost to cancellation; the contour path should be used."""


def _split_degenerate(b: tuple[float, ...], eps: float) -> tuple[float, ...]:
    """Perturb entries of b whose pairwise differences are near-integers.

    Colliding entries are grouped transitively and spread symmetrically over
    a span of eps, so every pairwise difference moves off the integer lattice
    by at least eps / (group size - 1).
    """
    nb = len(b)
    parent = list(range(nb))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    collided = False
    for i in range(nb):
        for j in range(i + 1, nb):
            d = b[i] - b[j]
            if abs(d - round(d)) < eps:
                collided = True
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    if not collided:
        return b
    groups: dict[int, list[int]] = {}
    for i in range(nb):
        groups.setdefault(find(i), []).append(i)
    out = list(b)
    for members in groups.values():
        g = len(members)
        if g < 2:
            continue
        for rank, idx in enumerate(sorted(members)):
            out[idx] = b[idx] + eps * (rank - (g - 1) / 2.0) / (g - 1)
    return tuple(out)


def _residue_series(order: MeijerGOrder, b: tuple[float, ...], z: float, ctl: SeriesControl) -> float:
    """Slater expansion: one generalized hypergeometric series per pole family."""
    m, n = order.m, order.n
    a = order.a
    w = z if (order.p - m - n) % 2 == 0 else -z
    lnz = math.log(z)

    logs: list[float] = []
    signs: list[int] = []
    for k in range(m):
        lpre = b[k] * lnz
        spre = 1
        for j in range(m):
            if j == k:
                continue
            lg, sg = ln_gamma_signed(b[j] - b[k])
            lpre += lg
            spre *= sg
        for j in range(n):
            lg, sg = ln_gamma_signed(1.0 + b[k] - a[j])
            lpre += lg
            spre *= sg
        nums = [1.0 + b[k] - a[j] for j in range(n)]
        dens = [1.0 + b[k] - b[j] for j in range(m) if j != k]
        s_val = _hyper_series(nums, dens, w, ctl)
        if s_val == 0.0:
            continue
        logs.append(lpre + math.log(abs(s_val)))
        signs.append(spre * (1 if s_val > 0 else -1))

    if not logs:
        return 0.0
    mlog = max(logs)
    scaled = sum(s * math.exp(l - mlog) for s, l in zip(signs, logs))
    gross = sum(math.exp(l - mlog) for l in logs)
    # Below this ratio fewer than ~10 significant digits survive the
    # cross-family cancellation; defer to the contour path instead.
    if abs(scaled) < 1e-5 * gross:
        raise _SeriesCancellation(
            f"residue series loses too many digits at z={z} (ratio {abs(scaled) / gross:.2e})"
        )
    if scaled == 0.0:
        return 0.0
    return math.copysign(math.exp(mlog + math.log(abs(scaled))), scaled)


def _hyper_series(nums: list[float], dens: list[float], w: float, ctl: SeriesControl) -> float:
    """Sum_{i>=0} w^i * prod(nums)_i / (prod(dens)_i * i!) by term recurrence."""
    # Terms can spike where a denominator shift crosses zero; do not allow
    # convergence detection before every such crossing is passed.
    i_guard = 0
    for d in dens + nums:
        if d < 0.0:
            i_guard = max(i_guard, int(math.ceil(-d)) + 2)
    term = 1.0
    total = 1.0
    small_runs = 0
    for i in range(ctl.max_terms):
        ratio = w / (i + 1.0)
        for v in nums:
            ratio *= v + i
        for v in dens:
            ratio /= v + i
        term *= ratio
        total += term
        if not math.isfinite(total):
            raise MeijerGError("hypergeometric series overflowed")
        if i >= i_guard and abs(term) <= ctl.rtol * max(abs(total), 1e-300):
            small_runs += 1
            if small_runs >= 2:
                return total
        else:
            small_runs = 0
    raise MeijerGError(f"hypergeometric series did not converge in {ctl.max_terms} terms")


def _saddle_point(order: MeijerGOrder, b: tuple[float, ...], z: float) -> float:
    """Real saddle of Gamma-product * z^s along the contour strip."""
    m, n = order.m, order.n
    a = order.a
    lnz = math.log(z)

    def g(c: float) -> float:
        val = lnz
        for j in range(m):
            val -= digamma(b[j] - c)
        for j in range(n):
            val += digamma(1.0 - a[j] + c)
        return val

    bmin = min(b[:m])
    hi = bmin - 1e-10
    if n:
        lo = max(a) - 1.0 + 1e-10
        if not lo < hi:
            raise MeijerGError("empty Mellin-Barnes strip between pole families")
    else:
        step = 1.0
        lo = bmin - step
        while g(lo) > 0.0:
            step *= 2.0
            lo = bmin - step
            if step > 1e8:
                raise MeijerGError("saddle search failed")
    glo, ghi = g(lo), g(hi)
    if not (glo < 0.0 < ghi):
        # Saddle sits against an end of the strip; fall back to its midpoint.
        return 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13 * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


def _contour_integral(order: MeijerGOrder, b: tuple[float, ...], z: float, ctl: SeriesControl) -> float:
    m, n = order.m, order.n
    a = order.a
    lnz = math.log(z)
    c = _saddle_point(order, b, z)

    def logf(t: float) -> complex:
        s = complex(c, t)
        out = s * lnz
        for j in range(m):
            out += clngamma(b[j] - s)
        for j in range(n):
            out += clngamma(1.0 - a[j] + s)
        return out

    l0 = logf(0.0).real
    curv = sum(trigamma(b[j] - c) for j in range(m)) + sum(
        trigamma(1.0 - a[j] + c) for j in range(n)
    )
    width = 1.0 / math.sqrt(curv)

    def phi(t: float) -> float:
        return cmath.exp(logf(t) - l0).real

    def phimag(t: float) -> float:
        return abs(cmath.exp(logf(t) - l0))

    # Extend the truncation point until the (monotonically decaying)
    # integrand magnitude is negligible against the peak at t = 0.
    t_max = 8.0 * width
    while phimag(t_max) > 1e-18 and t_max < 1e4 * width:
        t_max *= 1.5
    if phimag(t_max) > 1e-12:
        raise MeijerGError("contour integrand failed to decay")

    h = min(width / 6.0, 0.5)
    nsteps = int(math.ceil(t_max / h))
    vals = [phi(k * h) for k in range(nsteps + 1)]
    total = h * (0.5 * vals[0] + sum(vals[1:]))
    for _ in range(14):
        mids = [phi((k + 0.5) * h) for k in range(len(vals) - 1)]
        new_total = 0.5 * total + 0.5 * h * sum(mids)
        merged: list[float] = []
        for v, mv in zip(vals, mids):
            merged.extend((v, mv))
        merged.append(vals[-1])
        vals = merged
        h *= 0.5
        if abs(new_total - total) <= max(1e-13, 1e-10 * abs(new_total)):
            total = new_total
            break
        total = new_total
    else:
        raise MeijerGError("contour quadrature did not converge")
    if total == 0.0:
        return 0.0
    return math.copysign(math.exp(l0 + math.log(abs(total) / math.pi)), total)


def meijer_g(
    order: MeijerGOrder,
    z: float,
    ctl: SeriesControl | None = None,
    path: str | None = None,
) -> float:
    """Evaluate the Meijer-G function of `order` at real z > 0.

    `path` forces "series" or "contour"; by default the series is used for
    z <= ctl.contour_threshold with automatic contour fallback on
    cancellation or non-convergence.
    """
    ctl = ctl or _DEFAULT_CTL
    if not z > 0.0:
        raise ValueError(f"meijer_g: require z > 0, got {z}")
    if path is None and (order.m, order.n, order.p, order.q) == (2, 0, 0, 2):
        nu = order.b[0] - order.b[1]
        if abs(nu - round(nu)) < ctl.pole_eps:
            # Integer order difference is the logarithmic case of G^{2,0}_{0,2};
            # the Bessel identity gives its exact value, no perturbation needed.
            half = 0.5 * (order.b[0] + order.b[1])
            from .besselk import bessel_k

            return 2.0 * math.pow(z, half) * bessel_k(nu, 2.0 * math.sqrt(z))

    def evaluate(b: tuple[float, ...]) -> float:
        if path == "series":
            return _residue_series(order, b, z, ctl)
        if path == "contour":
            return _contour_integral(order, b, z, ctl)
        if path is not None:
            raise ValueError(f"meijer_g: unknown path {path!r}")
        if z <= ctl.contour_threshold:
            try:
                return _residue_series(order, b, z, ctl)
            except MeijerGError:
                pass
        return _contour_integral(order, b, z, ctl)

    b1 = _split_degenerate(order.b, ctl.pole_eps)
    if b1 == order.b:
        return evaluate(b1)
    # Richardson extrapolation over the perturbation scale cancels the
    # leading O(eps) error of the pole split.
    b2 = _split_degenerate(order.b, 0.5 * ctl.pole_eps)
    return 2.0 * evaluate(b2) - evaluate(b1)


def meijer_g_small_z(
    order: MeijerGOrder,
    z: float,
    k_terms: int = 5,
    ctl: SeriesControl | None = None,
) -> float:
    """Leading-power truncation of G^{5,0}_{0,5}: one z^{b_k} term per pole family.

    Keeps the `k_terms` families of smallest exponent (all five by default).
    """
    ctl = ctl or _DEFAULT_CTL
    if (order.m, order.n, order.p, order.q) != (5, 0, 0, 5):
        raise UnsupportedOrderError("meijer_g_small_z supports only G^{5,0}_{0,5}")
    if z < 0.0:
        raise ValueError(f"meijer_g_small_z: require z >= 0, got {z}")
    if not 1 <= k_terms <= 5:
        raise ValueError("meijer_g_small_z: k_terms must be in 1..5")
    if z == 0.0:
        bmin = min(order.b)
        if bmin < 0.0:
            raise MeijerGError("z=0 limit diverges for negative exponents in b")
        if bmin > 0.0:
            return 0.0
        k0 = order.b.index(bmin)
        lg = 0.0
        sg = 1
        for j, bj in enumerate(order.b):
            if j == k0:
                continue
            l, s = ln_gamma_signed(bj - order.b[k0])
            lg += l
            sg *= s
        return sg * math.exp(lg)
    lnz = math.log(z)

    def truncated_sum(b: tuple[float, ...]) -> float:
        families = sorted(range(5), key=lambda k: b[k])[:k_terms]
        logs: list[float] = []
        signs: list[int] = []
        for k in families:
            lpre = b[k] * lnz
            spre = 1
            for j in range(5):
                if j == k:
                    continue
                lg, sg = ln_gamma_signed(b[j] - b[k])
                lpre += lg
                spre *= sg
            logs.append(lpre)
            signs.append(spre)
        mlog = max(logs)
        scaled = sum(s * math.exp(l - mlog) for s, l in zip(signs, logs))
        if scaled == 0.0:
            return 0.0
        return math.copysign(math.exp(mlog + math.log(abs(scaled))), scaled)

    # No extrapolation here: the truncated sum drops the series terms that
    # would pair with the colliding poles, so it has no eps -> 0 limit on
    # integer-spaced b.  The plain split is the documented convention.
    return truncated_sum(_split_degenerate(order.b, ctl.pole_eps))
