"""Monte Carlo counterparts of every closed-form metric.

Hop SNRs are drawn from the channel samplers and pushed through the SNDR
mapping; nothing at waveform level.  Runs are sharded with per-shard seeds
derived from (master seed, shard index), accumulated by single-pass
count/mean/M2 statistics, and merged pairwise in shard order, so a fixed
(seed, shards) pair reproduces results bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .analytics import BerParams, SystemConfig, conditional_ber_kernel, sndr
from .channel import sample_gamma1, sample_gamma2

__all__ = [
    "McRun",
    "McEstimate",
    "RunningMoments",
    "mc_outage",
    "mc_capacity",
    "mc_jensen_J",
    "mc_ber",
]


@dataclass(frozen=True)
class McRun:
    """Reproducible Monte Carlo execution plan."""

    seed: int = 20240917
    samples: int = 1_000_000
    shards: int = 4

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f"McRun: samples must be >= 1, got {self.samples}")
        if self.shards < 1:
            raise ValueError(f"McRun: shards must be >= 1, got {self.shards}")

    def shard_sizes(self) -> list[int]:
        base = self.samples // self.shards
        sizes = [base] * self.shards
        sizes[-1] += self.samples - base * self.shards
        return [s for s in sizes if s > 0]

    def shard_rng(self, shard: int) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=(shard,))
        )


class McEstimate(NamedTuple):
    mean: float
    stderr: float
    n: int


class RunningMoments:
    """Single-pass (count, mean, M2) accumulator with exact pairwise merge."""

    __slots__ = ("count", "mean", "m2")

    def __init__(self) -> None:
        self.count = 0
        self.mean = 0.0
        self.m2 = 0.0

    def add_array(self, values: np.ndarray) -> None:
        n_b = values.size
        if n_b == 0:
            return
        mean_b = float(values.mean())
        m2_b = float(((values - mean_b) ** 2).sum())
        self._merge(n_b, mean_b, m2_b)

    def merge(self, other: "RunningMoments") -> None:
        self._merge(other.count, other.mean, other.m2)

    def _merge(self, n_b: int, mean_b: float, m2_b: float) -> None:
        if n_b == 0:
            return
        n_a = self.count
        n = n_a + n_b
        delta = mean_b - self.mean
        self.mean += delta * n_b / n
        self.m2 += m2_b + delta * delta * n_a * n_b / n
        self.count = n

    def estimate(self) -> McEstimate:
        if self.count == 0:
            raise ValueError("RunningMoments: no samples accumulated")
        if self.count == 1:
            return McEstimate(self.mean, math.inf, 1)
        var = self.m2 / (self.count - 1)
        return McEstimate(self.mean, math.sqrt(var / self.count), self.count)


def _sample_sndr(rng: np.random.Generator, cfg: SystemConfig, n: int) -> np.ndarray:
    g1 = sample_gamma1(rng, cfg.prs, size=n)
    g2 = sample_gamma2(rng, cfg.fading, size=n)
    return sndr(g1, g2, cfg)


def _mc_mean(cfg: SystemConfig, run: McRun, f: Callable[[np.ndarray], np.ndarray]) -> McEstimate:
    acc = RunningMoments()
    for shard, size in enumerate(run.shard_sizes()):
        rng = run.shard_rng(shard)
        acc.add_array(np.asarray(f(_sample_sndr(rng, cfg, size)), dtype=float))
    return acc.estimate()


def mc_outage(x: float, cfg: SystemConfig, run: McRun) -> McEstimate:
    """Fraction of SNDR draws below threshold x, with binomial stderr."""
    if not x > 0.0:
        raise ValueError(f"mc_outage: threshold must be > 0, got {x}")
    hits = 0
    total = 0
    for shard, size in enumerate(run.shard_sizes()):
        rng = run.shard_rng(shard)
        s = _sample_sndr(rng, cfg, size)
        hits += int(np.count_nonzero(s < x))
        total += size
    p_hat = hits / total
    return McEstimate(p_hat, math.sqrt(p_hat * (1.0 - p_hat) / total), total)


def mc_capacity(cfg: SystemConfig, run: McRun) -> McEstimate:
    """Sample-mean spectral efficiency under the configured convention."""
    return _mc_mean(cfg, run, cfg.convention.of_sndr)


def mc_jensen_J(cfg: SystemConfig, run: McRun) -> McEstimate:
    """Sample mean of the J integrand (the bound's inner expectation)."""
    ilr = cfg.ilr
    kap = cfg.kap
    c_lin = ilr + (1.0 + ilr) * kap
    d_const = (1.0 + ilr) * (cfg.mean_gamma1 + kap)

    acc = RunningMoments()
    for shard, size in enumerate(run.shard_sizes()):
        rng = run.shard_rng(shard)
        g1 = sample_gamma1(rng, cfg.prs, size=size)
        g2 = sample_gamma2(rng, cfg.fading, size=size)
        acc.add_array(g1 * g2 / (c_lin * g2 + d_const))
    return acc.estimate()


def mc_ber(params: BerParams, cfg: SystemConfig, run: McRun) -> McEstimate:
    """Sample mean of the conditional-error kernel at the drawn SNDR."""
    if params.p == 1.0:
        # Gamma(1, x)/Gamma(1) = e^-x: vectorized fast path.
        def kernel(s: np.ndarray) -> np.ndarray:
            return 0.5 * np.exp(-params.q * s)

    else:
        def kernel(s: np.ndarray) -> np.ndarray:
            return conditional_ber_kernel(params, s)

    return _mc_mean(cfg, run, kernel)
