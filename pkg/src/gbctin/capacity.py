"""Gaussian capacity expressions for the degraded two-user broadcast channel."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .constellation import ChannelParams

__all__ = [
    "CapacityPoint",
    "c1",
    "c2",
    "capacity_boundary",
    "relative_gain",
    "inside_capacity_region",
]


@dataclass(frozen=True)
class CapacityPoint:
    alpha: float
    c1: float
    c2: float


def c1(alpha: float, snr1: float) -> float:
    """Strong user's boundary rate 0.5*log2(1 + alpha*snr1)."""
    _check(alpha, snr1)
    return 0.5 * math.log2(1.0 + alpha * snr1)


def c2(alpha: float, snr2: float) -> float:
    """Weak user's boundary rate 0.5*log2(1 + (1-alpha)*snr2 / (1 + alpha*snr2))."""
    _check(alpha, snr2)
    return 0.5 * math.log2(1.0 + (1.0 - alpha) * snr2 / (1.0 + alpha * snr2))


def _check(alpha: float, snr: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    if not snr > 0.0:
        raise ValueError(f"snr must be positive, got {snr}")


def capacity_boundary(ch: ChannelParams, alpha_grid: Iterable[float]) -> list[CapacityPoint]:
    """Boundary points over a power-split grid; endpoints 0 and 1 always included."""
    given = [float(a) for a in alpha_grid]
    if not given:
        raise ValueError("alpha_grid must be nonempty")
    grid = sorted(set(given) | {0.0, 1.0})
    return [CapacityPoint(a, c1(a, ch.snr1), c2(a, ch.snr2)) for a in grid]


def relative_gain(snr1: float, snr2: float) -> float:
    """Slope ratio of the capacity boundary to single-user time sharing.

    Evaluated at the sum-rate-optimal corner where the two boundaries meet;
    values above 1 quantify how much the capacity boundary beats the straight
    time-sharing chord between the single-user corner points.
    """
    if not (snr1 > 0.0 and snr2 > 0.0):
        raise ValueError("both SNRs must be positive")
    log_term = math.log2(1.0 + snr2)
    if log_term == 0.0:
        raise ValueError("snr2 too small: log2(1 + snr2) = 0")
    return (snr2 * (1.0 + snr1)) / (snr1 * (1.0 + snr2)) \
        * math.log2(1.0 + snr1) / log_term


def inside_capacity_region(ch: ChannelParams, r1: float, r2: float,
                           slack: float = 0.0) -> bool:
    """Whether (r1, r2) lies inside the capacity region, up to ``slack`` bits.

    Uses the smallest power split whose strong-user rate reaches r1 and checks
    the weak-user rate there (the weak-user boundary is decreasing in alpha).
    """
    r1 = max(r1, 0.0)
    c1_max = 0.5 * math.log2(1.0 + ch.snr1)
    if r1 > c1_max + slack:
        return False
    alpha_need = min((2.0 ** (2.0 * r1) - 1.0) / ch.snr1, 1.0)
    return r2 <= c2(alpha_need, ch.snr2) + slack
