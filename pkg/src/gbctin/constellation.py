"""PAM alphabets, superimposed constellations, and minimum-distance analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "OutOfRegimeError",
    "PamSpec",
    "SuperConstellation",
    "ChannelParams",
    "make_pam",
    "superimpose",
    "alpha_star",
    "dmin_formula",
    "dmin_bruteforce",
]

# Amplitudes closer than MERGE_TOL * sqrt(P) are treated as a single atom.
# Inside the non-overlap regime all atoms are exactly distinct; the tolerance
# only guards floating-point ties at exactly-overlapping power splits.
MERGE_TOL = 1e-9


class OutOfRegimeError(ValueError):
    """A closed-form expression was requested outside its validity regime."""


@dataclass(frozen=True)
class PamSpec:
    """Normalized zero-mean M-point PAM alphabet.

    Points are equally spaced with spacing ``d_min``, symmetric about 0 and
    scaled to unit average power.  For M = 1 the alphabet is the single point
    {0} and ``d_min`` is the +inf sentinel.
    """

    m: int
    d_min: float
    points: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class SuperConstellation:
    """Power-weighted sum of two PAM alphabets.

    ``amplitudes`` are the distinct atom positions (ascending) and ``counts``
    the number of (x1, x2) pairs mapping to each atom, so every probability is
    an exact integer multiple of 1/(m1*m2).
    """

    alpha: float
    power: float
    m1: int
    m2: int
    amplitudes: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)

    @property
    def probs(self) -> np.ndarray:
        return self.counts / float(self.m1 * self.m2)

    @property
    def avg_power(self) -> float:
        return float(np.sum(self.probs * self.amplitudes**2))

    def __len__(self) -> int:
        return len(self.amplitudes)


@dataclass(frozen=True)
class ChannelParams:
    """Linear SNR pair of the degraded broadcast channel (user 1 strong)."""

    snr1: float
    snr2: float

    def __post_init__(self) -> None:
        if not (self.snr1 > self.snr2 > 0.0):
            raise ValueError(
                f"need snr1 > snr2 > 0, got snr1={self.snr1}, snr2={self.snr2}"
            )

    @classmethod
    def from_db(cls, snr1_db: float, snr2_db: float) -> "ChannelParams":
        return cls(10.0 ** (snr1_db / 10.0), 10.0 ** (snr2_db / 10.0))

    @property
    def n1(self) -> int:
        return _ceil_sqrt(self.snr1)

    @property
    def n2(self) -> int:
        return _ceil_sqrt(self.snr2)


def _ceil_sqrt(x: float) -> int:
    # ceil(sqrt(x)) with a snap for sqrt values a rounding error above an integer.
    r = math.sqrt(x)
    ri = round(r)
    if abs(r - ri) < 1e-9:
        return int(ri)
    return int(math.ceil(r))


def make_pam(m: int) -> PamSpec:
    """Build the normalized M-point PAM alphabet.

    Args:
        m: number of points, >= 1.

    Returns:
        PamSpec with points sorted ascending, mean exactly 0 and unit average
        power (for m >= 2); the degenerate m = 1 alphabet is {0}.
    """
    if m < 1:
        raise ValueError(f"PAM order must be >= 1, got {m}")
    if m == 1:
        return PamSpec(m=1, d_min=math.inf, points=np.zeros(1))
    d = math.sqrt(12.0 / (m * m - 1.0))
    points = d * (np.arange(m, dtype=float) - (m - 1) / 2.0)
    return PamSpec(m=m, d_min=d, points=points)


def superimpose(pam1: PamSpec, pam2: PamSpec, alpha: float, power: float) -> SuperConstellation:
    """Superimpose two PAM alphabets with power split ``alpha`` for user 1.

    Enumerates sqrt(P) * (sqrt(alpha) * x1 + sqrt(1 - alpha) * x2) over all
    point pairs, merging coincident amplitudes and accumulating their
    probability mass.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    if not power > 0.0:
        raise ValueError(f"power must be positive, got {power}")
    w1 = math.sqrt(power * alpha)
    w2 = math.sqrt(power * (1.0 - alpha))
    sums = (w1 * pam1.points[:, None] + w2 * pam2.points[None, :]).ravel()
    sums.sort()
    tol = MERGE_TOL * math.sqrt(power)
    amplitudes = [sums[0]]
    counts = [1]
    for x in sums[1:]:
        if x - amplitudes[-1] <= tol:
            counts[-1] += 1
        else:
            amplitudes.append(x)
            counts.append(1)
    return SuperConstellation(
        alpha=alpha,
        power=power,
        m1=pam1.m,
        m2=pam2.m,
        amplitudes=np.array(amplitudes),
        counts=np.array(counts, dtype=np.int64),
    )


def alpha_star(m1: int, m2: int) -> float:
    """Largest user-1 power fraction keeping the superposition non-overlapping.

    alpha* = (m1^2 - 1) / (m1^2 m2^2 - 1); undefined for m1 = m2 = 1.
    """
    if m1 * m2 < 2:
        raise ValueError("alpha_star requires m1*m2 >= 2")
    return (m1 * m1 - 1.0) / (m1 * m1 * m2 * m2 - 1.0)


def dmin_formula(m1: int, m2: int, alpha: float, power: float) -> float:
    """Closed-form minimum distance of the superposition, valid for alpha <= alpha*.

    Raises OutOfRegimeError above alpha*: there the inter-cluster spacing
    shrinks below the intra-cluster spacing and this expression no longer
    gives the minimum; use dmin_bruteforce instead.
    """
    if m1 < 2:
        raise ValueError("dmin_formula requires m1 >= 2")
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    astar = alpha_star(m1, m2)
    if alpha > astar * (1.0 + 1e-12):
        raise OutOfRegimeError(
            f"alpha={alpha} exceeds alpha*={astar} for ({m1},{m2}); formula invalid"
        )
    return math.sqrt(12.0 * alpha * power / (m1 * m1 - 1.0))


def dmin_bruteforce(c: SuperConstellation) -> float:
    """Exhaustive pairwise minimum distance over the constellation atoms.

    Independent oracle for the closed form; O(n^2) on at most a few hundred
    atoms. A single-atom constellation returns the +inf sentinel.
    """
    amps = c.amplitudes
    if len(amps) < 2:
        return math.inf
    diffs = np.abs(amps[:, None] - amps[None, :])
    return float(diffs[~np.eye(len(amps), dtype=bool)].min())
