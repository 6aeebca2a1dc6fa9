"""Achievable rate-region assembly: order enumeration, power sweeps, hulls."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constellation import ChannelParams, alpha_star
from .entropy_mi import mi_exact_tin, rate_lower_bound

__all__ = [
    "RatePoint",
    "RateRegion",
    "admissible_orders",
    "case1_orders",
    "alpha_grid_geometric",
    "sweep_alpha_region",
    "ts_region",
    "ts_segment_points",
    "adjacent_ts_pairs",
    "pareto_frontier",
]

# Span of the geometric power-split grid below alpha*; the strong user's rate
# varies logarithmically in alpha, so three decades cover the useful range.
ALPHA_SPAN = 1e-3


@dataclass(frozen=True)
class RatePoint:
    """An achievable (r1, r2) pair with the configuration that produced it."""

    r1: float
    r2: float
    alpha: float
    m1: int
    m2: int
    scheme: str  # exact_mi | closed_form_lb | ts_combination
    ts_lambda: float | None = None
    method: str = ""
    err_est: float = 0.0
    parents: tuple | None = field(default=None, compare=False)

    def key(self) -> tuple:
        return (self.m1, self.m2, self.alpha)


@dataclass(frozen=True)
class RateRegion:
    generators: list
    frontier: list


def admissible_orders(ch: ChannelParams) -> list[tuple[int, int]]:
    """All (m1, m2) with m1*m2 <= n1 and m2 <= n2, sorted lexicographically."""
    n1, n2 = ch.n1, ch.n2
    return [(m1, m2)
            for m1 in range(1, n1 + 1)
            for m2 in range(1, min(n2, n1 // m1) + 1)]


def case1_orders(ch: ChannelParams) -> list[tuple[int, int]]:
    """Order pairs (m1, floor(n1/m1)) exhausting the strong user's constraint.

    Keeps pairs with both orders >= 2 and the weak user's order admissible;
    these are the configurations whose power split alpha* reaches the largest
    rate pairs.
    """
    n1, n2 = ch.n1, ch.n2
    out = []
    for m1 in range(2, n1 // 2 + 1):
        m2 = n1 // m1
        if 2 <= m2 <= n2 and (m1, m2) not in out:
            out.append((m1, m2))
    return out


def adjacent_ts_pairs(ch) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Consecutive case-1 pairs ((m1, .), (m1+1, .)) with n1 >= 2*(m1+1).

    These are the time-sharing segments whose chord gaps admit the certified
    constants; pairs outside that regime are not emitted.
    """
    orders = case1_orders(ch)
    by_m1 = {m1: m2 for m1, m2 in orders}
    out = []
    for m1, m2 in orders:
        if (m1 + 1) in by_m1 and ch.n1 >= 2 * (m1 + 1):
            out.append(((m1, m2), (m1 + 1, by_m1[m1 + 1])))
    return out


def alpha_grid_geometric(astar: float, size: int, span: float = ALPHA_SPAN) -> np.ndarray:
    """Geometric grid on (0, alpha*] whose last point is exactly alpha*."""
    if size < 2:
        raise ValueError("grid size must be >= 2")
    grid = np.geomspace(astar * span, astar, size)
    grid[-1] = astar
    return grid


def _evaluate(user: int, ch: ChannelParams, alpha: float, m1: int, m2: int,
              mi_method: str, **mi_kw) -> tuple[float, float]:
    if mi_method == "lb":
        return rate_lower_bound(user, ch, alpha, m1, m2), 0.0
    est = mi_exact_tin(user, ch, alpha, m1, m2, method=mi_method, **mi_kw)
    return est.value, est.err_est


def _rate_point(ch, alpha, m1, m2, mi_method, **mi_kw) -> RatePoint:
    r1, e1 = _evaluate(1, ch, alpha, m1, m2, mi_method, **mi_kw)
    r2, e2 = _evaluate(2, ch, alpha, m1, m2, mi_method, **mi_kw)
    scheme = "closed_form_lb" if mi_method == "lb" else "exact_mi"
    return RatePoint(r1=r1, r2=r2, alpha=alpha, m1=m1, m2=m2, scheme=scheme,
                     method=mi_method, err_est=max(e1, e2))


def _single_user_endpoints(ch, mi_method, **mi_kw) -> list[RatePoint]:
    # alpha = 0 and alpha = 1 carry the full power on a single N_k-point PAM.
    return [
        _rate_point(ch, 0.0, 1, ch.n2, mi_method, **mi_kw),
        _rate_point(ch, 1.0, ch.n1, 1, mi_method, **mi_kw),
    ]


def sweep_alpha_region(ch: ChannelParams, orders, alpha_grid_size: int = 64,
                       mi_method: str = "quad", **mi_kw) -> RateRegion:
    """Rate points over all order pairs and power splits in (0, alpha*].

    The grid always contains alpha* exactly; the alpha = 0 and alpha = 1
    single-user endpoints are appended once.  Orders whose alpha* is zero
    (m1 = 1) contribute their alpha = 0 point only.
    """
    points: list[RatePoint] = []
    for m1, m2 in orders:
        if m1 * m2 < 2:
            points.append(RatePoint(0.0, 0.0, 0.0, 1, 1,
                                    "closed_form_lb" if mi_method == "lb" else "exact_mi",
                                    method=mi_method))
            continue
        astar = alpha_star(m1, m2)
        if astar == 0.0:
            points.append(_rate_point(ch, 0.0, m1, m2, mi_method, **mi_kw))
            continue
        for alpha in alpha_grid_geometric(astar, alpha_grid_size):
            points.append(_rate_point(ch, float(alpha), m1, m2, mi_method, **mi_kw))
    points.extend(_single_user_endpoints(ch, mi_method, **mi_kw))
    return RateRegion(generators=points, frontier=pareto_frontier(points))


def ts_region(ch: ChannelParams, mi_method: str = "quad", **mi_kw) -> RateRegion:
    """Convex time-sharing region over the alpha* points of all admissible orders.

    Generators are the rate pairs at alpha*(m1, m2) for every admissible pair
    plus the strong user's single-user corner (n1, 1) at alpha = 1; the
    frontier is their concave upper-right hull.
    """
    seen: set[tuple] = set()
    gens: list[RatePoint] = []
    for m1, m2 in admissible_orders(ch):
        if m1 * m2 < 2:
            continue
        astar = alpha_star(m1, m2)
        key = (m1, m2, astar)
        if key in seen:
            continue
        seen.add(key)
        gens.append(_rate_point(ch, astar, m1, m2, mi_method, **mi_kw))
    corner_key = (ch.n1, 1, 1.0)
    if corner_key not in seen:
        gens.append(_rate_point(ch, 1.0, ch.n1, 1, mi_method, **mi_kw))
    return RateRegion(generators=gens, frontier=_concave_chain(gens))


def ts_segment_points(region: RateRegion, lambda_grid_size: int = 9) -> list[RatePoint]:
    """Time-sharing mixes sampled along consecutive frontier segments."""
    if lambda_grid_size < 2:
        raise ValueError("lambda_grid_size must be >= 2")
    out: list[RatePoint] = []
    lambdas = np.linspace(0.0, 1.0, lambda_grid_size)
    for a, b in zip(region.frontier, region.frontier[1:]):
        for lam in lambdas[1:-1]:
            out.append(RatePoint(
                r1=lam * a.r1 + (1 - lam) * b.r1,
                r2=lam * a.r2 + (1 - lam) * b.r2,
                alpha=a.alpha, m1=a.m1, m2=a.m2,
                scheme="ts_combination", ts_lambda=float(lam),
                method=a.method, err_est=max(a.err_est, b.err_est),
                parents=(a.key(), b.key()),
            ))
    return out


def pareto_frontier(points: list) -> list:
    """Componentwise-maximal points, sorted by r1 ascending.

    Exact duplicates of a maximal pair are all kept (neither dominates the
    other); ties are broken by (m1, m2, alpha) for a stable output order.
    """
    if not points:
        return []
    ordered = sorted(points, key=lambda p: (-p.r1, -p.r2))
    keep: list = []
    best_r2 = -math.inf
    i = 0
    while i < len(ordered):
        j = i
        while j < len(ordered) and ordered[j].r1 == ordered[i].r1:
            j += 1
        group_max = ordered[i].r2  # group is r2-descending
        if group_max > best_r2:
            keep.extend(p for p in ordered[i:j] if p.r2 == group_max)
            best_r2 = group_max
        i = j
    return sorted(keep, key=lambda p: (p.r1, p.m1, p.m2, p.alpha))


def _concave_chain(points: list) -> list:
    """Upper-right convex hull chain of the Pareto-maximal points."""
    pts = pareto_frontier(points)
    # Drop duplicate coordinates; hull vertices need distinct positions.
    uniq: list = []
    for p in pts:
        if not uniq or (p.r1, p.r2) != (uniq[-1].r1, uniq[-1].r2):
            uniq.append(p)
    if len(uniq) <= 2:
        return uniq
    chain: list = []
    for p in uniq:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) >= 0.0:
            chain.pop()
        chain.append(p)
    return chain


def _cross(o, a, b) -> float:
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
