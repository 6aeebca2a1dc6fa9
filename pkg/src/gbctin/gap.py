"""Gap-to-capacity computation and numerical certification of the constant-gap bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .capacity import c1, c2
from .constellation import ChannelParams, alpha_star
from .entropy_mi import SHAPING_LOSS_BITS, mi_exact_tin, rate_lower_bound
from .region import (
    adjacent_ts_pairs,
    alpha_grid_geometric,
    case1_orders,
    sweep_alpha_region,
    ts_region,
    ts_segment_points,
    admissible_orders,
)

__all__ = [
    "GapReport",
    "TsGapReport",
    "CoverageSummary",
    "REFERENCE_VALUES",
    "reference_constants",
    "gap_at",
    "certify_case1",
    "certify_case2",
    "certify_ts",
    "certify_coverage",
]

# Default slack for closed-form comparisons; exact-MI comparisons add the
# quadrature error estimate on top.
DEFAULT_TOL = 1e-6

#: Constant names -> values as quoted in the reference gap analysis.
REFERENCE_VALUES = {
    "gap1_case1": 1.188,
    "gap2_case1": 1.175,
    "gap1_case2_small_capacity": 0.754,
    "gap2_case2": 0.839,
    "c2_at_snr2_4": 1.161,
    "ts_chord_user1": 1.772,
    "ts_chord_user2": 2.985,
    "ts_total_user1": 2.960,
    "ts_total_user2": 4.160,
}

# Case-2 weak-user bound when snr2 <= 4 (linear): the combined statement of
# the case analysis.  The per-branch value 1.161 (= c2 at alpha=0, snr2=4) is
# carried alongside in report notes.
GAP2_CASE2_COMBINED = 1.661


def reference_constants() -> dict[str, float]:
    """Recompute every certified gap constant from its closed form."""
    chord1 = 0.5 * math.log2(8.0 / 3.0) + 0.5 * math.log2(35.0 / 8.0)
    chord2 = 0.5 * math.log2(35.0 / 8.0) + 0.5 * math.log2(35.0 / 3.0 + 8.0 / 3.0)
    gap1 = 0.5 * math.log2(1.0 + 12.0 / 5.0 + 1.0 / 4.0) + SHAPING_LOSS_BITS
    gap2 = 0.5 * math.log2(1.0 + 4.0 / 3.0 + 1.0 + 1.0 / 4.0) + SHAPING_LOSS_BITS
    return {
        "gap1_case1": gap1,
        "gap2_case1": gap2,
        "gap1_case2_small_capacity": 0.5 * math.log2(2.0) + SHAPING_LOSS_BITS,
        "gap2_case2": 0.5 * math.log2(9.0 / 4.0) + SHAPING_LOSS_BITS,
        "c2_at_snr2_4": 0.5 * math.log2(5.0),
        "ts_chord_user1": chord1,
        "ts_chord_user2": chord2,
        "ts_total_user1": chord1 + gap1,
        "ts_total_user2": chord2 + gap2,
    }


@dataclass(frozen=True)
class GapReport:
    """Per-configuration gap to the Gaussian boundary with its certified bound."""

    snr1_db: float
    snr2_db: float
    m1: int
    m2: int
    alpha: float
    delta1: float
    delta2: float
    bound1: float
    bound2: float
    case_tag: str  # case1_alpha_star | case2_interior | ts_segment | single_user
    passed: bool
    notes: str = ""


@dataclass(frozen=True)
class TsGapReport:
    """Gap certification for one adjacent time-sharing segment."""

    snr1_db: float
    snr2_db: float
    pair: tuple
    lambda_grid: np.ndarray = field(repr=False)
    max_c_gap1: float = 0.0
    max_c_gap2: float = 0.0
    max_total_gap1: float = 0.0
    max_total_gap2: float = 0.0
    passed: bool = False


@dataclass(frozen=True)
class CoverageSummary:
    snr1_db: float
    snr2_db: float
    worst_gap1: float
    worst_gap2: float
    n_boundary: int
    passed: bool


def _to_db(snr: float) -> float:
    return 10.0 * math.log10(snr)


def _rate(user, ch, alpha, m1, m2, mi_mode, **mi_kw) -> tuple[float, float]:
    if mi_mode == "lb":
        return rate_lower_bound(user, ch, alpha, m1, m2), 0.0
    est = mi_exact_tin(user, ch, alpha, m1, m2, method=mi_mode, **mi_kw)
    return est.value, est.err_est


def gap_at(ch: ChannelParams, m1: int, m2: int, alpha: float,
           mi_mode: str = "lb", tol: float = DEFAULT_TOL, **mi_kw) -> GapReport:
    """Gap C_k(alpha) - rate_k for one configuration, with the applicable bound.

    ``mi_mode`` selects the rate: "lb" for the provable closed-form lower
    bound, "quad"/"mc" for the exact TIN mutual information (which may exceed
    the weak user's Gaussian boundary, giving a negative delta2).
    """
    r1, e1 = _rate(1, ch, alpha, m1, m2, mi_mode, **mi_kw)
    r2, e2 = _rate(2, ch, alpha, m1, m2, mi_mode, **mi_kw)
    delta1 = c1(alpha, ch.snr1) - r1
    delta2 = c2(alpha, ch.snr2) - r2
    tag, bound1, bound2, notes = _select_bounds(ch, m1, m2, alpha, mi_mode)
    slack = tol + e1 + e2
    passed = delta1 <= bound1 + slack and delta2 <= bound2 + slack
    return GapReport(
        snr1_db=_to_db(ch.snr1), snr2_db=_to_db(ch.snr2), m1=m1, m2=m2,
        alpha=alpha, delta1=delta1, delta2=delta2, bound1=bound1, bound2=bound2,
        case_tag=tag, passed=passed, notes=notes,
    )


def _select_bounds(ch, m1, m2, alpha, mi_mode) -> tuple[str, float, float, str]:
    if alpha in (0.0, 1.0):
        return ("single_user",) + _single_user_bounds(ch, m1, m2, alpha, mi_mode)
    astar = alpha_star(m1, m2)
    notes = ""
    if abs(alpha - astar) <= 1e-12:
        return ("case1_alpha_star", REFERENCE_VALUES["gap1_case1"],
                REFERENCE_VALUES["gap2_case1"], notes)
    # Interior split: the strong user's constant applies once its Gaussian
    # rate exceeds 1 bit; below that the boundary rate itself is the bound.
    cap1 = c1(alpha, ch.snr1)
    bound1 = REFERENCE_VALUES["gap1_case1"] if alpha * ch.snr1 > 1.0 else cap1
    if alpha * ch.snr1 <= 1.0:
        notes = "small-capacity branch (alpha*snr1 <= 1)"
    if ch.snr2 > 4.0:
        bound2 = REFERENCE_VALUES["gap2_case2"]
    else:
        bound2 = GAP2_CASE2_COMBINED
        notes = (notes + "; " if notes else "") + \
            "snr2 <= 4: case-analysis bound 1.161, certified 1.661"
    return "case2_interior", bound1, bound2, notes


def _single_user_bounds(ch, m1, m2, alpha, mi_mode) -> tuple[float, float, str]:
    # Shaping plus minimum-distance loss of the active user's PAM; for the
    # closed-form rate the excess of the Gaussian rate over log2 M is added
    # (it is not covered by the entropy term of the bound).
    def one_user(m, snr, cap):
        if m < 2:
            return 0.0
        b = SHAPING_LOSS_BITS + 0.5 * math.log2(1.0 + (m * m - 1.0) / snr)
        if mi_mode == "lb":
            b += max(0.0, cap - math.log2(m))
        return b

    if alpha == 0.0:
        return (0.0, one_user(m2, ch.snr2, c2(0.0, ch.snr2)),
                "single-user corner (alpha=0)")
    return (one_user(m1, ch.snr1, c1(1.0, ch.snr1)), 0.0,
            "single-user corner (alpha=1)")


def certify_case1(snr1_db_grid, snr2_db_grid, condition=None,
                  tol: float = DEFAULT_TOL) -> list[GapReport]:
    """Closed-form gaps at alpha* for every case-1 order over an SNR grid.

    Configurations with snr2 >= snr1 are skipped; ``condition`` optionally
    filters (snr1_db, snr2_db) pairs.  Violations are reported in the returned
    list, never raised.
    """
    reports = []
    for s1db in snr1_db_grid:
        for s2db in snr2_db_grid:
            if s2db >= s1db or (condition and not condition(s1db, s2db)):
                continue
            ch = ChannelParams.from_db(s1db, s2db)
            for m1, m2 in case1_orders(ch):
                if ch.snr2 <= (m2 - 1) ** 2:
                    # Outside the proven regime; tagged, not certified.
                    reports.append(GapReport(
                        snr1_db=s1db, snr2_db=s2db, m1=m1, m2=m2,
                        alpha=alpha_star(m1, m2), delta1=math.nan,
                        delta2=math.nan, bound1=math.nan, bound2=math.nan,
                        case_tag="case1_alpha_star", passed=True,
                        notes="skipped: snr2 <= (m2-1)^2"))
                    continue
                rep = gap_at(ch, m1, m2, alpha_star(m1, m2), mi_mode="lb", tol=tol)
                reports.append(replace(rep, snr1_db=float(s1db),
                                       snr2_db=float(s2db)))
    return reports


def certify_case2(snr1_db_grid, snr2_db_grid, alpha_grid_size: int = 33,
                  condition=None, tol: float = DEFAULT_TOL) -> list[GapReport]:
    """Closed-form gaps over interior power splits with the weak user at m2 = n2.

    Sweeps alpha over (0, alpha*) for m2 = n2, m1 = floor(n1/n2).  Pairs whose
    strong-user order degenerates (m1 < 2, empty regime) contribute nothing.
    """
    reports = []
    for s1db in snr1_db_grid:
        for s2db in snr2_db_grid:
            if s2db >= s1db or (condition and not condition(s1db, s2db)):
                continue
            ch = ChannelParams.from_db(s1db, s2db)
            m2 = ch.n2
            m1 = ch.n1 // m2
            if m1 < 2 or m2 < 2:
                continue
            astar = alpha_star(m1, m2)
            for alpha in alpha_grid_geometric(astar * 0.999, alpha_grid_size):
                rep = gap_at(ch, m1, m2, float(alpha), mi_mode="lb", tol=tol)
                reports.append(replace(rep, snr1_db=float(s1db),
                                       snr2_db=float(s2db)))
    return reports


def certify_ts(ch: ChannelParams, lambda_grid_size: int = 33,
               mi_mode: str = "lb", tol: float = DEFAULT_TOL,
               **mi_kw) -> list[TsGapReport]:
    """Certify the time-sharing segments between adjacent alpha* rate points.

    For each adjacent pair: the chord gaps between the two Gaussian boundary
    points must stay below the certified chord constants, and every sampled
    boundary point between them must be within the certified totals of the
    time-sharing mix matched to its strong-user rate.
    """
    consts = REFERENCE_VALUES
    reports = []
    for (m1a, m2a), (m1b, m2b) in adjacent_ts_pairs(ch):
        ala, alb = alpha_star(m1a, m2a), alpha_star(m1b, m2b)
        ca = (c1(ala, ch.snr1), c2(ala, ch.snr2))
        cb = (c1(alb, ch.snr1), c2(alb, ch.snr2))
        r1a, e1a = _rate(1, ch, ala, m1a, m2a, mi_mode, **mi_kw)
        r2a, e2a = _rate(2, ch, ala, m1a, m2a, mi_mode, **mi_kw)
        r1b, e1b = _rate(1, ch, alb, m1b, m2b, mi_mode, **mi_kw)
        r2b, e2b = _rate(2, ch, alb, m1b, m2b, mi_mode, **mi_kw)
        err = max(e1a, e2a, e1b, e2b)

        chord1 = cb[0] - ca[0]
        chord2 = ca[1] - cb[1]
        total1 = total2 = -math.inf
        lambdas = []
        for ap in np.linspace(ala, alb, lambda_grid_size):
            c1p, c2p = c1(float(ap), ch.snr1), c2(float(ap), ch.snr2)
            # Mix matched to the boundary point's strong-user coordinate.
            lam = (cb[0] - c1p) / chord1 if chord1 > 0 else 0.0
            lam = min(1.0, max(0.0, lam))
            lambdas.append(lam)
            total1 = max(total1, c1p - (lam * r1a + (1 - lam) * r1b))
            total2 = max(total2, c2p - (lam * r2a + (1 - lam) * r2b))
        slack = tol + err
        passed = (chord1 <= consts["ts_chord_user1"] + slack
                  and chord2 <= consts["ts_chord_user2"] + slack
                  and total1 <= consts["ts_total_user1"] + slack
                  and total2 <= consts["ts_total_user2"] + slack)
        reports.append(TsGapReport(
            snr1_db=_to_db(ch.snr1), snr2_db=_to_db(ch.snr2),
            pair=((m1a, m2a), (m1b, m2b)), lambda_grid=np.array(lambdas),
            max_c_gap1=chord1, max_c_gap2=chord2,
            max_total_gap1=total1, max_total_gap2=total2, passed=passed,
        ))
    return reports


def certify_coverage(ch: ChannelParams, boundary_grid_size: int = 65,
                     mi_mode: str = "lb", tol: float = DEFAULT_TOL,
                     alpha_grid_size: int = 33, **mi_kw) -> CoverageSummary:
    """Check that every sampled capacity-boundary point is covered by the region.

    Coverage means an achievable point exists within the certified
    componentwise gaps (ts_total_user1, ts_total_user2).  Returns the worst
    observed componentwise gaps over the sampled boundary.
    """
    g1 = REFERENCE_VALUES["ts_total_user1"]
    g2 = REFERENCE_VALUES["ts_total_user2"]
    sweep = sweep_alpha_region(ch, admissible_orders(ch),
                               alpha_grid_size=alpha_grid_size,
                               mi_method=mi_mode, **mi_kw)
    hull = ts_region(ch, mi_method=mi_mode, **mi_kw)
    candidates = sweep.generators + hull.frontier + ts_segment_points(hull, 21)
    r = np.array([[p.r1, p.r2] for p in candidates])

    worst1 = worst2 = -math.inf
    passed = True
    for alpha in np.linspace(0.0, 1.0, boundary_grid_size):
        b1, b2 = c1(float(alpha), ch.snr1), c2(float(alpha), ch.snr2)
        gap1 = b1 - r[:, 0]
        gap2 = b2 - r[:, 1]
        scaled = np.maximum(gap1 / g1, gap2 / g2)
        k = int(np.argmin(scaled))
        worst1 = max(worst1, gap1[k])
        worst2 = max(worst2, gap2[k])
        if gap1[k] > g1 + tol or gap2[k] > g2 + tol:
            passed = False
    return CoverageSummary(
        snr1_db=_to_db(ch.snr1), snr2_db=_to_db(ch.snr2),
        worst_gap1=worst1, worst_gap2=worst2,
        n_boundary=boundary_grid_size, passed=passed,
    )
