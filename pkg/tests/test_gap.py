import math

import numpy as np
import pytest

from gbctin import (
    REFERENCE_VALUES,
    ChannelParams,
    SHAPING_LOSS_BITS,
    alpha_star,
    c1,
    c2,
    certify_case1,
    certify_case2,
    certify_coverage,
    certify_ts,
    gap_at,
    mi_lb_user1,
    mi_lb_user2,
    reference_constants,
)

CH = ChannelParams.from_db(22.0, 12.0)


class TestReferenceConstants:
    def test_all_match_quoted_values(self):
        computed = reference_constants()
        assert computed.keys() == REFERENCE_VALUES.keys()
        for name, quoted in REFERENCE_VALUES.items():
            assert computed[name] == pytest.approx(quoted, abs=1e-3), name

    def test_selected_closed_forms(self):
        computed = reference_constants()
        assert computed["gap1_case1"] == pytest.approx(
            0.5 * math.log2(1 + 12 / 5 + 1 / 4) + SHAPING_LOSS_BITS, abs=1e-12)
        assert computed["ts_total_user2"] == pytest.approx(
            computed["ts_chord_user2"] + computed["gap2_case1"], abs=1e-12)


class TestGapAt:
    def test_case1_config_passes(self):
        rep = gap_at(CH, 6, 2, alpha_star(6, 2), mi_mode="lb")
        assert rep.case_tag == "case1_alpha_star"
        assert rep.passed
        assert rep.delta1 < REFERENCE_VALUES["gap1_case1"]
        assert rep.delta2 < REFERENCE_VALUES["gap2_case1"]

    def test_exact_mode_negative_delta2(self):
        # PAM interference under TIN can beat the Gaussian boundary.
        ch = ChannelParams.from_db(20.0, 10.0)
        rep = gap_at(ch, 3, 3, 0.87, mi_mode="quad")
        assert rep.delta2 < 0.0

    def test_exact_dominates_closed_form(self):
        for alpha_frac in (0.3, 1.0):
            alpha = alpha_star(3, 4) * alpha_frac
            lb = gap_at(CH, 3, 4, alpha, mi_mode="lb")
            ex = gap_at(CH, 3, 4, alpha, mi_mode="quad")
            assert ex.delta1 <= lb.delta1 + 1e-9
            assert ex.delta2 <= lb.delta2 + 1e-9

    def test_single_user_alpha0(self):
        # Weak user alone at full power: gap to the Gaussian rate stays below
        # shaping plus minimum-distance loss.
        rep = gap_at(CH, 1, CH.n2, 0.0, mi_mode="quad")
        assert rep.case_tag == "single_user"
        assert rep.delta1 == 0.0
        bound = SHAPING_LOSS_BITS + 0.5 * math.log2(1 + (CH.n2**2 - 1) / CH.snr2)
        assert rep.delta2 < bound
        assert rep.passed

    def test_small_capacity_branch_tagged(self):
        ch = ChannelParams.from_db(20.0, 10.0)
        alpha = 1.0 / ch.snr1  # alpha * snr1 = 1 exactly
        m2 = ch.n2
        m1 = ch.n1 // m2  # the weak-user-saturating interior configuration
        assert alpha < alpha_star(m1, m2)
        rep = gap_at(ch, m1, m2, alpha, mi_mode="lb")
        assert rep.case_tag == "case2_interior"
        assert "small-capacity" in rep.notes
        assert rep.bound1 == pytest.approx(c1(alpha, ch.snr1))
        assert rep.bound1 == pytest.approx(0.5)
        assert rep.passed


class TestCertifyCase1:
    def test_single_point(self):
        reports = certify_case1([22.0], [12.0])
        assert {(r.m1, r.m2) for r in reports} == set(((3, 4), (4, 3), (5, 2), (6, 2)))
        assert all(r.passed for r in reports)
        assert all(r.alpha == alpha_star(r.m1, r.m2) for r in reports)

    def test_boundary_probe_2x2(self):
        # snr1 just above (m1*m2 - 1)^2 = 9 keeps (2, 2) in the case-1 list.
        s1db = 10.0 * math.log10(9.2)
        s2db = 10.0 * math.log10(4.5)
        reports = certify_case1([s1db], [s2db])
        pairs = {(r.m1, r.m2) for r in reports}
        assert (2, 2) in pairs
        rep = next(r for r in reports if (r.m1, r.m2) == (2, 2))
        assert rep.passed
        margin1 = REFERENCE_VALUES["gap1_case1"] - rep.delta1
        margin2 = REFERENCE_VALUES["gap2_case1"] - rep.delta2
        assert margin1 > 0.0 and margin2 > 0.0

    def test_snr2_order_respected(self):
        reports = certify_case1([10.0], [12.0])
        assert reports == []


class TestCertifyCase2:
    def test_small_scan_passes(self):
        reports = certify_case2(np.arange(15.0, 26.0), np.arange(7.0, 13.0))
        assert reports
        assert all(r.passed for r in reports)
        assert all(r.case_tag == "case2_interior" for r in reports)
        # snr2 above 4 linear gets the tight weak-user constant
        for r in reports:
            if 10 ** (r.snr2_db / 10) > 4.0:
                assert r.bound2 == REFERENCE_VALUES["gap2_case2"]

    def test_low_snr2_uses_combined_bound(self):
        reports = certify_case2([20.0], [4.0])  # snr2 = 2.51 linear
        assert reports
        for r in reports:
            assert r.bound2 == pytest.approx(1.661)
            assert "1.161" in r.notes
            assert r.delta2 < 0.5 * math.log2(5.0)  # below the case-analysis bound
            assert r.passed

    def test_degenerate_m1_skipped(self):
        # Close SNRs force m1 = floor(n1/n2) = 1: no interior regime.
        assert certify_case2([7.0], [6.0]) == []

    def test_snr2_at_branch_boundary(self):
        # snr2 = 4 linear sits on the combined-bound branch; as alpha -> 0 the
        # gap stays below the weak user's full-power Gaussian rate, 1.161.
        s2db = 10.0 * math.log10(4.0)
        ch = ChannelParams.from_db(20.0, s2db)
        m2 = ch.n2
        m1 = ch.n1 // m2
        for alpha in (1e-4, 1e-3, 1e-2):
            rep = gap_at(ch, m1, m2, alpha, mi_mode="lb")
            assert rep.delta2 <= 0.5 * math.log2(5.0)
            assert rep.bound2 == pytest.approx(1.661)


class TestCertifyTs:
    def test_22_12_bounds_hold(self):
        reports = certify_ts(CH, lambda_grid_size=33)
        assert {r.pair for r in reports} == set(
            (((3, 4), (4, 3)), ((4, 3), (5, 2)), ((5, 2), (6, 2))))
        for r in reports:
            assert r.passed
            assert r.max_c_gap1 < REFERENCE_VALUES["ts_chord_user1"]
            assert r.max_c_gap2 < REFERENCE_VALUES["ts_chord_user2"]
            assert r.max_total_gap1 < REFERENCE_VALUES["ts_total_user1"]
            assert r.max_total_gap2 < REFERENCE_VALUES["ts_total_user2"]

    def test_endpoint_lambda_reduces_to_point_gap(self):
        rep = next(r for r in certify_ts(CH, lambda_grid_size=9)
                   if r.pair == ((3, 4), (4, 3)))
        ala, alb = alpha_star(3, 4), alpha_star(4, 3)
        d1a = c1(ala, CH.snr1) - mi_lb_user1(ala, CH.snr1, 3, 4)
        d1b = c1(alb, CH.snr1) - mi_lb_user1(alb, CH.snr1, 4, 3)
        d2a = c2(ala, CH.snr2) - mi_lb_user2(ala, CH.snr2, 4)
        d2b = c2(alb, CH.snr2) - mi_lb_user2(alb, CH.snr2, 3)
        # Totals include both endpoints, where the mix is a pure alpha* point.
        assert rep.max_total_gap1 >= max(d1a, d1b) - 1e-12
        assert rep.max_total_gap2 >= max(d2a, d2b) - 1e-12
        assert max(d1a, d1b) < REFERENCE_VALUES["gap1_case1"]
        assert max(d2a, d2b) < REFERENCE_VALUES["gap2_case1"]

    def test_lambda_bound_along_segment(self):
        # Convex mixes inherit the endpoint constants for every lambda.
        rep = next(r for r in certify_ts(CH, lambda_grid_size=17)
                   if r.pair == ((4, 3), (5, 2)))
        (m1a, m2a), (m1b, m2b) = rep.pair
        ala, alb = alpha_star(m1a, m2a), alpha_star(m1b, m2b)
        ra = (mi_lb_user1(ala, CH.snr1, m1a, m2a), mi_lb_user2(ala, CH.snr2, m2a))
        rb = (mi_lb_user1(alb, CH.snr1, m1b, m2b), mi_lb_user2(alb, CH.snr2, m2b))
        ca = (c1(ala, CH.snr1), c2(ala, CH.snr2))
        cb = (c1(alb, CH.snr1), c2(alb, CH.snr2))
        for lam in np.linspace(0.0, 1.0, 17):
            gap1 = lam * ca[0] + (1 - lam) * cb[0] - (lam * ra[0] + (1 - lam) * rb[0])
            gap2 = lam * ca[1] + (1 - lam) * cb[1] - (lam * ra[1] + (1 - lam) * rb[1])
            assert gap1 < REFERENCE_VALUES["gap1_case1"]
            assert gap2 < REFERENCE_VALUES["gap2_case1"]

    def test_triangle_decomposition(self):
        # Totals never exceed the chord gap plus the worst endpoint gap.
        for rep in certify_ts(CH, lambda_grid_size=33):
            (m1a, m2a), (m1b, m2b) = rep.pair
            ala, alb = alpha_star(m1a, m2a), alpha_star(m1b, m2b)
            d1 = max(c1(ala, CH.snr1) - mi_lb_user1(ala, CH.snr1, m1a, m2a),
                     c1(alb, CH.snr1) - mi_lb_user1(alb, CH.snr1, m1b, m2b))
            d2 = max(c2(ala, CH.snr2) - mi_lb_user2(ala, CH.snr2, m2a),
                     c2(alb, CH.snr2) - mi_lb_user2(alb, CH.snr2, m2b))
            assert rep.max_total_gap1 <= rep.max_c_gap1 + d1 + 1e-9
            assert rep.max_total_gap2 <= rep.max_c_gap2 + d2 + 1e-9

    def test_no_adjacent_pairs(self):
        assert certify_ts(ChannelParams(25.0, 4.0)) == []

    def test_degenerate_pair_zero_chord(self):
        # Identical boundary points leave no chord gap by construction.
        al = alpha_star(3, 4)
        assert c1(al, CH.snr1) - c1(al, CH.snr1) == 0.0
        assert c2(al, CH.snr2) - c2(al, CH.snr2) == 0.0


class TestCertifyCoverage:
    def test_22_12_passes(self):
        summary = certify_coverage(CH, boundary_grid_size=65, mi_mode="lb")
        assert summary.passed
        assert summary.worst_gap1 <= REFERENCE_VALUES["ts_total_user1"]
        assert summary.worst_gap2 <= REFERENCE_VALUES["ts_total_user2"]

    def test_invalid_snr_order(self):
        with pytest.raises(ValueError):
            ChannelParams.from_db(12.0, 12.0)

    def test_low_snr_trivially_within(self):
        ch = ChannelParams.from_db(-1.0, -3.0)
        assert c1(1.0, ch.snr1) < 1.0
        summary = certify_coverage(ch, boundary_grid_size=17, mi_mode="lb",
                                   alpha_grid_size=8)
        assert summary.passed

    def test_worst_gaps_nontrivial(self):
        summary = certify_coverage(CH, boundary_grid_size=33, mi_mode="lb",
                                   alpha_grid_size=16)
        assert summary.worst_gap1 > 0.0
        assert summary.n_boundary == 33
