import math

import numpy as np
import pytest
from scipy.special import logsumexp

from gbctin import (
    GAUSSIAN_ENTROPY_BITS,
    SHAPING_LOSS_BITS,
    ChannelParams,
    OutOfRegimeError,
    alpha_star,
    effective_tin_channel,
    mi_exact_tin,
    mi_lb_user1,
    mi_lb_user2,
    mixture_entropy,
    ow_bound,
    rate_lower_bound,
)

# Golden value for atoms {-1, +1} with unit Gaussian noise, frozen from the
# trapezoid oracle below (fine grid over [-10, 10], step 1e-4).
GOLDEN_PM1_VAR1 = 2.5330397393135757


def trapezoid_entropy(amplitudes, probs, var, lo=-10.0, hi=10.0, step=1e-4):
    """Brute-force numerical integration oracle for mixture entropy."""
    y = np.arange(lo, hi + step / 2, step)
    z = -((y[:, None] - np.asarray(amplitudes)[None, :]) ** 2) / (2 * var) \
        + np.log(probs)[None, :]
    log_f = logsumexp(z, axis=1) - 0.5 * math.log(2 * math.pi * var)
    f = np.exp(log_f)
    return float(np.trapezoid(-f * log_f / math.log(2.0), y))


class TestMixtureEntropy:
    def test_pure_gaussian(self):
        assert mixture_entropy([0.0], [1.0], 1.0) == pytest.approx(
            GAUSSIAN_ENTROPY_BITS, abs=1e-12)

    def test_well_separated_pair(self):
        # Far-apart atoms contribute their full discrete entropy.
        h = mixture_entropy([-30.0, 30.0], [0.5, 0.5], 1.0)
        assert h == pytest.approx(1.0 + GAUSSIAN_ENTROPY_BITS, abs=1e-9)

    def test_golden_pm1(self):
        oracle = trapezoid_entropy([-1.0, 1.0], [0.5, 0.5], 1.0)
        assert oracle == pytest.approx(GOLDEN_PM1_VAR1, abs=1e-9)
        h = mixture_entropy([-1.0, 1.0], [0.5, 0.5], 1.0)
        assert h == pytest.approx(GOLDEN_PM1_VAR1, abs=1e-6)

    def test_quad_error_estimate(self):
        h, err = mixture_entropy([-1.0, 1.0], [0.5, 0.5], 1.0, return_err=True)
        assert err < 1e-9
        assert abs(h - GOLDEN_PM1_VAR1) <= max(err, 1e-12)

    def test_monte_carlo_agrees_with_quadrature(self):
        cases = [
            ([0.0], [1.0]),
            ([-1.0, 1.0], [0.5, 0.5]),
            ([-2.0, 0.0, 2.0], [0.25, 0.5, 0.25]),
        ]
        for atoms, probs in cases:
            hq, eq = mixture_entropy(atoms, probs, 1.0, return_err=True)
            hm, em = mixture_entropy(atoms, probs, 1.0, method="mc",
                                     mc_samples=200_000, seed=3, return_err=True)
            assert abs(hq - hm) <= eq + em

    def test_monte_carlo_deterministic(self):
        kw = dict(method="mc", mc_samples=50_000, seed=11)
        a = mixture_entropy([-1.0, 1.0], [0.5, 0.5], 1.0, **kw)
        b = mixture_entropy([-1.0, 1.0], [0.5, 0.5], 1.0, **kw)
        assert a == b

    def test_scale_invariance(self):
        # h(cS + cZ) = h(S + Z) + log2|c|
        atoms = np.array([-1.5, 0.2, 2.0])
        probs = np.array([0.3, 0.3, 0.4])
        base = mixture_entropy(atoms, probs, 1.3)
        for c in (0.25, 2.0, 17.0):
            scaled = mixture_entropy(c * atoms, probs, c * c * 1.3)
            assert scaled == pytest.approx(base + math.log2(c), abs=1e-9)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            mixture_entropy([], [], 1.0)
        with pytest.raises(ValueError):
            mixture_entropy([0.0], [0.5], 1.0)
        with pytest.raises(ValueError):
            mixture_entropy([0.0], [1.0], 0.0)
        with pytest.raises(ValueError):
            mixture_entropy([0.0], [1.0], 1.0, method="magic")


class TestOwBound:
    def test_clamped_at_zero(self):
        assert ow_bound(1.0, 2.0) == 0.0

    def test_shaping_loss_only_limit(self):
        for m in (2, 8):
            h = math.log2(m)
            assert ow_bound(h, math.inf) == pytest.approx(h - SHAPING_LOSS_BITS)

    def test_direct_arithmetic(self):
        expect = 3.0 - SHAPING_LOSS_BITS - 0.5 * math.log2(4.0 / 3.0)
        got = ow_bound(3.0, 6.0)
        assert got == pytest.approx(expect, abs=1e-12)
        assert got == pytest.approx(2.5379, abs=1e-4)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            ow_bound(-1.0, 2.0)
        with pytest.raises(ValueError):
            ow_bound(1.0, 0.0)


class TestExactMi:
    def test_alpha_zero_is_point_to_point(self):
        # No user-1 power: user 2 sees a clean M2-PAM at snr2.
        ch = ChannelParams.from_db(22.0, 12.0)
        est = mi_exact_tin(2, ch, 0.0, 3, 4)
        pam = math.sqrt(ch.snr2) * np.array([-3, -1, 1, 3]) / math.sqrt(5.0)
        h_y = mixture_entropy(pam, np.full(4, 0.25), 1.0)
        expect = h_y - GAUSSIAN_ENTROPY_BITS
        assert est.value == pytest.approx(expect, abs=1e-9)

    def test_noiseless_limit_user1(self):
        ch = ChannelParams(1e8, 1.0)
        est = mi_exact_tin(1, ch, 1.0, 4, 1)
        assert est.value == pytest.approx(2.0, abs=1e-6)

    def test_clamped_to_alphabet(self):
        ch = ChannelParams(1e9, 1.0)
        est = mi_exact_tin(1, ch, 1.0, 2, 1)
        assert 0.0 <= est.value <= 1.0

    def test_weak_user_beats_gaussian_boundary(self):
        # At (20, 10) dB with orders (3, 3) the weak user's PAM rate crosses
        # above the Gaussian boundary for part of the power sweep.
        from gbctin import c2
        ch = ChannelParams.from_db(20.0, 10.0)
        excess = []
        for alpha in np.linspace(0.5, 0.95, 10):
            est = mi_exact_tin(2, ch, float(alpha), 3, 3)
            excess.append(est.value - c2(float(alpha), ch.snr2) - est.err_est)
        assert max(excess) > 0.05

    def test_data_processing_limits(self):
        ch = ChannelParams.from_db(18.0, 9.0)
        for user, m_user in ((1, 3), (2, 3)):
            est = mi_exact_tin(user, ch, 0.08, 3, 3)
            snr = ch.snr1 if user == 1 else ch.snr2
            assert est.value <= math.log2(m_user) + est.err_est
            assert est.value <= 0.5 * math.log2(1.0 + snr) + est.err_est

    def test_monotone_in_snr(self):
        snr2 = 2.0
        values = []
        for snr1 in (8.0, 20.0, 50.0, 120.0):
            ch = ChannelParams(snr1, snr2)
            values.append(mi_exact_tin(1, ch, 0.15, 2, 2).value)
        assert all(b >= a - 1e-9 for a, b in zip(values, values[1:]))
        values = []
        for snr2 in (1.0, 4.0, 16.0, 64.0):
            ch = ChannelParams(1000.0, snr2)
            values.append(mi_exact_tin(2, ch, 0.15, 2, 2).value)
        assert all(b >= a - 1e-9 for a, b in zip(values, values[1:]))

    def test_quad_mc_agreement(self):
        ch = ChannelParams.from_db(20.0, 10.0)
        q = mi_exact_tin(2, ch, 0.2, 3, 3)
        m = mi_exact_tin(2, ch, 0.2, 3, 3, method="mc", mc_samples=200_000, seed=5)
        assert abs(q.value - m.value) <= q.err_est + m.err_est


class TestEffectiveChannel:
    def test_noise_variance_identity(self):
        ch = ChannelParams.from_db(20.0, 10.0)
        for alpha in (0.0, 0.2, 0.9):
            eff = effective_tin_channel(2, ch, alpha, 4, 2)
            assert eff.total_noise_var == pytest.approx(1.0 + alpha * ch.snr2,
                                                        abs=1e-9)
        norm = effective_tin_channel(2, ch, 0.2, 4, 2).normalized()
        assert norm.total_noise_var == pytest.approx(1.0, abs=1e-12)

    def test_signal_scaling(self):
        ch = ChannelParams.from_db(20.0, 10.0)
        eff = effective_tin_channel(1, ch, 0.3, 2, 3)
        assert np.allclose(eff.signal_amplitudes,
                           math.sqrt(0.3 * ch.snr1) * np.array([-1.0, 1.0]))
        assert eff.gaussian_var == 1.0


class TestClosedFormBounds:
    def test_user1_hand_value(self):
        got = mi_lb_user1(0.2, 15.0, 2, 2)
        assert got == pytest.approx(1.0 - SHAPING_LOSS_BITS - 0.5, abs=1e-12)
        assert got == pytest.approx(0.2454, abs=1e-4)

    def test_user1_composes_from_ow_bound(self):
        alpha, snr1, m1, m2 = 0.1, 40.0, 3, 2
        d = math.sqrt(12.0 * alpha * snr1 / (m1 * m1 - 1.0))
        assert mi_lb_user1(alpha, snr1, m1, m2) == pytest.approx(
            ow_bound(math.log2(m1), d), abs=1e-12)

    def test_user1_high_snr_limit(self):
        val = mi_lb_user1(alpha_star(4, 2), 1e9, 4, 2)
        assert val == pytest.approx(2.0 - SHAPING_LOSS_BITS, abs=1e-4)

    def test_user1_out_of_regime(self):
        with pytest.raises(OutOfRegimeError):
            mi_lb_user1(alpha_star(2, 2) * 1.01, 10.0, 2, 2)

    def test_user2_hand_value(self):
        got = mi_lb_user2(0.0, 4.0, 2)
        expect = 1.0 - SHAPING_LOSS_BITS - 0.5 * math.log2(1.0 + 3.0 / 4.0)
        assert got == pytest.approx(expect, abs=1e-12)
        assert got == pytest.approx(0.3417, abs=1e-4)

    def test_user2_high_snr_limit(self):
        assert mi_lb_user2(0.0, 1e9, 4) == pytest.approx(
            2.0 - SHAPING_LOSS_BITS, abs=1e-4)

    def test_user2_alpha_one_rejected(self):
        with pytest.raises(ValueError):
            mi_lb_user2(1.0, 10.0, 2)

    def test_dominance_over_grid(self):
        # The closed forms never exceed the exact TIN rate.
        ch = ChannelParams.from_db(20.0, 10.0)
        for m1, m2 in [(2, 2), (3, 3), (4, 2), (6, 2)]:
            astar = alpha_star(m1, m2)
            for alpha in np.geomspace(astar / 100.0, astar, 6):
                alpha = float(alpha)
                exact1 = mi_exact_tin(1, ch, alpha, m1, m2)
                exact2 = mi_exact_tin(2, ch, alpha, m1, m2)
                assert mi_lb_user1(alpha, ch.snr1, m1, m2) \
                    <= exact1.value + exact1.err_est + 1e-12
                assert mi_lb_user2(alpha, ch.snr2, m2) \
                    <= exact2.value + exact2.err_est + 1e-12

    def test_rate_lower_bound_corners(self):
        ch = ChannelParams.from_db(20.0, 10.0)
        assert rate_lower_bound(1, ch, 0.0, 2, 2) == 0.0
        assert rate_lower_bound(1, ch, 0.1, 1, 4) == 0.0
        assert rate_lower_bound(2, ch, 1.0, 2, 2) == 0.0
        assert rate_lower_bound(2, ch, 0.1, 4, 1) == 0.0
        assert rate_lower_bound(2, ch, 0.0, 1, 2) == pytest.approx(
            mi_lb_user2(0.0, ch.snr2, 2))
