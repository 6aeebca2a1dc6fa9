"""Mutual information of discrete inputs over Gaussian-mixture TIN channels.

Exact values come from the differential entropy of a discrete atom set plus
Gaussian noise, evaluated with per-atom Gauss-Hermite quadrature (or seeded
Monte Carlo).  Closed-form lower bounds combine the entropy/minimum-distance
bound with the minimum distance of each user's effective constellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.special import logsumexp

from .constellation import (
    ChannelParams,
    OutOfRegimeError,
    alpha_star,
    make_pam,
    superimpose,
)

__all__ = [
    "MiEstimate",
    "EffectiveChannel",
    "GAUSSIAN_ENTROPY_BITS",
    "SHAPING_LOSS_BITS",
    "mixture_entropy",
    "effective_tin_channel",
    "mi_exact_tin",
    "rate_lower_bound",
    "ow_bound",
    "mi_lb_user1",
    "mi_lb_user2",
]

_LN2 = math.log(2.0)

#: Differential entropy of N(0, 1) in bits, 0.5*log2(2*pi*e).
GAUSSIAN_ENTROPY_BITS = 0.5 * math.log2(2.0 * math.pi * math.e)

#: Shaping loss of a uniform distribution versus Gaussian, 0.5*log2(2*pi*e/12).
SHAPING_LOSS_BITS = 0.5 * math.log2(2.0 * math.pi * math.e / 12.0)


@dataclass(frozen=True)
class MiEstimate:
    """A mutual-information value in bits with its estimated absolute error."""

    value: float
    method: str  # quadrature | monte_carlo | closed_form_lb
    err_est: float = 0.0


@dataclass(frozen=True)
class EffectiveChannel:
    """One user's TIN channel: scaled signal atoms, interference atoms, noise.

    The effective noise seen by the receiver is the interference mixture plus
    the unit Gaussian; ``total_noise_var`` records its variance.
    """

    signal_amplitudes: np.ndarray = field(repr=False)
    signal_probs: np.ndarray = field(repr=False)
    noise_amplitudes: np.ndarray = field(repr=False)
    noise_probs: np.ndarray = field(repr=False)
    gaussian_var: float = 1.0

    @property
    def total_noise_var(self) -> float:
        mean = float(np.sum(self.noise_probs * self.noise_amplitudes))
        second = float(np.sum(self.noise_probs * self.noise_amplitudes**2))
        return second - mean * mean + self.gaussian_var

    def normalized(self) -> "EffectiveChannel":
        """Rescale so the effective noise has unit variance."""
        s = math.sqrt(self.total_noise_var)
        return EffectiveChannel(
            signal_amplitudes=self.signal_amplitudes / s,
            signal_probs=self.signal_probs,
            noise_amplitudes=self.noise_amplitudes / s,
            noise_probs=self.noise_probs,
            gaussian_var=self.gaussian_var / (s * s),
        )


@lru_cache(maxsize=16)
def _gh_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    return hermgauss(order)


def _log_mixture_pdf(y: np.ndarray, amplitudes: np.ndarray, log_probs: np.ndarray,
                     var: float) -> np.ndarray:
    # log f(y) via logsumexp; keeps far tails finite where exp() underflows.
    z = -((y[:, None] - amplitudes[None, :]) ** 2) / (2.0 * var) + log_probs[None, :]
    return logsumexp(z, axis=1) - 0.5 * math.log(2.0 * math.pi * var)


def _entropy_quad(amplitudes: np.ndarray, probs: np.ndarray, var: float,
                  order: int) -> float:
    # h(S+Z) = -sum_i p_i / sqrt(pi) * sum_j w_j log2 f(x_i + sqrt(2 var) t_j)
    t, w = _gh_nodes(order)
    sig = math.sqrt(2.0 * var)
    y = (amplitudes[None, :] + sig * t[:, None]).ravel()
    log_p = np.log(probs)
    lf = _log_mixture_pdf(y, amplitudes, log_p, var).reshape(order, len(amplitudes))
    per_atom = (w[:, None] * lf).sum(axis=0) / math.sqrt(math.pi)
    return float(-(probs * per_atom).sum() / _LN2)


def _entropy_mc(amplitudes: np.ndarray, probs: np.ndarray, var: float,
                n_samples: int, seed: int, batch: int = 65536) -> tuple[float, float]:
    rng = np.random.default_rng(seed)
    log_p = np.log(probs)
    sig = math.sqrt(var)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < n_samples:
        n = min(batch, n_samples - done)
        idx = rng.choice(len(amplitudes), size=n, p=probs)
        y = amplitudes[idx] + rng.normal(scale=sig, size=n)
        vals = -_log_mixture_pdf(y, amplitudes, log_p, var) / _LN2
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
        done += n
    mean = total / n_samples
    variance = max(total_sq / n_samples - mean * mean, 0.0)
    err = 3.0 * math.sqrt(variance / n_samples)
    return mean, err


def mixture_entropy(amplitudes, probs, var: float, method: str = "quad",
                    order: int = 96, mc_samples: int = 1_000_000, seed: int = 0,
                    return_err: bool = False):
    """Differential entropy in bits of (discrete atom + Gaussian noise).

    Parameters
    ----------
    amplitudes, probs : array_like
        Atom positions and probabilities (probs must sum to 1).
    var : float
        Variance of the additive zero-mean Gaussian component, > 0.
    method : {"quad", "mc"}
        Per-atom Gauss-Hermite quadrature or seeded Monte Carlo.
    order : int
        Quadrature order; the error estimate comes from doubling it, and the
        doubled-order value is returned.
    mc_samples, seed : int
        Monte Carlo sample count and generator seed; the error estimate is
        3 * (sample std) / sqrt(n).
    return_err : bool
        When true, return ``(value, err_est)`` instead of the bare value.
    """
    amplitudes = np.asarray(amplitudes, dtype=float).ravel()
    probs = np.asarray(probs, dtype=float).ravel()
    if amplitudes.size == 0:
        raise ValueError("mixture_entropy needs at least one atom")
    if amplitudes.shape != probs.shape:
        raise ValueError("amplitudes and probs must have matching shapes")
    if abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {probs.sum()}, expected 1")
    if not var > 0.0:
        raise ValueError(f"variance must be positive, got {var}")

    if method == "quad":
        coarse = _entropy_quad(amplitudes, probs, var, order)
        fine = _entropy_quad(amplitudes, probs, var, 2 * order)
        value, err = fine, abs(fine - coarse)
    elif method == "mc":
        value, err = _entropy_mc(amplitudes, probs, var, mc_samples, seed)
    else:
        raise ValueError(f"unknown method {method!r}")
    return (value, err) if return_err else value


def effective_tin_channel(user: int, ch: ChannelParams, alpha: float,
                          m1: int, m2: int) -> EffectiveChannel:
    """Decompose one user's received signal into signal/interference atoms.

    User k observes sqrt(SNR_k) * (sqrt(alpha) X1 + sqrt(1-alpha) X2) + Z with
    Z ~ N(0,1); the other user's scaled alphabet is the interference part.
    """
    if user not in (1, 2):
        raise ValueError(f"user must be 1 or 2, got {user}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    snr = ch.snr1 if user == 1 else ch.snr2
    own, other = (m1, m2) if user == 1 else (m2, m1)
    own_w, other_w = (alpha, 1.0 - alpha) if user == 1 else (1.0 - alpha, alpha)
    own_pts = make_pam(own).points
    other_pts = make_pam(other).points
    return EffectiveChannel(
        signal_amplitudes=math.sqrt(snr * own_w) * own_pts,
        signal_probs=np.full(own, 1.0 / own),
        noise_amplitudes=math.sqrt(snr * other_w) * other_pts,
        noise_probs=np.full(other, 1.0 / other),
        gaussian_var=1.0,
    )


def mi_exact_tin(user: int, ch: ChannelParams, alpha: float, m1: int, m2: int,
                 method: str = "quad", order: int = 96,
                 mc_samples: int = 1_000_000, seed: int = 0) -> MiEstimate:
    """Exact I(X_k; Y_k) in bits under TIN decoding.

    Computed as h(Y_k) - h(Y_k | X_k): the first term is the entropy of the
    full scaled superposition plus noise, the second the entropy of the
    interfering user's scaled alphabet plus noise.  The result is clamped to
    [0, log2 M_k].
    """
    if user not in (1, 2):
        raise ValueError(f"user must be 1 or 2, got {user}")
    snr = ch.snr1 if user == 1 else ch.snr2
    sc = superimpose(make_pam(m1), make_pam(m2), alpha, 1.0)
    h_y, e1 = mixture_entropy(math.sqrt(snr) * sc.amplitudes, sc.probs, 1.0,
                              method=method, order=order, mc_samples=mc_samples,
                              seed=seed, return_err=True)
    eff = effective_tin_channel(user, ch, alpha, m1, m2)
    h_cond, e2 = mixture_entropy(eff.noise_amplitudes, eff.noise_probs, 1.0,
                                 method=method, order=order, mc_samples=mc_samples,
                                 seed=seed + 1, return_err=True)
    m_user = m1 if user == 1 else m2
    value = min(max(h_y - h_cond, 0.0), math.log2(m_user))
    name = "quadrature" if method == "quad" else "monte_carlo"
    return MiEstimate(value=value, method=name, err_est=e1 + e2)


def ow_bound(entropy_bits: float, dmin: float) -> float:
    """Entropy/minimum-distance lower bound on I(F; F + Z), Var(Z) = 1.

    max(0, H(F) - 0.5*log2(2*pi*e/12) - 0.5*log2(1 + 12/dmin^2)); an infinite
    minimum distance leaves only the shaping-loss term.
    """
    if entropy_bits < 0.0:
        raise ValueError(f"entropy must be nonnegative, got {entropy_bits}")
    if not dmin > 0.0:
        raise ValueError(f"dmin must be positive (or inf), got {dmin}")
    if math.isinf(dmin):
        penalty = 0.0
    else:
        penalty = 0.5 * math.log2(1.0 + 12.0 / (dmin * dmin))
    return max(0.0, entropy_bits - SHAPING_LOSS_BITS - penalty)


def mi_lb_user1(alpha: float, snr1: float, m1: int, m2: int) -> float:
    """Closed-form lower bound on user 1's TIN rate, valid for alpha <= alpha*.

    Equals ow_bound(log2 m1, d) with d^2 = 12*alpha*snr1/(m1^2 - 1), the
    minimum distance of the scaled non-overlapping superposition.
    """
    if m1 < 2:
        raise ValueError("mi_lb_user1 requires m1 >= 2")
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not snr1 > 0.0:
        raise ValueError(f"snr1 must be positive, got {snr1}")
    astar = alpha_star(m1, m2)
    if alpha > astar * (1.0 + 1e-12):
        raise OutOfRegimeError(
            f"alpha={alpha} exceeds alpha*={astar} for ({m1},{m2})"
        )
    d = math.sqrt(12.0 * alpha * snr1 / (m1 * m1 - 1.0))
    return ow_bound(math.log2(m1), d)


def mi_lb_user2(alpha: float, snr2: float, m2: int) -> float:
    """Closed-form lower bound on user 2's TIN rate for alpha in [0, 1).

    Uses the effective channel in which the interference-plus-noise mixture is
    normalized to unit variance, so the signal minimum distance is
    d^2 = 12*(1-alpha)*snr2 / ((1+alpha*snr2)*(m2^2-1)).
    """
    if m2 < 2:
        raise ValueError("mi_lb_user2 requires m2 >= 2")
    if not snr2 > 0.0:
        raise ValueError(f"snr2 must be positive, got {snr2}")
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")
    d = math.sqrt(12.0 * (1.0 - alpha) * snr2
                  / ((1.0 + alpha * snr2) * (m2 * m2 - 1.0)))
    return ow_bound(math.log2(m2), d)


def rate_lower_bound(user: int, ch: ChannelParams, alpha: float,
                     m1: int, m2: int) -> float:
    """Closed-form TIN rate bound with the degenerate corners mapped to 0."""
    if user == 1:
        if m1 < 2 or alpha == 0.0:
            return 0.0
        return mi_lb_user1(alpha, ch.snr1, m1, m2)
    if user == 2:
        if m2 < 2 or alpha == 1.0:
            return 0.0
        return mi_lb_user2(alpha, ch.snr2, m2)
    raise ValueError(f"user must be 1 or 2, got {user}")
