"""The alpha-mu power-gain family: density, distribution, moments, sampling,
and the moment-matched fit for sums of independent branch gains.

A power gain g follows the alpha-mu law with parameters (alpha, mu, omega)
when (g / omega)^(alpha/2) is standard-gamma distributed with shape mu.  The
canonical single-link normalization picks omega so that E[g] = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares
from scipy.special import gamma as _gamma
from scipy.special import gammainc, gammaln

__all__ = ["AlphaMuParams", "MomentFitError", "cdf_power_gain", "fit_sum_params",
           "moment_power_gain", "pdf_power_gain", "sample_power_gain"]

_FIT_LOG_ALPHA_BOUNDS = (np.log(0.2), np.log(20.0))
_FIT_LOG_MU_BOUNDS = (np.log(0.1), np.log(50.0))
_FIT_RESIDUAL_TOL = 1e-10


class MomentFitError(RuntimeError):
    """Moment-matching solve did not converge; carries the final residuals."""

    def __init__(self, message: str, residuals: tuple[float, float]):
        super().__init__(f"{message} (residuals={residuals[0]:.3e}, {residuals[1]:.3e})")
        self.residuals = residuals


@dataclass(frozen=True)
class AlphaMuParams:
    """Fading triple (alpha, mu, omega) with the derived scale constants.

    alpha > 0 is the medium non-linearity exponent, mu > 0 the multipath
    cluster count, omega > 0 the gain scale.  epsilon = 1/(omega*Gamma(mu))
    and theta = 1/omega recur in every closed form built on this family.
    """

    alpha: float
    mu: float
    omega: float

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.mu <= 0 or self.omega <= 0:
            raise ValueError(
                f"alpha-mu parameters must be positive, got "
                f"(alpha={self.alpha}, mu={self.mu}, omega={self.omega})"
            )

    @classmethod
    def canonical(cls, alpha: float, mu: float) -> "AlphaMuParams":
        """Unit-mean normalization: omega = Gamma(mu) / Gamma(mu + 2/alpha)."""
        if alpha <= 0 or mu <= 0:
            raise ValueError(f"alpha and mu must be positive, got ({alpha}, {mu})")
        return cls(alpha, mu, _gamma(mu) / _gamma(mu + 2.0 / alpha))

    @property
    def epsilon(self) -> float:
        return 1.0 / (self.omega * _gamma(self.mu))

    @property
    def theta(self) -> float:
        return 1.0 / self.omega

    def mean_power(self) -> float:
        """First moment of the power gain; 1 for canonical parameters."""
        return moment_power_gain(self, 1.0)


def pdf_power_gain(p: AlphaMuParams, x):
    """Density of the alpha-mu power gain at x > 0 (scalar or array)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("power-gain density is defined for x > 0 only")
    half_alpha = 0.5 * p.alpha
    out = (
        p.alpha
        * x ** (half_alpha * p.mu - 1.0)
        / (2.0 * p.omega ** (half_alpha * p.mu) * _gamma(p.mu))
        * np.exp(-((x / p.omega) ** half_alpha))
    )
    return out if out.ndim else float(out)


def cdf_power_gain(p: AlphaMuParams, x):
    """Distribution function of the power gain at x >= 0 (scalar or array)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("power-gain distribution is defined for x >= 0 only")
    out = gammainc(p.mu, (x / p.omega) ** (0.5 * p.alpha))
    return out if out.ndim else float(out)


def moment_power_gain(p: AlphaMuParams, order: float) -> float:
    """Moment E[g^order] = omega^order * Gamma(mu + 2*order/alpha) / Gamma(mu).

    Valid for order > -alpha*mu/2; below that the defining integral diverges.
    """
    if order <= -0.5 * p.alpha * p.mu:
        raise ValueError(
            f"moment of order {order} diverges (needs order > {-0.5 * p.alpha * p.mu})"
        )
    return p.omega**order * np.exp(gammaln(p.mu + 2.0 * order / p.alpha) - gammaln(p.mu))


def sample_power_gain(p: AlphaMuParams, rng: np.random.Generator, size=None):
    """Draw power-gain samples: g = omega * G^(2/alpha) with G ~ Gamma(mu, 1)."""
    g = rng.standard_gamma(p.mu, size=size)
    return p.omega * g ** (2.0 / p.alpha)


def _sum_moments(link: AlphaMuParams, count: int) -> tuple[float, float, float]:
    """Exact first three moments of a sum of `count` i.i.d. link gains."""
    m1 = moment_power_gain(link, 1.0)
    m2 = moment_power_gain(link, 2.0)
    m3 = moment_power_gain(link, 3.0)
    n = count
    s1 = n * m1
    s2 = n * m2 + n * (n - 1) * m1**2
    s3 = n * m3 + 3 * n * (n - 1) * m1 * m2 + n * (n - 1) * (n - 2) * m1**3
    return s1, s2, s3


def _log_moment_ratios(log_alpha: np.ndarray, log_mu: np.ndarray) -> tuple[float, float]:
    """log of E[g^2]/E[g]^2 and E[g^3]/E[g]^3, which depend on (alpha, mu) only."""
    alpha = np.exp(log_alpha)
    mu = np.exp(log_mu)
    g1 = gammaln(mu + 2.0 / alpha)
    r2 = gammaln(mu + 4.0 / alpha) + gammaln(mu) - 2.0 * g1
    r3 = gammaln(mu + 6.0 / alpha) + 2.0 * gammaln(mu) - 3.0 * g1
    return r2, r3


def fit_sum_params(link: AlphaMuParams, count: int) -> AlphaMuParams:
    """Alpha-mu parameters matching the first three moments of a branch sum.

    The sum of `count` i.i.d. gains is approximated by a single alpha-mu
    variable whose first three moments equal the exact sum moments.  The
    scale is eliminated through the first moment, which therefore matches
    exactly; the remaining two moment-ratio equations are solved for
    (alpha, mu) by a bounded damped least-squares iteration.  `count = 1`
    returns the link parameters unchanged.
    """
    if count < 1:
        raise ValueError(f"branch count must be >= 1, got {count}")
    if count == 1:
        return link
    s1, s2, s3 = _sum_moments(link, count)
    target = np.array([np.log(s2 / s1**2), np.log(s3 / s1**3)])

    def residuals(x):
        r2, r3 = _log_moment_ratios(x[0], x[1])
        return np.array([r2 - target[0], r3 - target[1]])

    x0 = np.array([np.log(link.alpha), np.log(link.mu * count)])
    x0 = np.clip(x0, [_FIT_LOG_ALPHA_BOUNDS[0], _FIT_LOG_MU_BOUNDS[0]],
                 [_FIT_LOG_ALPHA_BOUNDS[1], _FIT_LOG_MU_BOUNDS[1]])
    sol = least_squares(
        residuals,
        x0,
        bounds=([_FIT_LOG_ALPHA_BOUNDS[0], _FIT_LOG_MU_BOUNDS[0]],
                [_FIT_LOG_ALPHA_BOUNDS[1], _FIT_LOG_MU_BOUNDS[1]]),
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
    )
    res = residuals(sol.x)
    if np.max(np.abs(res)) > _FIT_RESIDUAL_TOL:
        raise MomentFitError(
            f"moment fit for count={count} did not reach tolerance {_FIT_RESIDUAL_TOL}",
            (float(res[0]), float(res[1])),
        )
    alpha_hat = float(np.exp(sol.x[0]))
    mu_hat = float(np.exp(sol.x[1]))
    omega_hat = s1 * _gamma(mu_hat) / _gamma(mu_hat + 2.0 / alpha_hat)
    return AlphaMuParams(alpha_hat, mu_hat, float(omega_hat))
