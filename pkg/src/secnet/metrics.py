"""Closed-form secrecy metrics for the k-th nearest / k-th best receiver.

Every quantity here is an exact expression built from gamma-family functions
and Fox H-function instances: the composite-gain laws of both orderings, the
connection outage probability, the probability of non-zero secrecy capacity
for the four receiver/eavesdropper pairings, the largest securely served
best-user index, and the ergodic (secrecy) capacities.  Independent
validation routes (direct quadrature of the defining integrals and full
network simulation) live in :mod:`secnet.montecarlo`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gamma as _gamma
from scipy.special import gammaincc, gammaln

from .fading import AlphaMuParams, fit_sum_params
from .specfun import FoxHParams, fox_h
from .stochgeo import NetworkGeometry

__all__ = [
    "CASES",
    "ScenarioConfig",
    "cdf_composite_best",
    "cdf_composite_nearest",
    "cop",
    "cop_best",
    "cop_nearest",
    "ergodic_capacity_best",
    "ergodic_capacity_nearest",
    "ergodic_secrecy_capacity",
    "fox_h_instances",
    "max_secure_best_users",
    "pdf_composite_best",
    "pdf_composite_nearest",
    "pnz",
    "pnz_bb",
    "pnz_bn",
    "pnz_nb",
    "pnz_nn",
    "wiretap_capacity",
]

ORDERINGS = ("nearest", "best")
# Case labels: first letter is the legitimate ordering, second the
# eavesdropper policy (N = nearest, B = best).
CASES = ("NN", "BB", "NB", "BN")


@dataclass(frozen=True)
class ScenarioConfig:
    """One fully resolved network scenario.

    The geometry embeds the composite (post branch-sum fit) fading of both
    sides.  SNR scale factors are linear; dB conversion happens at config
    parse time, never here.
    """

    geometry: NetworkGeometry
    n_a: int = 1
    n_b: int = 1
    n_e: int = 1
    eta_k: float = 1.0
    eta_e: float = 1.0
    rate: float = 1.0
    user_index: int = 1
    ordering: str = "nearest"
    eavesdropper_policy: str = "nearest"

    def __post_init__(self) -> None:
        if self.geometry.fading_b is None or self.geometry.fading_e is None:
            raise ValueError("scenario geometry must embed composite fading for both sides")
        if min(self.n_a, self.n_b, self.n_e) < 1:
            raise ValueError("antenna counts must be positive integers")
        if self.eta_k <= 0 or self.eta_e <= 0:
            raise ValueError("SNR scale factors must be positive")
        if self.rate < 0:
            raise ValueError(f"transmission rate must be non-negative, got {self.rate}")
        if self.user_index < 1:
            raise ValueError(f"user index must be >= 1, got {self.user_index}")
        if self.ordering not in ORDERINGS:
            raise ValueError(f"ordering must be one of {ORDERINGS}, got {self.ordering!r}")
        if self.eavesdropper_policy not in ORDERINGS:
            raise ValueError(
                f"eavesdropper policy must be one of {ORDERINGS}, got {self.eavesdropper_policy!r}"
            )

    @classmethod
    def build(
        cls,
        *,
        d: int = 2,
        upsilon: float = 2.0,
        lambda_b: float = 1.0,
        lambda_e: float = 1.0,
        alpha_b: float = 2.0,
        mu_b: float = 1.0,
        alpha_e: float = 2.0,
        mu_e: float = 1.0,
        n_a: int = 1,
        n_b: int = 1,
        n_e: int = 1,
        eta_k: float = 1.0,
        eta_e: float = 1.0,
        rate: float = 1.0,
        user_index: int = 1,
        ordering: str = "nearest",
        eavesdropper_policy: str = "nearest",
    ) -> "ScenarioConfig":
        """Assemble a scenario from per-link fading and antenna counts.

        Each antenna pair contributes one unit-mean alpha-mu branch gain; the
        summed gain of the n_a * n_b (or n_a * n_e) branches is reduced to a
        single alpha-mu variable by the three-moment fit.
        """
        comp_b = fit_sum_params(AlphaMuParams.canonical(alpha_b, mu_b), n_a * n_b)
        comp_e = fit_sum_params(AlphaMuParams.canonical(alpha_e, mu_e), n_a * n_e)
        geometry = NetworkGeometry(
            d=d, upsilon=upsilon, lambda_b=lambda_b, lambda_e=lambda_e,
            fading_b=comp_b, fading_e=comp_e,
        )
        return cls(
            geometry=geometry, n_a=n_a, n_b=n_b, n_e=n_e,
            eta_k=eta_k, eta_e=eta_e, rate=rate, user_index=user_index,
            ordering=ordering, eavesdropper_policy=eavesdropper_policy,
        )

    @property
    def fading_b(self) -> AlphaMuParams:
        return self.geometry.fading_b

    @property
    def fading_e(self) -> AlphaMuParams:
        return self.geometry.fading_e

    @property
    def varpi(self) -> float:
        """Ratio of the legitimate to the eavesdropper SNR scale."""
        return self.eta_k / self.eta_e

    @property
    def outage_threshold(self) -> float:
        """Composite-gain level below which decoding at the configured rate fails."""
        return (2.0**self.rate - 1.0) / self.eta_k

    @property
    def case(self) -> str:
        return ("N" if self.ordering == "nearest" else "B") + (
            "N" if self.eavesdropper_policy == "nearest" else "B"
        )

    def with_case(self, case: str) -> "ScenarioConfig":
        if case not in CASES:
            raise ValueError(f"case must be one of {CASES}, got {case!r}")
        return replace(
            self,
            ordering="nearest" if case[0] == "N" else "best",
            eavesdropper_policy="nearest" if case[1] == "N" else "best",
        )


# ---------------------------------------------------------------------------
# Fox H instances.  Each builder returns (prefactor, params, argument) such
# that the quantity equals prefactor * H(argument) plus any affine offset
# applied by the caller.
# ---------------------------------------------------------------------------


def _pdf_nearest_instance(fad: AlphaMuParams, rate: float, delta: float, k: int):
    inv_delta = 1.0 / delta
    params = FoxHParams(
        m=1, n=1,
        upper_coeffs=((1.0 - k - inv_delta, inv_delta),),
        lower_coeffs=((fad.mu - 2.0 / fad.alpha, 2.0 / fad.alpha),),
    )
    pref = fad.epsilon / (rate**inv_delta * _gamma(k))
    scale = fad.theta / rate**inv_delta
    return pref, params, scale


def _cdf_nearest_instance(fad: AlphaMuParams, rate: float, delta: float, k: int):
    inv_delta = 1.0 / delta
    params = FoxHParams(
        m=2, n=1,
        upper_coeffs=((1.0 - k, inv_delta), (1.0, 1.0)),
        lower_coeffs=((0.0, 1.0), (fad.mu, 2.0 / fad.alpha)),
    )
    pref = 1.0 / (_gamma(fad.mu) * _gamma(k))
    scale = fad.theta / rate**inv_delta
    return pref, params, scale


def _pnz_nn_instance(cfg: ScenarioConfig):
    geo = cfg.geometry
    fb, fe = cfg.fading_b, cfg.fading_e
    inv_delta = 1.0 / geo.delta
    k = cfg.user_index
    params = FoxHParams(
        m=3, n=2,
        upper_coeffs=((1.0 - fb.mu, 2.0 / fb.alpha), (0.0, inv_delta), (1.0, 1.0)),
        lower_coeffs=((0.0, 1.0), (fe.mu, 2.0 / fe.alpha), (float(k), inv_delta)),
    )
    arg = (fe.theta * cfg.varpi / fb.theta) * (
        geo.pathloss_rate("legitimate") / geo.pathloss_rate("eavesdropper")
    ) ** inv_delta
    pref = 1.0 / (_gamma(fb.mu) * _gamma(fe.mu) * _gamma(k))
    return pref, params, arg


def _pnz_nb_instance(cfg: ScenarioConfig):
    geo = cfg.geometry
    fb = cfg.fading_b
    inv_delta = 1.0 / geo.delta
    k = cfg.user_index
    params = FoxHParams(
        m=1, n=3,
        upper_coeffs=((1.0, 1.0), (1.0 - fb.mu, 2.0 / fb.alpha), (0.0, inv_delta)),
        lower_coeffs=((float(k), inv_delta), (0.0, 1.0)),
    )
    arg = (cfg.varpi / fb.theta) * (
        geo.pathloss_rate("legitimate") / geo.composite_rate("eavesdropper")
    ) ** inv_delta
    pref = 1.0 / (_gamma(fb.mu) * _gamma(k))
    return pref, params, arg


def _pnz_bn_instance(cfg: ScenarioConfig):
    geo = cfg.geometry
    fe = cfg.fading_e
    inv_delta = 1.0 / geo.delta
    k = cfg.user_index
    params = FoxHParams(
        m=1, n=3,
        upper_coeffs=((1.0, 1.0), (1.0 - fe.mu, 2.0 / fe.alpha), (1.0 - k, inv_delta)),
        lower_coeffs=((1.0, inv_delta), (0.0, 1.0)),
    )
    arg = (1.0 / (fe.theta * cfg.varpi)) * (
        geo.pathloss_rate("eavesdropper") / geo.composite_rate("legitimate")
    ) ** inv_delta
    pref = 1.0 / (_gamma(fe.mu) * _gamma(k))
    return pref, params, arg


def _capacity_nearest_instance(fad: AlphaMuParams, rate: float, delta: float, k: int, eta: float):
    inv_delta = 1.0 / delta
    params = FoxHParams(
        m=2, n=3,
        upper_coeffs=((1.0, 1.0), (1.0, 1.0), (1.0 - fad.mu, 2.0 / fad.alpha)),
        lower_coeffs=((1.0, 1.0), (float(k), inv_delta), (0.0, 1.0)),
    )
    arg = eta * rate**inv_delta / fad.theta
    pref = 1.0 / (_gamma(fad.mu) * _gamma(k) * math.log(2.0))
    return pref, params, arg


def _capacity_best_instance(comp_rate: float, delta: float, k: int, eta: float):
    params = FoxHParams(
        m=2, n=2,
        upper_coeffs=((1.0, delta), (1.0, delta)),
        lower_coeffs=((float(k), 1.0), (1.0, delta), (0.0, delta)),
    )
    arg = comp_rate * eta**delta
    pref = delta / (_gamma(k) * math.log(2.0))
    return pref, params, arg


def fox_h_instances(cfg: ScenarioConfig) -> dict[str, tuple[FoxHParams, float]]:
    """All Fox H instances a scenario's closed forms evaluate, with arguments.

    Exposed so that numerical invariants (contour independence, imaginary
    residue) can be checked on exactly the in-scope instance set.
    """
    geo = cfg.geometry
    k = cfg.user_index
    delta = geo.delta
    z_ref = max(cfg.outage_threshold, 0.25)
    out: dict[str, tuple[FoxHParams, float]] = {}
    _, p, s = _pdf_nearest_instance(cfg.fading_b, geo.pathloss_rate("legitimate"), delta, k)
    out["pdf_nearest"] = (p, s * z_ref)
    _, p, s = _cdf_nearest_instance(cfg.fading_b, geo.pathloss_rate("legitimate"), delta, k)
    out["cdf_nearest"] = (p, s * z_ref)
    _, p, a = _pnz_nn_instance(cfg)
    out["pnz_nn"] = (p, a)
    _, p, a = _pnz_nb_instance(cfg)
    out["pnz_nb"] = (p, a)
    _, p, a = _pnz_bn_instance(cfg)
    out["pnz_bn"] = (p, a)
    _, p, a = _capacity_nearest_instance(
        cfg.fading_b, geo.pathloss_rate("legitimate"), delta, k, cfg.eta_k
    )
    out["capacity_nearest"] = (p, a)
    _, p, a = _capacity_best_instance(geo.composite_rate("legitimate"), delta, k, cfg.eta_k)
    out["capacity_best"] = (p, a)
    return out


# ---------------------------------------------------------------------------
# Composite channel gain laws
# ---------------------------------------------------------------------------


def pdf_composite_nearest(cfg: ScenarioConfig, z: float) -> float:
    """Density of the k-th nearest receiver's composite gain g / r^upsilon."""
    if z <= 0:
        raise ValueError(f"composite-gain density needs z > 0, got {z}")
    geo = cfg.geometry
    pref, params, scale = _pdf_nearest_instance(
        cfg.fading_b, geo.pathloss_rate("legitimate"), geo.delta, cfg.user_index
    )
    return pref * fox_h(params, scale * z)


def cdf_composite_nearest(cfg: ScenarioConfig, z: float) -> float:
    """Distribution of the k-th nearest receiver's composite gain."""
    if z < 0:
        raise ValueError(f"composite-gain distribution needs z >= 0, got {z}")
    if z == 0:
        return 0.0
    geo = cfg.geometry
    pref, params, scale = _cdf_nearest_instance(
        cfg.fading_b, geo.pathloss_rate("legitimate"), geo.delta, cfg.user_index
    )
    return min(max(1.0 - pref * fox_h(params, scale * z), 0.0), 1.0)


def pdf_composite_best(cfg: ScenarioConfig, z: float) -> float:
    """Density of the k-th best receiver's composite gain.

    The k-th best receiver holds the k-th smallest fading-weighted path loss
    xi; its composite gain is 1/xi with density
    exp(-rate * z^-delta) * delta * (rate * z^-delta)^k / (z * Gamma(k)).
    """
    if z <= 0:
        raise ValueError(f"composite-gain density needs z > 0, got {z}")
    geo = cfg.geometry
    k = cfg.user_index
    u = geo.composite_rate("legitimate") * z ** (-geo.delta)
    return float(np.exp(-u + k * np.log(u) - gammaln(k)) * geo.delta / z)


def cdf_composite_best(cfg: ScenarioConfig, z: float) -> float:
    """Distribution of the k-th best receiver's composite gain; 0 at z = 0."""
    if z < 0:
        raise ValueError(f"composite-gain distribution needs z >= 0, got {z}")
    if z == 0:
        return 0.0
    geo = cfg.geometry
    return float(gammaincc(cfg.user_index, geo.composite_rate("legitimate") * z ** (-geo.delta)))


# ---------------------------------------------------------------------------
# Connection outage probability
# ---------------------------------------------------------------------------


def cop_nearest(cfg: ScenarioConfig) -> float:
    """Probability that the k-th nearest receiver cannot decode at the rate."""
    return cdf_composite_nearest(cfg, cfg.outage_threshold)


def cop_best(cfg: ScenarioConfig) -> float:
    """Probability that the k-th best receiver cannot decode at the rate."""
    return cdf_composite_best(cfg, cfg.outage_threshold)


def cop(cfg: ScenarioConfig) -> float:
    """Connection outage probability under the scenario's ordering policy."""
    return cop_nearest(cfg) if cfg.ordering == "nearest" else cop_best(cfg)


# ---------------------------------------------------------------------------
# Probability of non-zero secrecy capacity (four pairings, strongest
# eavesdropper of the respective policy)
# ---------------------------------------------------------------------------


def pnz_nn(cfg: ScenarioConfig) -> float:
    """k-th nearest receiver against the first nearest eavesdropper."""
    pref, params, arg = _pnz_nn_instance(cfg)
    return min(max(1.0 - pref * fox_h(params, arg), 0.0), 1.0)


def pnz_bb(cfg: ScenarioConfig) -> float:
    """k-th best receiver against the first best eavesdropper."""
    geo = cfg.geometry
    rb = geo.composite_rate("legitimate")
    re = geo.composite_rate("eavesdropper")
    base = rb / (rb + re * cfg.varpi ** (-geo.delta))
    return base**cfg.user_index


def pnz_nb(cfg: ScenarioConfig) -> float:
    """k-th nearest receiver against the first best eavesdropper."""
    pref, params, arg = _pnz_nb_instance(cfg)
    return min(max(pref * fox_h(params, arg), 0.0), 1.0)


def pnz_bn(cfg: ScenarioConfig) -> float:
    """k-th best receiver against the first nearest eavesdropper."""
    pref, params, arg = _pnz_bn_instance(cfg)
    return min(max(1.0 - pref * fox_h(params, arg), 0.0), 1.0)


_PNZ_DISPATCH = {"NN": pnz_nn, "BB": pnz_bb, "NB": pnz_nb, "BN": pnz_bn}


def pnz(cfg: ScenarioConfig, case: str | None = None) -> float:
    """Probability of non-zero secrecy capacity for the given pairing."""
    case = cfg.case if case is None else case
    if case not in CASES:
        raise ValueError(f"case must be one of {CASES}, got {case!r}")
    return _PNZ_DISPATCH[case](cfg.with_case(case))


def max_secure_best_users(cfg: ScenarioConfig, tau: float) -> int:
    """Largest best-user index still meeting the secrecy level tau.

    The non-zero-secrecy probability against the best eavesdropper decays
    geometrically in the user index with base
    rate_b / (rate_b + rate_e * varpi^-delta); the largest index keeping it
    at or above tau is the floor of log_base(tau).
    """
    if not 0.0 < tau < 1.0:
        raise ValueError(f"secrecy level must lie in (0, 1), got {tau}")
    geo = cfg.geometry
    rb = geo.composite_rate("legitimate")
    re = geo.composite_rate("eavesdropper")
    base = rb / (rb + re * cfg.varpi ** (-geo.delta))
    exact = math.log(tau) / math.log(base)
    nearest = round(exact)
    if abs(exact - nearest) < 1e-9:
        return max(int(nearest), 0)
    return max(int(math.floor(exact)), 0)


# ---------------------------------------------------------------------------
# Ergodic capacity and ergodic secrecy capacity
# ---------------------------------------------------------------------------


def ergodic_capacity_nearest(cfg: ScenarioConfig) -> float:
    """Mean link capacity (bits/s/Hz) of the k-th nearest receiver."""
    geo = cfg.geometry
    pref, params, arg = _capacity_nearest_instance(
        cfg.fading_b, geo.pathloss_rate("legitimate"), geo.delta, cfg.user_index, cfg.eta_k
    )
    return max(pref * fox_h(params, arg), 0.0)


def ergodic_capacity_best(cfg: ScenarioConfig) -> float:
    """Mean link capacity (bits/s/Hz) of the k-th best receiver."""
    geo = cfg.geometry
    pref, params, arg = _capacity_best_instance(
        geo.composite_rate("legitimate"), geo.delta, cfg.user_index, cfg.eta_k
    )
    return max(pref * fox_h(params, arg), 0.0)


def wiretap_capacity(cfg: ScenarioConfig, policy: str, k: int = 1) -> float:
    """Mean capacity of the k-th nearest/best eavesdropper link.

    The secrecy-capacity cases only ever use k = 1 (the strongest
    eavesdropper under either policy); other indices are available for
    completeness.
    """
    if policy not in ORDERINGS:
        raise ValueError(f"policy must be one of {ORDERINGS}, got {policy!r}")
    geo = cfg.geometry
    if policy == "nearest":
        pref, params, arg = _capacity_nearest_instance(
            cfg.fading_e, geo.pathloss_rate("eavesdropper"), geo.delta, k, cfg.eta_e
        )
    else:
        pref, params, arg = _capacity_best_instance(
            geo.composite_rate("eavesdropper"), geo.delta, k, cfg.eta_e
        )
    return max(pref * fox_h(params, arg), 0.0)


def ergodic_secrecy_capacity(cfg: ScenarioConfig, case: str | None = None) -> float:
    """Clipped difference of legitimate and strongest-eavesdropper capacities."""
    case = cfg.case if case is None else case
    if case not in CASES:
        raise ValueError(f"case must be one of {CASES}, got {case!r}")
    cfg = cfg.with_case(case)
    main = ergodic_capacity_nearest(cfg) if case[0] == "N" else ergodic_capacity_best(cfg)
    tap = wiretap_capacity(cfg, "nearest" if case[1] == "N" else "best", k=1)
    return max(main - tap, 0.0)
