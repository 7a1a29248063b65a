"""Cross-validation suite: closed form vs defining-integral quadrature vs
network simulation on the captioned figure configurations.

Every closed-form metric is checked two ways: agreement with its defining
integral to a fixed relative tolerance, and agreement with the simulation
estimate within the reported confidence interval.  The suite is the engine
behind the ``secrecy validate`` command and the acceptance gate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import figures, metrics, montecarlo
from .metrics import CASES, ScenarioConfig
from .montecarlo import MonteCarloConfig

__all__ = ["ValidationRow", "run_validation", "VALIDATION_FIGURES"]

QUAD_TOL_PROBABILITY = 1e-5
QUAD_TOL_CAPACITY = 1e-4
VALIDATION_FIGURES = ("fig3", "fig4", "fig5", "fig6", "fig7", "fig11")


@dataclass(frozen=True)
class ValidationRow:
    """One closed-form/quadrature/simulation triple with its two gates."""

    figure: str
    metric: str
    case: str
    k: int
    closed_form: float
    quadrature: float
    quad_tol: float
    mc_value: float
    mc_half_width: float

    @property
    def quad_rel_err(self) -> float:
        return abs(self.closed_form - self.quadrature) / max(abs(self.quadrature), 1e-300)

    @property
    def quad_ok(self) -> bool:
        return self.quad_rel_err <= self.quad_tol

    @property
    def mc_ok(self) -> bool:
        return abs(self.closed_form - self.mc_value) <= self.mc_half_width

    @property
    def passed(self) -> bool:
        return self.quad_ok and self.mc_ok


def _row(figure, metric, case, k, closed, quad, tol, est) -> ValidationRow:
    return ValidationRow(
        figure=figure, metric=metric, case=case, k=k,
        closed_form=closed, quadrature=quad, quad_tol=tol,
        mc_value=est.value, mc_half_width=est.half_width,
    )


def _cop_rows(figure: str, cfg: ScenarioConfig, mc: MonteCarloConfig) -> list[ValidationRow]:
    rows = []
    for ordering in ("nearest", "best"):
        c = replace(cfg, ordering=ordering)
        closed = metrics.cop(c)
        quadv = montecarlo.integrate_defining("cop", c).value
        est = montecarlo.simulate_cop(c, mc)
        rows.append(_row(figure, "cop", ordering, c.user_index, closed, quadv,
                         QUAD_TOL_PROBABILITY, est))
    return rows


def _pnz_rows(figure: str, cfg: ScenarioConfig, mc: MonteCarloConfig,
              cases: tuple[str, ...] = CASES) -> list[ValidationRow]:
    ests = montecarlo.simulate_pnz_all(cfg, mc) if set(cases) == set(CASES) else {
        case: montecarlo.simulate_pnz(cfg, case, mc) for case in cases
    }
    rows = []
    for case in cases:
        closed = metrics.pnz(cfg, case)
        quadv = montecarlo.integrate_defining(f"pnz-{case}", cfg).value
        rows.append(_row(figure, "pnz", case, cfg.user_index, closed, quadv,
                         QUAD_TOL_PROBABILITY, ests[case]))
    return rows


def _capacity_rows(figure: str, cfg: ScenarioConfig, mc: MonteCarloConfig) -> list[ValidationRow]:
    rows = []
    for ordering, closed_fn in (("nearest", metrics.ergodic_capacity_nearest),
                                ("best", metrics.ergodic_capacity_best)):
        closed = closed_fn(cfg)
        quadv = montecarlo.integrate_defining(f"capacity-{ordering}", cfg).value
        est = montecarlo.simulate_ergodic_capacity(cfg, mc, ordering=ordering)
        rows.append(_row(figure, "capacity", ordering, cfg.user_index, closed, quadv,
                         QUAD_TOL_CAPACITY, est))
    return rows


def _esc_rows(figure: str, cfg: ScenarioConfig, mc: MonteCarloConfig) -> list[ValidationRow]:
    rows = []
    for case in CASES:
        closed = metrics.ergodic_secrecy_capacity(cfg, case)
        quadv = montecarlo.integrate_defining(f"esc-{case}", cfg).value
        est = montecarlo.simulate_ergodic_secrecy(cfg, case, mc).clipped_difference
        rows.append(_row(figure, "esc", case, cfg.user_index, closed, quadv,
                         QUAD_TOL_CAPACITY, est))
    return rows


def run_validation(
    trials: int = 10**6,
    capacity_trials: int = 10**5,
    seed: int = 20260810,
    workers: int = 1,
    figure_ids: tuple[str, ...] | None = None,
    window_radius: float | None = None,
) -> list[ValidationRow]:
    """Run the full cross-validation matrix and return one row per check."""
    selected = VALIDATION_FIGURES if figure_ids is None else tuple(figure_ids)
    mc_prob = MonteCarloConfig(trials=trials, master_seed=seed, worker_hint=workers,
                               window_radius=window_radius)
    mc_cap = MonteCarloConfig(trials=capacity_trials, master_seed=seed, worker_hint=workers,
                              window_radius=window_radius)
    rows: list[ValidationRow] = []
    for fig in selected:
        if fig == "fig3":
            for k in (1, 3):
                cfg = figures.scenario("fig3", k=k, alpha=2.0, mu=2.0)
                closed = metrics.cop_nearest(cfg)
                quadv = montecarlo.integrate_defining("cop", cfg).value
                est = montecarlo.simulate_cop(cfg, mc_prob)
                rows.append(_row(fig, "cop", "nearest", k, closed, quadv,
                                 QUAD_TOL_PROBABILITY, est))
        elif fig == "fig4":
            for k in (2, 4):
                cfg = figures.scenario("fig4", k=k, lambda_b=1.0)
                rows.extend(_cop_rows(fig, cfg, mc_prob))
        elif fig == "fig5":
            for k in (1, 2):
                cfg = figures.scenario("fig5", k=k)
                rows.extend(_pnz_rows(fig, cfg, mc_prob, cases=("NN",)))
        elif fig == "fig6":
            for k in (1, 4):
                cfg = figures.scenario("fig6", k=k)
                rows.extend(_pnz_rows(fig, cfg, mc_prob))
        elif fig == "fig7":
            for upsilon in (2.0, 3.0, 4.0):
                cfg = figures.scenario("fig7", k=2, upsilon=upsilon)
                rows.extend(_pnz_rows(fig, cfg, mc_prob))
        elif fig == "fig11":
            for k in (1, 2):
                cfg = figures.scenario("fig11", k=k)
                rows.extend(_capacity_rows(fig, cfg, mc_cap))
                if k == 1:
                    rows.extend(_esc_rows(fig, cfg, mc_cap))
        else:
            raise ValueError(f"no validation checks defined for {fig!r}")
    return rows
