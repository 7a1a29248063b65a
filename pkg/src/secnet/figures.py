"""Desk-scale reproduction of the study figures as data tables.

Each figure id maps to a fully resolved parameter set and a generator that
emits the x-grid and every curve as long-format rows (one row per curve
point).  Outputs are numbers only; plotting is left to external tools.

Where a figure caption leaves a choice open it is resolved here and recorded
in the table metadata: fig3's representative fading pairs, fig5's legitimate/
wiretap cluster parameters (the caption labels them ambiguously; they are
taken as the two sides' mu values), and fig8's secrecy levels and density
ratios.
"""

from __future__ import annotations

from typing import Callable

from . import metrics
from .metrics import CASES, ScenarioConfig

__all__ = ["FIGURE_IDS", "describe_scenario", "figure_table", "scenario"]


def _db(x: float) -> float:
    return 10.0 ** (x / 10.0)


def _fig2_scenario(k: int = 1, ordering: str = "nearest") -> ScenarioConfig:
    return ScenarioConfig.build(
        d=2, upsilon=2.0, lambda_b=2.0, lambda_e=1.0,
        alpha_b=2.0, mu_b=3.0, eta_k=_db(0.0), user_index=k, ordering=ordering,
    )


def _fig3_scenario(k: int = 1, alpha: float = 2.0, mu: float = 2.0) -> ScenarioConfig:
    return ScenarioConfig.build(
        d=2, upsilon=2.0, lambda_b=1.0, lambda_e=1.0,
        alpha_b=alpha, mu_b=mu, eta_k=_db(5.0), rate=1.0, user_index=k,
    )


def _fig4_scenario(k: int = 2, lambda_b: float = 1.0, ordering: str = "nearest") -> ScenarioConfig:
    return ScenarioConfig.build(
        d=2, upsilon=4.0, lambda_b=lambda_b, lambda_e=1.0,
        alpha_b=2.0, mu_b=3.0, eta_k=_db(0.0), rate=1.0,
        user_index=k, ordering=ordering,
    )


def _fig5_scenario(k: int = 1, alpha: float = 2.0, mu_m: float = 1.0, mu_w: float = 1.0) -> ScenarioConfig:
    return ScenarioConfig.build(
        d=2, upsilon=2.0, lambda_b=0.2, lambda_e=0.1,
        alpha_b=alpha, mu_b=mu_m, alpha_e=alpha, mu_e=mu_w,
        eta_k=_db(0.0), eta_e=1.0, user_index=k,
        ordering="nearest", eavesdropper_policy="nearest",
    )


def _fig6_scenario(k: int = 1, case: str = "NN") -> ScenarioConfig:
    return ScenarioConfig.build(
        d=2, upsilon=2.0, lambda_b=0.2, lambda_e=0.1,
        alpha_b=2.0, mu_b=1.0, alpha_e=2.0, mu_e=4.0,
        n_a=2, n_b=1, n_e=2,
        eta_k=_db(0.0), eta_e=1.0, user_index=k,
    ).with_case(case)


def _fig7_scenario(k: int = 1, upsilon: float = 2.0, case: str = "NN") -> ScenarioConfig:
    return ScenarioConfig.build(
        d=3, upsilon=upsilon, lambda_b=0.2, lambda_e=0.1,
        alpha_b=2.0, mu_b=2.0, alpha_e=2.0, mu_e=3.0,
        n_a=2, n_b=1, n_e=2,
        eta_k=_db(0.0), eta_e=1.0, user_index=k,
    ).with_case(case)


def _fig8_scenario(varpi_db: float = 0.0, ratio: float = 2.0,
                   alpha: float = 2.0, mu: float = 3.0) -> ScenarioConfig:
    lambda_e = 0.1
    return ScenarioConfig.build(
        d=2, upsilon=2.0, lambda_b=ratio * lambda_e, lambda_e=lambda_e,
        alpha_b=alpha, mu_b=mu, alpha_e=alpha, mu_e=mu,
        eta_k=_db(varpi_db), eta_e=1.0,
        ordering="best", eavesdropper_policy="best",
    )


def _fig9_scenario(varpi_db: float = 0.0, case: str = "NN") -> ScenarioConfig:
    return ScenarioConfig.build(
        d=3, upsilon=2.0, lambda_b=0.2, lambda_e=0.1,
        alpha_b=2.0, mu_b=2.0, alpha_e=2.0, mu_e=3.0,
        n_a=2, n_b=2, n_e=2,
        eta_k=_db(varpi_db), eta_e=1.0, user_index=1,
    ).with_case(case)


def _fig10_scenario(n_b: int = 1, case: str = "NN") -> ScenarioConfig:
    return ScenarioConfig.build(
        d=3, upsilon=2.0, lambda_b=0.2, lambda_e=0.1,
        alpha_b=2.0, mu_b=1.0, alpha_e=2.0, mu_e=3.0,
        n_a=2, n_b=n_b, n_e=2,
        eta_k=_db(10.0), eta_e=1.0, user_index=1,
    ).with_case(case)


def _fig11_scenario(k: int = 1, case: str = "NN") -> ScenarioConfig:
    return ScenarioConfig.build(
        d=2, upsilon=2.0, lambda_b=1.0, lambda_e=1.0,
        alpha_b=2.0, mu_b=1.0, alpha_e=2.0, mu_e=1.0,
        eta_k=_db(15.0), eta_e=_db(0.0), user_index=k,
    ).with_case(case)


_SCENARIOS: dict[str, Callable[..., ScenarioConfig]] = {
    "fig2": _fig2_scenario, "fig3": _fig3_scenario, "fig4": _fig4_scenario,
    "fig5": _fig5_scenario, "fig6": _fig6_scenario, "fig7": _fig7_scenario,
    "fig8": _fig8_scenario, "fig9": _fig9_scenario, "fig10": _fig10_scenario,
    "fig11": _fig11_scenario,
}

FIGURE_IDS = tuple(sorted(_SCENARIOS, key=lambda s: int(s[3:])))


def scenario(fig_id: str, **overrides) -> ScenarioConfig:
    """The captioned scenario of one figure, with free axes as overrides."""
    if fig_id not in _SCENARIOS:
        raise ValueError(f"figure id must be one of {FIGURE_IDS}, got {fig_id!r}")
    return _SCENARIOS[fig_id](**overrides)


def _row(metric: str, curve: str, k: int, value: float, x) -> tuple:
    return (metric, curve, k, value, 0.0, "closed-form", x)


def figure_table(fig_id: str) -> tuple[dict, list[str], list[tuple]]:
    """Generate one figure's data: (metadata, column names, rows).

    Rows are long-format: metric, curve label, user index, value, half-width
    (zero for closed forms), provenance, and the swept x value.
    """
    if fig_id not in _SCENARIOS:
        raise ValueError(f"figure id must be one of {FIGURE_IDS}, got {fig_id!r}")
    rows: list[tuple] = []
    meta: dict = {"figure": fig_id}

    if fig_id == "fig2":
        grid = [0.02 * i for i in range(1, 13)] + [0.3, 0.4, 0.6, 0.8, 1.0, 1.5, 2.0, 3.0, 4.0]
        meta["x"] = "z"
        for k in (1, 2, 3):
            cfg_n = _fig2_scenario(k, "nearest")
            cfg_b = _fig2_scenario(k, "best")
            for z in grid:
                rows.append(_row("pdf", f"nearest|k={k}", k, metrics.pdf_composite_nearest(cfg_n, z), z))
                rows.append(_row("pdf", f"best|k={k}", k, metrics.pdf_composite_best(cfg_b, z), z))
        meta["scenario"] = describe_scenario(_fig2_scenario())

    elif fig_id == "fig3":
        meta["x"] = "k"
        fadings = ((1.0, 2.0), (2.0, 2.0), (2.0, 3.0), (3.0, 2.0))
        meta["fading_pairs"] = [f"alpha={a}|mu={m}" for a, m in fadings]
        for a, m in fadings:
            for k in range(1, 11):
                cfg = _fig3_scenario(k, a, m)
                rows.append(_row("cop", f"nearest|alpha={a}|mu={m}", k, metrics.cop_nearest(cfg), k))
        meta["scenario"] = describe_scenario(_fig3_scenario())

    elif fig_id == "fig4":
        meta["x"] = "lambda_b"
        grid = [0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0]
        for k in (2, 4):
            for lb in grid:
                cfg = _fig4_scenario(k, lb)
                rows.append(_row("cop", f"nearest|k={k}", k, metrics.cop_nearest(cfg), lb))
                rows.append(_row("cop", f"best|k={k}", k, metrics.cop_best(cfg), lb))
        meta["scenario"] = describe_scenario(_fig4_scenario())

    elif fig_id == "fig5":
        meta["x"] = "k"
        triples = ((2.0, 1.0, 1.0), (2.0, 2.0, 3.0), (3.0, 2.0, 3.0))
        meta["fading_triples"] = [f"alpha={a}|mu_m={mm}|mu_w={mw}" for a, mm, mw in triples]
        meta["note"] = ("cluster parameters labelled mu_m/mu_w are interpreted as the "
                        "legitimate and wiretap side mu values")
        for a, mm, mw in triples:
            for k in range(1, 9):
                cfg = _fig5_scenario(k, a, mm, mw)
                rows.append(_row("pnz", f"NN|alpha={a}|mu_m={mm}|mu_w={mw}", k, metrics.pnz_nn(cfg), k))
        meta["scenario"] = describe_scenario(_fig5_scenario())

    elif fig_id == "fig6":
        meta["x"] = "k"
        for case in CASES:
            for k in range(1, 9):
                cfg = _fig6_scenario(k, case)
                rows.append(_row("pnz", case, k, metrics.pnz(cfg), k))
        meta["scenario"] = describe_scenario(_fig6_scenario())

    elif fig_id == "fig7":
        meta["x"] = "k"
        for upsilon in (2.0, 3.0, 4.0):
            for case in ("NN", "BB"):
                for k in range(1, 9):
                    cfg = _fig7_scenario(k, upsilon, case)
                    rows.append(_row("pnz", f"{case}|upsilon={upsilon}", k, metrics.pnz(cfg), k))
        meta["scenario"] = describe_scenario(_fig7_scenario())

    elif fig_id == "fig8":
        meta["x"] = "varpi_db"
        grid = [-5.0 + i for i in range(21)]
        taus = (0.1, 0.3)
        ratios = (1.0, 2.0, 4.0)
        meta["secrecy_levels"] = list(taus)
        meta["density_ratios"] = list(ratios)
        for tau in taus:
            for ratio in ratios:
                for w in grid:
                    cfg = _fig8_scenario(w, ratio)
                    kstar = metrics.max_secure_best_users(cfg, tau)
                    rows.append(_row("k_star", f"tau={tau}|ratio={ratio}", kstar, float(kstar), w))
        meta["scenario"] = describe_scenario(_fig8_scenario())

    elif fig_id == "fig9":
        meta["x"] = "varpi_db"
        grid = [-10.0 + 2.0 * i for i in range(16)]
        for case in CASES:
            for w in grid:
                cfg = _fig9_scenario(w, case)
                rows.append(_row("pnz", case, 1, metrics.pnz(cfg), w))
        meta["scenario"] = describe_scenario(_fig9_scenario())

    elif fig_id == "fig10":
        meta["x"] = "n_b"
        for case in CASES:
            for n_b in range(1, 9):
                cfg = _fig10_scenario(n_b, case)
                rows.append(_row("pnz", case, 1, metrics.pnz(cfg), n_b))
        meta["scenario"] = describe_scenario(_fig10_scenario())

    elif fig_id == "fig11":
        meta["x"] = "k"
        for case in CASES:
            for k in range(1, 9):
                cfg = _fig11_scenario(k, case)
                rows.append(_row("esc", case, k, metrics.ergodic_secrecy_capacity(cfg), k))
        meta["scenario"] = describe_scenario(_fig11_scenario())

    header = ["metric", "case", "k", "value", "half_width", "provenance", meta["x"]]
    return meta, header, rows


def describe_scenario(cfg: ScenarioConfig) -> dict:
    geo = cfg.geometry
    return {
        "d": geo.d, "upsilon": geo.upsilon,
        "lambda_b": geo.lambda_b, "lambda_e": geo.lambda_e,
        "fading_b": {"alpha": cfg.fading_b.alpha, "mu": cfg.fading_b.mu, "omega": cfg.fading_b.omega},
        "fading_e": {"alpha": cfg.fading_e.alpha, "mu": cfg.fading_e.mu, "omega": cfg.fading_e.omega},
        "n_a": cfg.n_a, "n_b": cfg.n_b, "n_e": cfg.n_e,
        "eta_k": cfg.eta_k, "eta_e": cfg.eta_e, "rate": cfg.rate,
        "user_index": cfg.user_index, "ordering": cfg.ordering,
        "eavesdropper_policy": cfg.eavesdropper_policy,
    }
