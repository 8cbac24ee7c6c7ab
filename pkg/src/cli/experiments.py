"""
Experiment pipelines.

Each pipeline turns a validated ExperimentConfig into CSV tables and a
summary for the manifest. Randomness is addressed as
root / kind index / N index / item index, so outputs depend only on the
seed and the config, never on the worker count.
"""

from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

import numpy as np

from ..concentration import (
    RateDistributionModel,
    cumulants,
    cumulants_from_moments,
    ks_against_model,
    moment,
    rate_histogram,
    sample_rate_distribution,
    summary_statistics,
)
from ..decoherence import (
    P0Policy,
    analytic_average_rate,
    analytic_rate_limit,
    calibrated_rate_limit,
    mc_average_rate,
    mc_average_rate_for_state,
)
from ..ensembles import (
    AnyEnsembleSpec,
    EnsembleKind,
    EnsembleSpec,
    Family,
    MixedEnsembleSpec,
    ginibre_trace_moments,
    sample_batch,
    sample_haar_pure_state,
    schur_trace_split,
    second_moments,
    spectral_density_check,
)
from ..lindblad import depolarizing_purity, depolarizing_rate, ensemble_purity_decay, fit_purity_ansatz, time_grid
from ..logging_config import get_logger
from ..parallel import ordered_map
from ..randomness import SeedSpec
from ..states import purity_family
from .output import Table, gnuplot_script
from .schema import MIXED, ExperimentConfig

logger = get_logger(__name__)

RATE_UNIT = "[gamma*sigma^2]"
TIME_UNIT = "[1/(gamma*sigma^2)]"
CURVE_POINTS = 201
# Ansatz comparison window, in units of the reference decay time
FIT_WINDOW = 3.0


@dataclass
class ExperimentResult:
    tables: list[Table]
    summary: dict
    scripts: dict[str, str] = field(default_factory=dict)


def build_spec(config: ExperimentConfig, kind: str, n: int) -> AnyEnsembleSpec:
    if kind == MIXED:
        return MixedEnsembleSpec(
            EnsembleSpec(EnsembleKind.parse(config.mix_first), n, config.sigma),
            EnsembleSpec(EnsembleKind.parse(config.mix_second), n, config.sigma),
            config.mix_a1,
            config.mix_a2,
        )
    return EnsembleSpec(EnsembleKind.parse(kind), n, config.sigma)


def _reference_family(spec: AnyEnsembleSpec) -> Family:
    # Mixtures are compared against the Hermitian closed form
    return spec.family if isinstance(spec, EnsembleSpec) else Family.GXE


def _gamma_sigma_sq(config: ExperimentConfig) -> float:
    return config.gamma_total * config.sigma ** 2


def _grid_nodes(config: ExperimentConfig, root: SeedSpec):
    for k_idx, kind in enumerate(config.kinds):
        for n_idx, n in enumerate(config.n_grid):
            yield build_spec(config, kind, n), root.child(k_idx).child(n_idx)


# ==================== Rate scaling ====================

def _state_estimate(
    index: int,
    spec: AnyEnsembleSpec,
    node: SeedSpec,
    policy: P0Policy,
    n_realizations: int,
    gamma_total: float,
) -> tuple[float, float, float]:
    stream = node.child(index).generator()
    psi = sample_haar_pure_state(spec.dim, stream)
    p0 = policy.draw(spec.dim, stream)
    est = mc_average_rate_for_state(spec, purity_family(psi, p0), n_realizations, gamma_total, stream)
    return est.p0, est.mean, est.std_error


def _rate_scaling(config: ExperimentConfig, root: SeedSpec, reference: Optional[Family]) -> ExperimentResult:
    gss = _gamma_sigma_sq(config)
    policy = P0Policy.parse(config.p0_policy, config.p0)
    per_state = Table(
        "rate_scaling_states",
        ["ensemble", "n", "state", "p0", f"mean_rate{RATE_UNIT}", f"std_error{RATE_UNIT}",
         f"analytic_rate{RATE_UNIT}", f"analytic_limit{RATE_UNIT}", f"calibrated_limit{RATE_UNIT}"],
    )
    pooled = Table(
        "rate_scaling",
        ["ensemble", "n", "p0_policy", "n_realizations", f"mean_rate{RATE_UNIT}", f"std_error{RATE_UNIT}",
         f"analytic_limit{RATE_UNIT}", f"calibrated_limit{RATE_UNIT}", "rel_dev_analytic", "rel_dev_calibrated"],
    )
    worst = {"analytic": 0.0, "calibrated": 0.0}

    for spec, node in _grid_nodes(config, root):
        n = spec.dim
        family = reference or _reference_family(spec)
        limit = analytic_rate_limit(family, n, gss)
        calibrated = calibrated_rate_limit(spec, config.gamma_total)

        task = partial(
            _state_estimate,
            spec=spec,
            node=node.child(0),
            policy=policy,
            n_realizations=config.n_realizations,
            gamma_total=config.gamma_total,
        )
        for s, (p0, mean, err) in enumerate(ordered_map(task, range(config.n_states), config.n_workers)):
            per_state.add(spec.label, n, s, p0, mean / gss, err / gss,
                          analytic_average_rate(family, n, gss, p0) / gss, limit / gss, calibrated / gss)

        est = mc_average_rate(spec, policy, config.n_realizations, config.gamma_total, node.child(1), config.n_workers)
        dev_a = est.mean / limit - 1.0
        dev_c = est.mean / calibrated - 1.0
        if policy.value == 1.0:
            worst["analytic"] = max(worst["analytic"], abs(dev_a))
            worst["calibrated"] = max(worst["calibrated"], abs(dev_c))
        pooled.add(spec.label, n, policy.label, est.n_realizations, est.mean / gss, est.std_error / gss,
                   limit / gss, calibrated / gss, dev_a, dev_c)
        logger.info("Rate scaling point", extra=est.to_dict())

    scripts = {}
    if config.emit_gnuplot:
        scripts["rate_scaling.gp"] = gnuplot_script(pooled, "n", [f"mean_rate{RATE_UNIT}", f"analytic_limit{RATE_UNIT}"], group="ensemble")
    summary = {
        "points": len(pooled.rows),
        "max_abs_rel_dev_analytic_pure": worst["analytic"],
        "max_abs_rel_dev_calibrated_pure": worst["calibrated"],
    }
    return ExperimentResult([pooled, per_state], summary, scripts)


def run_rate_scaling(config: ExperimentConfig, root: SeedSpec) -> ExperimentResult:
    """Averaged rate versus N, compared with each ensemble's own closed form."""
    return _rate_scaling(config, root, reference=None)


def run_gin_rate_scaling(config: ExperimentConfig, root: SeedSpec) -> ExperimentResult:
    """Averaged rate versus N, compared with the Ginibre closed form for every kind."""
    return _rate_scaling(config, root, reference=Family.GINXE)


# ==================== Purity decay ====================

def _reference_rate(config: ExperimentConfig, spec: AnyEnsembleSpec) -> float:
    gss = _gamma_sigma_sq(config)
    if config.ansatz_rate == "leading":
        return depolarizing_rate(spec.dim, gss)
    if isinstance(spec, MixedEnsembleSpec):
        return calibrated_rate_limit(spec, config.gamma_total)
    return analytic_rate_limit(spec.family, spec.dim, gss)


def run_purity_decay(config: ExperimentConfig, root: SeedSpec) -> ExperimentResult:
    """Realization-averaged purity against the exponential ansatz."""
    gss = _gamma_sigma_sq(config)
    grid = time_grid(config.t_max / gss, config.n_points, config.spacing)
    table = Table(
        "purity_decay",
        ["ensemble", "n", "p0", f"t{TIME_UNIT}", "mean_purity", "std_error", "ansatz_purity"],
    )
    fits = []
    for spec, node in _grid_nodes(config, root):
        n = spec.dim
        d_ref = _reference_rate(config, spec)
        for p_idx, p0 in enumerate(config.p0_values):
            traj = ensemble_purity_decay(
                spec, p0, grid, config.n_realizations, node.child(p_idx),
                gamma_total=config.gamma_total, n_jumps=config.n_jumps,
                rel_tol=config.rel_tol, n_workers=config.n_workers,
            )
            ansatz = depolarizing_purity(p0, n, d_ref, grid)
            for t, mean, err, fit in zip(grid, traj.purities, traj.std_errors, ansatz):
                table.add(spec.label, n, p0, t * gss, mean, err, fit)
            report = fit_purity_ansatz(traj, p0, 1.0 / n, d_ref, t_max=FIT_WINDOW / d_ref)
            fits.append({"ensemble": spec.label, "n": n, "p0": p0, **report.to_dict()})
            logger.info("Purity decay curve", extra=fits[-1])

    scripts = {}
    if config.emit_gnuplot:
        scripts["purity_decay.gp"] = gnuplot_script(table, f"t{TIME_UNIT}", ["mean_purity", "ansatz_purity"], group="ensemble", logscale_y=True)
    summary = {
        "ansatz_rate": config.ansatz_rate,
        "fits": fits,
        "max_rel_deviation": max(f["max_rel_deviation"] for f in fits),
    }
    return ExperimentResult([table], summary, scripts)


# ==================== Rate distribution ====================

def _reference_model(spec: AnyEnsembleSpec, config: ExperimentConfig) -> RateDistributionModel:
    if isinstance(spec, EnsembleSpec) and spec.dim >= 3:
        return RateDistributionModel.for_family(spec.family, spec.dim, _gamma_sigma_sq(config))
    return RateDistributionModel.for_spec(spec, config.gamma_total)


def run_rate_distribution(config: ExperimentConfig, root: SeedSpec) -> ExperimentResult:
    """Sampled averaged rates under uniform P₀ against the closed-form density."""
    gss = _gamma_sigma_sq(config)
    hist_table = Table(
        "rate_distribution_histogram",
        ["ensemble", "n", f"bin_left{RATE_UNIT}", f"bin_right{RATE_UNIT}", f"bin_center{RATE_UNIT}",
         f"density[1/(gamma*sigma^2)]", f"analytic_pdf[1/(gamma*sigma^2)]"],
    )
    curve_table = Table(
        "rate_distribution_curve",
        ["ensemble", "n", f"rate{RATE_UNIT}", f"pdf[1/(gamma*sigma^2)]", "cdf"],
    )
    bound_table = Table(
        "rate_distribution_bound",
        ["ensemble", "n", f"upper_bound{RATE_UNIT}", f"a_tilde{RATE_UNIT}", "over_bound_fraction",
         "ks_distance", "ks_distance_calibrated"],
    )
    summaries = []
    for spec, node in _grid_nodes(config, root):
        n = spec.dim
        model = _reference_model(spec, config)
        sample = sample_rate_distribution(
            spec, config.n_states, config.n_realizations, node,
            gamma_total=config.gamma_total, analytic_shortcut=config.analytic_shortcut,
            model=model, n_workers=config.n_workers,
        )
        hist = rate_histogram(sample, model, config.hist_bins)
        ks_cal, _ = ks_against_model(sample, RateDistributionModel.for_spec(spec, config.gamma_total))
        for left, right, center, dens, ref in zip(hist.edges[:-1], hist.edges[1:], hist.centers, hist.density, hist.analytic_pdf):
            hist_table.add(spec.label, n, left / gss, right / gss, center / gss, dens * gss, ref * gss)
        for d in np.linspace(0.0, model.upper, CURVE_POINTS):
            curve_table.add(spec.label, n, d / gss, float(model.pdf_values(d)) * gss, float(model.cdf_values(d)))
        bound_table.add(spec.label, n, model.upper / gss, model.a_tilde / gss,
                        hist.over_bound_fraction, hist.ks_distance, ks_cal)
        summaries.append({
            "ensemble": spec.label,
            "n": n,
            "ks_distance": hist.ks_distance,
            "ks_pvalue": hist.ks_pvalue,
            "ks_distance_calibrated": ks_cal,
            "over_bound_fraction": hist.over_bound_fraction,
            "upper_bound": model.upper,
        })
        logger.info("Rate distribution", extra=summaries[-1])

    scripts = {}
    if config.emit_gnuplot:
        scripts["rate_distribution.gp"] = gnuplot_script(
            hist_table, f"bin_center{RATE_UNIT}",
            [f"density[1/(gamma*sigma^2)]", f"analytic_pdf[1/(gamma*sigma^2)]"],
        )
    return ExperimentResult([hist_table, curve_table, bound_table], {"distributions": summaries}, scripts)


# ==================== Cumulant table ====================

def run_cumulant_table(config: ExperimentConfig, root: SeedSpec) -> ExperimentResult:
    """Closed-form cumulants and their moment-based cross-check versus N."""
    gss = _gamma_sigma_sq(config)
    table = Table(
        "cumulant_table",
        ["family", "n", f"a_tilde{RATE_UNIT}", "kappa1", "kappa2", "kappa3", "kappa4",
         "mean", "variance", "skewness", "excess_kurtosis", "relative_width", "max_rel_dev_moments"],
    )
    families: list[Family] = []
    for kind in config.kinds:
        family = Family.GXE if kind == MIXED else EnsembleKind.parse(kind).family
        if family not in families:
            families.append(family)

    worst = 0.0
    for family in families:
        for n in config.n_grid:
            model = RateDistributionModel.for_family(family, n, gss)
            closed = cumulants(model)
            from_moments = cumulants_from_moments(*(moment(model, k) for k in range(1, 5)))
            dev = max(abs(b / a - 1.0) for a, b in zip(closed, from_moments))
            worst = max(worst, dev)
            stats = summary_statistics(model)
            table.add(
                family.value, n, model.a_tilde / gss, *closed,
                stats.mean, stats.variance, stats.skewness, stats.excess_kurtosis,
                float(np.sqrt(closed[1]) / closed[0]), dev,
            )

    scripts = {}
    if config.emit_gnuplot:
        scripts["cumulant_table.gp"] = gnuplot_script(table, "n", ["skewness", "excess_kurtosis"], group="family")
    return ExperimentResult([table], {"rows": len(table.rows), "max_rel_dev_moments": worst}, scripts)


# ==================== Ensemble diagnostics ====================

def run_ensemble_diagnostics(config: ExperimentConfig, root: SeedSpec) -> ExperimentResult:
    """Spectral laws, second-moment calibration and the Schur split per ensemble."""
    table = Table(
        "ensemble_diagnostics",
        ["ensemble", "n", "n_samples", "law", "ks_distance", "ks_pvalue", "outlier_fraction",
         "mean_tr_ldl", "expected_tr_ldl", "mean_abs_trace_sq", "expected_abs_trace_sq",
         "mean_lambda_sq", "mean_t_sq", "expected_lambda_sq"],
    )
    reports = []
    for spec, node in _grid_nodes(config, root):
        if not isinstance(spec, EnsembleSpec):
            logger.warning("Skipping mixed ensemble in diagnostics", extra={"ensemble": spec.label})
            continue
        report = spectral_density_check(spec, config.n_realizations, node.child(0).generator())
        batch = sample_batch(spec, node.child(1).generator(), config.n_realizations)
        tr_ldl = np.real(np.einsum("bij,bij->b", batch.conj(), batch))
        abs_tr_sq = np.abs(np.trace(batch, axis1=1, axis2=2)) ** 2
        expected = second_moments(spec)

        mean_lambda, mean_t, expected_lambda = "", "", ""
        if not spec.kind.is_hermitian:
            splits = [schur_trace_split(m) for m in batch]
            mean_lambda = float(np.mean([s.lambda_sq for s in splits]))
            mean_t = float(np.mean([s.t_sq for s in splits]))
            if spec.kind is EnsembleKind.GINUE:
                expected_lambda = ginibre_trace_moments(spec.dim, spec.sigma).lambda_sq

        law = "semicircle" if spec.kind.is_hermitian else "circular"
        table.add(spec.label, spec.dim, config.n_realizations, law, report.ks_distance, report.ks_pvalue,
                  report.outlier_fraction, float(tr_ldl.mean()), expected.tr_ldl,
                  float(abs_tr_sq.mean()), expected.abs_trace_sq, mean_lambda, mean_t, expected_lambda)
        reports.append({"ensemble": spec.label, "n": spec.dim, **report.to_dict()})

    return ExperimentResult([table], {"spectral": reports})


Pipeline = Callable[[ExperimentConfig, SeedSpec], ExperimentResult]

PIPELINES: dict[str, Pipeline] = {
    "rate-scaling": run_rate_scaling,
    "gin-rate-scaling": run_gin_rate_scaling,
    "purity-decay": run_purity_decay,
    "rate-distribution": run_rate_distribution,
    "cumulant-table": run_cumulant_table,
    "ensemble-diagnostics": run_ensemble_diagnostics,
}
