#!/usr/bin/env python
"""
Experiment runners: bound tables, convergence sweeps and the dimension heatmap.

Every runner returns an ``ExperimentResult`` whose rows are already sorted;
trials run on a ``TrialQueue`` and each one derives its own seed from the
base seed, so the number of workers never changes a row.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.core.errors import GWError
from src.core.progress import NullPublisher, ProgressPublisher
from src.domain.bounds.hierarchy import hierarchy_report
from src.domain.bounds.lower_bounds import tlb
from src.domain.mm.spaces import FiniteMMSpace, MetricKind
from src.domain.sampling.clouds import derive_seed
from src.domain.solvers.cgd import gw_cgd
from src.domain.solvers.entropic import gw_entropic
from src.domain.solvers.params import GWSolveParams, SolverReport
from src.domain.spheres.analytic import QuadratureConfig, SphereSpec
from src.domain.spheres.gw42 import equatorial_upper_bound, exact_gw42_euclidean
from src.infrastructure.pot import PotClient, build_default_client
from src.models.dto import ResultRow
from src.settings import ExperimentConfig, ExperimentKind, SolverKind

from .instances import sample_sphere_space
from .trials import Trial, TrialQueue

logger = logging.getLogger(__name__)

AUDIT_TOL = 1e-6
BAND_PERCENTILES = (10.0, 90.0)

# the sphere pairs of the two bound tables, geodesic first
TABLE_PAIRS: List[Tuple[int, int, MetricKind]] = [
    (0, 1, MetricKind.GEODESIC),
    (1, 2, MetricKind.GEODESIC),
    (0, 1, MetricKind.EUCLIDEAN),
    (1, 2, MetricKind.EUCLIDEAN),
]

_SEED_KEYS = {ExperimentKind.CONVERGENCE: 1, ExperimentKind.HEATMAP: 2}


@dataclass
class ExperimentResult:
    experiment: ExperimentKind
    rows: List[ResultRow]
    summary: Dict[str, Any] = field(default_factory=dict)
    # heatmap only: dims along both axes and the cell values
    grid_dims: Optional[List[int]] = None
    grid: Optional[np.ndarray] = None

    @property
    def failures(self) -> int:
        return sum(1 for row in self.rows if row.error)


def solve_params(cfg: ExperimentConfig) -> GWSolveParams:
    return GWSolveParams(pq=cfg.pq, max_iter=cfg.max_iter, rel_tol=cfg.rel_tol, epsilon=cfg.epsilon)


def solve_instance(
    X: FiniteMMSpace, Y: FiniteMMSpace, cfg: ExperimentConfig, client: Optional[PotClient] = None
) -> SolverReport:
    params = solve_params(cfg)
    if cfg.solver is SolverKind.ENTROPIC:
        return gw_entropic(X, Y, params, client=client)
    return gw_cgd(X, Y, params, client=client)


def reference_value(m: int, n: int, cfg: ExperimentConfig) -> Optional[float]:
    """Exact d_GW(4,2) between Euclidean spheres; ``None`` where no closed form is known."""
    if cfg.metric is MetricKind.EUCLIDEAN and cfg.p == 4.0 and cfg.q == 2.0:
        return exact_gw42_euclidean(min(m, n), max(m, n))
    return None


def _errors(estimate: Optional[float], exact: Optional[float]) -> Tuple[Optional[float], Optional[float]]:
    if estimate is None or exact is None:
        return None, None
    absolute = estimate - exact
    relative = absolute / exact if exact > 0 else None
    return relative, absolute


def _base_row(cfg: ExperimentConfig, **fields: Any) -> ResultRow:
    return ResultRow(
        experiment=cfg.experiment.value,
        sampler=cfg.sampler.value,
        weights=cfg.weights.value,
        solver=cfg.solver.value,
        metric=cfg.metric.value,
        p=cfg.p,
        q=cfg.q,
        **fields,
    )


class ExperimentRunner:
    def __init__(
        self,
        cfg: ExperimentConfig,
        publisher: Optional[ProgressPublisher] = None,
        client: Optional[PotClient] = None,
    ) -> None:
        self.cfg = cfg
        self.publisher = publisher or NullPublisher()
        self.client = client or build_default_client()

    def run(self) -> ExperimentResult:
        handlers = {
            ExperimentKind.TABLES: self.run_tables,
            ExperimentKind.CONVERGENCE: self.run_convergence,
            ExperimentKind.HEATMAP: self.run_heatmap,
            ExperimentKind.EXACT: self.run_exact,
            ExperimentKind.BOUNDS: self.run_bounds,
        }
        result = handlers[self.cfg.experiment]()
        self.publisher.publish(
            {
                "event": "experiment_completed",
                "experiment": self.cfg.experiment.value,
                "rows": len(result.rows),
                "failures": result.failures,
            }
        )
        logger.info(
            "Experiment %s finished: %s rows, %s failures",
            self.cfg.experiment.value, len(result.rows), result.failures,
        )
        return result

    # -- analytic experiments ------------------------------------------------

    def _quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(seed=self.cfg.seed)

    def bounds_row(self, m: int, n: int, metric: MetricKind, label: Optional[str] = None) -> Tuple[ResultRow, Dict[str, Any]]:
        cfg = self.cfg
        qcfg = self._quadrature()
        X, Y = SphereSpec(dim=m, metric=metric), SphereSpec(dim=n, metric=metric)
        upper_half: Optional[float] = None
        std_error: Optional[float] = None
        exact: Optional[float] = None
        note: Optional[str] = None
        if cfg.p == 4.0 and cfg.q == 2.0:
            bound = equatorial_upper_bound(m, n, metric, qcfg)
            upper_half = bound.value
            if metric is MetricKind.EUCLIDEAN:
                exact = bound.value
            else:
                note = "upper bound only"
                std_error = None if bound.is_exact else bound.std_error
        report = hierarchy_report(
            X, Y, cfg.p, cfg.q,
            upper=None if upper_half is None else 2.0 * upper_half,
            cfg=qcfg, client=self.client,
        )
        halves = report.halves()
        if report.notes:
            note = "; ".join(([note] if note else []) + report.notes)
        row = ResultRow(
            experiment=cfg.experiment.value,
            kind="table",
            label=label or f"{X.label}/{Y.label}",
            m=m,
            n=n,
            metric=MetricKind(metric).value,
            p=cfg.p,
            q=cfg.q,
            exact=exact,
            dlb_half=halves["dlb"],
            slb_half=halves["slb"],
            tlb_half=halves["tlb"],
            upper_half=halves["upper"],
            std_error=std_error,
            ordering_ok=report.ordering_ok,
            seed=cfg.seed,
            note=note,
        )
        return row, report.to_dict()

    def run_tables(self) -> ExperimentResult:
        rows: List[ResultRow] = []
        reports: Dict[str, Any] = {}
        for m, n, metric in TABLE_PAIRS:
            row, report = self.bounds_row(m, n, metric)
            rows.append(row)
            reports[row.label] = report
        rows.sort(key=ResultRow.sort_key)
        return ExperimentResult(ExperimentKind.TABLES, rows, {"config": self.cfg.summary(), "reports": reports})

    def run_bounds(self) -> ExperimentResult:
        m, n = self.cfg.dim_pairs[0]
        row, report = self.bounds_row(m, n, self.cfg.metric)
        return ExperimentResult(ExperimentKind.BOUNDS, [row], {"config": self.cfg.summary(), "reports": {row.label: report}})

    def run_exact(self) -> ExperimentResult:
        rows = []
        for m, n in self.cfg.dim_pairs:
            lo, hi = min(m, n), max(m, n)
            if self.cfg.metric is MetricKind.EUCLIDEAN:
                rows.append(_base_row(self.cfg, kind="table", m=m, n=n, exact=exact_gw42_euclidean(lo, hi), seed=self.cfg.seed))
            else:
                bound = equatorial_upper_bound(lo, hi, MetricKind.GEODESIC, self._quadrature())
                rows.append(
                    _base_row(
                        self.cfg, kind="table", m=m, n=n, upper_half=bound.value,
                        std_error=None if bound.is_exact else bound.std_error,
                        seed=self.cfg.seed, note="upper bound only",
                    )
                )
        rows.sort(key=ResultRow.sort_key)
        return ExperimentResult(ExperimentKind.EXACT, rows, {"config": self.cfg.summary()})

    # -- sampled experiments -------------------------------------------------

    def _trial_row(self, m: int, n: int, N: int, trial: int, seed: int) -> ResultRow:
        cfg = self.cfg
        reference_size = cfg.resolved_reference_size()
        common = dict(sampler=cfg.sampler, weights=cfg.weights, metric=cfg.metric, reference_size=reference_size)
        X = sample_sphere_space(m, N, seed=derive_seed(seed, 0), **common)
        Y = sample_sphere_space(n, N, seed=derive_seed(seed, 1), **common)
        report = solve_instance(X.space, Y.space, cfg, self.client)
        estimate = report.half_value
        exact = reference_value(m, n, cfg)
        relative, absolute = _errors(estimate, exact)
        notes = []
        if X.dropped or Y.dropped:
            notes.append(f"dropped empty cells: {X.dropped}+{Y.dropped}")
        audit_half: Optional[float] = None
        audit_ok: Optional[bool] = None
        if cfg.audit:
            try:
                audit_half = tlb(X.space, Y.space, cfg.p, cfg.q, client=self.client).value / 2.0
                audit_ok = estimate >= audit_half - AUDIT_TOL
                if not audit_ok:
                    logger.warning("Audit failed for (%s,%s) N=%s trial %s: %.9g < %.9g", m, n, N, trial, estimate, audit_half)
            except GWError as exc:
                notes.append(f"audit: {exc}")
        return _base_row(
            cfg,
            kind="trial",
            m=m,
            n=n,
            N=N,
            trial=trial,
            estimate=estimate,
            exact=exact,
            relative_error=relative,
            absolute_error=absolute,
            audit_tlb_half=audit_half,
            audit_ok=audit_ok,
            iterations=report.iterations,
            converged=report.converged,
            seed=seed,
            note="; ".join(notes) or None,
        )

    def _run_trials(self, jobs: List[Tuple[int, int, int, int]]) -> List[ResultRow]:
        """Run (m, n, N, trial) jobs; failures come back as rows carrying the error."""
        cfg = self.cfg
        code = _SEED_KEYS[cfg.experiment]
        rows: List[ResultRow] = []
        with TrialQueue(workers=cfg.jobs, publisher=self.publisher) as queue:
            meta: Dict[str, Tuple[int, int, int, int, int]] = {}
            for m, n, N, t in jobs:
                seed = derive_seed(cfg.seed, code, m, n, N, t)
                trial_id = f"{cfg.experiment.value}:{m}-{n}:N={N}:t={t}"
                meta[trial_id] = (m, n, N, t, seed)
                queue.submit(trial_id, (m, n, N, t), lambda m=m, n=n, N=N, t=t, seed=seed: self._trial_row(m, n, N, t, seed))
            for done in queue.wait_all():
                rows.append(self._finish(done, meta[done.id]))
        return rows

    def _finish(self, trial: Trial, meta: Tuple[int, int, int, int, int]) -> ResultRow:
        m, n, N, t, seed = meta
        if trial.status == "completed":
            row: ResultRow = trial.result
        else:
            row = _base_row(
                self.cfg, kind="trial", m=m, n=n, N=N, trial=t, seed=seed,
                exact=reference_value(m, n, self.cfg), error=trial.error or "trial did not finish",
            )
        if self.cfg.record_timings:
            row = row.model_copy(update={"wall_time_seconds": trial.wall_time_seconds})
        return row

    def _summary_row(self, m: int, n: int, N: int, trials: List[ResultRow], kind: str = "summary") -> ResultRow:
        cfg = self.cfg
        exact = reference_value(m, n, cfg)
        estimates = np.array([r.estimate for r in trials if r.estimate is not None and not r.error], dtype=np.float64)
        if estimates.size == 0:
            return _base_row(cfg, kind=kind, m=m, n=n, N=N, exact=exact, error="all trials failed", seed=cfg.seed)
        mean = float(np.mean(estimates))
        relative, absolute = _errors(mean, exact)
        low, high = np.percentile(estimates, BAND_PERCENTILES)
        std_error = float(np.std(estimates, ddof=1) / math.sqrt(estimates.size)) if estimates.size > 1 else None
        failed = len(trials) - int(estimates.size)
        audits = [r.audit_ok for r in trials if r.audit_ok is not None]
        note = f"{failed} failed trials" if failed else None
        if exact == 0.0:
            note = "; ".join(filter(None, ["absolute_error", note]))
        return _base_row(
            cfg,
            kind=kind,
            m=m,
            n=n,
            N=N,
            estimate=mean,
            exact=exact,
            relative_error=relative,
            absolute_error=absolute,
            band_low=float(low),
            band_high=float(high),
            std_error=std_error,
            audit_ok=all(audits) if audits else None,
            seed=cfg.seed,
            note=note,
        )

    def run_convergence(self) -> ExperimentResult:
        cfg = self.cfg
        trials = cfg.resolved_trials()
        jobs = [(m, n, N, t) for m, n in cfg.dim_pairs for N in cfg.sizes for t in range(trials)]
        trial_rows = self._run_trials(jobs)
        rows = list(trial_rows)
        for m, n in cfg.dim_pairs:
            for N in cfg.sizes:
                group = [r for r in trial_rows if (r.m, r.n, r.N) == (m, n, N)]
                rows.append(self._summary_row(m, n, N, group))
        rows.sort(key=ResultRow.sort_key)
        summary = {
            "config": cfg.summary(),
            "trial_rows": len(trial_rows),
            "failures": sum(1 for r in trial_rows if r.error),
        }
        return ExperimentResult(ExperimentKind.CONVERGENCE, rows, summary)

    def run_heatmap(self) -> ExperimentResult:
        """Cells for m <= n are computed; the grid is mirrored since d_GW is symmetric."""
        cfg = self.cfg
        dims = cfg.dim_range
        N = cfg.heatmap_points
        trials = cfg.resolved_trials()
        pairs = [(m, n) for m in dims for n in dims if m <= n]
        jobs = [(m, n, N, t) for m, n in pairs for t in range(trials)]
        trial_rows = self._run_trials(jobs)
        rows = list(trial_rows)
        grid = np.full((len(dims), len(dims)), np.nan)
        index = {d: k for k, d in enumerate(dims)}
        for m, n in pairs:
            group = [r for r in trial_rows if (r.m, r.n) == (m, n)]
            cell = self._summary_row(m, n, N, group, kind="cell")
            rows.append(cell)
            if cell.exact is None:
                value = cell.estimate
            elif cell.exact == 0.0:
                value = cell.absolute_error
            else:
                value = cell.relative_error
            if value is not None:
                grid[index[m], index[n]] = grid[index[n], index[m]] = value
        rows.sort(key=ResultRow.sort_key)
        summary = {
            "config": cfg.summary(),
            "dims": dims,
            "points": N,
            "failures": sum(1 for r in trial_rows if r.error),
            "diagonal": "absolute error (exact value is 0)",
        }
        return ExperimentResult(ExperimentKind.HEATMAP, rows, summary, grid_dims=dims, grid=grid)


def run_tables(cfg: ExperimentConfig, **kwargs: Any) -> ExperimentResult:
    return ExperimentRunner(cfg.model_copy(update={"experiment": ExperimentKind.TABLES}), **kwargs).run()


def run_convergence(cfg: ExperimentConfig, **kwargs: Any) -> ExperimentResult:
    return ExperimentRunner(cfg.model_copy(update={"experiment": ExperimentKind.CONVERGENCE}), **kwargs).run()


def run_heatmap(cfg: ExperimentConfig, **kwargs: Any) -> ExperimentResult:
    return ExperimentRunner(cfg.model_copy(update={"experiment": ExperimentKind.HEATMAP}), **kwargs).run()


__all__ = [
    "AUDIT_TOL",
    "TABLE_PAIRS",
    "ExperimentResult",
    "ExperimentRunner",
    "reference_value",
    "run_convergence",
    "run_heatmap",
    "run_tables",
    "solve_instance",
    "solve_params",
]
