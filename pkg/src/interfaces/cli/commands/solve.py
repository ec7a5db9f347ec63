#!/usr/bin/env python
"""``distortion`` and ``solve``: evaluate a coupling, or search for a good one."""

from __future__ import annotations

import logging
from typing import Optional, Tuple

import click

from config import Config

from src.core.errors import DomainError
from src.domain.experiments.instances import sample_sphere_space
from src.domain.mm.distortion import distortion_pq, validate_coupling
from src.domain.mm.spaces import Coupling, FiniteMMSpace, MetricKind, PqParams
from src.domain.sampling.clouds import derive_seed
from src.domain.solvers.entropic import gw_entropic
from src.domain.solvers.multistart import multistart
from src.domain.solvers.params import GWSolveParams
from src.domain.spheres.gw42 import exact_gw42_euclidean
from src.models.mapping import load_coupling_csv, load_space, report_to_summary, save_coupling_csv
from src.settings import SamplerKind, WeightKind

from ..common import echo_json, get_context, pq_options, sphere_options, translate_errors

logger = logging.getLogger(__name__)


def _load_pair(x_path: Optional[str], y_path: Optional[str], metric: MetricKind) -> Tuple[FiniteMMSpace, FiniteMMSpace]:
    if not (x_path and y_path):
        raise DomainError("--x and --y are both required")
    return load_space(x_path, metric), load_space(y_path, metric)


@click.command("distortion")
@click.option("--x", "x_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--y", "y_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--coupling", "coupling_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Coupling CSV; the product coupling when omitted.")
@click.option("--metric", type=click.Choice([m.value for m in MetricKind], case_sensitive=False), default=None)
@pq_options
@translate_errors
def distortion_cmd(x_path, y_path, coupling_path, metric, p, q):
    """(p,q)-distortion of a coupling between two finite spaces."""
    X, Y = _load_pair(x_path, y_path, MetricKind(metric or MetricKind.EUCLIDEAN.value))
    pq = PqParams(p=4.0 if p is None else p, q=2.0 if q is None else q)
    gamma = load_coupling_csv(coupling_path, X, Y) if coupling_path else Coupling.product(X.weights, Y.weights)
    validation = validate_coupling(gamma)
    if not validation.ok:
        echo_json({"validation": validation.to_dict()})
        raise DomainError(f"not a coupling: {', '.join(validation.violations)}")
    value = distortion_pq(X, Y, gamma, pq)
    echo_json({"distortion": value, "half": value / 2.0, "validation": validation.to_dict()})


@click.command("solve")
@click.option("--x", "x_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--y", "y_path", type=click.Path(exists=True, dir_okay=False), default=None)
@sphere_options
@pq_options
@click.option("--points", type=click.IntRange(min=2), default=None, help="Sample size when solving between spheres.")
@click.option("--sampler", type=click.Choice([s.value for s in SamplerKind], case_sensitive=False), default=SamplerKind.FPS.value)
@click.option("--weights", type=click.Choice([w.value for w in WeightKind], case_sensitive=False), default=WeightKind.VORONOI.value)
@click.option("--reference-size", "reference_size", type=click.IntRange(min=1), default=None)
@click.option("--solver", type=click.Choice(["cgd", "entropic"], case_sensitive=False), default="cgd")
@click.option("--epsilon", type=click.FloatRange(min=0.0, min_open=True), default=None)
@click.option("--max-iter", "max_iter", type=click.IntRange(min=1), default=None)
@click.option("--starts", type=click.IntRange(min=1), default=1, help="Conditional gradient restarts.")
@click.option("--seed", type=click.IntRange(min=0), default=None, envvar="GW_SPHERES_SEED")
@click.option("--trace", is_flag=True, default=False, help="Include the objective trace.")
@click.option("--coupling-out", "coupling_out", type=click.Path(dir_okay=False), default=None)
@translate_errors
def solve_cmd(x_path, y_path, m, n, metric, p, q, points, sampler, weights, reference_size, solver,
              epsilon, max_iter, starts, seed, trace, coupling_out):
    """Estimate d_GW between two space files, or between sampled spheres S^m and S^n."""
    ctx = get_context()
    kind = MetricKind(metric or MetricKind.EUCLIDEAN.value)
    seed = Config.GW_SPHERES_SEED if seed is None else seed
    pq = PqParams(p=4.0 if p is None else p, q=2.0 if q is None else q)
    updates = {"pq": pq}
    if epsilon is not None:
        updates["epsilon"] = epsilon
    if max_iter is not None:
        updates["max_iter"] = max_iter
    params = GWSolveParams(**updates)

    exact = None
    if x_path or y_path:
        X, Y = _load_pair(x_path, y_path, kind)
    else:
        if m is None or n is None:
            raise DomainError("give --m and --n, or two space files with --x/--y")
        N = points or Config.HEATMAP_POINTS
        common = dict(
            sampler=SamplerKind(sampler),
            weights=WeightKind(weights),
            metric=kind,
            reference_size=reference_size or Config.VORONOI_REFERENCE_SIZE,
        )
        X = sample_sphere_space(m, N, seed=derive_seed(seed, 0), **common).space
        Y = sample_sphere_space(n, N, seed=derive_seed(seed, 1), **common).space
        if kind is MetricKind.EUCLIDEAN and pq.p == 4.0 and pq.q == 2.0:
            exact = exact_gw42_euclidean(min(m, n), max(m, n))

    if solver == "entropic":
        report = gw_entropic(X, Y, params, client=ctx.client)
    else:
        report = multistart(X, Y, params, n_starts=starts, seed=seed, client=ctx.client)
    payload = report_to_summary(report, include_trace=trace).model_dump(exclude_none=True)
    if exact is not None:
        payload["exact"] = exact
        payload["relative_error"] = (report.half_value - exact) / exact if exact > 0 else None
    if coupling_out:
        payload["coupling_path"] = save_coupling_csv(report.coupling, coupling_out)
    echo_json(payload)


__all__ = ["distortion_cmd", "solve_cmd"]
