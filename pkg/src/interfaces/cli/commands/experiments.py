#!/usr/bin/env python
"""``tables``, ``convergence`` and ``heatmap``: seeded experiments written to CSV/JSON."""

from __future__ import annotations

import logging

import click

from src.domain.experiments import ExperimentResult, ExperimentRunner, ResultWriter
from src.models.dto import format_cell

from ..common import build_config, experiment_options, get_context, pq_options, sphere_options, translate_errors

logger = logging.getLogger(__name__)


def _run(experiment: str, config_path, flags) -> ExperimentResult:
    ctx = get_context()
    cfg = build_config(experiment, config_path, **flags)
    logger.info("Running %s with %s", experiment, cfg.summary())
    result = ExperimentRunner(cfg, publisher=ctx.publisher, client=ctx.client).run()
    paths = ResultWriter(cfg.out).write(result)
    for label, path in sorted(paths.items()):
        click.echo(f"{label}: {path}")
    if result.failures:
        click.echo(f"{result.failures} trial(s) failed; see the error column", err=True)
    return result


@click.command("tables")
@sphere_options
@pq_options
@experiment_options
@translate_errors
def tables_cmd(config_path, **flags):
    """Halves of DLB, SLB and TLB with the upper/exact column for the four sphere pairs."""
    result = _run("tables", config_path, flags)
    click.echo(f"{'pair':<14}{'dlb/2':>10}{'slb/2':>10}{'tlb/2':>10}{'upper/2':>10}")
    for row in result.rows:
        cells = [row.dlb_half, row.slb_half, row.tlb_half, row.upper_half]
        text = "".join(f"{'-' if v is None else format(v, '.3f'):>10}" for v in cells)
        suffix = f"  ({row.note})" if row.note else ""
        click.echo(f"{row.label:<14}{text}{suffix}")


@click.command("convergence")
@sphere_options
@pq_options
@experiment_options
@translate_errors
def convergence_cmd(config_path, **flags):
    """Estimates against sample size for each dimension pair."""
    result = _run("convergence", config_path, flags)
    for row in result.rows:
        if row.kind == "summary" and row.estimate is not None:
            click.echo(f"({row.m},{row.n}) N={row.N}: mean {format_cell(row.estimate)} rel.err {format_cell(row.relative_error)}")


@click.command("heatmap")
@click.option("--dim-min", "dim_min", type=click.IntRange(min=0), default=None)
@click.option("--dim-max", "dim_max", type=click.IntRange(min=0), default=None)
@click.option("--metric", type=click.Choice(["geodesic", "euclidean"], case_sensitive=False), default=None)
@pq_options
@experiment_options
@translate_errors
def heatmap_cmd(config_path, **flags):
    """Mean estimate and relative error over a grid of sphere dimensions."""
    _run("heatmap", config_path, flags)


__all__ = ["tables_cmd", "convergence_cmd", "heatmap_cmd"]
