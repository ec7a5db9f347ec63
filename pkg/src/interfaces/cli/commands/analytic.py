#!/usr/bin/env python
"""``exact`` and ``bounds``: closed forms and the lower-bound hierarchy."""

from __future__ import annotations

import logging
from typing import Optional

import click

from src.core.errors import DomainError
from src.domain.bounds.hierarchy import hierarchy_report
from src.domain.mm.spaces import MetricKind, PqParams
from src.domain.spheres.analytic import QuadratureConfig, SphereSpec
from src.domain.spheres.gw42 import equatorial_upper_bound, exact_gw42_euclidean
from src.models.dto import HierarchyDocument
from src.models.mapping import load_coupling_csv, load_space

from ..common import echo_json, get_context, pq_options, sphere_options, translate_errors

logger = logging.getLogger(__name__)


def _resolve_dims(m_arg: Optional[int], n_arg: Optional[int], m: Optional[int], n: Optional[int]):
    m = m if m is not None else m_arg
    n = n if n is not None else n_arg
    if m is None or n is None:
        raise DomainError("two sphere dimensions are required (positional M N or --m/--n)")
    return m, n


@click.command("exact")
@click.argument("m_arg", metavar="[M]", type=click.IntRange(min=0), required=False)
@click.argument("n_arg", metavar="[N]", type=click.IntRange(min=0), required=False)
@sphere_options
@click.option("--geodesic", is_flag=True, default=False, help="Shorthand for --metric geodesic.")
@click.option("--seed", type=click.IntRange(min=0), default=None, envvar="GW_SPHERES_SEED")
@translate_errors
def exact_cmd(m_arg, n_arg, m, n, metric, geodesic, seed):
    """d_GW(4,2) between spheres S^M and S^N.

    Euclidean spheres have a closed form; for geodesic spheres the value
    printed is the equatorial upper bound and is labeled as such.
    """
    m, n = _resolve_dims(m_arg, n_arg, m, n)
    kind = MetricKind.GEODESIC if geodesic else MetricKind(metric or MetricKind.EUCLIDEAN.value)
    lo, hi = min(m, n), max(m, n)
    if kind is MetricKind.EUCLIDEAN:
        click.echo(f"{exact_gw42_euclidean(lo, hi):.12g}")
        return
    cfg = QuadratureConfig() if seed is None else QuadratureConfig(seed=seed)
    bound = equatorial_upper_bound(lo, hi, kind, cfg)
    if bound.is_exact:
        click.echo(f"{bound.value:.12g} (upper bound only)")
    else:
        click.echo(f"{bound.value:.12g} (upper bound only, Monte Carlo std error {bound.std_error:.2g})")


@click.command("bounds")
@sphere_options
@pq_options
@click.option("--x", "x_path", type=click.Path(exists=True, dir_okay=False), default=None, help="First space (.json or point CSV).")
@click.option("--y", "y_path", type=click.Path(exists=True, dir_okay=False), default=None, help="Second space (.json or point CSV).")
@click.option("--coupling", "coupling_path", type=click.Path(exists=True, dir_okay=False), default=None, help="Witness coupling CSV.")
@click.option("--seed", type=click.IntRange(min=0), default=None, envvar="GW_SPHERES_SEED")
@translate_errors
def bounds_cmd(m, n, metric, p, q, x_path, y_path, coupling_path, seed):
    """DLB, SLB, TLB and an upper value for two spheres or two finite spaces."""
    ctx = get_context()
    pq = PqParams(p=4.0 if p is None else p, q=2.0 if q is None else q)
    kind = MetricKind(metric or MetricKind.EUCLIDEAN.value)
    cfg = QuadratureConfig() if seed is None else QuadratureConfig(seed=seed)

    if x_path or y_path:
        if not (x_path and y_path):
            raise DomainError("--x and --y must be given together")
        X, Y = load_space(x_path, kind), load_space(y_path, kind)
        witness = load_coupling_csv(coupling_path, X, Y) if coupling_path else None
        report = hierarchy_report(X, Y, pq.p, pq.q, witness, cfg=cfg, client=ctx.client)
        names = [x_path, y_path]
    else:
        if m is None or n is None:
            raise DomainError("give --m and --n, or two space files with --x/--y")
        X, Y = SphereSpec(dim=m, metric=kind), SphereSpec(dim=n, metric=kind)
        upper = None
        if pq.p == 4.0 and pq.q == 2.0:
            upper = 2.0 * equatorial_upper_bound(m, n, kind, cfg).value
        report = hierarchy_report(X, Y, pq.p, pq.q, upper=upper, cfg=cfg, client=ctx.client)
        names = [X.label, Y.label]
    document = HierarchyDocument(spaces=names, report=report.to_dict(), halves=report.halves())
    echo_json(document.model_dump())


__all__ = ["exact_cmd", "bounds_cmd"]
