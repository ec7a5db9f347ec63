#!/usr/bin/env python
"""Shared CLI plumbing: invocation context, error translation and option groups."""

from __future__ import annotations

import functools
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import click

from src.core.errors import GWError
from src.core.progress import LoggingPublisher, ProgressPublisher
from src.domain.mm.spaces import MetricKind, parse_exponent
from src.infrastructure.pot import PotClient, build_default_client
from src.settings import ExperimentConfig, load_experiment_config

logger = logging.getLogger(__name__)


class GWCliError(click.ClickException):
    """One-line message on stderr, exit status 2."""

    exit_code = 2


@dataclass
class CliContext:
    # app.configure_logging, injected at the entry point
    configure_logging: Optional[Callable[[str], str]] = None
    publisher: ProgressPublisher = field(default_factory=LoggingPublisher)
    log_path: Optional[str] = None
    pot_client: Optional[PotClient] = None

    @property
    def client(self) -> PotClient:
        if self.pot_client is None:
            self.pot_client = build_default_client()
        return self.pot_client


def get_context() -> CliContext:
    ctx = click.get_current_context()
    obj = ctx.find_object(CliContext)
    if obj is None:
        obj = ctx.ensure_object(CliContext)
    return obj


def translate_errors(func: Callable) -> Callable:
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except GWError as exc:
            logger.error("Command failed (%s): %s", exc.error_code, exc)
            raise GWCliError(f"{exc.error_code}: {exc}") from exc

    return wrapper


class ExponentType(click.ParamType):
    name = "exponent"

    def convert(self, value, param, ctx):
        try:
            exponent = parse_exponent(value)
        except (TypeError, ValueError):
            self.fail(f"{value!r} is not a number or 'inf'", param, ctx)
        if not exponent >= 1.0:
            self.fail("exponents must be >= 1", param, ctx)
        return exponent


EXPONENT = ExponentType()
METRIC = click.Choice([m.value for m in MetricKind], case_sensitive=False)


def pq_options(func: Callable) -> Callable:
    func = click.option("--q", "q", type=EXPONENT, default=None, help="Inner exponent (default 2; 'inf' allowed).")(func)
    func = click.option("--p", "p", type=EXPONENT, default=None, help="Outer exponent (default 4; 'inf' allowed).")(func)
    return func


def sphere_options(func: Callable) -> Callable:
    func = click.option("--metric", type=METRIC, default=None, help="Sphere metric (default euclidean).")(func)
    func = click.option("--n", "n", type=click.IntRange(min=0), default=None, help="Dimension of the second sphere.")(func)
    func = click.option("--m", "m", type=click.IntRange(min=0), default=None, help="Dimension of the first sphere.")(func)
    return func


def experiment_options(func: Callable) -> Callable:
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="JSON config file; flags override it."),
        click.option("--dims", default=None, help="Dimension pairs, e.g. '1-2,1-3'."),
        click.option("--sampler", type=click.Choice(["random", "fps"], case_sensitive=False), default=None),
        click.option("--weights", type=click.Choice(["uniform", "voronoi"], case_sensitive=False), default=None),
        click.option("--solver", type=click.Choice(["cgd", "entropic"], case_sensitive=False), default=None),
        click.option("--points", type=click.IntRange(min=2), default=None, help="Sample size (overrides the sweep)."),
        click.option("--trials", type=click.IntRange(min=1), default=None),
        click.option("--seed", type=click.IntRange(min=0), default=None, envvar="GW_SPHERES_SEED"),
        click.option("--epsilon", type=click.FloatRange(min=0.0, min_open=True), default=None),
        click.option("--max-iter", "max_iter", type=click.IntRange(min=1), default=None),
        click.option("--reference-size", "reference_size", type=click.IntRange(min=1), default=None),
        click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory."),
        click.option("--jobs", type=click.IntRange(min=1), default=None, help="Concurrent trials."),
        click.option("--paper-scale", "paper_scale", is_flag=True, default=False, help="Full trial counts and 10^6 Voronoi references."),
        click.option("--audit", is_flag=True, default=False, help="Record the TLB of every sampled instance."),
        click.option("--record-timings", "record_timings", is_flag=True, default=False, help="Add wall times to rows."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_config(experiment: str, config_path: Optional[str], **flags: Any) -> ExperimentConfig:
    """Config file < flags; unset options (None) and absent switches (False) leave the file alone."""
    overrides: Dict[str, Any] = {
        key: value for key, value in flags.items() if value is not None and value is not False
    }
    overrides["experiment"] = experiment
    return load_experiment_config(config_path, overrides)


def echo_json(payload: Any) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True, default=str))


__all__ = [
    "GWCliError",
    "CliContext",
    "get_context",
    "translate_errors",
    "EXPONENT",
    "METRIC",
    "pq_options",
    "sphere_options",
    "experiment_options",
    "build_config",
    "echo_json",
]
