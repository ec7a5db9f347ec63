"""Command-line interface: a click group with one subcommand per experiment or operation."""

from __future__ import annotations

import logging
from typing import Optional

import click

from config import Config

from .commands import (
    bounds_cmd,
    convergence_cmd,
    distortion_cmd,
    exact_cmd,
    heatmap_cmd,
    solve_cmd,
    tables_cmd,
)
from .common import CliContext, GWCliError

logger = logging.getLogger(__name__)


@click.group()
@click.option("--log-dir", "log_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for the per-run log file.")
@click.pass_context
def cli(ctx: click.Context, log_dir: Optional[str]) -> None:
    """(p,q)-Gromov-Wasserstein distances between spheres and finite spaces."""
    state = ctx.ensure_object(CliContext)
    if state.configure_logging is not None:
        state.log_path = state.configure_logging(log_dir or Config.LOG_DIR)
        logger.info("File logging initialized at %s", state.log_path)


for command in (exact_cmd, bounds_cmd, distortion_cmd, solve_cmd, tables_cmd, convergence_cmd, heatmap_cmd):
    cli.add_command(command)


__all__ = ["cli", "CliContext", "GWCliError"]
