# main.py
import logging
import sys
from typing import List, Optional

import click
from pydantic import ValidationError

from cli.cli_router import cli_router, include_router
from core.config import settings
from core.constants import EXIT_USAGE
from core.dependencies import CliContext
from core.exceptions import BudgetExceededError, MinorKitError
from schemas.graph import GraphFormat

logger = logging.getLogger(__name__)


class MinorKitGroup(click.Group):
    """Maps toolkit errors onto the exit-code contract: 0 ok/unknown, 1 violation, 2 usage."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except BudgetExceededError as e:
            logger.warning(e.detail)
            click.echo(f"unknown: {e.detail}", err=True)
            raise click.exceptions.Exit(e.status_code)
        except MinorKitError as e:
            click.echo(f"error: {e.detail}", err=True)
            raise click.exceptions.Exit(e.status_code)
        except ValidationError as e:
            click.echo(f"error: {e}", err=True)
            raise click.exceptions.Exit(EXIT_USAGE)


@click.group(cls=MinorKitGroup)
@click.option("--format", "fmt", type=click.Choice([f.value for f in GraphFormat]),
              default=settings.DEFAULT_FORMAT, show_default=True, help="Graph format for input and output.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for every randomized choice.")
@click.option("--budget-ms", type=int, help="Deadline for exact solvers and searches.")
@click.option("--out", help="Output file (sweeps: report stem).")
@click.option("--log-level", help="Override MINORKIT_LOG_LEVEL.")
@click.version_option(settings.VERSION, prog_name=settings.APP_NAME)
@click.pass_context
def cli(ctx: click.Context, fmt: str, seed: int, budget_ms: Optional[int], out: Optional[str],
        log_level: Optional[str]):
    """Graph minors toolkit: patterns, exact oracles, model constructions and sweeps."""
    level = log_level or ("DEBUG" if settings.DEBUG else settings.LOG_LEVEL)
    logging.basicConfig(level=level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    ctx.obj = CliContext(format=GraphFormat(fmt), seed=seed, budget_ms=budget_ms, out=out)


include_router(cli, cli_router)


def run(argv: Optional[List[str]] = None) -> None:
    cli.main(args=argv, prog_name=settings.APP_NAME)


if __name__ == "__main__":
    run()
