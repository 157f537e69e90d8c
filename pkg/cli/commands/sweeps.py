# cli/commands/sweeps.py
import json
import os
from typing import Optional

import click
import yaml

from core.constants import BOUND_FAMILIES
from core.dependencies import emit, get_context, load_graph, read_text
from core.exceptions import PreconditionError
from schemas.sweep import RowOutcome, SweepSpec
from services.export_service import ExportService
from services.sweep_service import CrossCheckService, SweepService

router = click.Group()


def load_spec(path: str) -> SweepSpec:
    """Sweep spec from YAML or JSON; global --seed/--budget-ms fill what the file leaves out."""
    text = read_text(path)
    raw = json.loads(text) if os.path.splitext(path)[1].lower() == ".json" else yaml.safe_load(text)
    if not isinstance(raw, dict):
        raise PreconditionError(f"sweep spec {path} is not a mapping")
    ctx = get_context()
    raw.setdefault("seed", ctx.seed)
    if ctx.budget_ms is not None:
        raw.setdefault("budget_ms", ctx.budget_ms)
    return SweepSpec.model_validate(raw)


@router.command("sweep")
@click.argument("spec_file")
@click.option("--workers", type=int, help="Worker processes; MINORKIT_SWEEP_WORKERS by default.")
def sweep(spec_file: str, workers: Optional[int]):
    """Run a construction sweep and write <out>.csv and <out>.json."""
    spec = load_spec(spec_file)
    report = SweepService(workers=workers).run_sweep(spec)
    out = get_context().out or spec.out
    csv_path, json_path = ExportService().write_sweep(report, out)
    click.echo(
        f"{spec.family.value}: {len(report.rows)} rows, "
        f"{report.count(RowOutcome.VERIFIED)} verified, {report.count(RowOutcome.VIOLATED)} violated, "
        f"{report.count(RowOutcome.UNKNOWN)} unknown -> {csv_path}, {json_path}"
    )
    click.get_current_context().exit(report.exit_code)


@router.command("cross-check")
@click.argument("family", type=click.Choice(sorted(BOUND_FAMILIES)), required=False)
@click.argument("k", type=int, required=False)
@click.argument("host_file", required=False)
@click.option("--pattern", "pattern_file", help="Pattern graph to search for instead of the family default.")
@click.option("--census", type=int, help="Check every connected graph on at most this many vertices.")
@click.option("--k-max", type=int, default=4, show_default=True, help="Largest k of the census.")
def cross_check(family: Optional[str], k: Optional[int], host_file: Optional[str], pattern_file: Optional[str],
                census: Optional[int], k_max: int):
    """tw(host) >= bound(FAMILY, K) must come with the pattern as a minor."""
    service = CrossCheckService(budget_ms=get_context().budget_ms)
    if census is not None:
        report = service.census(census, k_max=k_max, families=[family] if family else BOUND_FAMILIES)
    else:
        if family is None or k is None or host_file is None:
            raise click.UsageError("cross-check needs FAMILY K HOST_FILE, or --census N")
        pattern = load_graph(pattern_file) if pattern_file else None
        report = service.cross_check(family, k, load_graph(host_file), pattern=pattern)
    emit(report)
    click.get_current_context().exit(report.exit_code)
