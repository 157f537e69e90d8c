# cli/commands/verify.py
import click

from core.constants import EXIT_VIOLATION
from core.dependencies import emit, get_context, load_graph, read_text
from models.decomposition import PathDecomposition
from services.decomposition_service import DecompositionService
from services.format_service import FormatService
from services.linkage_service import LinkageService
from services.minor_service import verify_model

router = click.Group()


def _finish(report) -> None:
    emit(report)
    if not report.ok:
        click.get_current_context().exit(EXIT_VIOLATION)


@router.command("verify-model")
@click.argument("model_file")
def verify_model_command(model_file: str):
    """Check a {pattern, host, branch_sets} model document."""
    m = FormatService.read_model(read_text(model_file))
    _finish(verify_model(m.host, m.pattern, m))


@router.command("verify-cert")
@click.argument("host_file")
@click.argument("certificate_file")
@click.option("--linked/--no-linked", default=True, show_default=True,
              help="Also require A∩B to be linked in the B side.")
def verify_cert(host_file: str, certificate_file: str, linked: bool):
    """Check a separation certificate {A, B, pattern, branch_sets, linkage} against a host."""
    host = load_graph(host_file)
    cert = FormatService.read_certificate(read_text(certificate_file), host)
    service = LinkageService(budget_ms=get_context().budget_ms)
    _finish(service.verify_separation_certificate(host, cert, require_linked=linked))


@router.command("verify-decomp")
@click.argument("graph_file")
@click.argument("decomposition_file")
def verify_decomp(graph_file: str, decomposition_file: str):
    """Check a path or tree decomposition and report its width."""
    g = load_graph(graph_file)
    d = FormatService.decomposition_from_json(read_text(decomposition_file))
    _finish(DecompositionService.verify_decomposition(g, d))


@router.command("compactify")
@click.argument("graph_file")
@click.argument("decomposition_file")
@click.option("--assume-optimal", is_flag=True, help="Skip the exact pathwidth check of the input width.")
@click.option("--nice", is_flag=True, help="Print the nice decomposition with node kinds instead.")
def compactify(graph_file: str, decomposition_file: str, assume_optimal: bool, nice: bool):
    """Turn an optimal path decomposition into its compact form."""
    g = load_graph(graph_file)
    d = FormatService.decomposition_from_json(read_text(decomposition_file))
    if not isinstance(d, PathDecomposition):
        raise click.UsageError("compactify takes a path decomposition {bags}")
    if nice:
        result, _ = DecompositionService.make_nice(g, d)
        emit(FormatService.path_decomposition_payload(result, with_kinds=True))
        return
    result = DecompositionService.compactify(g, d, assume_optimal=assume_optimal,
                                             budget_ms=get_context().budget_ms)
    emit(FormatService.path_decomposition_payload(result))
