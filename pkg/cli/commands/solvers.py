# cli/commands/solvers.py
from typing import Tuple

import click

from core.dependencies import emit, get_context, load_graph
from core.exceptions import BudgetExceededError
from schemas.decomposition import WidthOutcome, WidthResult
from services.format_service import FormatService
from services.linkage_service import LinkageService
from services.minor_service import MinorService
from services.treewidth_service import TreewidthService

router = click.Group()


# ========== exact widths ==========
@router.command("tw")
@click.argument("graph_file")
def tw(graph_file: str):
    """Exact treewidth of a graph, with an optimal tree decomposition."""
    g = load_graph(graph_file)
    try:
        width, td = TreewidthService(budget_ms=get_context().budget_ms).exact_treewidth(g)
    except BudgetExceededError as e:
        emit(WidthResult(measure="treewidth", outcome=WidthOutcome.UNKNOWN, detail=e.detail))
        return
    emit(WidthResult(measure="treewidth", outcome=WidthOutcome.EXACT, width=width,
                     tree_decomposition=FormatService.tree_decomposition_payload(td)))


@router.command("pw")
@click.argument("graph_file")
def pw(graph_file: str):
    """Exact pathwidth of a graph, with an optimal path decomposition."""
    g = load_graph(graph_file)
    try:
        width, pd = TreewidthService(budget_ms=get_context().budget_ms).exact_pathwidth(g)
    except BudgetExceededError as e:
        emit(WidthResult(measure="pathwidth", outcome=WidthOutcome.UNKNOWN, detail=e.detail))
        return
    emit(WidthResult(measure="pathwidth", outcome=WidthOutcome.EXACT, width=width,
                     path_decomposition=FormatService.path_decomposition_payload(pd)))


# ========== minors and linkage ==========
@router.command("minor")
@click.argument("pattern_file")
@click.argument("host_file")
def minor(pattern_file: str, host_file: str):
    """Decide whether PATTERN is a minor of HOST; prints a model when found."""
    pattern, host = load_graph(pattern_file), load_graph(host_file)
    result = MinorService(budget_ms=get_context().budget_ms).is_minor(pattern, host)
    emit(FormatService.minor_search_payload(result))


@router.command("linked")
@click.argument("graph_file")
@click.argument("terminals", nargs=-1, type=int, required=True)
@click.option("--sample", is_flag=True, help="Sample subset pairs when there are too many terminals.")
def linked(graph_file: str, terminals: Tuple[int, ...], sample: bool):
    """Decide whether TERMINALS form a linked set of the graph."""
    g = load_graph(graph_file)
    ctx = get_context()
    result = LinkageService(budget_ms=ctx.budget_ms).is_linked(g, terminals, sample=sample, seed=ctx.seed)
    emit(result)
