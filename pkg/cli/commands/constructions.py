# cli/commands/constructions.py
import random
from typing import List, Optional, Tuple

import click

from core.bound_formulas import BoundFormulas
from core.constants import BOUND_FAMILIES
from core.dependencies import emit, get_context, load_graph, read_text
from models.decomposition import PathDecomposition
from models.lambda_instance import ceil_sqrt
from services.format_service import FormatService
from services.graph_service import GraphService
from services.grid_service import GridService
from services.lambda_service import LambdaService
from services.pattern_service import PatternService
from services.sequence_service import SequenceService
from services.wheel_service import WheelService

router = click.Group()


def _ints(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise click.BadParameter(f"expected a comma separated list of integers, got {text!r}")


def _rng(name: str, param: int) -> random.Random:
    return random.Random(f"{get_context().seed}:embed:{name}:{param}")


@router.command("bound")
@click.argument("family", type=click.Choice(sorted(BOUND_FAMILIES)))
@click.argument("k", type=int)
def bound(family: str, k: int):
    """Treewidth threshold that forces the FAMILY pattern of order K."""
    emit({"family": family, "k": k, "bound": BoundFormulas.bound(family, k), "pattern": BOUND_FAMILIES[family]})


@router.group("embed")
def embed():
    """Run a model construction and print {host, model} with its order bookkeeping."""


# ========== wheels ==========
@embed.command("wheel")
@click.argument("h", type=int)
@click.option("--psi", help="Path position of each leaf of B_h, comma separated; seeded shuffle by default.")
def embed_wheel(h: int, psi: Optional[str]):
    matching = _ints(psi)
    if matching is None:
        matching = list(range(2 ** max(h, 0)))
        _rng("wheel", h).shuffle(matching)
    emit(FormatService.construction_payload(WheelService.wheel_from_tree_path(h, matching)))


@embed.command("double-wheel")
@click.argument("h", type=int)
@click.option("--path-len", type=int, help="Vertices on the path; ceil(sqrt(2^h)) by default.")
def embed_double_wheel(h: int, path_len: Optional[int]):
    leaves = PatternService.binary_tree_leaves(h)
    path_len = path_len if path_len is not None else ceil_sqrt(len(leaves))
    if not 1 <= path_len <= len(leaves):
        raise click.BadParameter(f"path length must be in 1..{len(leaves)}", param_hint="--path-len")
    matching = _rng("double_wheel", h).sample(leaves, path_len)
    inst = PatternService.lambda_build(PatternService.complete_binary_tree(h), path_len, matching)
    emit(FormatService.construction_payload(WheelService.double_wheel_from_lambda(inst)))


@embed.command("wheel-cert")
@click.argument("host_file")
@click.argument("certificate_file")
def embed_wheel_cert(host_file: str, certificate_file: str):
    host = load_graph(host_file)
    cert = FormatService.read_certificate(read_text(certificate_file), host)
    emit(FormatService.construction_payload(
        WheelService.wheel_from_certificate(host, cert, budget_ms=get_context().budget_ms)))


# ========== grids and yurts ==========
@embed.command("pw2")
@click.argument("graph_file")
@click.option("--decomposition", "decomposition_file", help="Path decomposition of width <= 2 to use.")
def embed_pw2(graph_file: str, decomposition_file: Optional[str]):
    g = load_graph(graph_file)
    pd = None
    if decomposition_file:
        pd = FormatService.decomposition_from_json(read_text(decomposition_file))
        if not isinstance(pd, PathDecomposition):
            raise click.UsageError("embed pw2 takes a path decomposition {bags}")
    emit(FormatService.construction_payload(
        GridService.embed_pw2_in_xi(g, pd, budget_ms=get_context().budget_ms)))


@embed.command("xi")
@click.argument("k", type=int)
@click.option("--perm", help="Linkage permutation, comma separated; seeded, of length (k-1)^2+1 by default.")
def embed_xi(k: int, perm: Optional[str]):
    linkage = _ints(perm)
    if linkage is None:
        linkage = list(range(BoundFormulas.xi_es_length(max(k, 1))))
        _rng("xi", k).shuffle(linkage)
    emit(FormatService.construction_payload(GridService.xi_from_double_path(k, linkage)))


@embed.command("xi-cert")
@click.argument("host_file")
@click.argument("certificate_file")
@click.argument("k", type=int)
def embed_xi_cert(host_file: str, certificate_file: str, k: int):
    host = load_graph(host_file)
    cert = FormatService.read_certificate(read_text(certificate_file), host)
    emit(FormatService.construction_payload(
        GridService.xi_from_certificate(host, cert, k, budget_ms=get_context().budget_ms)))


@embed.command("yurt")
@click.argument("k", type=int)
@click.option("--teeth", type=int, help="Comb size; (k^2-2k+2)^2 by default.")
def embed_yurt(k: int, teeth: Optional[int]):
    teeth = teeth if teeth is not None else BoundFormulas.yurt_comb_size(max(k, 1))
    comb = PatternService.comb(teeth)
    leaves = sorted(GraphService.tree_metrics(comb).leaves)
    path_len = ceil_sqrt(len(leaves))
    inst = PatternService.lambda_build(comb, path_len, _rng("yurt", k).sample(leaves, path_len))
    emit(FormatService.construction_payload(GridService.yurt_from_lambda_comb(inst, k)))


# ========== Λ(T) and sequences ==========
@embed.command("lambda")
@click.argument("host_file")
@click.argument("tree_file")
@click.argument("certificate_file")
def embed_lambda(host_file: str, tree_file: str, certificate_file: str):
    host, tree = load_graph(host_file), load_graph(tree_file)
    cert = FormatService.read_certificate(read_text(certificate_file), host)
    emit(FormatService.construction_payload(
        LambdaService.lambda_from_certificate(host, tree, cert, budget_ms=get_context().budget_ms)))


@embed.command("es")
@click.argument("k", type=int)
@click.argument("ell", type=int)
@click.argument("values", nargs=-1, type=int, required=True)
def embed_es(k: int, ell: int, values: Tuple[int, ...]):
    """Increasing run of length K or decreasing run of length ELL among VALUES."""
    run = SequenceService.es_extract(list(values), k, ell)
    emit({"direction": run.direction.value, "indices": list(run.indices), "values": list(run.values(values))})
