# cli/commands/patterns.py
import click

from core.constants import PATTERN_FAMILIES
from core.dependencies import emit, get_context
from models.graph import Graph
from services.format_service import FormatService
from services.pattern_service import PatternService

router = click.Group()

_GENERATORS = {
    "wheel": PatternService.wheel,
    "double_wheel": PatternService.double_wheel,
    "xi": PatternService.xi,
    "yurt": PatternService.yurt,
    "comb": PatternService.comb,
    "binary_tree": PatternService.complete_binary_tree,
    "ladder": PatternService.ladder,
}


def generate(family: str, param: int) -> Graph:
    return _GENERATORS[family](param)


@router.command("gen")
@click.argument("family", type=click.Choice(sorted(PATTERN_FAMILIES)))
@click.argument("param", type=int)
def gen(family: str, param: int):
    """Generate a pattern graph of FAMILY with order or height PARAM."""
    g = generate(family, param)
    emit(FormatService.write_graph(g, get_context().format))
