# core/dependencies.py
import os
import sys
from typing import Any, Optional

import click
from pydantic import BaseModel

from core.config import settings
from models.graph import Graph
from schemas.graph import GraphFormat
from services.format_service import FormatService

_EXTENSIONS = {
    ".g6": GraphFormat.GRAPH6,
    ".graph6": GraphFormat.GRAPH6,
    ".dimacs": GraphFormat.DIMACS,
    ".col": GraphFormat.DIMACS,
    ".gr": GraphFormat.DIMACS,
    ".json": GraphFormat.JSON,
}


class CliContext(BaseModel):
    """Global flags shared by every subcommand."""
    format: GraphFormat = GraphFormat(settings.DEFAULT_FORMAT)
    seed: int = 0
    budget_ms: Optional[int] = None
    out: Optional[str] = None


def get_context() -> CliContext:
    ctx = click.get_current_context()
    obj = ctx.find_object(CliContext)
    return obj if obj is not None else CliContext()


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def load_graph(path: str, fmt: Optional[GraphFormat] = None) -> Graph:
    """Graph from a file; the extension wins over the global --format."""
    if fmt is None:
        fmt = _EXTENSIONS.get(os.path.splitext(path)[1].lower(), get_context().format)
    return FormatService.read_graph(read_text(path), fmt)


def emit(payload: Any) -> None:
    """Write a payload (text or pydantic model) to --out, or stdout."""
    text = payload if isinstance(payload, str) else FormatService.dump(payload)
    out = get_context().out
    if out:
        folder = os.path.dirname(out)
        if folder:
            os.makedirs(folder, exist_ok=True)
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)
