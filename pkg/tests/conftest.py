# tests/conftest.py
import json
import random
from typing import Callable

import pytest
from click.testing import CliRunner

from models.certificate import SeparationCertificate
from models.graph import Graph, VertexPath
from models.minor_model import MinorModel
from services.format_service import FormatService
from services.sweep_service import lambda_certificate
from tests.factories import complete, cycle, path


@pytest.fixture
def p3() -> Graph:
    return path(3)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def k4() -> Graph:
    return complete(4)


@pytest.fixture
def hand_certificate():
    """Ten-vertex host with a P_3 left model and a triangle-linked right-hand side.

    A = 0..5 with branch sets {0,3}, {1,4}, {2,5}; A∩B = {3,4,5};
    B \\ A is a triangle 6-7-8 plus a vertex 9 adjacent to all three.
    """
    edges = [(0, 1), (1, 2), (0, 3), (1, 4), (2, 5),
             (6, 7), (7, 8), (6, 8), (3, 6), (4, 7), (5, 8), (9, 6), (9, 7), (9, 8)]
    host = Graph(range(10), edges)
    left = MinorModel(pattern=path(3), host=host,
                      branch_sets={0: frozenset([0, 3]), 1: frozenset([1, 4]), 2: frozenset([2, 5])})
    cert = SeparationCertificate(
        side_a=frozenset(range(6)),
        side_b=frozenset(range(3, 10)),
        left_model=left,
        linkage=(VertexPath([3, 6, 8, 5]),),
    )
    return host, cert


@pytest.fixture(params=[2, 3, 5, 8])
def lambda_case(request):
    return lambda_certificate(request.param, random.Random(f"lambda-fixture:{request.param}"))


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def graph_file(tmp_path) -> Callable[..., str]:
    """Writes a graph as <name>.json under tmp_path and returns the path."""

    def write(g: Graph, name: str = "graph") -> str:
        target = tmp_path / f"{name}.json"
        target.write_text(FormatService.graph_payload(g).model_dump_json(exclude_none=True), encoding="utf-8")
        return str(target)

    return write


@pytest.fixture
def json_file(tmp_path) -> Callable[..., str]:
    def write(payload, name: str) -> str:
        target = tmp_path / name
        if hasattr(payload, "model_dump"):
            payload = payload.model_dump(mode="json", by_alias=True)
        target.write_text(json.dumps(payload), encoding="utf-8")
        return str(target)

    return write
