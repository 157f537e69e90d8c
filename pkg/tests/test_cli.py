# tests/test_cli.py
import json

import yaml

from main import cli
from models.minor_model import MinorModel
from services.format_service import FormatService
from services.pattern_service import PatternService

from tests.factories import complete, cycle, path


def _json(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


# ---------- patterns and bounds ----------
def test_gen_wheel(runner) -> None:
    payload = _json(runner.invoke(cli, ["gen", "wheel", "3"]))
    assert payload["n"] == 4
    assert len(payload["edges"]) == 6


def test_gen_graph6(runner) -> None:
    result = runner.invoke(cli, ["--format", "graph6", "gen", "wheel", "3"])
    assert result.exit_code == 0
    assert result.stdout == "C~\n"


def test_gen_rejects_small_wheel(runner) -> None:
    result = runner.invoke(cli, ["gen", "wheel", "2"])
    assert result.exit_code == 2
    assert "error: wheel order must be > 2" in result.output


def test_gen_unknown_family(runner) -> None:
    assert runner.invoke(cli, ["gen", "torus", "3"]).exit_code == 2


def test_bound(runner) -> None:
    payload = _json(runner.invoke(cli, ["bound", "wheel", "10"]))
    assert payload["bound"] == 358
    assert payload["k"] == 10


def test_version(runner) -> None:
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "1.0.0" in result.stdout


def test_out_writes_a_file(runner, tmp_path) -> None:
    target = tmp_path / "out" / "k4.g6"
    result = runner.invoke(cli, ["--format", "graph6", "--out", str(target), "gen", "wheel", "3"])
    assert result.exit_code == 0
    assert result.stdout == ""
    assert target.read_text(encoding="utf-8") == "C~\n"


# ---------- solvers ----------
def test_treewidth(runner, graph_file) -> None:
    payload = _json(runner.invoke(cli, ["tw", graph_file(complete(5))]))
    assert payload["outcome"] == "exact"
    assert payload["width"] == 4
    assert payload["tree_decomposition"]["bags"]


def test_pathwidth(runner, graph_file) -> None:
    payload = _json(runner.invoke(cli, ["pw", graph_file(PatternService.xi(4))]))
    assert payload["width"] == 2
    assert payload["path_decomposition"]["bags"]


def test_minor_found(runner, graph_file) -> None:
    payload = _json(runner.invoke(cli, ["minor", graph_file(complete(4), "pattern"),
                                        graph_file(PatternService.wheel(6), "host")]))
    assert payload["outcome"] == "found"
    assert payload["model"]["branch_sets"]


def test_minor_absent(runner, graph_file) -> None:
    payload = _json(runner.invoke(cli, ["minor", graph_file(complete(4), "pattern"),
                                        graph_file(cycle(6), "host")]))
    assert payload["outcome"] == "absent"


def test_linked(runner, graph_file) -> None:
    payload = _json(runner.invoke(cli, ["linked", graph_file(path(3)), "0", "2"]))
    assert payload["outcome"] == "linked"


def test_graph_read_by_extension(runner, tmp_path) -> None:
    target = tmp_path / "k4.g6"
    target.write_text("C~\n", encoding="utf-8")
    payload = _json(runner.invoke(cli, ["tw", str(target)]))
    assert payload["width"] == 3


# ---------- verification ----------
def test_verify_model(runner, json_file, hand_certificate) -> None:
    _, cert = hand_certificate
    result = runner.invoke(cli, ["verify-model", json_file(FormatService.model_payload(cert.left_model), "model.json")])
    assert _json(result)["ok"] is True


def test_verify_model_violation(runner, json_file) -> None:
    bad = MinorModel(pattern=complete(2), host=path(3),
                     branch_sets={0: frozenset([0]), 1: frozenset([2])})
    result = runner.invoke(cli, ["verify-model", json_file(FormatService.model_payload(bad), "model.json")])
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert report["ok"] is False
    assert report["violations"]


def test_verify_certificate(runner, graph_file, json_file, hand_certificate) -> None:
    host, cert = hand_certificate
    args = ["verify-cert", graph_file(host, "host"), json_file(FormatService.certificate_payload(cert), "cert.json")]
    assert _json(runner.invoke(cli, args))["ok"] is True
    assert _json(runner.invoke(cli, args + ["--no-linked"]))["ok"] is True


def test_verify_decomposition(runner, graph_file, json_file) -> None:
    g = graph_file(cycle(4))
    good = json_file({"bags": [[0, 1, 2], [0, 2, 3]]}, "good.json")
    assert _json(runner.invoke(cli, ["verify-decomp", g, good]))["width"] == 2
    bad = json_file({"bags": [[0, 1], [2, 3]]}, "bad.json")
    result = runner.invoke(cli, ["verify-decomp", g, bad])
    assert result.exit_code == 1
    assert json.loads(result.stdout)["ok"] is False


def test_compactify(runner, graph_file, json_file) -> None:
    g = graph_file(cycle(4))
    pd = json_file({"bags": [[0], [0, 1, 2], [0, 2], [0, 2, 3], [3]]}, "pd.json")
    payload = _json(runner.invoke(cli, ["compactify", g, pd]))
    assert len(payload["bags"]) == 2
    nice = _json(runner.invoke(cli, ["compactify", g, pd, "--nice"]))
    assert set(nice["node_kinds"]) <= {"introduce", "forget", "join", "leaf"}


def test_compactify_rejects_tree_decomposition(runner, graph_file, json_file) -> None:
    td = json_file({"bags": [[0, 1], [1, 2]], "tree_edges": [[0, 1]]}, "td.json")
    assert runner.invoke(cli, ["compactify", graph_file(path(3)), td]).exit_code == 2


# ---------- constructions ----------
def test_embed_wheel(runner) -> None:
    payload = _json(runner.invoke(cli, ["embed", "wheel", "3", "--psi", "0,1,2,3,4,5,6,7"]))
    assert payload["construction"] == "wheel"
    assert payload["details"]["case"] == 2
    assert payload["order_achieved"] >= payload["order_promised"]


def test_embed_wheel_is_seeded(runner) -> None:
    first = runner.invoke(cli, ["--seed", "4", "embed", "wheel", "4"])
    second = runner.invoke(cli, ["--seed", "4", "embed", "wheel", "4"])
    assert first.exit_code == 0
    assert first.stdout == second.stdout


def test_embed_xi(runner) -> None:
    payload = _json(runner.invoke(cli, ["embed", "xi", "3"]))
    assert payload["model"]["pattern"]["n"] == PatternService.xi(3).order


def test_embed_es(runner) -> None:
    payload = _json(runner.invoke(cli, ["embed", "es", "3", "3", "3", "1", "4", "2", "5"]))
    assert payload == {"direction": "increasing", "indices": [0, 2, 4], "values": [3, 4, 5]}


def test_embed_es_too_short(runner) -> None:
    result = runner.invoke(cli, ["embed", "es", "4", "4", "1", "2", "3"])
    assert result.exit_code == 2
    assert "(l-1)(k-1)+1" in result.output


def test_embed_bad_psi(runner) -> None:
    assert runner.invoke(cli, ["embed", "wheel", "3", "--psi", "a,b"]).exit_code == 2


# ---------- sweeps and cross-checks ----------
def test_sweep_writes_reports(runner, tmp_path) -> None:
    spec = tmp_path / "xi.yaml"
    spec.write_text(yaml.safe_dump({"family": "xi", "start": 2, "stop": 3, "seeds": 2}), encoding="utf-8")
    stem = tmp_path / "reports" / "xi"
    result = runner.invoke(cli, ["--out", str(stem), "sweep", str(spec)])
    assert result.exit_code == 0, result.output
    assert "xi: 4 rows, 4 verified" in result.stdout
    assert (tmp_path / "reports" / "xi.csv").exists()
    records = json.loads((tmp_path / "reports" / "xi.json").read_text(encoding="utf-8"))
    assert len(records) == 4


def test_sweep_json_spec(runner, tmp_path) -> None:
    spec = tmp_path / "es.json"
    spec.write_text(json.dumps({"family": "es", "start": 5, "stop": 6, "seeds": 3, "k": 3, "ell": 3}),
                    encoding="utf-8")
    result = runner.invoke(cli, ["--out", str(tmp_path / "es"), "sweep", str(spec)])
    assert result.exit_code == 0, result.output
    assert "es: 6 rows" in result.stdout


def test_sweep_rejects_bad_spec(runner, tmp_path) -> None:
    spec = tmp_path / "wheel.yaml"
    spec.write_text(yaml.safe_dump({"family": "wheel", "start": 2, "stop": 3}), encoding="utf-8")
    result = runner.invoke(cli, ["--out", str(tmp_path / "w"), "sweep", str(spec)])
    assert result.exit_code == 2
    assert "h > 2" in result.output


def test_cross_check(runner, graph_file) -> None:
    payload = _json(runner.invoke(cli, ["cross-check", "wheel", "3", graph_file(complete(8))]))
    assert payload["verdict"] == "consistent"
    assert payload["treewidth"] == 7


def test_cross_check_census(runner) -> None:
    payload = _json(runner.invoke(cli, ["cross-check", "--census", "3", "--k-max", "1"]))
    assert payload["graphs"] == 4
    assert payload["inconsistencies"] == []


def test_cross_check_needs_arguments(runner) -> None:
    result = runner.invoke(cli, ["cross-check"])
    assert result.exit_code == 2
    assert "FAMILY K HOST_FILE" in result.output


def test_cross_check_outside_proven_range(runner, graph_file) -> None:
    assert runner.invoke(cli, ["cross-check", "pw2", "3", graph_file(path(3))]).exit_code == 2
