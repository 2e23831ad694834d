import json
from fractions import Fraction
from pathlib import Path

import pytest
import yaml

from handlers.problem_file import parse_problem, serialize_problem
from main import main
from utils.constants import (
    EXIT_MALFORMED,
    EXIT_NOT_APPLICABLE,
    EXIT_OK,
    EXIT_RESOURCE,
    SEMISTABLE_MESSAGE,
)
from utils.failures import MalformedInputError

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def ex1_file(tmp_path, ex1_text):
    path = tmp_path / "ex1.json"
    path.write_text(ex1_text)
    return str(path)


@pytest.fixture
def ex2_file(tmp_path, ex2_text):
    path = tmp_path / "ex2.json"
    path.write_text(ex2_text)
    return str(path)


def _run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def _edit(tmp_path, text, **changes):
    obj = json.loads(text)
    obj.update(changes)
    path = tmp_path / "edited.json"
    path.write_text(json.dumps(obj))
    return str(path)


# ── Reports ───────────────────────────────────────────────────────


@pytest.mark.parametrize("command,example,golden", [
    ("slope", "ex1", "slope_ex1.yaml"),
    ("semistable", "ex1", "semistable_ex1.yaml"),
    ("hn", "ex1", "hn_ex1.yaml"),
    ("kempf", "ex1", "kempf_ex1.yaml"),
    ("verify", "ex1", "verify_ex1.txt"),
    ("scan", "ex1", "scan_ex1.yaml"),
    ("envelope", "ex1", "envelope_ex1.csv"),
    ("slope", "ex2", "slope_ex2.yaml"),
    ("semistable", "ex2", "semistable_ex2.yaml"),
    ("hn", "ex2", "hn_ex2.yaml"),
    ("envelope", "ex2", "envelope_ex2.csv"),
])
def test_report_matches_golden(capsys, ex1_file, ex2_file, command, example, golden):
    path = ex1_file if example == "ex1" else ex2_file
    status, out, err = _run(capsys, command, path)
    assert status == EXIT_OK
    assert out == (GOLDEN / golden).read_text()
    assert err == ""


@pytest.mark.parametrize("command", ["kempf", "verify"])
def test_semistable_input_is_not_applicable(capsys, ex2_file, command):
    assert _run(capsys, command, ex2_file) == (EXIT_NOT_APPLICABLE, "", f"{SEMISTABLE_MESSAGE}\n")


def test_slope_with_transform(capsys, ex1_file):
    status, out, _ = _run(capsys, "slope", ex1_file, "--transform", "2", "-3")
    doc = yaml.safe_load(out)
    assert status == EXIT_OK
    assert doc["theta"] == {"v1": -1, "v2": -3}
    assert doc["transform"] == [2, -3]
    assert doc["slope"] == -2
    assert doc["character_exponents"] == {"v1": -1, "v2": 1}


def test_scan_without_matrices(capsys, tmp_path, ex1_text):
    obj = json.loads(ex1_text)
    del obj["matrices"]
    path = tmp_path / "scan.json"
    path.write_text(json.dumps(obj))
    status, out, _ = _run(capsys, "scan", str(path), "--workers", "2")
    doc = yaml.safe_load(out)
    assert status == EXIT_OK
    assert doc["representation_points"] == 2
    assert doc["theorem"] == {"pass": 1, "fail": 0}
    assert doc["failures"]["counts"] == {}


SCAN_SUITE = [
    ("a2", ["v1", "v2"], [("a", "v1", "v2")], (1, 1)),
    ("a2", ["v1", "v2"], [("a", "v1", "v2")], (2, 1)),
    ("a2", ["v1", "v2"], [("a", "v1", "v2")], (2, 2)),
    ("kronecker", ["v1", "v2"], [("a", "v1", "v2"), ("b", "v1", "v2")], (1, 1)),
    ("kronecker", ["v1", "v2"], [("a", "v1", "v2"), ("b", "v1", "v2")], (2, 2)),
    ("a3", ["v1", "v2", "v3"], [("a", "v1", "v2"), ("b", "v2", "v3")], (1, 1, 1)),
]


@pytest.mark.parametrize("name,vertices,arrows,dims", SCAN_SUITE)
def test_scan_strata_survive_transform(capsys, tmp_path, name, vertices, arrows, dims):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps({
        "quiver": {"vertices": vertices, "arrows": [{"id": i, "src": s, "tgt": t} for i, s, t in arrows]},
        "field": {"kind": "prime", "p": 2},
        "dims": dict(zip(vertices, dims)),
        "theta": dict(zip(vertices, (1,) + (0,) * (len(vertices) - 1))),
    }))
    status, out, _ = _run(capsys, "scan", str(path))
    status2, out2, _ = _run(capsys, "scan", str(path), "--transform", "2", "-3")
    plain, moved = yaml.safe_load(out), yaml.safe_load(out2)
    assert status == status2 == EXIT_OK
    for key in ("representation_points", "semistable", "unstable", "theorem"):
        assert moved[key] == plain[key]
    assert len(moved["strata"]) == len(plain["strata"])
    for a, b in zip(plain["strata"], moved["strata"]):
        assert a["count"] == b["count"]
        assert [part["dims"] for part in a["type"]] == [part["dims"] for part in b["type"]]
        assert [2 * Fraction(part["slope"]) - 3 for part in a["type"]] == \
            [Fraction(part["slope"]) for part in b["type"]]


def test_envelope_svg(capsys, tmp_path, ex1_file):
    svg = tmp_path / "env.svg"
    status, out, _ = _run(capsys, "envelope", ex1_file, "--svg", str(svg))
    assert status == EXIT_OK
    assert out == (GOLDEN / "envelope_ex1.csv").read_text()

    drawing = svg.read_text()
    assert drawing.startswith("<?xml")
    assert drawing.count("<polyline") == 2
    assert drawing.count("<circle") == 3


@pytest.mark.parametrize("command", ["slope", "semistable", "hn", "kempf", "verify", "envelope"])
def test_reports_are_deterministic(capsys, ex1_file, command):
    first = _run(capsys, command, ex1_file)
    second = _run(capsys, command, ex1_file)
    assert first == second


# ── Exit statuses ─────────────────────────────────────────────────


def test_non_positive_sigma(capsys, tmp_path, ex1_text):
    path = _edit(tmp_path, ex1_text, sigma={"v1": 0, "v2": 1})
    status, out, err = _run(capsys, "slope", path)
    assert status == EXIT_MALFORMED
    assert out == ""
    assert "sigma.v1" in err


def test_unknown_vertex(capsys, tmp_path, ex1_text):
    path = _edit(tmp_path, ex1_text, dims={"v1": 1, "v2": 1, "v9": 2})
    status, _, err = _run(capsys, "slope", path)
    assert status == EXIT_MALFORMED
    assert "'v9'" in err


def test_missing_problem_file(capsys, tmp_path):
    status, _, err = _run(capsys, "slope", str(tmp_path / "nope.json"))
    assert status == EXIT_MALFORMED
    assert "cannot read problem file" in err


@pytest.mark.parametrize("argv", [
    ["frobnicate", "x.json"],
    ["slope"],
    ["slope", "x.json", "--transform", "2"],
    ["slope", "x.json", "--workers", "many"],
])
def test_usage_errors_are_malformed(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_MALFORMED
    assert "error:" in capsys.readouterr().err


def test_problem_file_not_utf8(capsys, tmp_path):
    path = tmp_path / "latin.json"
    path.write_bytes(b'{"quiver": "\xff\xfe"}')
    status, out, err = _run(capsys, "slope", str(path))
    assert status == EXIT_MALFORMED
    assert out == ""
    assert "not UTF-8" in err


def test_missing_config_file(capsys, tmp_path, ex1_file):
    status, _, err = _run(capsys, "slope", ex1_file, "--config", str(tmp_path / "nope.yaml"))
    assert status == EXIT_MALFORMED
    assert "config error" in err


def test_subspace_guard(capsys, ex1_file):
    status, out, err = _run(capsys, "semistable", ex1_file, "--guard-subspaces", "3")
    assert status == EXIT_RESOURCE
    assert out == ""
    assert "exceeds guard 3" in err


def test_representation_guard(capsys, tmp_path, ex1_text):
    path = _edit(tmp_path, ex1_text, dims={"v1": 2, "v2": 2}, matrices={"a": [[0, 0], [0, 0]]})
    status, _, err = _run(capsys, "scan", path, "--guard-reps", "15")
    assert status == EXIT_RESOURCE
    assert "16 exceeds guard 15" in err


# ── Problem files ─────────────────────────────────────────────────


def test_problem_round_trip(ex1_text):
    problem = parse_problem(ex1_text)
    text = serialize_problem(problem)
    assert serialize_problem(parse_problem(text)) == text
    assert parse_problem(text).representation() == problem.representation()


def test_sigma_defaults_to_ones(ex1_text):
    obj = json.loads(ex1_text)
    del obj["sigma"]
    assert parse_problem(json.dumps(obj)).weights.sigma == (1, 1)


def test_rational_entries():
    text = json.dumps({
        "quiver": {"vertices": ["v1", "v2"], "arrows": [{"id": "a", "src": "v1", "tgt": "v2"}]},
        "field": {"kind": "rational"},
        "dims": {"v1": 1, "v2": 1},
        "matrices": {"a": [["-3/4"]]},
        "theta": {"v1": 1, "v2": 0},
    })
    problem = parse_problem(text)
    assert json.loads(serialize_problem(problem))["matrices"] == {"a": [["-3/4"]]}


def test_map_out_of_zero_space(ex1_text):
    obj = json.loads(ex1_text)
    obj["dims"] = {"v1": 0, "v2": 2}
    obj["matrices"] = {"a": []}
    assert parse_problem(json.dumps(obj)).representation().matrix("a").cols == 0


@pytest.mark.parametrize("change,needle", [
    ({"field": {"kind": "prime", "p": 4}}, "field.p"),
    ({"field": {"kind": "complex"}}, "field.kind"),
    ({"matrices": {"b": [[1]]}}, "'b'"),
    ({"matrices": {"a": [[1, 0]]}}, "matrices.a"),
    ({"theta": {"v1": 1}}, "missing vertex 'v2'"),
])
def test_malformed_problems(ex1_text, change, needle):
    obj = json.loads(ex1_text)
    obj.update(change)
    with pytest.raises(MalformedInputError) as exc:
        parse_problem(json.dumps(obj))
    assert needle in exc.value.message


def test_invalid_json():
    with pytest.raises(MalformedInputError, match="not valid JSON"):
        parse_problem("{")
