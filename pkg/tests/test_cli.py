"""
End-to-end CLI runs: outputs, exit codes and determinism
"""

import csv
import io
import json

import pytest
from jsonschema import Draft202012Validator

from src.apps.channels.families import depolarizing_pair
from src.apps.channels.repository import load_channel
from src.apps.classifiers.schemas import Verdict
from src.apps.classifiers.service import reverify
from src.apps.experiments import service as experiments
from src.apps.experiments.constants import THRESHOLD_COLUMNS
from src.core.config import settings
from src.core.exceptions import NumericalFailureError

FAST = ("--restarts", "4")
SEARCH = ("--restarts", "6")


def read_rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def by_claim(rows: list[dict[str, str]]) -> dict[str, dict[str, str]]:
    return {row["claim"]: row for row in rows}


# ==============================================================================
# classify
# ==============================================================================

def test_classify_pair_above_threshold_is_refuted(cli):
    code, out = cli("classify", "--family", "depolarizing2", "--d", 3, "--q", 0.48, *FAST)
    assert code == 0
    rows = by_claim(read_rows(out))
    assert rows["ppt_inducing"]["tag"] == "refuted"
    assert float(rows["ppt_inducing"]["witness_value"]) < 0
    assert rows["completely_positive"]["tag"] == "certified"
    assert {"distillation_prohibiting", "entanglement_breaking", "entanglement_binding"} <= set(rows)


def test_classify_one_sided_boundary_is_certified(cli):
    code, out = cli("classify", "--family", "depolarizing", "--d", 3, "--q", 0.25, "--one-sided")
    assert code == 0
    (row,) = read_rows(out)
    assert row["claim"] == "one_sided_ppt_inducing"
    assert row["tag"] == "certified"


def test_classify_identity_file_has_bell_witness(cli, id3x3_path):
    code, out = cli("classify", "--file", id3x3_path, *SEARCH)
    assert code == 0
    row = by_claim(read_rows(out))["ppt_inducing"]
    assert row["tag"] == "refuted"
    assert row["witness_kind"] == "output_pt"
    assert float(row["witness_value"]) == pytest.approx(-0.5, abs=1e-8)


def test_classify_single_system_skips_bipartite_claims(cli):
    code, out = cli("classify", "--family", "depolarizing", "--d", 2, "--q", 0.2)
    assert code == 0
    rows = by_claim(read_rows(out))
    assert set(rows) == {"completely_positive", "entanglement_breaking", "entanglement_binding"}
    assert rows["entanglement_breaking"]["tag"] == "certified"


def test_csv_header_and_line_endings(cli):
    _, out = cli("classify", "--family", "depolarizing", "--d", 2, "--q", 0.2)
    assert out.startswith("claim,tag,method,margin,detail,witness_kind,witness_value\r\n")
    assert out.endswith("\r\n")


def test_classify_json_validates_and_reverifies(cli, id3x3_path, verdict_schema):
    code, out = cli("classify", "--file", id3x3_path, "--format", "json", *SEARCH)
    assert code == 0
    payload = json.loads(out)
    Draft202012Validator(verdict_schema).validate(payload)
    assert payload["channel"]["subsystems"] == [3, 3]

    channel = load_channel(id3x3_path)
    refuted = [Verdict.model_validate(v) for v in payload["verdicts"] if v["tag"] == "refuted"]
    assert refuted
    for verdict in refuted:
        assert reverify(verdict, channel) == pytest.approx(verdict.witness.value, abs=1e-8)


def test_classify_pair_json_reverifies(cli, verdict_schema):
    code, out = cli("classify", "--family", "depolarizing2", "--d", 3, "--q", 0.6, "--format", "json", *FAST)
    assert code == 0
    payload = json.loads(out)
    Draft202012Validator(verdict_schema).validate(payload)
    ppt = next(v for v in payload["verdicts"] if v["claim"] == "ppt_inducing")
    verdict = Verdict.model_validate(ppt)
    assert verdict.refuted
    reverify(verdict, depolarizing_pair(3, 0.6))


def test_out_file_matches_stdout(cli, tmp_path):
    target = tmp_path / "nested" / "verdicts.csv"
    code, out = cli("classify", "--family", "depolarizing", "--d", 2, "--q", 0.2, "--out", target)
    assert code == 0
    assert out == ""
    _, printed = cli("classify", "--family", "depolarizing", "--d", 2, "--q", 0.2)
    assert target.read_bytes() == printed.encode("utf-8")


# ==============================================================================
# Exit codes
# ==============================================================================

def test_missing_file_is_a_parse_error(cli, tmp_path):
    code, out = cli("classify", "--file", tmp_path / "absent.json")
    assert code == 2
    assert out == ""


def test_malformed_file_is_a_parse_error(cli, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"kind": "kraus", "d_in": 2', encoding="utf-8")
    assert cli("classify", "--file", broken)[0] == 2


def test_file_violating_format_is_a_parse_error(cli, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "kraus", "d_in": 2, "d_out": 2, "data": [[[1.0, 0.0]]]}), encoding="utf-8")
    assert cli("classify", "--file", bad)[0] == 2


def test_non_hermitian_choi_file_is_a_parse_error(cli, tmp_path):
    data = [[0.0, 0.0]] * 16
    data[1] = [1.0, 0.0]
    skewed = tmp_path / "skewed.json"
    skewed.write_text(json.dumps({"kind": "choi", "d_in": 2, "d_out": 2, "data": data}), encoding="utf-8")
    code, out = cli("classify", "--file", skewed, "--allow-non-tp")
    assert code == 2
    assert out == ""


@pytest.mark.parametrize(
    "args",
    [
        ("classify",),
        ("classify", "--family", "depolarizing", "--d", "3"),
        ("classify", "--family", "depolarizing", "--d", "3", "--q", "0.1", "--file", "x.json"),
        ("sweep", "--d", "3", "--qmin", "0.5", "--qmax", "0.1"),
        ("profile", "--d", "3"),
        ("teleport", "--d", "3"),
        ("threshold", "--d", "three"),
        ("classify", "--family", "depolarizing", "--d", "3", "--q", "0.1", "--format", "xml"),
    ],
)
def test_argument_errors_exit_2(cli, args):
    assert cli(*args)[0] == 2


def test_not_completely_positive_exit_3(cli):
    code, out = cli("classify", "--family", "depolarizing", "--d", 3, "--q", 1.5)
    assert code == 3
    assert out == ""


def test_non_tp_file_exit_3_unless_allowed(cli, tmp_path):
    path = tmp_path / "half.json"
    path.write_text(
        json.dumps({"kind": "kraus", "d_in": 2, "d_out": 2, "data": [[[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]]]}),
        encoding="utf-8",
    )
    assert cli("classify", "--file", path)[0] == 3
    code, out = cli("classify", "--file", path, "--allow-non-tp")
    assert code == 0
    assert by_claim(read_rows(out))["completely_positive"]["tag"] == "certified"


def test_threshold_dimension_out_of_range_exit_3(cli):
    assert cli("threshold", "--d", 6)[0] == 3


def test_sweep_outside_cp_range_exit_3(cli):
    assert cli("sweep", "--d", 3, "--qmin", -0.5, "--qmax", 0.2)[0] == 3


def test_numerical_failure_exit_4(cli, monkeypatch):
    def fail(spec):
        raise NumericalFailureError("see-saw diverged")

    monkeypatch.setitem(experiments.COMMANDS, "threshold", fail)
    assert cli("threshold", "--d", 3)[0] == 4


def test_unexpected_error_exit_4(cli, monkeypatch):
    def fail(spec):
        raise RuntimeError("boom")

    monkeypatch.setitem(experiments.COMMANDS, "profile", fail)
    assert cli("profile", "--d", 3, "--q", 0.5)[0] == 4


def test_help_exits_0(cli):
    assert cli("--help")[0] == 0


# ==============================================================================
# Numerical experiments
# ==============================================================================

def test_threshold_qubit_row(cli):
    code, out = cli("threshold", "--d", 2, *FAST)
    assert code == 0
    assert out.splitlines()[0] == ",".join(THRESHOLD_COLUMNS)
    (row,) = read_rows(out)
    assert int(row["d"]) == 2
    assert float(row["q_star"]) == pytest.approx(0.577350, abs=1e-4)
    assert float(row["conjecture"]) == pytest.approx(0.577350269, abs=1e-9)
    assert float(row["binding"]) == pytest.approx(1 / 3, abs=1e-9)
    assert float(row["q_low"]) <= float(row["q_star"]) <= float(row["q_high"])


def test_threshold_json_validates(cli, verdict_schema):
    code, out = cli("threshold", "--d", 2, "--format", "json", "--tol", 1e-3, *FAST)
    assert code == 0
    payload = json.loads(out)
    Draft202012Validator(verdict_schema).validate(payload)
    (row,) = payload["rows"]
    assert row["q_high"] - row["q_low"] <= 1e-3
    assert payload["summary"]["restriction_violated"] is False


def test_sweep_brackets_qutrit_threshold(cli):
    code, out = cli("sweep", "--d", 3, "--qmin", 0, "--qmax", 0.6, "--steps", 61)
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 61
    qs = [float(r["q"]) for r in rows]
    values = [float(r["worst_min_pt_eig"]) for r in rows]

    assert values[0] == pytest.approx(1 / 9, abs=1e-9)
    assert values[qs.index(0.5)] == pytest.approx(-1 / 72, abs=1e-6)
    assert all(b <= a + 1e-7 for a, b in zip(values, values[1:]))
    assert values[qs.index(0.47)] >= 0 > values[qs.index(0.48)]

    verdicts = dict(zip(qs, (r["verdict"] for r in rows)))
    assert verdicts[0.2] == "certified"
    assert verdicts[0.3] == "numerically_likely"
    assert verdicts[0.48] == "refuted"


def test_sweep_json_summary(cli, verdict_schema):
    code, out = cli("sweep", "--d", 3, "--qmin", 0.4, "--qmax", 0.5, "--steps", 11, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    Draft202012Validator(verdict_schema).validate(payload)
    assert payload["summary"]["sign_change"] == [0.47, 0.48]


def test_profile_qutrit_minimizer(cli):
    code, out = cli("profile", "--d", 3, "--q", 0.5, "--steps", 6)
    assert code == 0
    assert out.splitlines()[0] == "lambda_1,lambda_2,lambda_3,min_pt_eig"
    parsed = list(csv.reader(io.StringIO(out)))[1:]
    rows = [[float(x) for x in row] for row in parsed]

    *grid, argmin = rows
    assert sorted(argmin[:3], reverse=True) == pytest.approx([0.5, 0.5, 0.0], abs=1e-3)
    assert argmin[3] == pytest.approx(-1 / 72, abs=1e-6)
    uniform = next(r for r in grid if r[:3] == pytest.approx([1 / 3] * 3, abs=1e-8))
    assert uniform[3] > argmin[3]
    assert min(r[3] for r in grid) >= argmin[3] - 1e-12


def test_profile_qubit_minimizer(cli):
    code, out = cli("profile", "--d", 2, "--q", 0.8)
    assert code == 0
    argmin = [float(x) for x in list(csv.reader(io.StringIO(out)))[-1]]
    assert argmin[:2] == pytest.approx([0.5, 0.5], abs=1e-3)


def test_conjecture_rows(cli):
    code, out = cli("conjecture", "--dmax", 3, *FAST)
    assert code == 0
    rows = read_rows(out)
    assert [int(r["d"]) for r in rows] == [2, 3]
    for row in rows:
        assert abs(float(row["difference"])) <= 1e-3
        assert row["violated"] == "false"
    assert float(rows[0]["conjecture_value"]) == pytest.approx(0.57735, abs=1e-5)


# ==============================================================================
# Determinism
# ==============================================================================

def test_reruns_are_byte_identical(cli, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    args = ("classify", "--family", "depolarizing2", "--d", 2, "--q", 0.7, "--format", "json", "--seed", 5, *FAST)
    assert cli(*args, "--out", first)[0] == 0
    assert cli(*args, "--out", second)[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_workers_do_not_change_output(cli):
    args = ("sweep", "--d", 2, "--qmin", 0.3, "--qmax", 0.7, "--steps", 9)
    _, serial = cli(*args, "--workers", 1)
    _, threaded = cli(*args, "--workers", 3)
    assert serial == threaded


def test_eigensolver_override_is_scoped(cli):
    before = settings.eigensolver
    code, out = cli("classify", "--family", "depolarizing", "--d", 2, "--q", 0.5, "--eigensolver", "jacobi")
    assert code == 0
    assert settings.eigensolver == before
    _, lapack = cli("classify", "--family", "depolarizing", "--d", 2, "--q", 0.5, "--eigensolver", "lapack")
    tags = lambda text: [(r["claim"], r["tag"]) for r in read_rows(text)]
    assert tags(out) == tags(lapack)
