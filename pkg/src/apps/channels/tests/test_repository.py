import json

import numpy as np
import pytest

from src.apps.channels.exceptions import (
    ChannelParseError,
    NotCompletelyPositiveError,
    NotHermitianError,
    NotTracePreservingError,
)
from src.apps.channels.families import depolarizing, identity_channel, random_channel, transpose_map
from src.apps.channels.repository import channel_payload, dump_channel, infer_subsystems, load_channel, parse_channel
from src.common.enums import ChannelKind
from src.common.utils import encode_vector


def test_kraus_file_roundtrip(tmp_path):
    original = random_channel(3, 2, np.random.default_rng(0))
    path = dump_channel(original, tmp_path / "random.json")
    loaded = load_channel(path)
    np.testing.assert_allclose(loaded.choi.matrix, original.choi.matrix, atol=1e-15)
    assert loaded.name == original.name
    assert loaded.subsystems is None


def test_choi_file_roundtrip(tmp_path):
    original = depolarizing(4, 0.3)
    path = dump_channel(original, tmp_path / "dep.json", ChannelKind.CHOI)
    loaded = load_channel(path)
    np.testing.assert_allclose(loaded.choi.matrix, original.choi.matrix, atol=1e-15)
    assert loaded.subsystems == (2, 2)
    assert loaded.kraus is not None


def test_subsystems_inference():
    assert infer_subsystems(9) == (3, 3)
    assert infer_subsystems(4) == (2, 2)
    assert infer_subsystems(6) is None
    assert infer_subsystems(1) is None


def test_explicit_subsystems_override_inference():
    payload = channel_payload(identity_channel(4))
    payload["subsystems"] = [4, 1]
    assert parse_channel(payload).subsystems == (4, 1)


def test_non_tp_kraus_rejected_unless_allowed():
    payload = {"kind": "kraus", "d_in": 2, "d_out": 2, "data": [encode_vector(np.eye(2) * 0.5)]}
    with pytest.raises(NotTracePreservingError):
        parse_channel(payload)
    assert parse_channel(payload, allow_non_tp=True).choi.trace == pytest.approx(0.25)


def test_non_cp_choi_rejected_unless_allowed():
    payload = channel_payload(transpose_map(2), ChannelKind.CHOI)
    with pytest.raises(NotCompletelyPositiveError):
        parse_channel(payload)
    assert parse_channel(payload, allow_non_tp=True).kraus is None


def test_non_hermitian_choi_rejected():
    matrix = np.zeros((4, 4))
    matrix[0, 1] = 1.0
    payload = {"kind": "choi", "d_in": 2, "d_out": 2, "data": encode_vector(matrix)}
    with pytest.raises(ChannelParseError, match="not Hermitian") as excinfo:
        parse_channel(payload, allow_non_tp=True)
    assert isinstance(excinfo.value.__cause__, NotHermitianError)


@pytest.mark.parametrize(
    "payload",
    [
        {"kind": "kraus", "d_in": 2, "d_out": 3, "data": []},
        {"kind": "choi", "d_in": 2, "d_out": 2, "data": [[1.0, 0.0]]},
        {"kind": "kraus", "d_in": 2, "d_out": 2, "data": [[[1.0, 0.0]]]},
        {"kind": "superoperator", "d_in": 2, "d_out": 2, "data": []},
        {"kind": "kraus", "d_in": 4, "d_out": 4, "data": [encode_vector(np.eye(4))], "subsystems": [3, 2]},
        {"d_in": 2},
    ],
)
def test_malformed_payloads(payload):
    with pytest.raises(ChannelParseError):
        parse_channel(payload)


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ChannelParseError, match="invalid JSON"):
        load_channel(path)


def test_missing_file(tmp_path):
    with pytest.raises(ChannelParseError):
        load_channel(tmp_path / "absent.json")


def test_written_file_is_stable(tmp_path):
    channel = identity_channel(2)
    first = dump_channel(channel, tmp_path / "a.json").read_bytes()
    second = dump_channel(channel, tmp_path / "b.json").read_bytes()
    assert first == second
    assert json.loads(first)["kind"] == "kraus"
