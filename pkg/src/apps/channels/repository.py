# src/apps/channels/repository.py

"""
Channel repository
Reads and writes channels in the JSON channel file format.
"""

import json
import math
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from src.apps.channels.exceptions import (
    ChannelParseError,
    NotCompletelyPositiveError,
    NotHermitianError,
    NotTracePreservingError,
)
from src.apps.channels.models import Channel
from src.apps.channels.schemas import ChannelFile
from src.apps.channels.service import (
    channel_from_choi,
    channel_from_kraus,
    is_trace_preserving,
    require_completely_positive,
)
from src.common.enums import ChannelKind
from src.common.utils import decode_matrix, encode_vector
from src.core.logging import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


def infer_subsystems(d: int) -> Optional[tuple[int, int]]:
    """A perfect-square dimension is read as r (x) r."""
    root = math.isqrt(d)
    if root >= 2 and root * root == d:
        return (root, root)
    return None


def parse_channel(payload: Any, source: str = "<memory>", allow_non_tp: bool = False) -> Channel:
    """
    Build a channel from a decoded channel file.

    Args:
        payload: decoded JSON object
        source: label used in error messages
        allow_non_tp: accept maps that are not trace preserving or not
            completely positive

    Raises:
        ChannelParseError: payload does not follow the file format, or its
            Choi data is not Hermitian
        NotTracePreservingError: map is not TP and `allow_non_tp` is false
        NotCompletelyPositiveError: Choi data is not PSD and `allow_non_tp` is false
    """
    try:
        spec = ChannelFile.model_validate(payload)
    except PydanticValidationError as e:
        raise ChannelParseError(source, str(e)) from e

    d = spec.d_in
    subsystems = tuple(spec.subsystems) if spec.subsystems is not None else infer_subsystems(d)
    name = spec.name or Path(source).stem

    if spec.kind == ChannelKind.KRAUS:
        kraus = np.stack([decode_matrix(operator, spec.d_out, spec.d_in) for operator in spec.data])
        channel = channel_from_kraus(kraus, subsystems=subsystems, name=name, require_tp=not allow_non_tp)
    else:
        matrix = decode_matrix(spec.data, d * d, d * d)
        try:
            channel = channel_from_choi(matrix, d, subsystems=subsystems, name=name)
        except NotHermitianError as e:
            raise ChannelParseError(source, e.message) from e
        if not allow_non_tp:
            if not is_trace_preserving(channel):
                raise NotTracePreservingError(float(abs(channel.choi.trace - 1.0)))
            require_completely_positive(channel)

    logger.info(
        "channel loaded",
        source=source,
        kind=str(spec.kind),
        d=d,
        subsystems=subsystems,
        kraus_rank=None if channel.kraus is None else int(channel.kraus.shape[0]),
    )
    return channel


def load_channel(path: PathLike, allow_non_tp: bool = False) -> Channel:
    """
    Raises:
        ChannelParseError: unreadable file, invalid JSON or invalid format
    """
    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ChannelParseError(source, e.strerror or str(e)) from e
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ChannelParseError(source, f"invalid JSON at line {e.lineno}: {e.msg}") from e
    return parse_channel(payload, source, allow_non_tp)


def channel_payload(ch: Channel, kind: Optional[ChannelKind] = None) -> dict[str, Any]:
    """Channel file object for `ch`; Kraus form whenever Kraus operators exist."""
    if kind is None:
        kind = ChannelKind.KRAUS if ch.kraus is not None else ChannelKind.CHOI
    kind = ChannelKind(kind)
    if kind == ChannelKind.KRAUS:
        if ch.kraus is None:
            raise NotCompletelyPositiveError()
        data: Any = [encode_vector(k) for k in ch.kraus]
    else:
        data = encode_vector(ch.choi.matrix)
    payload: dict[str, Any] = {
        "kind": kind.value,
        "d_in": ch.d_in,
        "d_out": ch.d_out,
        "data": data,
        "name": ch.name,
    }
    if ch.subsystems is not None:
        payload["subsystems"] = list(ch.subsystems)
    return payload


def dump_channel(ch: Channel, path: PathLike, kind: Optional[ChannelKind] = None) -> Path:
    target = Path(path)
    target.write_text(json.dumps(channel_payload(ch, kind), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.debug("channel written", path=str(target), name=ch.name)
    return target