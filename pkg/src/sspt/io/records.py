import json
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

from sspt.engine.parameters import ParameterRanges, ParameterSample
from sspt.engine.records import TrackingFlag, TrackingRecord
from sspt.exceptions import (
    ConfigurationError,
    ErrorCode,
    FormatError,
    SsptIoError,
)
from sspt.logging import logger

PathLike = Union[str, Path]

RECORD_FIELDS = (
    "seed",
    "step_size",
    "radius",
    "cone_angle",
    "fod_threshold",
    "accepted",
    "flags",
    "n_backtracks",
    "n_points",
    "duration_us",
    "streamline_index",
)


def record_to_dict(record: TrackingRecord) -> Dict[str, Any]:
    params = record.params
    return {
        "seed": list(record.seed_pos),
        "step_size": params.step_size,
        "radius": params.radius,
        "cone_angle": params.cone_angle,
        "fod_threshold": params.fod_threshold,
        "accepted": record.accepted,
        "flags": [str(flag) for flag in record.sorted_flags],
        "n_backtracks": record.n_backtracks,
        "n_points": record.n_points,
        "duration_us": record.duration_us,
        "streamline_index": record.streamline_index,
    }


def record_from_dict(data: Dict[str, Any]) -> TrackingRecord:
    """Inverse of ``record_to_dict``, raises ``ValueError`` on bad input"""
    missing = [name for name in RECORD_FIELDS if name not in data]
    if missing:
        raise ValueError(f"missing fields {missing}")

    seed = data["seed"]
    if not isinstance(seed, list) or len(seed) != 3:
        raise ValueError("seed must be a list of three numbers")
    if not isinstance(data["accepted"], bool):
        raise ValueError("accepted must be a boolean")
    if not isinstance(data["flags"], list):
        raise ValueError("flags must be a list")

    flags = []
    for flag in data["flags"]:
        try:
            flags.append(TrackingFlag(flag))
        except ValueError:
            raise ValueError(f"unknown flag {flag!r}") from None

    index = data["streamline_index"]
    return TrackingRecord(
        seed_pos=tuple(float(value) for value in seed),
        params=ParameterSample(
            step_size=float(data["step_size"]),
            radius=float(data["radius"]),
            cone_angle=float(data["cone_angle"]),
            fod_threshold=float(data["fod_threshold"]),
        ),
        accepted=data["accepted"],
        failure_flags=frozenset(flags),
        n_backtracks=int(data["n_backtracks"]),
        n_points=int(data["n_points"]),
        duration_us=int(data["duration_us"]),
        streamline_index=None if index is None else int(index),
    )


def write_records(
    path: PathLike,
    records: Iterable[TrackingRecord],
    *,
    append: bool = False,
) -> None:
    """Writes one JSON object per line"""
    path = Path(path)
    count = 0
    try:
        with open(path, "a" if append else "w", encoding="utf-8") as file:
            for record in records:
                file.write(json.dumps(record_to_dict(record)) + "\n")
                count += 1
    except OSError as error:
        raise SsptIoError.from_os_error(
            error, log_message=f"Could not write {path}"
        ) from error
    logger.debug(f"Wrote {count} records to {path}")


def read_records(path: PathLike) -> List[TrackingRecord]:
    path = Path(path)
    try:
        lines = path.read_bytes().split(b"\n")
    except OSError as error:
        raise SsptIoError.from_os_error(error) from error

    records = []
    for number, raw_line in enumerate(lines, start=1):
        if not raw_line.strip():
            continue
        try:
            data = json.loads(raw_line.decode("utf-8"))
            if not isinstance(data, dict):
                raise ValueError("line is not a JSON object")
            records.append(record_from_dict(data))
        except (ValueError, TypeError) as error:
            format_error = FormatError(
                f"Malformed record in {path} at line {number}",
                detail=str(error),
                code=ErrorCode.RecordFormatError,
            )
            format_error.add_note(f"Line: {number}")
            raise format_error from error

    logger.debug(f"Read {len(records)} records from {path}")
    return records


def ranges_path(records_path: PathLike) -> Path:
    """Sidecar holding the ranges a records file was sampled from"""
    records_path = Path(records_path)
    return records_path.with_name(f"{records_path.stem}.ranges.json")


def write_ranges(path: PathLike, ranges: ParameterRanges) -> None:
    path = Path(path)
    try:
        path.write_text(
            json.dumps(asdict(ranges), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    except OSError as error:
        raise SsptIoError.from_os_error(
            error, log_message=f"Could not write {path}"
        ) from error
    logger.debug(f"Wrote sampling ranges to {path}")


def read_ranges(path: PathLike) -> ParameterRanges:
    path = Path(path)
    try:
        content = path.read_bytes()
    except OSError as error:
        raise SsptIoError.from_os_error(error) from error

    try:
        data = json.loads(content.decode("utf-8"))
        if not isinstance(data, dict):
            raise ValueError("ranges are not a JSON object")
        return ParameterRanges(**data)
    except (ValueError, TypeError, ConfigurationError) as error:
        raise FormatError(
            f"Malformed sampling ranges in {path}",
            detail=str(error),
            code=ErrorCode.RecordFormatError,
        ) from error
