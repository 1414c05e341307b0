import csv
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from sspt.analysis.clustering import Cluster
from sspt.analysis.histogram import (
    JointHistogram,
    ParamHistogram,
    RangeSuggestion,
)
from sspt.exceptions import ErrorCode, FormatError, SsptIoError
from sspt.logging import logger

PathLike = Union[str, Path]

HISTOGRAM_COLUMNS = ("bin_lo", "bin_hi", "attempted", "accepted", "rate")
JOINT_HISTOGRAM_COLUMNS = (
    "x_lo",
    "x_hi",
    "y_lo",
    "y_hi",
    "attempted",
    "accepted",
    "rate",
)
SUGGESTION_COLUMNS = (
    "param",
    "suggested_min",
    "suggested_max",
    "support_fraction",
)
ASSIGNMENT_COLUMNS = ("streamline_index", "cluster_id")


def write_csv_rows(
    path: PathLike, columns: Sequence[str], rows: Iterable[Sequence]
) -> None:
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as file:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows(rows)
    except OSError as error:
        raise SsptIoError.from_os_error(
            error, log_message=f"Could not write {path}"
        ) from error
    logger.debug(f"Wrote table {path}")


def read_csv_rows(
    path: PathLike, columns: Sequence[str]
) -> List[Dict[str, str]]:
    """Rows as dictionaries, the header must hold ``columns``"""
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as file:
            reader = csv.DictReader(file)
            header = reader.fieldnames or []
            missing = [name for name in columns if name not in header]
            if missing:
                raise FormatError(
                    f"Table {path} lacks columns {missing}",
                    code=ErrorCode.TableFormatError,
                )
            return list(reader)
    except OSError as error:
        raise SsptIoError.from_os_error(error) from error


def write_histogram(path: PathLike, hist: ParamHistogram) -> None:
    write_csv_rows(path, HISTOGRAM_COLUMNS, hist.rows())


def write_joint_histogram(path: PathLike, hist: JointHistogram) -> None:
    write_csv_rows(path, JOINT_HISTOGRAM_COLUMNS, hist.rows())


def write_suggestion(path: PathLike, suggestion: RangeSuggestion) -> None:
    write_csv_rows(
        path,
        SUGGESTION_COLUMNS,
        [
            (
                str(suggestion.param_name),
                suggestion.suggested_min,
                suggestion.suggested_max,
                suggestion.support_fraction,
            )
        ],
    )


def write_cluster_assignments(
    path: PathLike, clusters: Sequence[Cluster]
) -> None:
    rows: List[Tuple[int, int]] = sorted(
        (member, cluster.id)
        for cluster in clusters
        for member in cluster.member_indices
    )
    write_csv_rows(path, ASSIGNMENT_COLUMNS, rows)


def read_cluster_assignments(path: PathLike) -> List[Cluster]:
    """Cluster memberships without centroids"""
    members: Dict[int, List[int]] = defaultdict(list)
    for number, row in enumerate(
        read_csv_rows(path, ASSIGNMENT_COLUMNS), start=2
    ):
        try:
            streamline_index = int(row["streamline_index"])
            cluster_id = int(row["cluster_id"])
        except (TypeError, ValueError) as error:
            format_error = FormatError(
                f"Malformed cluster assignment in {path} at line {number}",
                detail=str(error),
                code=ErrorCode.TableFormatError,
            )
            format_error.add_note(f"Line: {number}")
            raise format_error from error
        members[cluster_id].append(streamline_index)

    return [
        Cluster(cluster_id, tuple(members[cluster_id]))
        for cluster_id in sorted(members)
    ]
