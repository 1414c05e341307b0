from collections import Counter
from dataclasses import dataclass, field
from typing import (
    Collection,
    Dict,
    List,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np

from sspt.analysis.clustering import Cluster
from sspt.engine.parameters import ParameterName, ParameterRanges
from sspt.engine.records import TrackingFlag, TrackingRecord
from sspt.exceptions import (
    AnalysisError,
    ConsistencyError,
    ParameterError,
    RefinementError,
)
from sspt.types import ValueRange

# Relative slack when comparing accumulated float masses
_MASS_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class ParamHistogram:
    """Attempted and accepted counts over equal-width parameter bins"""

    param_name: ParameterName
    bin_edges: np.ndarray = field(repr=False)
    attempted_counts: np.ndarray = field(repr=False)
    accepted_counts: np.ndarray = field(repr=False)

    @property
    def n_bins(self) -> int:
        return self.attempted_counts.shape[0]

    @property
    def acceptance_rate(self) -> np.ndarray:
        return _rate(self.accepted_counts, self.attempted_counts)

    @property
    def value_range(self) -> ValueRange:
        return (float(self.bin_edges[0]), float(self.bin_edges[-1]))

    def rows(self) -> List[Tuple[float, float, int, int, float]]:
        rate = self.acceptance_rate
        return [
            (
                float(self.bin_edges[i]),
                float(self.bin_edges[i + 1]),
                int(self.attempted_counts[i]),
                int(self.accepted_counts[i]),
                float(rate[i]),
            )
            for i in range(self.n_bins)
        ]


@dataclass(frozen=True, eq=False)
class JointHistogram:
    """Counts over a grid of two sampled parameters"""

    param_x: ParameterName
    param_y: ParameterName
    x_edges: np.ndarray = field(repr=False)
    y_edges: np.ndarray = field(repr=False)
    attempted_counts: np.ndarray = field(repr=False)
    accepted_counts: np.ndarray = field(repr=False)

    @property
    def acceptance_rate(self) -> np.ndarray:
        return _rate(self.accepted_counts, self.attempted_counts)

    def rows(self) -> List[Tuple[float, float, float, float, int, int, float]]:
        rate = self.acceptance_rate
        result = []
        for i in range(self.x_edges.shape[0] - 1):
            for j in range(self.y_edges.shape[0] - 1):
                result.append(
                    (
                        float(self.x_edges[i]),
                        float(self.x_edges[i + 1]),
                        float(self.y_edges[j]),
                        float(self.y_edges[j + 1]),
                        int(self.attempted_counts[i, j]),
                        int(self.accepted_counts[i, j]),
                        float(rate[i, j]),
                    )
                )
        return result


@dataclass(frozen=True)
class RangeSuggestion:
    param_name: ParameterName
    suggested_min: float
    suggested_max: float
    support_fraction: float


@dataclass(frozen=True)
class RunSummary:
    attempts: int
    accepted: int
    total_duration_us: int
    mean_backtracks: float
    flag_counts: Dict[str, int] = field(default_factory=dict)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.attempts if self.attempts > 0 else 0.0

    @property
    def mean_duration_us(self) -> float:
        if self.attempts == 0:
            return 0.0
        return self.total_duration_us / self.attempts

    @property
    def seconds_per_accepted(self) -> Optional[float]:
        """Tracking time spent per accepted streamline"""
        if self.accepted == 0:
            return None
        return self.total_duration_us / self.accepted / 1e6

    def as_dict(self) -> Dict:
        return {
            "attempts": self.attempts,
            "accepted": self.accepted,
            "acceptance_rate": self.acceptance_rate,
            "total_duration_us": self.total_duration_us,
            "mean_duration_us": self.mean_duration_us,
            "seconds_per_accepted": self.seconds_per_accepted,
            "mean_backtracks": self.mean_backtracks,
            "flag_counts": dict(self.flag_counts),
        }

    def format(self) -> str:
        lines = [
            f"attempts: {self.attempts}",
            f"accepted: {self.accepted}",
            f"acceptance rate: {self.acceptance_rate:.4f}",
            f"mean duration: {self.mean_duration_us:.1f} us",
            f"mean backtracks: {self.mean_backtracks:.2f}",
        ]
        if self.seconds_per_accepted is not None:
            lines.append(
                f"time per accepted: {self.seconds_per_accepted:.6f} s"
            )
        for flag in sorted(self.flag_counts):
            lines.append(f"{flag}: {self.flag_counts[flag]}")
        return "\n".join(lines) + "\n"


def parameter_values(
    records: Sequence[TrackingRecord], param_name: ParameterName
) -> np.ndarray:
    name = ParameterName.parse(param_name)
    return np.array(
        [record.params.value_of(name) for record in records],
        dtype=np.float64,
    )


def sampling_range(
    records: Sequence[TrackingRecord],
    param_name: ParameterName,
    ranges: Optional[ParameterRanges] = None,
) -> ValueRange:
    """Configured range of a parameter, or the hull of the sampled values

    Either is widened when it collapses to a single value.
    """
    if ranges is not None:
        low, high = ranges.range_of(param_name)
    else:
        values = parameter_values(records, param_name)
        if values.size == 0:
            raise AnalysisError("No records to derive a range from")
        low, high = float(values.min()), float(values.max())
    if high - low <= _MASS_TOLERANCE * max(abs(low), 1.0):
        return (low - 0.5, high + 0.5)
    return (low, high)


def histogram(
    records: Sequence[TrackingRecord],
    param_name: ParameterName,
    n_bins: int,
    subset: Optional[Collection[int]] = None,
    value_range: Optional[ValueRange] = None,
) -> ParamHistogram:
    """Histogram of one parameter over the sampling range

    ``subset`` holds positions into ``records``. Bins span
    ``value_range`` (the configured sampling range) when given, so that
    histograms of different runs line up.
    """
    name = ParameterName.parse(param_name)
    if n_bins < 1:
        raise ParameterError("At least one bin is required")
    if len(records) == 0:
        raise AnalysisError("Cannot build a histogram without records")

    if value_range is None:
        value_range = sampling_range(records, name)
    edges = _bin_edges(value_range, n_bins)

    scoped = (
        list(records)
        if subset is None
        else [records[index] for index in sorted(subset)]
    )
    indices, inside = _bin_indices(parameter_values(scoped, name), edges)
    accepted = np.array([record.accepted for record in scoped], dtype=bool)
    # Records sampled outside the range are left out, never clamped
    indices, accepted = indices[inside], accepted[inside]

    return ParamHistogram(
        param_name=name,
        bin_edges=edges,
        attempted_counts=np.bincount(indices, minlength=n_bins),
        accepted_counts=np.bincount(indices[accepted], minlength=n_bins),
    )


def joint_histogram(
    records: Sequence[TrackingRecord],
    param_x: ParameterName,
    param_y: ParameterName,
    n_bins: int,
    x_range: Optional[ValueRange] = None,
    y_range: Optional[ValueRange] = None,
) -> JointHistogram:
    name_x = ParameterName.parse(param_x)
    name_y = ParameterName.parse(param_y)
    if n_bins < 1:
        raise ParameterError("At least one bin is required")
    if len(records) == 0:
        raise AnalysisError("Cannot build a histogram without records")

    x_edges = _bin_edges(x_range or sampling_range(records, name_x), n_bins)
    y_edges = _bin_edges(y_range or sampling_range(records, name_y), n_bins)
    x_indices, x_inside = _bin_indices(
        parameter_values(records, name_x), x_edges
    )
    y_indices, y_inside = _bin_indices(
        parameter_values(records, name_y), y_edges
    )
    accepted = np.array([record.accepted for record in records], dtype=bool)
    inside = x_inside & y_inside
    x_indices, y_indices = x_indices[inside], y_indices[inside]
    accepted = accepted[inside]

    attempted_counts = np.zeros((n_bins, n_bins), dtype=np.int64)
    accepted_counts = np.zeros((n_bins, n_bins), dtype=np.int64)
    np.add.at(attempted_counts, (x_indices, y_indices), 1)
    np.add.at(
        accepted_counts, (x_indices[accepted], y_indices[accepted]), 1
    )

    return JointHistogram(
        param_x=name_x,
        param_y=name_y,
        x_edges=x_edges,
        y_edges=y_edges,
        attempted_counts=attempted_counts,
        accepted_counts=accepted_counts,
    )


def assign_records(
    records: Sequence[TrackingRecord], clusters: Sequence[Cluster]
) -> Dict[int, int]:
    """Maps record positions to the cluster holding their streamline"""
    positions = {
        record.streamline_index: position
        for position, record in enumerate(records)
        if record.streamline_index is not None
    }

    assignment: Dict[int, int] = {}
    for cluster in clusters:
        for member in cluster.member_indices:
            position = positions.get(member)
            if position is None:
                raise ConsistencyError(
                    f"Streamline {member} has no tracking record",
                    detail=f"Cluster {cluster.id} refers to a streamline"
                    " that these records never produced",
                )
            assignment[position] = cluster.id
    return assignment


def per_cluster_histograms(
    records: Sequence[TrackingRecord],
    clusters: Sequence[Cluster],
    param_name: ParameterName,
    n_bins: int,
    value_range: Optional[ValueRange] = None,
) -> List[ParamHistogram]:
    """One histogram per cluster, all sharing the same bin edges"""
    name = ParameterName.parse(param_name)
    if value_range is None:
        value_range = sampling_range(records, name)

    members: Dict[int, List[int]] = {cluster.id: [] for cluster in clusters}
    for position, cluster_id in assign_records(records, clusters).items():
        members[cluster_id].append(position)

    return [
        histogram(
            records,
            name,
            n_bins,
            subset=members[cluster.id],
            value_range=value_range,
        )
        for cluster in clusters
    ]


def suggest_ranges(
    hist: ParamHistogram, keep_fraction: float
) -> RangeSuggestion:
    """Narrowest bin interval keeping the requested accepted mass

    Among equally narrow intervals the one whose bins have the higher
    mean acceptance rate wins, then the leftmost.
    """
    if not 0 < keep_fraction <= 1:
        raise ParameterError(
            "keep_fraction must lie in (0, 1]",
            detail=f"Got {keep_fraction!r}",
        )

    accepted = hist.accepted_counts.astype(np.float64)
    attempted = hist.attempted_counts.astype(np.float64)
    total = float(accepted.sum())
    if total == 0:
        raise RefinementError(
            f"No accepted streamlines for {hist.param_name}",
            detail=f"{int(attempted.sum())} attempts were all rejected,"
            " widen the ranges or check masks and FOD threshold",
        )

    needed = keep_fraction * total - _MASS_TOLERANCE * total
    accepted_sums = np.concatenate(([0.0], np.cumsum(accepted)))
    rate_sums = np.concatenate(([0.0], np.cumsum(hist.acceptance_rate)))

    best: Optional[Tuple[int, float, int, int]] = None
    for start in range(hist.n_bins):
        for stop in range(start + 1, hist.n_bins + 1):
            mass = accepted_sums[stop] - accepted_sums[start]
            if mass < needed:
                continue
            width = stop - start
            rate = (rate_sums[stop] - rate_sums[start]) / width
            if best is None or (width, -rate) < (best[0], -best[1]):
                best = (width, rate, start, stop)
            break

    assert best is not None
    _, _, start, stop = best
    kept = accepted_sums[stop] - accepted_sums[start]
    return RangeSuggestion(
        param_name=hist.param_name,
        suggested_min=float(hist.bin_edges[start]),
        suggested_max=float(hist.bin_edges[stop]),
        support_fraction=float(kept / total),
    )


def summarize(records: Sequence[TrackingRecord]) -> RunSummary:
    flags: Counter = Counter()
    for record in records:
        flags.update(str(flag) for flag in record.failure_flags)

    attempts = len(records)
    backtracks = sum(record.n_backtracks for record in records)
    return RunSummary(
        attempts=attempts,
        accepted=sum(1 for record in records if record.accepted),
        total_duration_us=sum(record.duration_us for record in records),
        mean_backtracks=backtracks / attempts if attempts > 0 else 0.0,
        flag_counts={
            str(flag): flags.get(str(flag), 0) for flag in TrackingFlag
        },
    )


def _bin_edges(value_range: ValueRange, n_bins: int) -> np.ndarray:
    low, high = float(value_range[0]), float(value_range[1])
    if not high > low:
        raise ParameterError(
            "Histogram range must have min < max",
            detail=f"Got {low}:{high}",
        )
    return np.linspace(low, high, n_bins + 1)


def _bin_indices(
    values: np.ndarray, edges: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Bin index of every value and the mask of values inside the edges"""
    # Values on the upper edge belong to the last bin
    n_bins = edges.shape[0] - 1
    scaled = (values - edges[0]) / (edges[-1] - edges[0]) * n_bins
    slack = _MASS_TOLERANCE * n_bins
    inside = (scaled >= -slack) & (scaled <= n_bins + slack)
    indices = np.clip(np.floor(scaled).astype(np.int64), 0, n_bins - 1)
    return indices, inside


def _rate(accepted: np.ndarray, attempted: np.ndarray) -> np.ndarray:
    rate = np.zeros(attempted.shape, dtype=np.float64)
    np.divide(accepted, attempted, out=rate, where=attempted > 0)
    return rate
