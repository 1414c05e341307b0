from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from sspt.exceptions import ErrorCode, ParameterError
from sspt.logging import logger
from sspt.settings import SsptSettings


@dataclass(frozen=True, eq=False)
class Cluster:
    id: int
    member_indices: Tuple[int, ...]
    centroid: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.member_indices)


def resample(streamline: np.ndarray, n_points: int) -> np.ndarray:
    """Points at equal arc-length spacing, both endpoints kept"""
    points = np.asarray(streamline, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] < 2:
        raise ParameterError(
            "Resampling needs at least two points",
            code=ErrorCode.DegenerateStreamline,
        )
    if n_points < 2:
        raise ParameterError("Resampling needs at least two target points")

    segment_lengths = np.linalg.norm(np.diff(points, axis=0), axis=1)
    arc = np.concatenate(([0.0], np.cumsum(segment_lengths)))
    if arc[-1] <= 0:
        raise ParameterError(
            "Streamline has zero length",
            code=ErrorCode.DegenerateStreamline,
        )

    targets = np.linspace(0.0, arc[-1], n_points)
    resampled = np.column_stack(
        [np.interp(targets, arc, points[:, axis]) for axis in range(3)]
    )
    resampled[0] = points[0]
    resampled[-1] = points[-1]
    return resampled


def mdf_components(a: np.ndarray, b: np.ndarray) -> Tuple[float, float]:
    """Direct and flipped mean point distances of equally sampled lines"""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ParameterError(
            "Streamlines are sampled with different point counts",
            detail=f"{a.shape[0]} != {b.shape[0]}",
            code=ErrorCode.PointCountMismatch,
        )
    direct = float(np.mean(np.linalg.norm(a - b, axis=1)))
    flipped = float(np.mean(np.linalg.norm(a - b[::-1], axis=1)))
    return direct, flipped


def mdf_distance(a: np.ndarray, b: np.ndarray) -> float:
    return min(mdf_components(a, b))


class _ClusterBuilder:
    def __init__(self, cluster_id: int, first: int, points: np.ndarray):
        self.cluster_id = cluster_id
        self.members = [first]
        self.total = points.copy()

    @property
    def centroid(self) -> np.ndarray:
        return self.total / len(self.members)

    def add(self, index: int, points: np.ndarray) -> None:
        self.members.append(index)
        self.total += points

    def build(self) -> Cluster:
        centroid = self.centroid
        centroid.setflags(write=False)
        return Cluster(self.cluster_id, tuple(self.members), centroid)


def quickbundles(
    streamlines: Sequence[np.ndarray],
    threshold: float,
    n_points: Optional[int] = None,
) -> List[Cluster]:
    """Single pass clustering in input order

    Each streamline joins the closest centroid within ``threshold``
    (flipped first if that matches better) or starts a new cluster.
    """
    if not threshold > 0:
        raise ParameterError(
            "Clustering threshold must be positive",
            detail=f"Got {threshold!r}",
        )
    if n_points is None:
        n_points = SsptSettings().resample_points

    builders: List[_ClusterBuilder] = []
    for index, streamline in enumerate(streamlines):
        points = resample(streamline, n_points)

        best: Optional[_ClusterBuilder] = None
        best_distance = np.inf
        flip = False
        for builder in builders:
            direct, flipped = mdf_components(points, builder.centroid)
            distance = min(direct, flipped)
            if distance < best_distance:
                best, best_distance = builder, distance
                flip = flipped < direct

        if best is not None and best_distance < threshold:
            best.add(index, points[::-1] if flip else points)
        else:
            builders.append(_ClusterBuilder(len(builders), index, points))

    logger.debug(
        f"Clustered {len(streamlines)} streamlines into"
        f" {len(builders)} clusters"
    )
    return [builder.build() for builder in builders]
