from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from sspt.exceptions import ConfigurationError, ErrorCode
from sspt.roi.binary_mask import BinaryMask


@dataclass(frozen=True, eq=False)
class RoiSet:
    seed: BinaryMask
    include_and: Tuple[BinaryMask, ...] = ()
    include_or: Tuple[BinaryMask, ...] = ()
    exclude: Tuple[BinaryMask, ...] = ()
    mask: Optional[BinaryMask] = field(default=None)

    def __post_init__(self) -> None:
        for name in ("include_and", "include_or", "exclude"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

        if self.seed.count == 0:
            raise ConfigurationError(
                flag="--seed", code=ErrorCode.EmptySeedMask
            )

    @property
    def has_inclusions(self) -> bool:
        return len(self.include_and) > 0 or len(self.include_or) > 0

    def in_exclusion(self, position: np.ndarray) -> bool:
        return any(mask.contains(position) for mask in self.exclude)

    def in_tracking_mask(self, positions: np.ndarray) -> np.ndarray:
        if self.mask is None:
            positions = np.asarray(positions)
            if positions.ndim == 1:
                return np.bool_(True)
            return np.ones(positions.shape[0], dtype=bool)
        return self.mask.contains(positions)


@dataclass(frozen=True)
class InclusionStatus:
    """Visited flags of one streamline, only ever switched on"""

    visited_and: Tuple[bool, ...]
    visited_or_any: bool = False

    @staticmethod
    def empty(rois: RoiSet) -> "InclusionStatus":
        return InclusionStatus((False,) * len(rois.include_and), False)

    def merged(self, other: "InclusionStatus") -> "InclusionStatus":
        return InclusionStatus(
            tuple(a or b for a, b in zip(self.visited_and, other.visited_and)),
            self.visited_or_any or other.visited_or_any,
        )


def update_status(
    status: InclusionStatus, rois: RoiSet, position: np.ndarray
) -> InclusionStatus:
    visited_and = tuple(
        visited or bool(mask.contains(position))
        for visited, mask in zip(status.visited_and, rois.include_and)
    )
    visited_or_any = status.visited_or_any or any(
        mask.contains(position) for mask in rois.include_or
    )
    return replace(
        status, visited_and=visited_and, visited_or_any=visited_or_any
    )


def inclusion_status(points: np.ndarray, rois: RoiSet) -> InclusionStatus:
    """Status accumulated over a whole point list, order independent"""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    visited_and = tuple(
        bool(np.any(mask.contains(points))) for mask in rois.include_and
    )
    visited_or_any = any(
        bool(np.any(mask.contains(points))) for mask in rois.include_or
    )
    return InclusionStatus(visited_and, visited_or_any)


def is_satisfied(status: InclusionStatus, rois: RoiSet) -> bool:
    if not all(status.visited_and):
        return False
    return len(rois.include_or) == 0 or status.visited_or_any
