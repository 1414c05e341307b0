from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from sspt.engine.parameters import ParameterSample
from sspt.types import Tractogram


class TrackingFlag(str, Enum):
    NO_VALID_START_DIRECTION = "NoValidStartDirection"
    BACKTRACK_EXHAUSTED = "BacktrackExhausted"
    EXCLUSION_TERMINATED = "ExclusionTerminated"
    MAX_LENGTH_EXCEEDED = "MaxLengthExceeded"
    TOO_SHORT = "TooShort"
    MISSED_INCLUSION = "MissedInclusion"

    def __str__(self) -> str:
        return str(self.value)


class HalfTermination(Enum):
    """Why one tracking direction stopped"""

    ENDED = "ended"
    EXCLUSION = "exclusion"
    MAX_LENGTH = "max_length"
    BACKTRACK_EXHAUSTED = "backtrack_exhausted"


@dataclass(frozen=True)
class TrackingRecord:
    seed_pos: Tuple[float, float, float]
    params: ParameterSample
    accepted: bool
    failure_flags: FrozenSet[TrackingFlag] = frozenset()
    n_backtracks: int = 0
    n_points: int = 1
    duration_us: int = 0
    streamline_index: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "seed_pos", tuple(float(value) for value in self.seed_pos)
        )
        object.__setattr__(
            self,
            "failure_flags",
            frozenset(TrackingFlag(flag) for flag in self.failure_flags),
        )

    @property
    def sorted_flags(self) -> List[TrackingFlag]:
        return sorted(self.failure_flags, key=lambda flag: flag.value)


@dataclass(frozen=True, eq=False)
class TrackingOutcome:
    """Result of one attempt, the streamline is kept only when accepted"""

    record: TrackingRecord
    streamline: Optional[np.ndarray] = field(default=None, repr=False)


@dataclass(frozen=True, eq=False)
class RunResult:
    tractogram: Tractogram
    records: List[TrackingRecord]
    wall_time_s: float = 0.0

    @property
    def attempts(self) -> int:
        return len(self.records)

    @property
    def accepted(self) -> int:
        return len(self.tractogram)

    @property
    def acceptance_rate(self) -> float:
        if self.attempts == 0:
            return 0.0
        return self.accepted / self.attempts
