from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from sspt.exceptions import ConfigurationError, ErrorCode, ParameterError
from sspt.geometry.sampling import cone_angle_from_radius
from sspt.types import ValueRange


class ParameterName(str, Enum):
    STEP_SIZE = "step_size"
    RADIUS = "radius"
    CONE_ANGLE = "cone_angle"
    FOD_THRESHOLD = "fod_threshold"

    def __str__(self) -> str:
        return str(self.value)

    @staticmethod
    def parse(name: str) -> "ParameterName":
        try:
            return ParameterName(str(name))
        except ValueError:
            known = ", ".join(str(parameter) for parameter in ParameterName)
            raise ParameterError(
                f"Unknown parameter {name!r}",
                detail=f"Expected one of: {known}",
                code=ErrorCode.UnknownParameter,
            ) from None


@dataclass(frozen=True)
class FixedParams:
    """Tracking constants shared by every streamline of a run"""

    sh_resolution: int = 4
    backtrack_lim: int = 64
    intermediate_steps: int = 4
    n_samples: int = 4
    seed_samples: int = 32
    fod_threshold_default: float = 0.1

    def __post_init__(self) -> None:
        positive = (
            "sh_resolution",
            "intermediate_steps",
            "n_samples",
            "seed_samples",
        )
        for name in positive:
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be positive")
        if self.backtrack_lim < 0:
            raise ParameterError("backtrack_lim must not be negative")
        if self.fod_threshold_default < 0:
            raise ParameterError("fod_threshold_default must not be negative")


@dataclass(frozen=True)
class ParameterRanges:
    step_min: float
    step_max: float
    radius_min: float
    radius_max: float
    threshold_min: float = FixedParams.fod_threshold_default
    threshold_max: float = FixedParams.fod_threshold_default
    min_length: float = 0.0
    max_length: float = 250.0
    target_streamlines: int = 1000
    max_seeds: Optional[int] = None
    reject_at_max_length: bool = True

    def __post_init__(self) -> None:
        self.validate()

    @property
    def seed_limit(self) -> int:
        """Attempt budget, 1000 seeds per requested streamline by default"""
        if self.max_seeds is not None:
            return self.max_seeds
        return 1000 * max(self.target_streamlines, 1)

    def validate(self) -> None:
        if not 0 < self.step_min <= self.step_max:
            raise ConfigurationError(
                "Step range must satisfy 0 < min <= max",
                flag="--step",
                detail=f"Got {self.step_min}:{self.step_max}",
                code=ErrorCode.InvalidRanges,
            )
        if not self.radius_min <= self.radius_max:
            raise ConfigurationError(
                "Radius range must satisfy min <= max",
                flag="--radius",
                detail=f"Got {self.radius_min}:{self.radius_max}",
                code=ErrorCode.InvalidRanges,
            )
        if self.step_max > self.radius_min:
            raise ConfigurationError(
                "Largest step size exceeds smallest radius of curvature",
                flag="--radius",
                detail=f"step max {self.step_max} > radius min"
                f" {self.radius_min}",
                code=ErrorCode.InvalidRanges,
            )
        if not 0 <= self.threshold_min <= self.threshold_max:
            raise ConfigurationError(
                "FOD threshold range must satisfy 0 <= min <= max",
                flag="--fod-threshold-range",
                detail=f"Got {self.threshold_min}:{self.threshold_max}",
                code=ErrorCode.InvalidRanges,
            )
        if self.min_length < 0:
            raise ConfigurationError(
                "Minimum length must not be negative",
                flag="--min-length",
                detail=f"Got {self.min_length}",
                code=ErrorCode.InvalidRanges,
            )
        if self.max_length <= self.min_length:
            raise ConfigurationError(
                "Maximum length must exceed the minimum length",
                flag="--max-length",
                detail=f"Got {self.min_length}:{self.max_length}",
                code=ErrorCode.InvalidRanges,
            )
        if self.target_streamlines < 0:
            raise ConfigurationError(
                "Target must not be negative",
                flag="--target",
                code=ErrorCode.InvalidRanges,
            )
        if self.max_seeds is not None and self.max_seeds < 0:
            raise ConfigurationError(
                "Seed limit must not be negative",
                flag="--max-seeds",
                code=ErrorCode.InvalidRanges,
            )

    def range_of(self, name: ParameterName) -> ValueRange:
        name = ParameterName.parse(name)
        if name == ParameterName.STEP_SIZE:
            return (self.step_min, self.step_max)
        if name == ParameterName.RADIUS:
            return (self.radius_min, self.radius_max)
        if name == ParameterName.FOD_THRESHOLD:
            return (self.threshold_min, self.threshold_max)
        return (
            cone_angle_from_radius(self.step_min, self.radius_max),
            cone_angle_from_radius(self.step_max, self.radius_min),
        )


@dataclass(frozen=True)
class ParameterSample:
    step_size: float
    radius: float
    cone_angle: float
    fod_threshold: float

    @staticmethod
    def from_values(
        step_size: float, radius: float, fod_threshold: float
    ) -> "ParameterSample":
        return ParameterSample(
            step_size=step_size,
            radius=radius,
            cone_angle=cone_angle_from_radius(step_size, radius),
            fod_threshold=fod_threshold,
        )

    def value_of(self, name: ParameterName) -> float:
        return getattr(self, str(ParameterName.parse(name)))


def sample_parameters(
    ranges: ParameterRanges, rng: np.random.Generator
) -> ParameterSample:
    """Draws one streamline's parameters, the angle follows the radius"""
    step_size = float(rng.uniform(ranges.step_min, ranges.step_max))
    radius = float(rng.uniform(ranges.radius_min, ranges.radius_max))
    fod_threshold = float(
        rng.uniform(ranges.threshold_min, ranges.threshold_max)
    )
    return ParameterSample.from_values(step_size, radius, fod_threshold)
