from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple

from sspt.exceptions import ErrorCode, ParameterError
from sspt.geometry.sh import MAX_SH_ORDER


class PhantomKind(str, Enum):
    STRAIGHT = "straight"
    ARC = "arc"
    CROSSING = "crossing"

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class PhantomSpec:
    """Geometry and kernel of a synthetic FOD phantom

    Volumes use a scaled identity affine, voxel ``(0, 0, 0)`` sits at
    the world origin.
    """

    kind: PhantomKind
    volume_dims: Tuple[int, int, int]
    voxel_size: float = 1.0
    bundle_radius: float = 3.0
    arc_radius: float = 10.0
    kappa: float = 20.0
    lmax: int = 8
    peak_amplitude: float = 0.5
    seed_radius: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", PhantomKind(self.kind))
        object.__setattr__(
            self, "volume_dims", tuple(int(n) for n in self.volume_dims)
        )
        self.validate()

    @staticmethod
    def default(kind: PhantomKind) -> "PhantomSpec":
        kind = PhantomKind(kind)
        if kind == PhantomKind.STRAIGHT:
            return PhantomSpec(kind, (21, 41, 21))
        if kind == PhantomKind.ARC:
            return PhantomSpec(kind, (16, 16, 9), bundle_radius=2.0)
        return PhantomSpec(kind, (25, 25, 9))

    def with_changes(self, **changes) -> "PhantomSpec":
        return replace(self, **changes)

    @property
    def extent(self) -> Tuple[float, float, float]:
        """World coordinate of the last voxel center on each axis"""
        return tuple(  # type: ignore
            (n - 1) * self.voxel_size for n in self.volume_dims
        )

    @property
    def center(self) -> Tuple[float, float, float]:
        return tuple(value / 2.0 for value in self.extent)  # type: ignore

    def validate(self) -> None:
        if len(self.volume_dims) != 3 or min(self.volume_dims) < 1:
            raise ParameterError(
                "Phantom needs three positive dimensions",
                detail=f"Got {self.volume_dims}",
                code=ErrorCode.PhantomGeometry,
            )
        for name in ("voxel_size", "bundle_radius", "kappa", "peak_amplitude"):
            if not getattr(self, name) > 0:
                raise ParameterError(
                    f"{name} must be positive",
                    code=ErrorCode.PhantomGeometry,
                )
        if self.seed_radius is not None and not self.seed_radius > 0:
            raise ParameterError(
                "seed_radius must be positive",
                code=ErrorCode.PhantomGeometry,
            )
        if self.lmax % 2 != 0 or not 0 <= self.lmax <= MAX_SH_ORDER:
            raise ParameterError(
                f"Phantom lmax must be even and at most {MAX_SH_ORDER}",
                detail=f"Got {self.lmax}",
                code=ErrorCode.OddShOrder,
            )

        if self.kind == PhantomKind.ARC:
            self.__validate_arc()
        else:
            self.__validate_tubes()

    def __validate_tubes(self) -> None:
        nx, ny, nz = self.volume_dims
        cx, cy, cz = self.center
        needed = self.bundle_radius + self.voxel_size
        is_straight = self.kind == PhantomKind.STRAIGHT
        across = [cx, cz] if is_straight else [cx, cy, cz]
        along = [ny] if is_straight else [nx, ny]

        if min(across) < needed or min(along) < 5:
            raise ParameterError(
                "Bundle does not fit into the volume",
                detail=f"dims={self.volume_dims}, voxel={self.voxel_size},"
                f" bundle_radius={self.bundle_radius}",
                code=ErrorCode.PhantomGeometry,
            )

    def __validate_arc(self) -> None:
        if self.arc_radius <= self.bundle_radius:
            raise ParameterError(
                "Arc radius must exceed the bundle radius",
                detail=f"arc_radius={self.arc_radius},"
                f" bundle_radius={self.bundle_radius}",
                code=ErrorCode.PhantomGeometry,
            )
        ex, ey, _ = self.extent
        _, _, cz = self.center
        reach = self.arc_radius + self.bundle_radius + self.voxel_size
        if min(ex, ey) < reach or cz < self.bundle_radius + self.voxel_size:
            raise ParameterError(
                "Arc does not fit into the volume",
                detail=f"dims={self.volume_dims}, voxel={self.voxel_size},"
                f" arc_radius={self.arc_radius},"
                f" bundle_radius={self.bundle_radius}",
                code=ErrorCode.PhantomGeometry,
            )
