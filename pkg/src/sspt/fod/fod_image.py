from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from sspt.exceptions import ErrorCode, FormatError, ParameterError
from sspt.geometry.sh import n_coefficients
from sspt.types import Affine

# Voxel coordinates this close outside the grid still count as inside
_GRID_TOLERANCE = 1e-6


def lmax_from_ncoeffs(n: int) -> int:
    if n >= 1:
        lmax = int(round((np.sqrt(1.0 + 8.0 * n) - 3.0) / 2.0))
        if lmax >= 0 and lmax % 2 == 0 and n_coefficients(lmax) == n:
            return lmax

    raise FormatError(
        detail=f"{n} coefficients", code=ErrorCode.ShCoefficientCount
    )


@dataclass(frozen=True, eq=False)
class VoxelGrid:
    """Voxel-index to world-millimeter mapping shared by images and masks"""

    shape: Tuple[int, int, int]
    affine: Affine = field(repr=False)
    inverse_affine: Affine = field(init=False, repr=False)

    def __post_init__(self) -> None:
        affine = np.array(self.affine, dtype=np.float64)
        if affine.shape != (4, 4):
            raise ParameterError(
                "Affine must be a 4x4 matrix", detail=f"Got {affine.shape}"
            )
        try:
            inverse = np.linalg.inv(affine)
        except np.linalg.LinAlgError as error:
            raise ParameterError("Affine is not invertible") from error
        if not np.all(np.isfinite(inverse)):
            raise ParameterError("Affine is not invertible")

        affine.setflags(write=False)
        inverse.setflags(write=False)
        object.__setattr__(self, "affine", affine)
        object.__setattr__(self, "inverse_affine", inverse)

    @property
    def voxel_size(self) -> np.ndarray:
        return np.linalg.norm(self.affine[:3, :3], axis=0)

    def world_to_voxel(self, positions: np.ndarray) -> np.ndarray:
        positions = np.asarray(positions, dtype=np.float64)
        return positions @ self.inverse_affine[:3, :3].T + (
            self.inverse_affine[:3, 3]
        )

    def voxel_to_world(self, voxels: np.ndarray) -> np.ndarray:
        voxels = np.asarray(voxels, dtype=np.float64)
        return voxels @ self.affine[:3, :3].T + self.affine[:3, 3]


@dataclass(frozen=True, eq=False)
class FodImage:
    """Even-order SH coefficient volume indexed ``(x, y, z, c)``"""

    coefficients: np.ndarray = field(repr=False)
    affine: Affine = field(repr=False)
    grid: VoxelGrid = field(init=False, repr=False)
    lmax: int = field(init=False)

    def __post_init__(self) -> None:
        coefficients = np.array(self.coefficients)
        if coefficients.ndim != 4:
            raise FormatError(
                "FOD image must be 4-D",
                detail=f"Got shape {coefficients.shape}",
            )
        if not np.issubdtype(coefficients.dtype, np.floating):
            coefficients = coefficients.astype(np.float64)
        if not np.all(np.isfinite(coefficients)):
            raise FormatError("FOD coefficients must be finite")

        lmax = lmax_from_ncoeffs(coefficients.shape[3])
        grid = VoxelGrid(coefficients.shape[:3], self.affine)

        coefficients.setflags(write=False)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "affine", grid.affine)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "lmax", lmax)

    @property
    def dims(self) -> Tuple[int, int, int, int]:
        return tuple(self.coefficients.shape)  # type: ignore

    @property
    def n_coefficients(self) -> int:
        return self.coefficients.shape[3]

    @property
    def voxel_size(self) -> np.ndarray:
        return self.grid.voxel_size

    def world_to_voxel(self, positions: np.ndarray) -> np.ndarray:
        return self.grid.world_to_voxel(positions)

    def interpolate_coeffs(self, positions: np.ndarray) -> np.ndarray:
        """Trilinear interpolation of every channel

        Positions outside the voxel-center hull give all-zero vectors.
        Accepts ``(3,)`` or ``(N, 3)``.
        """
        positions = np.asarray(positions, dtype=np.float64)
        single = positions.ndim == 1
        positions = np.atleast_2d(positions)

        voxels = self.world_to_voxel(positions)
        upper = np.array(self.coefficients.shape[:3]) - 1
        inside = np.all(
            (voxels >= -_GRID_TOLERANCE)
            & (voxels <= upper + _GRID_TOLERANCE),
            axis=1,
        )

        result = np.zeros((positions.shape[0], self.n_coefficients))
        if np.any(inside):
            result[inside] = self.__trilinear(voxels[inside], upper)

        return result[0] if single else result

    def __trilinear(self, voxels: np.ndarray, upper: np.ndarray) -> np.ndarray:
        voxels = np.clip(voxels, 0.0, upper)
        low = np.minimum(
            np.floor(voxels).astype(np.int64), np.maximum(upper - 1, 0)
        )
        high = np.minimum(low + 1, upper)
        fraction = voxels - low

        result = np.zeros((voxels.shape[0], self.n_coefficients))
        for corner in range(8):
            bits = np.array([(corner >> axis) & 1 for axis in range(3)])
            index = np.where(bits, high, low)
            weight = np.prod(np.where(bits, fraction, 1.0 - fraction), axis=1)
            corner_values = self.coefficients[
                index[:, 0], index[:, 1], index[:, 2]
            ]
            result += weight[:, None] * corner_values

        return result


def interpolate_coeffs(image: FodImage, position: np.ndarray) -> np.ndarray:
    return image.interpolate_coeffs(position)
