from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from sspt.exceptions import ConfigurationError, ErrorCode, FormatError
from sspt.fod.fod_image import VoxelGrid
from sspt.types import Affine

# Keeps seeds strictly inside their voxel after the world round trip
_SEED_MARGIN = 1e-6


@dataclass(frozen=True, eq=False)
class BinaryMask:
    voxels: np.ndarray = field(repr=False)
    affine: Affine = field(repr=False)
    grid: VoxelGrid = field(init=False, repr=False)

    def __post_init__(self) -> None:
        voxels = np.asarray(self.voxels)
        if voxels.ndim != 3:
            raise FormatError(
                "Mask must be 3-D", detail=f"Got shape {voxels.shape}"
            )
        voxels = voxels != 0
        voxels.setflags(write=False)
        grid = VoxelGrid(voxels.shape, self.affine)

        object.__setattr__(self, "voxels", voxels)
        object.__setattr__(self, "affine", grid.affine)
        object.__setattr__(self, "grid", grid)

    @staticmethod
    def from_voxels(
        shape: Tuple[int, int, int],
        indices,
        affine: Affine,
    ) -> "BinaryMask":
        voxels = np.zeros(shape, dtype=bool)
        for index in indices:
            voxels[tuple(index)] = True
        return BinaryMask(voxels, affine)

    @property
    def dims(self) -> Tuple[int, int, int]:
        return tuple(self.voxels.shape)  # type: ignore

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.voxels))

    def nearest_voxel(self, positions: np.ndarray) -> np.ndarray:
        voxels = self.grid.world_to_voxel(positions)
        return np.floor(voxels + 0.5).astype(np.int64)

    def contains(self, positions: np.ndarray) -> np.ndarray:
        """Whether the nearest voxel is in bounds and set

        Returns a bool for ``(3,)`` input and a bool array for ``(N, 3)``.
        """
        positions = np.asarray(positions, dtype=np.float64)
        single = positions.ndim == 1
        indices = np.atleast_2d(self.nearest_voxel(positions))

        in_bounds = np.all(
            (indices >= 0) & (indices < np.array(self.voxels.shape)), axis=1
        )
        result = np.zeros(indices.shape[0], dtype=bool)
        valid = indices[in_bounds]
        result[in_bounds] = self.voxels[valid[:, 0], valid[:, 1], valid[:, 2]]

        return bool(result[0]) if single else result

    def sample_seed(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform voxel among set voxels, then uniform inside its cube"""
        flat = np.flatnonzero(self.voxels)
        if flat.size == 0:
            raise ConfigurationError(code=ErrorCode.EmptySeedMask)

        chosen = flat[rng.integers(flat.size)]
        index = np.array(np.unravel_index(chosen, self.voxels.shape))
        offset = (rng.random(3) - 0.5) * (1.0 - 2.0 * _SEED_MARGIN)
        return self.grid.voxel_to_world(index + offset)


def contains(mask: BinaryMask, position: np.ndarray) -> bool:
    return bool(mask.contains(position))


def sample_seed(mask: BinaryMask, rng: np.random.Generator) -> np.ndarray:
    return mask.sample_seed(rng)
