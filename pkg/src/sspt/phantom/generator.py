from typing import Dict, List, Sequence, Tuple

import numpy as np

from sspt.exceptions import ErrorCode, ParameterError
from sspt.fod.fod_image import FodImage
from sspt.geometry.sh import ShBasis, n_coefficients, real_sh, sh_basis
from sspt.geometry.sphere import DiscretizedSphere, subdivide_icosahedron
from sspt.logging import logger
from sspt.phantom.phantom_spec import PhantomKind, PhantomSpec
from sspt.roi.binary_mask import BinaryMask
from sspt.roi.roi_set import RoiSet

# Sphere level the kernel is sampled on before projection
PROJECTION_LEVEL = 4

_INSIDE_TOLERANCE = 1e-9

# Per tube: membership of each position and its fiber direction
TubeField = Tuple[np.ndarray, np.ndarray]


class KernelProjector:
    """Least-squares projection of axial kernels onto an SH basis

    Every fiber is projected on its own and rescaled so that the
    band-limited lobe reaches ``peak_amplitude`` along the fiber.
    """

    __spec: PhantomSpec
    __vertices: np.ndarray
    __pseudo_inverse: np.ndarray
    __cache: Dict[Tuple[float, float, float], np.ndarray]

    def __init__(
        self, spec: PhantomSpec, sphere: DiscretizedSphere, basis: ShBasis
    ) -> None:
        if basis.lmax != spec.lmax:
            raise ParameterError(
                "SH basis order differs from the phantom order",
                detail=f"basis lmax={basis.lmax}, phantom lmax={spec.lmax}",
            )
        self.__spec = spec
        self.__vertices = sphere.vertices
        self.__pseudo_inverse = np.linalg.pinv(basis.basis_matrix)
        self.__cache = {}

    def project(self, directions: Sequence[np.ndarray]) -> np.ndarray:
        coefficients = np.zeros(n_coefficients(self.__spec.lmax))
        for direction in directions:
            coefficients += self.__single_fiber(np.asarray(direction))
        return coefficients

    def __single_fiber(self, direction: np.ndarray) -> np.ndarray:
        key = tuple(np.round(direction, 12).tolist())
        cached = self.__cache.get(key)
        if cached is not None:
            return cached

        direction = direction / np.linalg.norm(direction)
        cosines = self.__vertices @ direction
        samples = np.exp(self.__spec.kappa * (cosines * cosines - 1.0))
        coefficients = self.__pseudo_inverse @ samples

        peak = float(real_sh(self.__spec.lmax, direction)[0] @ coefficients)
        coefficients *= self.__spec.peak_amplitude / peak

        self.__cache[key] = coefficients
        return coefficients


def project_kernel_to_sh(
    directions: Sequence[np.ndarray],
    spec: PhantomSpec,
    sphere: DiscretizedSphere,
    basis: ShBasis,
) -> np.ndarray:
    return KernelProjector(spec, sphere, basis).project(directions)


def fiber_directions_at(
    spec: PhantomSpec, position: np.ndarray
) -> List[np.ndarray]:
    position = np.asarray(position, dtype=np.float64)[None, :]
    return [
        directions[0]
        for inside, directions in _tube_fields(spec, position)
        if inside[0]
    ]


def generate(spec: PhantomSpec) -> Tuple[FodImage, RoiSet]:
    """Builds the FOD volume and the seed and inclusion masks"""
    dims = spec.volume_dims
    affine = np.diag([spec.voxel_size] * 3 + [1.0])
    indices = np.indices(dims).reshape(3, -1).T
    positions = indices * spec.voxel_size

    sphere = subdivide_icosahedron(PROJECTION_LEVEL)
    projector = KernelProjector(spec, sphere, sh_basis(sphere, spec.lmax))
    fields = _tube_fields(spec, positions)

    coefficients = np.zeros((indices.shape[0], n_coefficients(spec.lmax)))
    in_any = np.zeros(indices.shape[0], dtype=bool)
    for inside, _ in fields:
        in_any |= inside
    for voxel in np.flatnonzero(in_any):
        coefficients[voxel] = projector.project(
            [
                directions[voxel]
                for inside, directions in fields
                if inside[voxel]
            ]
        )

    seed, include_a, include_b = _masks(spec, indices, positions, fields)
    if not np.any(seed):
        raise ParameterError(
            "Seed region of the phantom is empty",
            detail=f"seed_radius={spec.seed_radius}",
            code=ErrorCode.PhantomGeometry,
        )

    logger.debug(
        f"Generated {spec.kind} phantom {dims} with"
        f" {int(in_any.sum())} fiber voxels"
    )

    image = FodImage(coefficients.reshape(*dims, -1), affine)
    rois = RoiSet(
        seed=BinaryMask(seed.reshape(dims), affine),
        include_and=(
            BinaryMask(include_a.reshape(dims), affine),
            BinaryMask(include_b.reshape(dims), affine),
        ),
    )
    return image, rois


def _tube_fields(spec: PhantomSpec, positions: np.ndarray) -> List[TubeField]:
    if spec.kind == PhantomKind.ARC:
        return [_arc_field(spec, positions)]
    fields = [_straight_field(spec, positions, axis=1)]
    if spec.kind == PhantomKind.CROSSING:
        fields.append(_straight_field(spec, positions, axis=0))
    return fields


def _straight_field(
    spec: PhantomSpec, positions: np.ndarray, axis: int
) -> TubeField:
    across = [i for i in range(3) if i != axis]
    center = np.array(spec.center)
    offsets = positions[:, across] - center[across]

    inside = np.sum(offsets * offsets, axis=1) <= (
        spec.bundle_radius**2 + _INSIDE_TOLERANCE
    )
    along = positions[:, axis]
    inside &= (along >= -_INSIDE_TOLERANCE) & (
        along <= spec.extent[axis] + _INSIDE_TOLERANCE
    )

    direction = np.zeros(3)
    direction[axis] = 1.0
    return inside, np.broadcast_to(direction, positions.shape)


def _arc_field(spec: PhantomSpec, positions: np.ndarray) -> TubeField:
    x, y = positions[:, 0], positions[:, 1]
    rho = np.hypot(x, y)
    distance = _arc_distance(spec, positions)

    inside = (distance <= spec.bundle_radius + _INSIDE_TOLERANCE) & (
        (x >= -_INSIDE_TOLERANCE) & (y >= -_INSIDE_TOLERANCE)
    )

    safe_rho = np.where(rho > 0, rho, 1.0)
    tangents = np.column_stack((-y / safe_rho, x / safe_rho, np.zeros_like(x)))
    return inside, tangents


def _arc_distance(spec: PhantomSpec, positions: np.ndarray) -> np.ndarray:
    rho = np.hypot(positions[:, 0], positions[:, 1])
    return np.hypot(rho - spec.arc_radius, positions[:, 2] - spec.center[2])


def _masks(
    spec: PhantomSpec,
    indices: np.ndarray,
    positions: np.ndarray,
    fields: List[TubeField],
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    tube = fields[0][0]
    i, j = indices[:, 0], indices[:, 1]
    ny = spec.volume_dims[1]

    if spec.kind == PhantomKind.ARC:
        seed = tube & (i == j)
        core_distance = _arc_distance(spec, positions)
        include_a = tube & (j <= 1)
        include_b = tube & (i <= 1)
    else:
        seed = tube & (j == ny // 2)
        center = np.array(spec.center)
        core_distance = np.hypot(
            positions[:, 0] - center[0], positions[:, 2] - center[2]
        )
        include_a = tube & (j <= 1)
        include_b = tube & (j >= ny - 2)

    if spec.seed_radius is not None:
        seed &= core_distance <= spec.seed_radius + _INSIDE_TOLERANCE
    return seed, include_a, include_b

