from dataclasses import dataclass, field

import numpy as np

from sspt.compat import sph_harm_y
from sspt.exceptions import ErrorCode, ParameterError
from sspt.geometry.sphere import DiscretizedSphere

MAX_SH_ORDER = 16


def n_coefficients(lmax: int) -> int:
    return (lmax + 1) * (lmax + 2) // 2


def sh_index(degree: int, order: int) -> int:
    """Column of the even-degree coefficient (degree, order)"""
    return degree * (degree + 1) // 2 + order


def cartesian_to_spherical(directions: np.ndarray):
    directions = np.atleast_2d(np.asarray(directions, dtype=np.float64))
    x, y, z = directions[:, 0], directions[:, 1], directions[:, 2]
    polar = np.arctan2(np.hypot(x, y), z)
    azimuth = np.arctan2(y, x)
    return polar, azimuth


def real_sh(lmax: int, directions: np.ndarray) -> np.ndarray:
    """Modified real even-order SH basis evaluated at unit directions

    Columns follow ``sh_index``: order ``m > 0`` holds ``sqrt(2) Re Y``
    (cosine terms) and ``m < 0`` holds ``sqrt(2) Im Y`` of order ``|m|``
    (sine terms).
    """
    _check_order(lmax)
    polar, azimuth = cartesian_to_spherical(directions)
    basis = np.zeros((polar.size, n_coefficients(lmax)))
    sqrt2 = np.sqrt(2.0)

    for degree in range(0, lmax + 1, 2):
        center = sh_index(degree, 0)
        basis[:, center] = np.real(sph_harm_y(degree, 0, polar, azimuth))
        for order in range(1, degree + 1):
            values = sph_harm_y(degree, order, polar, azimuth)
            basis[:, center + order] = sqrt2 * np.real(values)
            basis[:, center - order] = sqrt2 * np.imag(values)

    return basis


@dataclass(frozen=True, eq=False)
class ShBasis:
    lmax: int
    basis_matrix: np.ndarray = field(repr=False)

    @property
    def n_coefficients(self) -> int:
        return self.basis_matrix.shape[1]

    def rows(self, vertex_indices: np.ndarray) -> np.ndarray:
        return self.basis_matrix[vertex_indices]


def sh_basis(sphere: DiscretizedSphere, lmax: int) -> ShBasis:
    matrix = real_sh(lmax, sphere.vertices)
    matrix.setflags(write=False)
    return ShBasis(lmax=lmax, basis_matrix=matrix)


def _check_order(lmax: int) -> None:
    if not isinstance(lmax, (int, np.integer)) or not (
        0 <= lmax <= MAX_SH_ORDER
    ):
        raise ParameterError(
            f"SH order must be in [0, {MAX_SH_ORDER}]",
            detail=f"Got {lmax!r}",
        )
    if lmax % 2 != 0:
        raise ParameterError(
            detail=f"Got lmax={lmax}", code=ErrorCode.OddShOrder
        )
