from dataclasses import dataclass, field

import numpy as np

from sspt.exceptions import ParameterError
from sspt.fod.fod_image import FodImage
from sspt.geometry.sh import ShBasis
from sspt.geometry.sphere import DiscretizedSphere


@dataclass(frozen=True, eq=False)
class AmplitudeTable:
    """FOD amplitude at every sphere vertex for one coefficient vector"""

    amplitudes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def peak_vertex(self) -> int:
        return int(np.argmax(self.amplitudes))


class FodEvaluator:
    """Evaluates FOD amplitudes of one image on a discretized sphere"""

    __image: FodImage
    __sphere: DiscretizedSphere
    __basis: ShBasis

    def __init__(
        self, image: FodImage, sphere: DiscretizedSphere, basis: ShBasis
    ) -> None:
        if basis.basis_matrix.shape[0] != sphere.vertex_count:
            raise ParameterError("SH basis was built for another sphere")
        if basis.n_coefficients != image.n_coefficients:
            raise ParameterError(
                "SH basis order does not match the FOD image",
                detail=f"basis lmax={basis.lmax}, image lmax={image.lmax}",
            )
        self.__image = image
        self.__sphere = sphere
        self.__basis = basis

    @property
    def image(self) -> FodImage:
        return self.__image

    @property
    def sphere(self) -> DiscretizedSphere:
        return self.__sphere

    @property
    def basis(self) -> ShBasis:
        return self.__basis

    def eval(
        self, positions: np.ndarray, directions: np.ndarray
    ) -> np.ndarray:
        """Amplitude at each position along the matching direction"""
        vertices = self.__sphere.nearest_vertex(directions)
        return self.eval_vertices(positions, vertices)

    def eval_vertices(
        self, positions: np.ndarray, vertices: np.ndarray
    ) -> np.ndarray:
        coefficients = self.__image.interpolate_coeffs(positions)
        rows = self.__basis.rows(vertices)
        return np.sum(coefficients * rows, axis=-1)

    def eval_at(
        self, position: np.ndarray, directions: np.ndarray
    ) -> np.ndarray:
        """Amplitudes of many directions at one position"""
        coefficients = self.__image.interpolate_coeffs(position)
        rows = self.__basis.rows(self.__sphere.nearest_vertex(directions))
        return rows @ coefficients

    def amplitude_table(self, position: np.ndarray) -> AmplitudeTable:
        coefficients = self.__image.interpolate_coeffs(position)
        return AmplitudeTable(self.__basis.basis_matrix @ coefficients)

    def peak_direction(self, position: np.ndarray) -> np.ndarray:
        table = self.amplitude_table(position)
        return self.__sphere.vertices[table.peak_vertex]


def eval_fod(
    image: FodImage,
    sphere: DiscretizedSphere,
    basis: ShBasis,
    position: np.ndarray,
    direction: np.ndarray,
) -> float:
    return float(FodEvaluator(image, sphere, basis).eval(position, direction))
