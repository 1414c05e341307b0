from typing import TYPE_CHECKING

import numpy as np

try:
    from scipy.special import sph_harm_y as _sph_harm_y

    SCIPY_HAS_SPH_HARM_Y = True
except ImportError:  # scipy < 1.15
    from scipy.special import sph_harm as _sph_harm

    SCIPY_HAS_SPH_HARM_Y = False

if TYPE_CHECKING:
    from numpy.typing import ArrayLike


def sph_harm_y(
    degree: int, order: int, polar: "ArrayLike", azimuth: "ArrayLike"
) -> np.ndarray:
    """Complex spherical harmonic with the Condon-Shortley phase"""
    if SCIPY_HAS_SPH_HARM_Y:
        return _sph_harm_y(degree, order, polar, azimuth)
    return _sph_harm(order, degree, azimuth, polar)
