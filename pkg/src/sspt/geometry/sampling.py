from typing import Optional

import numpy as np

from sspt.exceptions import ErrorCode, ParameterError


def cone_angle_from_radius(step_size: float, radius: float) -> float:
    """Cone angle allowing a turning radius ``radius`` at ``step_size``

    Inverts ``radius = step_size / sin(angle / 2)``.
    """
    if step_size <= 0:
        raise ParameterError(
            "Step size must be positive", detail=f"Got {step_size!r}"
        )
    if radius < step_size:
        raise ParameterError(
            detail=f"radius={radius!r} < step_size={step_size!r}",
            code=ErrorCode.RadiusBelowStep,
        )
    return 2.0 * float(np.arcsin(step_size / radius))


def radius_from_cone_angle(step_size: float, cone_angle: float) -> float:
    return step_size / float(np.sin(cone_angle / 2.0))


def sample_direction_in_cone(
    axis: np.ndarray,
    alpha: float,
    rng: np.random.Generator,
    size: Optional[int] = None,
) -> np.ndarray:
    """Directions uniform in solid angle over the cap around ``axis``

    Returns shape ``(3,)`` when ``size`` is None, ``(size, 3)`` otherwise.
    """
    axis = np.asarray(axis, dtype=np.float64)
    count = 1 if size is None else size

    cos_alpha = np.cos(alpha)
    cos_theta = 1.0 - rng.random(count) * (1.0 - cos_alpha)
    sin_theta = np.sqrt(np.clip(1.0 - cos_theta * cos_theta, 0.0, None))
    azimuth = 2.0 * np.pi * rng.random(count)

    first, second = _orthonormal_complement(axis)
    directions = (
        (sin_theta * np.cos(azimuth))[:, None] * first
        + (sin_theta * np.sin(azimuth))[:, None] * second
        + cos_theta[:, None] * axis
    )
    return directions[0] if size is None else directions


def sample_direction_uniform_sphere(
    rng: np.random.Generator, size: Optional[int] = None
) -> np.ndarray:
    count = 1 if size is None else size
    directions = rng.standard_normal((count, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    return directions[0] if size is None else directions


def angle_between(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    first = np.asarray(first, dtype=np.float64)
    second = np.asarray(second, dtype=np.float64)
    cosine = np.sum(first * second, axis=-1) / (
        np.linalg.norm(first, axis=-1) * np.linalg.norm(second, axis=-1)
    )
    return np.arccos(np.clip(cosine, -1.0, 1.0))


def _orthonormal_complement(axis: np.ndarray):
    helper = (
        np.array([1.0, 0.0, 0.0])
        if abs(axis[0]) < 0.9
        else np.array([0.0, 1.0, 0.0])
    )
    first = np.cross(axis, helper)
    first /= np.linalg.norm(first)
    second = np.cross(axis, first)
    return first, second
