import numpy as np

from sspt.exceptions import ErrorCode, ParameterError
from sspt.geometry import (
    angle_between,
    cone_angle_from_radius,
    radius_from_cone_angle,
    sample_direction_in_cone,
    sample_direction_uniform_sphere,
)
from tests.sspt_testcase import SsptTestCase


class TestConeAngle(SsptTestCase):
    def test_known_values(self) -> None:
        self.assertAlmostEqual(
            cone_angle_from_radius(0.4, 1.0), 2 * np.arcsin(0.4), delta=1e-15
        )
        self.assertAlmostEqual(
            cone_angle_from_radius(0.6, 0.75), 2 * np.arcsin(0.8), delta=1e-15
        )
        self.assertAlmostEqual(cone_angle_from_radius(1.0, 1.0), np.pi)

    def test_radius_round_trip(self) -> None:
        rng = np.random.default_rng(0)
        for _ in range(10_000):
            step = rng.uniform(0.1, 2.0)
            radius = step * rng.uniform(1.0, 200.0)
            angle = cone_angle_from_radius(step, radius)
            self.assertLessEqual(
                abs(radius_from_cone_angle(step, angle) - radius),
                1e-12 * radius,
            )

    def test_angle_shrinks_with_radius(self) -> None:
        angles = [cone_angle_from_radius(0.5, r) for r in (0.5, 1, 5, 50)]
        self.assertEqual(angles, sorted(angles, reverse=True))

    def test_invalid_input(self) -> None:
        with self.subTest("radius below step"), self.assertRaises(
            ParameterError
        ) as context:
            cone_angle_from_radius(0.5, 0.4)
        self.assertEqual(context.exception.code, ErrorCode.RadiusBelowStep)

        for step in (0.0, -1.0):
            with self.subTest(step=step), self.assertRaises(ParameterError):
                cone_angle_from_radius(step, 2.0)


class TestSampleDirectionInCone(SsptTestCase):
    def test_inside_cone(self) -> None:
        rng = np.random.default_rng(4)
        axes = [
            np.array([0.0, 0.0, 1.0]),
            np.array([1.0, 0.0, 0.0]),
            np.array([0.6, -0.48, 0.64]),
        ]
        for axis in axes:
            for alpha in (1e-4, 0.3, np.pi / 2, np.pi):
                with self.subTest(axis=axis, alpha=alpha):
                    directions = sample_direction_in_cone(
                        axis, alpha, rng, size=2000
                    )
                    norms = np.linalg.norm(directions, axis=1)
                    np.testing.assert_allclose(norms, 1.0, atol=1e-12)
                    angles = angle_between(directions, axis)
                    self.assertLessEqual(angles.max(), alpha + 1e-9)

    def test_zero_angle_returns_axis(self) -> None:
        rng = np.random.default_rng(2)
        axis = np.array([0.0, 0.6, 0.8])
        direction = sample_direction_in_cone(axis, 0.0, rng)
        self.assertEqual(direction.shape, (3,))
        np.testing.assert_allclose(direction, axis, atol=1e-15)

    def test_uniform_in_solid_angle(self) -> None:
        # cos(theta) is uniform on [cos(alpha), 1]
        rng = np.random.default_rng(8)
        alpha = np.pi / 3
        directions = sample_direction_in_cone(
            np.array([0.0, 0.0, 1.0]), alpha, rng, size=100_000
        )
        cosines = directions[:, 2]
        self.assertAlmostEqual(
            cosines.mean(), (1 + np.cos(alpha)) / 2, delta=3e-3
        )
        counts, _ = np.histogram(cosines, bins=5, range=(np.cos(alpha), 1))
        np.testing.assert_allclose(counts / 100_000, 0.2, atol=0.006)

        azimuth = np.arctan2(directions[:, 1], directions[:, 0])
        counts, _ = np.histogram(azimuth, bins=4, range=(-np.pi, np.pi))
        np.testing.assert_allclose(counts / 100_000, 0.25, atol=0.006)

    def test_deterministic_for_a_seed(self) -> None:
        axis = np.array([1.0, 0.0, 0.0])
        first = sample_direction_in_cone(
            axis, 0.5, np.random.default_rng(42), size=10
        )
        second = sample_direction_in_cone(
            axis, 0.5, np.random.default_rng(42), size=10
        )
        np.testing.assert_array_equal(first, second)


class TestSampleDirectionUniformSphere(SsptTestCase):
    def test_unit_and_balanced(self) -> None:
        rng = np.random.default_rng(6)
        directions = sample_direction_uniform_sphere(rng, size=100_000)
        np.testing.assert_allclose(
            np.linalg.norm(directions, axis=1), 1.0, atol=1e-12
        )
        np.testing.assert_allclose(directions.mean(axis=0), 0.0, atol=0.02)

        # Archimedes: z is uniform on [-1, 1]
        counts, _ = np.histogram(directions[:, 2], bins=4, range=(-1, 1))
        np.testing.assert_allclose(counts / 100_000, 0.25, atol=0.006)

    def test_single(self) -> None:
        direction = sample_direction_uniform_sphere(np.random.default_rng(1))
        self.assertEqual(direction.shape, (3,))
