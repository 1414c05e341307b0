from dataclasses import dataclass

import numpy as np

from sspt.exceptions import ErrorCode, FormatError, ParameterError
from sspt.fod import (
    FodImage,
    VoxelGrid,
    interpolate_coeffs,
    lmax_from_ncoeffs,
)
from tests.sspt_testcase import SsptTestCase


@dataclass
class CoefficientCountCase:
    count: int
    lmax: int


class TestLmaxFromCoefficientCount(SsptTestCase):
    def test_valid(self) -> None:
        cases = [
            CoefficientCountCase(1, 0),
            CoefficientCountCase(6, 2),
            CoefficientCountCase(15, 4),
            CoefficientCountCase(28, 6),
            CoefficientCountCase(45, 8),
            CoefficientCountCase(153, 16),
        ]
        for case in cases:
            with self.subTest(count=case.count):
                self.assertEqual(lmax_from_ncoeffs(case.count), case.lmax)

    def test_invalid(self) -> None:
        for count in (0, 2, 7, 10, 44, 46):
            with self.subTest(count=count), self.assertRaises(
                FormatError
            ) as context:
                lmax_from_ncoeffs(count)
            self.assertEqual(
                context.exception.code, ErrorCode.ShCoefficientCount
            )


class TestVoxelGrid(SsptTestCase):
    def test_world_voxel_mapping(self) -> None:
        affine = np.diag([2.0, 2.0, 2.0, 1.0])
        affine[:3, 3] = (10.0, 0.0, -4.0)
        grid = VoxelGrid((5, 5, 5), affine)

        np.testing.assert_allclose(
            grid.world_to_voxel(np.array([12.0, 2.0, -4.0])), (1.0, 1.0, 0.0)
        )
        np.testing.assert_allclose(
            grid.voxel_to_world(np.array([[0.0, 0.0, 0.0], [1.0, 2.0, 3.0]])),
            [[10.0, 0.0, -4.0], [12.0, 4.0, 2.0]],
        )
        np.testing.assert_allclose(grid.voxel_size, (2.0, 2.0, 2.0))

    def test_singular_affine(self) -> None:
        affine = np.eye(4)
        affine[2, 2] = 0.0
        with self.assertRaises(ParameterError):
            VoxelGrid((2, 2, 2), affine)


class TestFodImage(SsptTestCase):
    def setUp(self) -> None:
        super().setUp()
        rng = np.random.default_rng(12)
        self.coefficients = rng.standard_normal((4, 5, 6, 15))
        self.image = FodImage(self.coefficients, np.eye(4))

    def test_properties(self) -> None:
        self.assertEqual(self.image.dims, (4, 5, 6, 15))
        self.assertEqual(self.image.lmax, 4)
        self.assertEqual(self.image.n_coefficients, 15)

    def test_input_is_copied(self) -> None:
        self.coefficients[0, 0, 0, 0] = 1000.0
        self.assertNotEqual(self.image.coefficients[0, 0, 0, 0], 1000.0)
        with self.assertRaises(ValueError):
            self.image.coefficients[0, 0, 0, 0] = 1.0

    def test_invalid_volumes(self) -> None:
        with self.subTest("3-D"), self.assertRaises(FormatError):
            FodImage(np.zeros((3, 3, 3)), np.eye(4))

        with self.subTest("coefficient count"), self.assertRaises(
            FormatError
        ):
            FodImage(np.zeros((3, 3, 3, 7)), np.eye(4))

        with self.subTest("not finite"), self.assertRaises(FormatError):
            coefficients = np.zeros((3, 3, 3, 6))
            coefficients[1, 1, 1, 2] = np.nan
            FodImage(coefficients, np.eye(4))

    def test_interpolation_at_voxel_centers(self) -> None:
        for index in ((0, 0, 0), (3, 4, 5), (1, 2, 3)):
            with self.subTest(index=index):
                np.testing.assert_allclose(
                    self.image.interpolate_coeffs(np.array(index, float)),
                    self.coefficients[index],
                    atol=1e-12,
                )

    def test_interpolation_is_trilinear(self) -> None:
        with self.subTest("edge midpoint"):
            np.testing.assert_allclose(
                interpolate_coeffs(self.image, np.array([1.5, 2.0, 3.0])),
                (self.coefficients[1, 2, 3] + self.coefficients[2, 2, 3]) / 2,
                atol=1e-12,
            )

        with self.subTest("cell center"):
            expected = self.coefficients[1:3, 2:4, 3:5].mean(axis=(0, 1, 2))
            np.testing.assert_allclose(
                interpolate_coeffs(self.image, np.array([1.5, 2.5, 3.5])),
                expected,
                atol=1e-12,
            )

        with self.subTest("weights"):
            position = np.array([1.25, 2.0, 3.0])
            expected = (
                0.75 * self.coefficients[1, 2, 3]
                + 0.25 * self.coefficients[2, 2, 3]
            )
            np.testing.assert_allclose(
                interpolate_coeffs(self.image, position), expected, atol=1e-12
            )

    def test_outside_is_zero(self) -> None:
        for position in ((-0.5, 1, 1), (1, 4.5, 1), (1, 1, 100)):
            with self.subTest(position=position):
                values = self.image.interpolate_coeffs(np.array(position))
                np.testing.assert_array_equal(values, np.zeros(15))

    def test_batch(self) -> None:
        positions = np.array([[0.0, 0.0, 0.0], [-3.0, 0, 0], [1.5, 2, 3]])
        values = self.image.interpolate_coeffs(positions)
        self.assertEqual(values.shape, (3, 15))
        for position, row in zip(positions, values):
            np.testing.assert_allclose(
                row, self.image.interpolate_coeffs(position), atol=1e-12
            )

    def test_scaled_affine(self) -> None:
        affine = np.diag([2.0, 2.0, 2.0, 1.0])
        image = FodImage(self.coefficients, affine)
        np.testing.assert_allclose(
            image.interpolate_coeffs(np.array([3.0, 4.0, 6.0])),
            (self.coefficients[1, 2, 3] + self.coefficients[2, 2, 3]) / 2,
            atol=1e-12,
        )
