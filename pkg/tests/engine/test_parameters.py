from dataclasses import dataclass
from typing import Dict

import numpy as np

from sspt.engine import (
    FixedParams,
    ParameterName,
    ParameterRanges,
    ParameterSample,
    sample_parameters,
)
from sspt.exceptions import ConfigurationError, ErrorCode, ParameterError
from sspt.geometry import cone_angle_from_radius
from tests.sspt_testcase import SsptTestCase


@dataclass
class InvalidRangesCase:
    name: str
    changes: Dict
    flag: str


class TestFixedParams(SsptTestCase):
    def test_defaults(self) -> None:
        fixed = FixedParams()
        self.assertEqual(fixed.sh_resolution, 4)
        self.assertEqual(fixed.backtrack_lim, 64)
        self.assertEqual(fixed.intermediate_steps, 4)
        self.assertEqual(fixed.n_samples, 4)
        self.assertEqual(fixed.seed_samples, 32)
        self.assertEqual(fixed.fod_threshold_default, 0.1)

    def test_invalid(self) -> None:
        for changes in (
            {"n_samples": 0},
            {"seed_samples": -1},
            {"backtrack_lim": -1},
            {"fod_threshold_default": -0.1},
        ):
            with self.subTest(changes=changes), self.assertRaises(
                ParameterError
            ):
                FixedParams(**changes)

        self.assertEqual(FixedParams(backtrack_lim=0).backtrack_lim, 0)


BASE_RANGES = {
    "step_min": 0.4,
    "step_max": 0.6,
    "radius_min": 0.75,
    "radius_max": 1.0,
}


class TestParameterRanges(SsptTestCase):
    def test_cone_angle_range(self) -> None:
        ranges = ParameterRanges(**BASE_RANGES)
        low, high = ranges.range_of(ParameterName.CONE_ANGLE)
        self.assertAlmostEqual(low, 2 * np.arcsin(0.4), delta=1e-12)
        self.assertAlmostEqual(high, 2 * np.arcsin(0.8), delta=1e-12)
        self.assertAlmostEqual(low, 0.8230, delta=1e-4)
        self.assertAlmostEqual(high, 1.8546, delta=1e-4)

    def test_default_threshold(self) -> None:
        default = FixedParams().fod_threshold_default
        self.assertEqual(
            ParameterRanges(**BASE_RANGES).range_of(
                ParameterName.FOD_THRESHOLD
            ),
            (default, default),
        )

    def test_ranges_by_name(self) -> None:
        ranges = ParameterRanges(**BASE_RANGES, threshold_max=0.3)
        self.assertEqual(ranges.range_of("step_size"), (0.4, 0.6))
        self.assertEqual(ranges.range_of(ParameterName.RADIUS), (0.75, 1.0))
        self.assertEqual(
            ranges.range_of(ParameterName.FOD_THRESHOLD), (0.1, 0.3)
        )
        with self.assertRaises(ParameterError) as context:
            ranges.range_of("curvature")
        self.assertEqual(context.exception.code, ErrorCode.UnknownParameter)

    def test_seed_limit(self) -> None:
        ranges = ParameterRanges(**BASE_RANGES, target_streamlines=7)
        self.assertEqual(ranges.seed_limit, 7000)
        limited = ParameterRanges(**BASE_RANGES, max_seeds=12)
        self.assertEqual(limited.seed_limit, 12)

    def test_invalid(self) -> None:
        cases = [
            InvalidRangesCase("step order", {"step_min": 0.7}, "--step"),
            InvalidRangesCase("step zero", {"step_min": 0.0}, "--step"),
            InvalidRangesCase(
                "radius order", {"radius_max": 0.7}, "--radius"
            ),
            InvalidRangesCase(
                "radius below step", {"radius_min": 0.5}, "--radius"
            ),
            InvalidRangesCase(
                "threshold",
                {"threshold_min": 0.2, "threshold_max": 0.1},
                "--fod-threshold-range",
            ),
            InvalidRangesCase(
                "negative threshold",
                {"threshold_min": -0.1},
                "--fod-threshold-range",
            ),
            InvalidRangesCase(
                "lengths",
                {"min_length": 30.0, "max_length": 20.0},
                "--max-length",
            ),
            InvalidRangesCase(
                "negative min length", {"min_length": -1.0}, "--min-length"
            ),
            InvalidRangesCase(
                "zero max length", {"max_length": 0.0}, "--max-length"
            ),
            InvalidRangesCase(
                "target", {"target_streamlines": -1}, "--target"
            ),
            InvalidRangesCase("seeds", {"max_seeds": -5}, "--max-seeds"),
        ]
        for case in cases:
            with self.subTest(case.name), self.assertRaises(
                ConfigurationError
            ) as context:
                ParameterRanges(**{**BASE_RANGES, **case.changes})
            self.assertEqual(context.exception.flag, case.flag)
            self.assertEqual(context.exception.code, ErrorCode.InvalidRanges)


class TestParameterName(SsptTestCase):
    def test_parse(self) -> None:
        for name in ParameterName:
            with self.subTest(name=name):
                self.assertIs(ParameterName.parse(str(name)), name)

        with self.assertRaises(ParameterError):
            ParameterName.parse("angle")


class TestSampleParameters(SsptTestCase):
    def test_degenerate_ranges(self) -> None:
        ranges = ParameterRanges(
            step_min=0.5, step_max=0.5, radius_min=2.0, radius_max=2.0
        )
        rng = np.random.default_rng(0)
        for _ in range(10):
            sample = sample_parameters(ranges, rng)
            self.assertEqual(sample.step_size, 0.5)
            self.assertEqual(sample.radius, 2.0)
            self.assertEqual(sample.fod_threshold, 0.1)
            self.assertEqual(sample.cone_angle, 2.0 * np.arcsin(0.25))

    def test_within_ranges(self) -> None:
        ranges = ParameterRanges(
            step_min=0.4,
            step_max=0.6,
            radius_min=2.0,
            radius_max=100.0,
            threshold_min=0.05,
            threshold_max=0.2,
        )
        rng = np.random.default_rng(1)
        steps = []
        for _ in range(20_000):
            sample = sample_parameters(ranges, rng)
            self.assertTrue(0.4 <= sample.step_size <= 0.6)
            self.assertTrue(2.0 <= sample.radius <= 100.0)
            self.assertTrue(0.05 <= sample.fod_threshold <= 0.2)
            self.assertEqual(
                sample.cone_angle,
                cone_angle_from_radius(sample.step_size, sample.radius),
            )
            steps.append(sample.step_size)

        self.assertAlmostEqual(np.mean(steps), 0.5, delta=0.005)
        counts, _ = np.histogram(steps, bins=4, range=(0.4, 0.6))
        np.testing.assert_allclose(counts / 20_000, 0.25, atol=0.015)

    def test_value_of(self) -> None:
        sample = ParameterSample.from_values(0.5, 2.0, 0.1)
        self.assertEqual(sample.value_of("radius"), 2.0)
        self.assertEqual(sample.value_of(ParameterName.STEP_SIZE), 0.5)
        self.assertEqual(
            sample.value_of(ParameterName.CONE_ANGLE), sample.cone_angle
        )
