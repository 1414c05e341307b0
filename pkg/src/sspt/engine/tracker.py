import time
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from sspt.engine.parameters import (
    FixedParams,
    ParameterRanges,
    ParameterSample,
    sample_parameters,
)
from sspt.engine.records import (
    HalfTermination,
    TrackingFlag,
    TrackingOutcome,
    TrackingRecord,
)
from sspt.exceptions import ContractViolation
from sspt.fod.evaluator import FodEvaluator
from sspt.fod.fod_image import FodImage
from sspt.geometry.sampling import (
    sample_direction_in_cone,
    sample_direction_uniform_sphere,
)
from sspt.geometry.sh import sh_basis
from sspt.geometry.sphere import subdivide_icosahedron
from sspt.roi.roi_set import RoiSet, inclusion_status, is_satisfied


class BacktrackBudget:
    """Step-back counter shared by both halves of one streamline"""

    __limit: int
    __used: int

    def __init__(self, limit: int) -> None:
        self.__limit = limit
        self.__used = 0

    @property
    def limit(self) -> int:
        return self.__limit

    @property
    def used(self) -> int:
        return self.__used

    @property
    def exhausted(self) -> bool:
        return self.__used >= self.__limit

    def consume(self) -> bool:
        if self.exhausted:
            return False
        self.__used += 1
        return True


@dataclass(frozen=True, eq=False)
class HalfTrack:
    points: np.ndarray = field(repr=False)
    directions: np.ndarray = field(repr=False)
    termination: HalfTermination

    @property
    def advanced(self) -> bool:
        return self.points.shape[0] > 1


def choose_direction(
    candidates: np.ndarray, weights: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Categorical draw over candidates proportional to their weights"""
    candidates = np.asarray(candidates, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    if candidates.shape[0] == 0:
        raise ContractViolation("No candidate directions to choose from")
    if candidates.shape[0] != weights.shape[0]:
        raise ContractViolation(
            "Candidates and weights differ in length",
            detail=f"{candidates.shape[0]} != {weights.shape[0]}",
        )
    if np.any(weights <= 0):
        raise ContractViolation("Candidate weights must be positive")

    index = rng.choice(weights.shape[0], p=weights / weights.sum())
    return candidates[index]


def acceptance_flags(
    points: np.ndarray,
    rois: RoiSet,
    params: ParameterSample,
    ranges: ParameterRanges,
    half_reasons: Iterable[HalfTermination] = (),
) -> FrozenSet[TrackingFlag]:
    """Rejection reasons of a tracked streamline, empty when accepted"""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    half_reasons = set(half_reasons)
    flags = set()

    if HalfTermination.EXCLUSION in half_reasons:
        flags.add(TrackingFlag.EXCLUSION_TERMINATED)
    if (
        HalfTermination.MAX_LENGTH in half_reasons
        and ranges.reject_at_max_length
    ):
        flags.add(TrackingFlag.MAX_LENGTH_EXCEEDED)
    # A lone seed point is never a streamline
    if points.shape[0] < 2:
        if HalfTermination.BACKTRACK_EXHAUSTED in half_reasons:
            flags.add(TrackingFlag.BACKTRACK_EXHAUSTED)
        else:
            flags.add(TrackingFlag.TOO_SHORT)

    length = (points.shape[0] - 1) * params.step_size
    if length < ranges.min_length:
        flags.add(TrackingFlag.TOO_SHORT)
    if length >= ranges.max_length:
        flags.add(TrackingFlag.MAX_LENGTH_EXCEEDED)

    if not is_satisfied(inclusion_status(points, rois), rois):
        flags.add(TrackingFlag.MISSED_INCLUSION)

    return frozenset(flags)


class Tracker:
    """Tracks single streamlines, each with its own sampled parameters

    The tracker only holds read-only state, so one instance may serve
    many threads as long as every attempt brings its own generator.
    """

    __rois: RoiSet
    __ranges: ParameterRanges
    __fixed: FixedParams
    __evaluator: FodEvaluator
    __fractions: np.ndarray

    def __init__(
        self,
        image: FodImage,
        rois: RoiSet,
        ranges: ParameterRanges,
        fixed: Optional[FixedParams] = None,
    ) -> None:
        self.__rois = rois
        self.__ranges = ranges
        self.__fixed = fixed if fixed is not None else FixedParams()

        sphere = subdivide_icosahedron(self.__fixed.sh_resolution)
        self.__evaluator = FodEvaluator(
            image, sphere, sh_basis(sphere, image.lmax)
        )

        steps = self.__fixed.intermediate_steps
        self.__fractions = np.arange(1, steps + 1, dtype=np.float64) / steps

    @property
    def rois(self) -> RoiSet:
        return self.__rois

    @property
    def ranges(self) -> ParameterRanges:
        return self.__ranges

    @property
    def fixed(self) -> FixedParams:
        return self.__fixed

    @property
    def evaluator(self) -> FodEvaluator:
        return self.__evaluator

    def initial_direction(
        self,
        position: np.ndarray,
        params: ParameterSample,
        rng: np.random.Generator,
    ) -> Optional[np.ndarray]:
        directions = sample_direction_uniform_sphere(
            rng, size=self.__fixed.seed_samples
        )
        amplitudes = self.__evaluator.eval_at(position, directions)
        valid = amplitudes > params.fod_threshold
        if not np.any(valid):
            return None
        return choose_direction(directions[valid], amplitudes[valid], rng)

    def candidate_step(
        self,
        position: np.ndarray,
        direction: np.ndarray,
        params: ParameterSample,
        rng: np.random.Generator,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Cone draws whose whole straight path stays above threshold

        Returns the valid directions and the product of the FOD
        amplitudes along each one's intermediate points.
        """
        directions = sample_direction_in_cone(
            direction, params.cone_angle, rng, size=self.__fixed.n_samples
        )
        offsets = (
            (self.__fractions * params.step_size)[None, :, None]
            * directions[:, None, :]
        )
        positions = (position + offsets).reshape(-1, 3)

        vertices = self.__evaluator.sphere.nearest_vertex(directions)
        amplitudes = self.__evaluator.eval_vertices(
            positions, np.repeat(vertices, self.__fractions.shape[0])
        ).reshape(directions.shape[0], -1)

        valid = np.all(amplitudes > params.fod_threshold, axis=1)
        if self.__rois.mask is not None:
            endpoints = position + params.step_size * directions
            valid &= self.__rois.in_tracking_mask(endpoints)

        return directions[valid], np.prod(amplitudes[valid], axis=1)

    def track_half(
        self,
        seed: np.ndarray,
        initial: np.ndarray,
        params: ParameterSample,
        budget: BacktrackBudget,
        rng: np.random.Generator,
        steps_taken: int = 0,
    ) -> HalfTrack:
        """Tracks from the seed until the FOD, a mask or a budget stops it

        ``steps_taken`` counts the steps of the other half, the length
        budget is shared by the whole streamline.
        """
        points: List[np.ndarray] = [np.asarray(seed, dtype=np.float64)]
        directions: List[np.ndarray] = [
            np.asarray(initial, dtype=np.float64)
        ]
        advanced = False
        step = params.step_size

        while True:
            if (steps_taken + len(points)) * step >= self.__ranges.max_length:
                termination = HalfTermination.MAX_LENGTH
                break

            position = points[-1]
            candidates, weights = self.candidate_step(
                position, directions[-1], params, rng
            )
            if candidates.shape[0] == 0:
                if not budget.consume():
                    termination = (
                        HalfTermination.ENDED
                        if advanced
                        else HalfTermination.BACKTRACK_EXHAUSTED
                    )
                    break
                self.__step_back(points, directions)
                continue

            chosen = choose_direction(candidates, weights, rng)
            new_position = position + step * chosen

            if self.__rois.in_exclusion(new_position):
                # Only the excluded point is undone, the step is retried
                if not budget.consume():
                    termination = HalfTermination.EXCLUSION
                    break
                continue

            points.append(new_position)
            directions.append(chosen)
            advanced = True

        return HalfTrack(
            points=np.vstack(points),
            directions=np.vstack(directions),
            termination=termination,
        )

    def track_streamline(self, rng: np.random.Generator) -> TrackingOutcome:
        started = time.perf_counter_ns()

        params = sample_parameters(self.__ranges, rng)
        seed = self.__rois.seed.sample_seed(rng)
        seed_pos = tuple(float(value) for value in seed)

        initial = self.initial_direction(seed, params, rng)
        if initial is None:
            record = TrackingRecord(
                seed_pos=seed_pos,
                params=params,
                accepted=False,
                failure_flags=frozenset(
                    {TrackingFlag.NO_VALID_START_DIRECTION}
                ),
                n_backtracks=0,
                n_points=1,
                duration_us=_elapsed_us(started),
            )
            return TrackingOutcome(record)

        budget = BacktrackBudget(self.__fixed.backtrack_lim)
        first_half = self.track_half(seed, initial, params, budget, rng)
        reverse_initial = (
            -first_half.directions[1] if first_half.advanced else -initial
        )
        second_half = self.track_half(
            seed,
            reverse_initial,
            params,
            budget,
            rng,
            steps_taken=first_half.points.shape[0] - 1,
        )

        points = np.vstack(
            (second_half.points[::-1], first_half.points[1:])
        )
        flags = acceptance_flags(
            points,
            self.__rois,
            params,
            self.__ranges,
            (first_half.termination, second_half.termination),
        )
        accepted = len(flags) == 0

        record = TrackingRecord(
            seed_pos=seed_pos,
            params=params,
            accepted=accepted,
            failure_flags=flags,
            n_backtracks=budget.used,
            n_points=points.shape[0],
            duration_us=_elapsed_us(started),
        )
        return TrackingOutcome(record, points if accepted else None)

    def track_attempt(self, global_seed: int, attempt: int) -> TrackingOutcome:
        """One attempt with a generator derived from its index"""
        rng = np.random.default_rng(
            np.random.SeedSequence([global_seed, attempt])
        )
        return self.track_streamline(rng)

    @staticmethod
    def __step_back(
        points: List[np.ndarray], directions: List[np.ndarray]
    ) -> None:
        # The seed stays, stepping back there only retries
        if len(points) > 1:
            points.pop()
            directions.pop()


def _elapsed_us(started_ns: int) -> int:
    return (time.perf_counter_ns() - started_ns) // 1000
