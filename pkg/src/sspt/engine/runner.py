import time
from dataclasses import asdict, dataclass, field, replace
from typing import List, Optional

from joblib import Parallel, delayed

from sspt.engine.parameters import FixedParams, ParameterRanges
from sspt.engine.records import RunResult, TrackingRecord
from sspt.engine.tracker import Tracker
from sspt.exceptions import ConfigurationError, ErrorCode
from sspt.fod.fod_image import FodImage
from sspt.logging import format_container_data, logger
from sspt.roi.roi_set import RoiSet
from sspt.settings import SsptSettings
from sspt.types import Tractogram


@dataclass(frozen=True, eq=False)
class TrackingConfig:
    """Loaded inputs and options of one tracking run"""

    image: FodImage = field(repr=False)
    rois: RoiSet = field(repr=False)
    ranges: ParameterRanges
    fixed: FixedParams = field(default_factory=FixedParams)
    global_seed: int = 0
    threads: int = 1
    batch_size: Optional[int] = None

    def __post_init__(self) -> None:
        if self.global_seed < 0:
            raise ConfigurationError(
                "Global seed must not be negative",
                flag="--rng-seed",
                code=ErrorCode.InvalidRanges,
            )
        if self.threads < 1:
            raise ConfigurationError(
                "At least one thread is required",
                flag="--threads",
                code=ErrorCode.InvalidRanges,
            )
        if self.batch_size is not None and self.batch_size < 1:
            raise ConfigurationError(
                "Batch size must be positive", code=ErrorCode.InvalidRanges
            )


def run(config: TrackingConfig) -> RunResult:
    """Tracks attempts in index order until the target is accepted

    Attempts are dispatched in batches, and everything after the attempt
    that produced the last required streamline is dropped, so the result
    does not depend on the number of threads or the batch size.
    """
    started = time.perf_counter()
    ranges = config.ranges
    tracker = Tracker(config.image, config.rois, ranges, config.fixed)

    batch_size = config.batch_size
    if batch_size is None:
        batch_size = SsptSettings().batch_size

    target = ranges.target_streamlines
    limit = ranges.seed_limit
    logger.info(
        f"Tracking {target} streamlines from at most {limit} seeds"
        f" with {config.threads} thread(s)"
    )
    logger.debug(
        f"Sampling ranges:\n{format_container_data(asdict(ranges))}"
    )

    records: List[TrackingRecord] = []
    tractogram: Tractogram = []
    attempt = 0

    with Parallel(n_jobs=config.threads, backend="threading") as parallel:
        while len(tractogram) < target and attempt < limit:
            batch = range(attempt, min(attempt + batch_size, limit))
            outcomes = parallel(
                delayed(tracker.track_attempt)(config.global_seed, index)
                for index in batch
            )
            for outcome in outcomes:
                if len(tractogram) >= target:
                    break
                record = outcome.record
                if record.accepted:
                    record = replace(
                        record, streamline_index=len(tractogram)
                    )
                    tractogram.append(outcome.streamline)
                records.append(record)

            attempt = batch.stop
            logger.debug(
                f"Attempts {batch.start}-{batch.stop - 1} done,"
                f" {len(tractogram)} accepted so far"
            )

    result = RunResult(
        tractogram=tractogram,
        records=records,
        wall_time_s=time.perf_counter() - started,
    )
    if result.accepted < target:
        logger.warning(
            f"Seed limit reached with {result.accepted} of {target}"
            " streamlines accepted"
        )
    logger.success(
        f"Tracked {result.attempts} seeds, accepted {result.accepted}"
        f" ({result.acceptance_rate:.1%}) in {result.wall_time_s:.1f} s"
    )
    return result
