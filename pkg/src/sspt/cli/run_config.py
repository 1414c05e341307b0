import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

from sspt.engine.parameters import FixedParams, ParameterRanges
from sspt.exceptions import ConfigurationError, ErrorCode


@dataclass(frozen=True)
class RunConfig:
    """Everything ``sspt track`` needs, validated before any compute"""

    fod: Path
    seed: Path
    ranges: ParameterRanges
    out_tck: Path
    out_records: Path
    rng_seed: int
    threads: int = 1
    include_and: Tuple[Path, ...] = ()
    include_or: Tuple[Path, ...] = ()
    exclude: Tuple[Path, ...] = ()
    mask: Optional[Path] = None
    summary_json: Optional[Path] = field(default=None)

    def __post_init__(self) -> None:
        if self.rng_seed < 0:
            raise ConfigurationError(
                "Random seed must not be negative",
                flag="--rng-seed",
                code=ErrorCode.InvalidRanges,
            )
        if self.threads < 1:
            raise ConfigurationError(
                "At least one thread is required",
                flag="--threads",
                code=ErrorCode.InvalidRanges,
            )

    @staticmethod
    def from_args(args: argparse.Namespace) -> "RunConfig":
        if args.fod_threshold_range is not None:
            threshold_min, threshold_max = args.fod_threshold_range
        elif args.fod_threshold is not None:
            threshold_min = threshold_max = args.fod_threshold
        else:
            threshold_min = threshold_max = FixedParams().fod_threshold_default

        ranges = ParameterRanges(
            step_min=args.step[0],
            step_max=args.step[1],
            radius_min=args.radius[0],
            radius_max=args.radius[1],
            threshold_min=threshold_min,
            threshold_max=threshold_max,
            min_length=args.min_length,
            max_length=args.max_length,
            target_streamlines=args.target,
            max_seeds=args.max_seeds,
            reject_at_max_length=not args.truncate_at_max_length,
        )
        return RunConfig(
            fod=Path(args.fod),
            seed=Path(args.seed),
            ranges=ranges,
            out_tck=Path(args.out),
            out_records=Path(args.records),
            rng_seed=args.rng_seed,
            threads=args.threads,
            include_and=tuple(Path(path) for path in args.include_and),
            include_or=tuple(Path(path) for path in args.include_or),
            exclude=tuple(Path(path) for path in args.exclude),
            mask=None if args.mask is None else Path(args.mask),
            summary_json=(
                None if args.summary_json is None else Path(args.summary_json)
            ),
        )
