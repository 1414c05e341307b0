import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from sspt.analysis import (
    histogram,
    joint_histogram,
    per_cluster_histograms,
    quickbundles,
    sampling_range,
    suggest_ranges,
    summarize,
)
from sspt.cli.parser import format_range
from sspt.cli.run_config import RunConfig
from sspt.engine import (
    ParameterName,
    ParameterRanges,
    TrackingConfig,
    TrackingRecord,
    run,
)
from sspt.exceptions import AnalysisError, SsptIoError
from sspt.io import (
    load_tracking_inputs,
    ranges_path,
    read_cluster_assignments,
    read_ranges,
    read_records,
    read_tck,
    write_cluster_assignments,
    write_histogram,
    write_joint_histogram,
    write_phantom,
    write_ranges,
    write_records,
    write_suggestion,
    write_tck,
)
from sspt.logging import logger
from sspt.phantom import PhantomSpec, generate
from sspt.types import ValueRange

# Flag that takes the refined range of each parameter
_RANGE_FLAGS = {
    ParameterName.STEP_SIZE: "--step",
    ParameterName.RADIUS: "--radius",
    ParameterName.FOD_THRESHOLD: "--fod-threshold-range",
}


def cmd_track(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    image, rois = load_tracking_inputs(
        config.fod,
        config.seed,
        config.include_and,
        config.include_or,
        config.exclude,
        config.mask,
    )

    result = run(
        TrackingConfig(
            image=image,
            rois=rois,
            ranges=config.ranges,
            global_seed=config.rng_seed,
            threads=config.threads,
        )
    )
    write_tck(config.out_tck, result.tractogram)
    write_records(config.out_records, result.records)
    write_ranges(ranges_path(config.out_records), config.ranges)

    summary = summarize(result.records)
    _output(summary.format() + f"wall time: {result.wall_time_s:.3f} s\n")

    if config.summary_json is not None:
        data = summary.as_dict()
        data["wall_time_s"] = result.wall_time_s
        _write_json(config.summary_json, data)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    records = read_records(args.records)
    if len(records) == 0:
        raise AnalysisError(f"No records in {args.records}")

    out = Path(args.out)
    sampled = _sampled_ranges(args.records)
    bins_range = _value_range(
        args.value_range, records, args.param, sampled
    )
    hist = histogram(records, args.param, args.bins, value_range=bins_range)
    write_histogram(out, hist)

    if args.clusters is not None:
        clusters = read_cluster_assignments(args.clusters)
        cluster_hists = per_cluster_histograms(
            records,
            clusters,
            args.param,
            args.bins,
            value_range=hist.value_range,
        )
        for cluster, cluster_hist in zip(clusters, cluster_hists):
            write_histogram(_with_suffix(out, f"_c{cluster.id}"), cluster_hist)

    if args.param2 is not None:
        joint = joint_histogram(
            records,
            args.param,
            args.param2,
            args.bins,
            x_range=hist.value_range,
            y_range=_value_range(None, records, args.param2, sampled),
        )
        write_joint_histogram(_with_suffix(out, "_joint"), joint)

    _output(summarize(records).format())
    return 0


def cmd_cluster(args: argparse.Namespace) -> int:
    tractogram = read_tck(args.tracks)
    clusters = quickbundles(tractogram, args.threshold, args.points)

    out = Path(args.out)
    write_cluster_assignments(out, clusters)
    write_tck(
        out.with_name(f"{out.stem}_centroids.tck"),
        [cluster.centroid for cluster in clusters],
    )

    _output(f"streamlines: {len(tractogram)}\nclusters: {len(clusters)}\n")
    return 0


def cmd_refine(args: argparse.Namespace) -> int:
    records = read_records(args.records)
    if len(records) == 0:
        raise AnalysisError(f"No records in {args.records}")

    sampled = _sampled_ranges(args.records)
    bins_range = _value_range(
        args.value_range, records, args.param, sampled
    )
    hist = histogram(records, args.param, args.bins, value_range=bins_range)
    suggestion = suggest_ranges(hist, args.keep)
    write_suggestion(args.out, suggestion)

    name = ParameterName.parse(args.param)
    suggested = format_range(
        suggestion.suggested_min, suggestion.suggested_max
    )
    flag = _RANGE_FLAGS.get(name)
    line = (
        f"{flag} {suggested}" if flag is not None else f"{name}: {suggested}"
    )
    _output(
        f"{line}\nkeeps {suggestion.support_fraction:.1%} of accepted"
        " streamlines\n"
    )
    return 0


def cmd_phantom(args: argparse.Namespace) -> int:
    changes = {
        "arc_radius": args.arc_radius,
        "bundle_radius": args.bundle_radius,
        "volume_dims": args.dims,
        "voxel_size": args.voxel,
        "kappa": args.kappa,
        "peak_amplitude": args.peak,
        "lmax": args.lmax,
        "seed_radius": args.seed_radius,
    }
    spec = PhantomSpec.default(args.kind).with_changes(
        **{key: value for key, value in changes.items() if value is not None}
    )
    image, rois = generate(spec)
    write_phantom(args.out_dir, image, rois)
    _output(f"{spec.kind} phantom {spec.volume_dims} in {args.out_dir}\n")
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "track": cmd_track,
    "analyze": cmd_analyze,
    "cluster": cmd_cluster,
    "refine": cmd_refine,
    "phantom": cmd_phantom,
}


def _output(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _with_suffix(path: Path, suffix: str) -> Path:
    return path.with_name(f"{path.stem}{suffix}{path.suffix}")


def _write_json(path: Path, data: Dict) -> None:
    try:
        path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    except OSError as error:
        raise SsptIoError.from_os_error(error) from error
    logger.debug(f"Wrote summary {path}")


def _sampled_ranges(records_path: str) -> Optional[ParameterRanges]:
    path = ranges_path(records_path)
    if not path.exists():
        logger.warning(
            f"No sampling ranges next to {records_path}, histograms span"
            " the sampled values"
        )
        return None
    return read_ranges(path)


def _value_range(
    explicit: Optional[ValueRange],
    records: List[TrackingRecord],
    param_name: str,
    sampled: Optional[ParameterRanges],
) -> ValueRange:
    """Explicit range first, then the ranges the records were drawn from"""
    if explicit is not None:
        return explicit
    return sampling_range(records, param_name, sampled)
