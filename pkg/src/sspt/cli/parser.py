import argparse
import re
from typing import NoReturn, Tuple

from sspt import __version__
from sspt.engine.parameters import ParameterName
from sspt.exceptions import ConfigurationError, ErrorCode
from sspt.phantom.phantom_spec import PhantomKind
from sspt.settings import SsptSettings
from sspt.types import ValueRange

_FLAG_PATTERN = re.compile(r"--[a-z0-9][a-z0-9-]*")


class SsptArgumentParser(argparse.ArgumentParser):
    """Raises configuration errors instead of exiting the process"""

    def error(self, message: str) -> NoReturn:
        match = _FLAG_PATTERN.search(message)
        raise ConfigurationError(
            message,
            flag=match.group(0) if match is not None else None,
            detail=self.format_usage(),
            code=ErrorCode.MissingFlag
            if "required" in message
            else ErrorCode.ConfigurationError,
        )


def value_range(text: str) -> ValueRange:
    """``MIN:MAX``, a single value collapses the range"""
    parts = text.split(":")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX, got {text!r}")
    try:
        values = [float(part) for part in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected numbers, got {text!r}"
        ) from None
    low, high = values[0], values[-1]
    return (low, high)


def volume_dims(text: str) -> Tuple[int, int, int]:
    parts = text.split(",")
    try:
        dims = tuple(int(part) for part in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected X,Y,Z, got {text!r}"
        ) from None
    if len(dims) != 3:
        raise argparse.ArgumentTypeError(f"expected X,Y,Z, got {text!r}")
    return dims  # type: ignore


def format_range(low: float, high: float) -> str:
    return f"{round(low, 4)}:{round(high, 4)}"


def create_parser() -> SsptArgumentParser:
    settings = SsptSettings()
    parameters = [str(name) for name in ParameterName]

    parser = SsptArgumentParser(
        prog="sspt",
        description="Streamline-specific parameter tractography",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--debug", action="store_true", help="Enable debug messages"
    )

    subparsers = parser.add_subparsers(
        dest="command", required=True, help="Available commands"
    )

    # track command
    parser_track = subparsers.add_parser(
        "track", help="Track streamlines with sampled parameters"
    )
    parser_track.add_argument("--fod", required=True, help="FOD image")
    parser_track.add_argument("--seed", required=True, help="Seed mask")
    parser_track.add_argument(
        "--include",
        dest="include_and",
        action="append",
        default=[],
        help="Inclusion mask every streamline must visit",
    )
    parser_track.add_argument(
        "--include-or",
        dest="include_or",
        action="append",
        default=[],
        help="Inclusion mask at least one of which must be visited",
    )
    parser_track.add_argument(
        "--exclude",
        action="append",
        default=[],
        help="Exclusion mask",
    )
    parser_track.add_argument(
        "--mask", default=None, help="Tracking mask streamlines stay in"
    )
    parser_track.add_argument(
        "--step", type=value_range, required=True, help="Step size MIN:MAX"
    )
    parser_track.add_argument(
        "--radius",
        type=value_range,
        required=True,
        help="Radius of curvature MIN:MAX",
    )
    threshold_group = parser_track.add_mutually_exclusive_group()
    threshold_group.add_argument(
        "--fod-threshold",
        dest="fod_threshold",
        type=float,
        default=None,
        help="Fixed FOD amplitude threshold",
    )
    threshold_group.add_argument(
        "--fod-threshold-range",
        dest="fod_threshold_range",
        type=value_range,
        default=None,
        help="Sampled FOD amplitude threshold MIN:MAX",
    )
    parser_track.add_argument(
        "--min-length", type=float, default=0.0, help="Minimum length, mm"
    )
    parser_track.add_argument(
        "--max-length", type=float, default=250.0, help="Maximum length, mm"
    )
    parser_track.add_argument(
        "--truncate-at-max-length",
        action="store_true",
        help="Keep streamlines reaching the maximum length",
    )
    parser_track.add_argument(
        "--target", type=int, required=True, help="Streamlines to accept"
    )
    parser_track.add_argument(
        "--max-seeds", type=int, default=None, help="Seed attempt limit"
    )
    parser_track.add_argument(
        "--rng-seed", type=int, required=True, help="Global random seed"
    )
    parser_track.add_argument(
        "--threads",
        type=int,
        default=settings.default_threads,
        help="Worker threads",
    )
    parser_track.add_argument(
        "--out", required=True, help="Output track file (.tck)"
    )
    parser_track.add_argument(
        "--records", required=True, help="Output tracking records (.jsonl)"
    )
    parser_track.add_argument(
        "--summary-json", default=None, help="Write the summary as JSON"
    )

    # analyze command
    parser_analyze = subparsers.add_parser(
        "analyze", help="Acceptance histograms of a sampled parameter"
    )
    parser_analyze.add_argument("--records", required=True)
    parser_analyze.add_argument("--param", required=True, choices=parameters)
    parser_analyze.add_argument(
        "--param2",
        default=None,
        choices=parameters,
        help="Second parameter of a joint histogram",
    )
    parser_analyze.add_argument(
        "--bins", type=int, default=settings.histogram_bins
    )
    parser_analyze.add_argument(
        "--range",
        dest="value_range",
        type=value_range,
        default=None,
        help="Histogram range MIN:MAX, the tracked ranges by default",
    )
    parser_analyze.add_argument(
        "--clusters", default=None, help="Cluster assignment table"
    )
    parser_analyze.add_argument(
        "--out", required=True, help="Output histogram (.csv)"
    )

    # cluster command
    parser_cluster = subparsers.add_parser(
        "cluster", help="Cluster accepted streamlines"
    )
    parser_cluster.add_argument("--tracks", required=True)
    parser_cluster.add_argument(
        "--threshold", type=float, required=True, help="MDF threshold, mm"
    )
    parser_cluster.add_argument(
        "--points", type=int, default=settings.resample_points
    )
    parser_cluster.add_argument(
        "--out", required=True, help="Output assignment table (.csv)"
    )

    # refine command
    parser_refine = subparsers.add_parser(
        "refine", help="Suggest a narrower sampling range"
    )
    parser_refine.add_argument("--records", required=True)
    parser_refine.add_argument("--param", required=True, choices=parameters)
    parser_refine.add_argument("--keep", type=float, default=0.95)
    parser_refine.add_argument(
        "--bins", type=int, default=settings.histogram_bins
    )
    parser_refine.add_argument(
        "--range", dest="value_range", type=value_range, default=None
    )
    parser_refine.add_argument(
        "--out", required=True, help="Output suggestion (.csv)"
    )

    # phantom command
    parser_phantom = subparsers.add_parser(
        "phantom", help="Generate a synthetic phantom"
    )
    parser_phantom.add_argument(
        "--kind",
        required=True,
        choices=[str(kind) for kind in PhantomKind],
    )
    parser_phantom.add_argument("--arc-radius", type=float, default=None)
    parser_phantom.add_argument("--bundle-radius", type=float, default=None)
    parser_phantom.add_argument("--dims", type=volume_dims, default=None)
    parser_phantom.add_argument("--voxel", type=float, default=None)
    parser_phantom.add_argument("--kappa", type=float, default=None)
    parser_phantom.add_argument("--peak", type=float, default=None)
    parser_phantom.add_argument("--lmax", type=int, default=None)
    parser_phantom.add_argument("--seed-radius", type=float, default=None)
    parser_phantom.add_argument("--out-dir", required=True)

    return parser
