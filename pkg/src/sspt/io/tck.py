from pathlib import Path
from typing import Sequence, Union

import numpy as np
from nibabel.streamlines import TckFile
from nibabel.streamlines import Tractogram as StreamlineTractogram
from nibabel.streamlines.tractogram_file import DataError, HeaderError

from sspt.exceptions import ErrorCode, FormatError, SsptIoError
from sspt.logging import logger
from sspt.types import Tractogram

PathLike = Union[str, Path]


def write_tck(path: PathLike, tractogram: Sequence[np.ndarray]) -> None:
    """Writes world-millimeter streamlines as little-endian float32"""
    path = Path(path)
    streamlines = [
        np.asarray(streamline, dtype=np.float32).reshape(-1, 3)
        for streamline in tractogram
    ]
    tck = TckFile(
        StreamlineTractogram(streamlines, affine_to_rasmm=np.eye(4))
    )
    try:
        tck.save(str(path))
    except OSError as error:
        raise SsptIoError.from_os_error(
            error, log_message=f"Could not write {path}"
        ) from error
    logger.debug(f"Wrote {len(streamlines)} streamlines to {path}")


def read_tck(path: PathLike) -> Tractogram:
    """Streamlines of a float32 track file, in world millimeters"""
    path = Path(path)
    try:
        tck = TckFile.load(str(path), lazy_load=False)
    except OSError as error:
        raise SsptIoError.from_os_error(error) from error
    # Truncated bodies surface as reshape errors
    except (HeaderError, DataError, ValueError) as error:
        raise FormatError(
            f"Invalid track file {path}",
            detail=str(error),
            code=ErrorCode.TckFormatError,
        ) from error

    tractogram: Tractogram = [
        np.array(streamline, dtype=np.float32)
        for streamline in tck.streamlines
    ]
    logger.debug(f"Read {len(tractogram)} streamlines from {path}")
    return tractogram
