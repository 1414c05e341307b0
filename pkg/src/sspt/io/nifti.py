from pathlib import Path
from typing import Union

import nibabel as nib
import numpy as np
from nibabel.filebasedimages import ImageFileError
from nibabel.spatialimages import HeaderDataError
from nibabel.wrapstruct import WrapStructError

from sspt.exceptions import (
    ErrorCode,
    FormatError,
    SsptError,
    SsptIoError,
)
from sspt.fod.fod_image import FodImage
from sspt.logging import logger
from sspt.roi.binary_mask import BinaryMask
from sspt.types import Affine

PathLike = Union[str, Path]

SUPPORTED_DATATYPES = {
    2: "uint8",
    4: "int16",
    16: "float32",
    64: "float64",
}
ALIGNED_SFORM_CODE = 2

_NIBABEL_ERRORS = (
    ImageFileError,
    HeaderDataError,
    WrapStructError,
    ValueError,
    EOFError,
)


def read_nifti(path: PathLike) -> Union[FodImage, BinaryMask]:
    """Reads a single-file NIfTI-1 volume

    4-D volumes become FOD images, 3-D volumes binary masks.
    """
    path = Path(path)
    if not path.is_file():
        raise SsptIoError(
            f"Volume {path} does not exist", detail=f"Path: {path}"
        )

    try:
        image = nib.load(str(path))
        if not isinstance(image, nib.Nifti1Image):
            raise _format_error(path, "magic", "not a single-file NIfTI-1")
        header = image.header
        _check_header(path, header)
        affine = _select_affine(header)
        data = np.asarray(image.get_fdata(dtype=np.float64))
    except SsptError:
        raise
    except (FileNotFoundError, PermissionError) as error:
        raise SsptIoError.from_os_error(error) from error
    except (*_NIBABEL_ERRORS, OSError) as error:
        raise _format_error(path, "data", str(error)) from error

    logger.debug(f"Read volume {path} with shape {data.shape}")
    if data.ndim == 4:
        return FodImage(data, affine)
    return BinaryMask(data, affine)


def read_fod(path: PathLike) -> FodImage:
    volume = read_nifti(path)
    if not isinstance(volume, FodImage):
        raise _format_error(Path(path), "dim[0]", "expected a 4-D volume")
    return volume


def read_mask(path: PathLike) -> BinaryMask:
    volume = read_nifti(path)
    if not isinstance(volume, BinaryMask):
        raise _format_error(Path(path), "dim[0]", "expected a 3-D volume")
    return volume


def write_nifti(path: PathLike, volume: Union[FodImage, BinaryMask]) -> None:
    """Writes float32 FOD images and uint8 masks with an aligned sform"""
    path = Path(path)
    if isinstance(volume, FodImage):
        data = volume.coefficients.astype(np.float32)
    else:
        data = volume.voxels.astype(np.uint8)

    image = nib.Nifti1Image(data, volume.affine)
    image.header.set_data_dtype(data.dtype)
    image.set_sform(volume.affine, code=ALIGNED_SFORM_CODE)
    image.set_qform(volume.affine, code=ALIGNED_SFORM_CODE)

    try:
        nib.save(image, str(path))
    except OSError as error:
        raise SsptIoError.from_os_error(
            error, log_message=f"Could not write {path}"
        ) from error
    logger.debug(f"Wrote volume {path}")


def _check_header(path: Path, header: nib.Nifti1Header) -> None:
    magic = bytes(header["magic"]).rstrip(b"\x00")
    if magic != b"n+1":
        raise _format_error(path, "magic", f"got {magic!r}")

    datatype = int(header["datatype"])
    if datatype not in SUPPORTED_DATATYPES:
        raise _format_error(path, "datatype", f"unsupported code {datatype}")

    ndim = int(header["dim"][0])
    if ndim not in (3, 4):
        raise _format_error(path, "dim[0]", f"expected 3 or 4, got {ndim}")


def _select_affine(header: nib.Nifti1Header) -> Affine:
    sform, sform_code = header.get_sform(coded=True)
    if sform_code is not None and int(sform_code) > 0:
        return np.asarray(sform, dtype=np.float64)

    qform, qform_code = header.get_qform(coded=True)
    if qform_code is not None and int(qform_code) > 0:
        return np.asarray(qform, dtype=np.float64)

    zooms = np.asarray(header["pixdim"][1:4], dtype=np.float64)
    zooms = np.where(zooms > 0, zooms, 1.0)
    return np.diag(np.concatenate((zooms, [1.0])))


def _format_error(path: Path, field: str, message: str) -> FormatError:
    error = FormatError(
        f"Invalid NIfTI-1 file {path}",
        detail=f"{field}: {message}",
        code=ErrorCode.NiftiFormatError,
    )
    error.add_note(f"Field: {field}")
    return error
