from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

from sspt.exceptions import ConfigurationError, SsptIoError
from sspt.fod.fod_image import FodImage
from sspt.io.nifti import read_fod, read_mask, write_nifti
from sspt.logging import logger
from sspt.roi.binary_mask import BinaryMask
from sspt.roi.roi_set import RoiSet

PathLike = Union[str, Path]

PHANTOM_FILES = (
    "fod.nii.gz",
    "seed.nii.gz",
    "include_a.nii.gz",
    "include_b.nii.gz",
)


def load_roi_set(
    seed: PathLike,
    include_and: Sequence[PathLike] = (),
    include_or: Sequence[PathLike] = (),
    exclude: Sequence[PathLike] = (),
    mask: Optional[PathLike] = None,
) -> RoiSet:
    """Reads every mask up front"""
    seed_mask = read_mask(seed)
    if seed_mask.count == 0:
        raise ConfigurationError(
            f"Seed mask {seed} is empty", flag="--seed"
        )
    return RoiSet(
        seed=seed_mask,
        include_and=tuple(read_mask(path) for path in include_and),
        include_or=tuple(read_mask(path) for path in include_or),
        exclude=tuple(read_mask(path) for path in exclude),
        mask=None if mask is None else read_mask(mask),
    )


def load_tracking_inputs(
    fod: PathLike,
    seed: PathLike,
    include_and: Sequence[PathLike] = (),
    include_or: Sequence[PathLike] = (),
    exclude: Sequence[PathLike] = (),
    mask: Optional[PathLike] = None,
) -> Tuple[FodImage, RoiSet]:
    return read_fod(fod), load_roi_set(
        seed, include_and, include_or, exclude, mask
    )


def write_phantom(out_dir: PathLike, image: FodImage, rois: RoiSet) -> None:
    """Writes the FOD and its seed and two inclusion masks"""
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as error:
        raise SsptIoError.from_os_error(error) from error

    volumes: Tuple[Union[FodImage, BinaryMask], ...] = (
        image,
        rois.seed,
        *rois.include_and[:2],
    )
    for name, volume in zip(PHANTOM_FILES, volumes):
        write_nifti(out_dir / name, volume)
    logger.info(f"Phantom written to {out_dir}")
