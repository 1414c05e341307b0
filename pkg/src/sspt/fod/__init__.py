from sspt.fod.evaluator import AmplitudeTable, FodEvaluator, eval_fod
from sspt.fod.fod_image import (
    FodImage,
    VoxelGrid,
    interpolate_coeffs,
    lmax_from_ncoeffs,
)
