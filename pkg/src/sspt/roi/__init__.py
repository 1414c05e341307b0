from sspt.roi.binary_mask import BinaryMask, contains, sample_seed
from sspt.roi.roi_set import (
    InclusionStatus,
    RoiSet,
    inclusion_status,
    is_satisfied,
    update_status,
)
