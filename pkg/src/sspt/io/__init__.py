from sspt.io.nifti import read_fod, read_mask, read_nifti, write_nifti
from sspt.io.records import (
    ranges_path,
    read_ranges,
    read_records,
    record_from_dict,
    record_to_dict,
    write_ranges,
    write_records,
)
from sspt.io.tables import (
    read_cluster_assignments,
    read_csv_rows,
    write_cluster_assignments,
    write_csv_rows,
    write_histogram,
    write_joint_histogram,
    write_suggestion,
)
from sspt.io.tck import read_tck, write_tck
from sspt.io.volumes import (
    PHANTOM_FILES,
    load_roi_set,
    load_tracking_inputs,
    write_phantom,
)
