from sspt.analysis.clustering import (
    Cluster,
    mdf_components,
    mdf_distance,
    quickbundles,
    resample,
)
from sspt.analysis.histogram import (
    JointHistogram,
    ParamHistogram,
    RangeSuggestion,
    RunSummary,
    assign_records,
    histogram,
    joint_histogram,
    parameter_values,
    per_cluster_histograms,
    sampling_range,
    suggest_ranges,
    summarize,
)
