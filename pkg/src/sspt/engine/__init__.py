from sspt.engine.parameters import (
    FixedParams,
    ParameterName,
    ParameterRanges,
    ParameterSample,
    sample_parameters,
)
from sspt.engine.records import (
    HalfTermination,
    RunResult,
    TrackingFlag,
    TrackingOutcome,
    TrackingRecord,
)
from sspt.engine.runner import TrackingConfig, run
from sspt.engine.tracker import (
    BacktrackBudget,
    HalfTrack,
    Tracker,
    acceptance_flags,
    choose_direction,
)
