"""Graph accumulation sets: decide, synthesize, certify, verify.

Given a closed subset T of [0,1] x R represented as a finite union of
primitive pieces, this package decides which synthesis regime T satisfies
(bounded/unbounded, strip-certifiable or not), builds a function whose
graph accumulates exactly on T, wraps the graph in nested open-strip
certificates, and verifies the accumulation set numerically.
"""

from .conditions import (
    CheckResult,
    MultiplicityData,
    Regime,
    Verdict,
    check_regime,
    empty_slice_set,
    extended_multiplicity_set,
    is_countable,
    is_meager,
    multiplicity_sets,
)
from .demos import DEMO_NAMES, UnknownDemoError, demo_set, sect6_c_order
from .fileio import ParseError, parse_target_file, parse_target_text, serialize_target
from .geometry import (
    Box,
    EmptySliceError,
    ExtendedSlice,
    Hyper,
    Piece,
    PLine,
    Point,
    TargetSet,
)
from .intervals import SliceSet, Span, XSet, rat
from .strips import (
    EpsilonSchedule,
    ScheduleInfeasibleError,
    StripFamily,
    StripReport,
    build_strip,
    build_strip_family,
    epsilon_schedule,
    verify_strips,
)
from .synthesis import (
    CountableApprox,
    LevelSets,
    NetPlacementError,
    RegimeUnsatisfiedError,
    SynthFunction,
    evaluate,
    f0_bounded,
    f0_unbounded,
    f_on_c,
    lemma31_net,
    level_index,
    synthesize,
    u_sets,
)
from .verification import (
    AccumulationEstimate,
    ClosureDirectionReport,
    FarPointResult,
    accumulation_estimate,
    closure_direction_check,
    hausdorff_to_target,
    remark31_check,
    sample_graph,
)

__version__ = "0.1.0"

__all__ = [
    "AccumulationEstimate",
    "Box",
    "CheckResult",
    "ClosureDirectionReport",
    "CountableApprox",
    "DEMO_NAMES",
    "EmptySliceError",
    "EpsilonSchedule",
    "ExtendedSlice",
    "FarPointResult",
    "Hyper",
    "LevelSets",
    "MultiplicityData",
    "NetPlacementError",
    "ParseError",
    "PLine",
    "Piece",
    "Point",
    "Regime",
    "RegimeUnsatisfiedError",
    "ScheduleInfeasibleError",
    "SliceSet",
    "Span",
    "StripFamily",
    "StripReport",
    "SynthFunction",
    "TargetSet",
    "UnknownDemoError",
    "Verdict",
    "XSet",
    "accumulation_estimate",
    "build_strip",
    "build_strip_family",
    "check_regime",
    "closure_direction_check",
    "demo_set",
    "empty_slice_set",
    "epsilon_schedule",
    "evaluate",
    "extended_multiplicity_set",
    "f0_bounded",
    "f0_unbounded",
    "f_on_c",
    "hausdorff_to_target",
    "is_countable",
    "is_meager",
    "lemma31_net",
    "level_index",
    "multiplicity_sets",
    "parse_target_file",
    "parse_target_text",
    "rat",
    "remark31_check",
    "sample_graph",
    "sect6_c_order",
    "serialize_target",
    "synthesize",
    "u_sets",
    "verify_strips",
]
