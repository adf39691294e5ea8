"""Narrow-channel duty assessment for sea encounters.

The toolkit estimates whether the other vessel in an encounter could
realistically manoeuvre out of the way given the surrounding depth contours,
and if not, inverts the ordinary give-way/stand-on duties the way rule 9
demands. A small simulator, scenario files, and a CLI wrap the library.
"""

from .automaton import AssessmentEvent, Dfa, UndefinedTransitionError, build_g_d, is_nonblocking, run, step
from .chart import (
    ChartError,
    DepthContour,
    FeasibleRegion,
    SeaChart,
    feasible_region,
    load_chart,
    parse_chart,
    save_chart,
    synth_channel_chart,
)
from .geo import Ellipse, GeodeticPoint, Heading, NedPoint, Polygon, Pose
from .kinematics import KNOT_MPS, CpaResult, VesselState, collision_risk, cpa, predict
from .maneuver import (
    ManeuverAssessment,
    RestrictionPolicy,
    ShipDomainSpec,
    SwingRate,
    TurnDirection,
    TurningCircleRecord,
    TURNING_CIRCLES,
    assess_maneuverability,
    escape_arc_poses,
    estimate_swing_rate,
    project_arc,
    scaled_swing_rate,
    swing_rate,
)
from .sim import ConfigError, ScenarioConfig, SimulationTrace, bundled_scenario, load_scenario, run_scenario, write_trace
from .situation import (
    AssessmentConfig,
    Duty,
    Encounter,
    EncounterKind,
    NoEncounterError,
    SituationAssessment,
    TargetAttributes,
    assess,
    classify_encounter,
    initial_duty,
)

__version__ = "0.1.0"

__all__ = [
    "AssessmentConfig",
    "AssessmentEvent",
    "ChartError",
    "ConfigError",
    "CpaResult",
    "Dfa",
    "DepthContour",
    "Duty",
    "Ellipse",
    "Encounter",
    "EncounterKind",
    "FeasibleRegion",
    "GeodeticPoint",
    "Heading",
    "KNOT_MPS",
    "ManeuverAssessment",
    "NedPoint",
    "NoEncounterError",
    "Polygon",
    "Pose",
    "RestrictionPolicy",
    "ScenarioConfig",
    "SeaChart",
    "ShipDomainSpec",
    "SimulationTrace",
    "SituationAssessment",
    "SwingRate",
    "TargetAttributes",
    "TurnDirection",
    "TurningCircleRecord",
    "TURNING_CIRCLES",
    "UndefinedTransitionError",
    "VesselState",
    "assess",
    "assess_maneuverability",
    "build_g_d",
    "bundled_scenario",
    "classify_encounter",
    "collision_risk",
    "cpa",
    "escape_arc_poses",
    "estimate_swing_rate",
    "feasible_region",
    "initial_duty",
    "is_nonblocking",
    "load_chart",
    "load_scenario",
    "parse_chart",
    "predict",
    "project_arc",
    "run",
    "run_scenario",
    "save_chart",
    "scaled_swing_rate",
    "step",
    "swing_rate",
    "synth_channel_chart",
    "write_trace",
]
