"""Encounter classification, duty derivation, and the rule 9 verdict chain.

Given a risk-triggering encounter, this module answers: who gives way under
the ordinary crossing/overtaking/head-on rules, and should that be inverted
because the other vessel cannot actually leave the deep water it is in? The
inversion decision is driven through the assessment automaton so that every
verdict carries a checkable trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .automaton import AssessmentEvent, build_g_d, run
from .chart import DEFAULT_UKC_FRACTION, SeaChart, feasible_region
from .geo import angle_diff_deg
from .kinematics import VesselState, collision_risk
from .maneuver import (
    ManeuverAssessment,
    RestrictionPolicy,
    ShipDomainSpec,
    SwingRate,
    TurnDirection,
    assess_maneuverability,
    estimate_swing_rate,
    scaled_swing_rate,
)

# broadcast navigational statuses that count as reporting restriction
NAV_STATUS_RESTRICTED = "restricted manoeuvrability"
NAV_STATUS_DRAUGHT_CONSTRAINED = "constrained by draught"

_STATIONARY_EPS_MPS = 1e-9


class Duty(Enum):
    GIVE_WAY = "give_way"
    STAND_ON = "stand_on"


def opposite(duty: Duty) -> Duty:
    return Duty.STAND_ON if duty is Duty.GIVE_WAY else Duty.GIVE_WAY


class EncounterKind(Enum):
    HEAD_ON = "head_on"
    CROSSING_PORT = "crossing_port"
    CROSSING_STARBOARD = "crossing_starboard"
    OVERTAKING_OWN = "overtaking_own"
    OVERTAKEN_BY_TARGET = "overtaken_by_target"


class NoEncounterError(ValueError):
    """Neither vessel is moving; there is nothing to classify."""


@dataclass(frozen=True)
class Encounter:
    kind: EncounterKind
    relative_bearing_deg: float


@dataclass(frozen=True)
class TargetAttributes:
    """Everything known about the other vessel at assessment time."""

    state: VesselState
    length_m: float
    breadth_m: float
    draught_m: float
    nav_status: str | None = None
    vessel_type: str = "vessel"
    sub_type: str | None = None
    has_transponder: bool = True

    def __post_init__(self) -> None:
        if min(self.length_m, self.breadth_m, self.draught_m) <= 0.0:
            raise ValueError("target dimensions must be positive")
        if self.nav_status is not None and not self.has_transponder:
            raise ValueError("nav_status requires a transponder")


def classify_encounter(own: VesselState, target: VesselState) -> Encounter:
    """Bearing-sector encounter classification.

    Relative bearing beta of the target from own heading decides the kind:
    head-on within +-6 degrees with near-reciprocal courses; overtaken when
    the target closes from more than 112.5 degrees abaft own beam; overtaking
    when own closes from that sector of the target; otherwise crossing, port
    or starboard by which side the target bears.
    """
    if own.sog_mps < _STATIONARY_EPS_MPS and target.sog_mps < _STATIONARY_EPS_MPS:
        raise NoEncounterError("both vessels stationary")
    dn = target.position.north - own.position.north
    de = target.position.east - own.position.east
    bearing = math.degrees(math.atan2(de, dn)) % 360.0
    beta = (bearing - own.cog.degrees) % 360.0

    near_ahead = beta <= 6.0 or beta >= 354.0
    reciprocal = abs(angle_diff_deg(target.cog.degrees, own.cog.degrees + 180.0)) <= 12.0
    if near_ahead and reciprocal:
        return Encounter(EncounterKind.HEAD_ON, beta)

    von, voe = own.velocity
    vtn, vte = target.velocity
    closing = dn * (vtn - von) + de * (vte - voe) < 0.0

    if 112.5 < beta < 247.5 and closing:
        return Encounter(EncounterKind.OVERTAKEN_BY_TARGET, beta)

    bearing_back = math.degrees(math.atan2(-de, -dn)) % 360.0
    beta_from_target = (bearing_back - target.cog.degrees) % 360.0
    if 112.5 < beta_from_target < 247.5 and closing:
        return Encounter(EncounterKind.OVERTAKING_OWN, beta)

    if 6.0 < beta <= 180.0:
        return Encounter(EncounterKind.CROSSING_STARBOARD, beta)
    if 180.0 < beta < 354.0:
        return Encounter(EncounterKind.CROSSING_PORT, beta)
    # near-ahead but not reciprocal: treat as a fine crossing by side
    return Encounter(
        EncounterKind.CROSSING_STARBOARD if beta <= 6.0 else EncounterKind.CROSSING_PORT,
        beta,
    )


_OWN_DUTY = {
    EncounterKind.HEAD_ON: Duty.GIVE_WAY,
    EncounterKind.CROSSING_PORT: Duty.STAND_ON,
    EncounterKind.CROSSING_STARBOARD: Duty.GIVE_WAY,
    EncounterKind.OVERTAKEN_BY_TARGET: Duty.STAND_ON,
    EncounterKind.OVERTAKING_OWN: Duty.GIVE_WAY,
}

# kinds in which the target carries a give-way obligation (head-on: both do)
_TARGET_GIVES_WAY = {
    EncounterKind.HEAD_ON,
    EncounterKind.CROSSING_PORT,
    EncounterKind.OVERTAKEN_BY_TARGET,
}


def initial_duty(encounter: Encounter) -> Duty:
    """Ownship's duty before any rule 9 consideration."""
    return _OWN_DUTY[encounter.kind]


def target_must_give_way(encounter: Encounter) -> bool:
    return encounter.kind in _TARGET_GIVES_WAY


def event_d2(
    target: TargetAttributes, include_draught_constrained: bool = True
) -> AssessmentEvent:
    """Does the target itself report being restricted?

    Fires on the "restricted manoeuvrability" broadcast status and, unless
    disabled, on "constrained by draught" as well. No transponder or a benign
    status reads as not reporting.
    """
    reported = {NAV_STATUS_RESTRICTED}
    if include_draught_constrained:
        reported.add(NAV_STATUS_DRAUGHT_CONSTRAINED)
    if target.nav_status is not None and target.nav_status in reported:
        return AssessmentEvent.REPORTED_RESTRICTED
    return AssessmentEvent.NOT_REPORTED_RESTRICTED


@dataclass(frozen=True)
class AssessmentConfig:
    """Tunables for the assessment chain; defaults follow the simulator's."""

    cpa_req_m: float = 150.0
    tcpa_act_s: float = 180.0
    swing_rate_deg_per_m: float | None = None  # none: estimate from length
    alpha: float = 0.4
    domain: ShipDomainSpec = field(default_factory=ShipDomainSpec)
    policy: RestrictionPolicy = RestrictionPolicy.BOTH_BLOCKED_EVERYWHERE
    ukc_fraction: float = DEFAULT_UKC_FRACTION
    arc_step_m: float = 25.0
    decision_step_s: float = 45.0
    horizon_s: float | None = None  # none: the time until action is required
    d2_includes_draught_constrained: bool = True

    @property
    def effective_horizon_s(self) -> float:
        return self.tcpa_act_s if self.horizon_s is None else self.horizon_s


@dataclass(frozen=True)
class SituationAssessment:
    """One complete pass of the verdict chain for a single encounter."""

    encounter: Encounter
    initial_duty_own: Duty
    initial_duty_target: Duty
    rule9_applied: bool
    final_duty_own: Duty
    final_duty_target: Duty
    events: tuple[str, ...]
    automaton_trace: tuple[str, ...]
    maneuver: ManeuverAssessment | None
    timestamp_s: float

    def to_record(self) -> dict:
        """Plain-dict rendering for serialization and CLI output."""
        maneuver = None
        if self.maneuver is not None:
            maneuver = {
                "policy": self.maneuver.policy.value,
                "restricted": self.maneuver.restricted,
                "degenerate": self.maneuver.degenerate,
                "probes": [
                    {
                        "t_s": p.t_s,
                        "cw_blocked": p.cw_blocked,
                        "ccw_blocked": p.ccw_blocked,
                        "first_violation_cw_m": p.first_violation_m(TurnDirection.CW),
                        "first_violation_ccw_m": p.first_violation_m(TurnDirection.CCW),
                        "samples_per_side": len(p.cw),
                    }
                    for p in self.maneuver.probes
                ],
            }
        return {
            "timestamp_s": self.timestamp_s,
            "encounter": {
                "kind": self.encounter.kind.value,
                "relative_bearing_deg": self.encounter.relative_bearing_deg,
            },
            "initial_duty_own": self.initial_duty_own.value,
            "initial_duty_target": self.initial_duty_target.value,
            "rule9_applied": self.rule9_applied,
            "final_duty_own": self.final_duty_own.value,
            "final_duty_target": self.final_duty_target.value,
            "events": list(self.events),
            "automaton_trace": list(self.automaton_trace),
            "maneuver": maneuver,
        }


def assess(
    own: VesselState,
    target: TargetAttributes,
    chart: SeaChart,
    config: AssessmentConfig = AssessmentConfig(),
    force: bool = False,
) -> SituationAssessment:
    """Run the full chain: classify, generate events, drive the automaton.

    The caller normally gates on collision risk; `force` skips that gate for
    one-shot analyses. When the target holds no give-way duty the automaton
    self-loops in D1 and no restriction analysis runs. A reported restriction
    (d2) short-circuits the geometric estimate.
    """
    if not force and not collision_risk(
        own, target.state, config.cpa_req_m, config.tcpa_act_s
    ):
        raise ValueError(
            "no collision risk at the configured thresholds; pass force=True "
            "to assess anyway"
        )
    encounter = classify_encounter(own, target.state)
    duty_own = initial_duty(encounter)
    duty_target = Duty.GIVE_WAY if target_must_give_way(encounter) else Duty.STAND_ON

    events: list[AssessmentEvent] = []
    maneuver: ManeuverAssessment | None = None
    if target_must_give_way(encounter):
        events.append(AssessmentEvent.TARGET_GIVE_WAY)
        reported = event_d2(target, config.d2_includes_draught_constrained)
        events.append(reported)
        if reported is AssessmentEvent.NOT_REPORTED_RESTRICTED:
            feasible = feasible_region(chart, target.draught_m, config.ukc_fraction)
            if config.swing_rate_deg_per_m is None:
                base = estimate_swing_rate(target.length_m)
            else:
                base = SwingRate(config.swing_rate_deg_per_m)
            rate = scaled_swing_rate(base, config.alpha)
            maneuver = assess_maneuverability(
                target=target.state,
                length_m=target.length_m,
                breadth_m=target.breadth_m,
                rate=rate,
                domain=config.domain,
                feasible=feasible,
                horizon_s=config.effective_horizon_s,
                decision_step_s=config.decision_step_s,
                arc_step_m=config.arc_step_m,
                policy=config.policy,
            )
            events.append(
                AssessmentEvent.ESTIMATED_RESTRICTED
                if maneuver.restricted
                else AssessmentEvent.NOT_ESTIMATED_RESTRICTED
            )
    else:
        events.append(AssessmentEvent.TARGET_NOT_GIVE_WAY)

    result = run(build_g_d(), [e.value for e in events])
    rule9 = result.final_state == "D4"
    return SituationAssessment(
        encounter=encounter,
        initial_duty_own=duty_own,
        initial_duty_target=duty_target,
        rule9_applied=rule9,
        final_duty_own=opposite(duty_own) if rule9 else duty_own,
        final_duty_target=opposite(duty_target) if rule9 else duty_target,
        events=tuple(e.value for e in events),
        automaton_trace=result.trace,
        maneuver=maneuver,
        timestamp_s=own.timestamp_s,
    )
