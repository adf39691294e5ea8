"""Manoeuvrability estimation from turning circles and depth contours.

The chain: a turning-circle radius gives a rate of swing (heading change per
meter travelled); a scaled-down rate projects worst-case escape arcs to port
and starboard from points along the target's predicted track; an elliptical
ship domain swept along those arcs is tested against the boundary of the
water deep enough for the target's draught. If the domain cannot stay clear,
the target is deemed restricted in its ability to manoeuvre.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

from .chart import FeasibleRegion
from .geo import Ellipse, Heading, NedPoint, Pose, ellipse_intersects_region_boundary, rotate_body_to_ned
from .kinematics import VesselState, predict

# below this rate (deg/m) the arc is numerically a straight line
STRAIGHT_RATE_EPS_DEG_PER_M = 1e-9


@dataclass(frozen=True)
class TurningCircleRecord:
    """One observed turning test: vessel particulars and the resulting radius."""

    vessel_type: str
    length_m: float
    breadth_m: float
    rudder: str
    max_rudder_deg: float
    turn_radius_m: float

    def __post_init__(self) -> None:
        if min(self.length_m, self.breadth_m, self.turn_radius_m) <= 0.0:
            raise ValueError("length, breadth and turn_radius must be positive")
        if not 0.0 < self.max_rudder_deg <= 180.0:
            raise ValueError(f"max_rudder_deg {self.max_rudder_deg} outside (0, 180]")


# Turning-circle observations for assorted vessel classes (AIS-derived;
# azipod/becker entries steer harder than a conventional rudder allows).
TURNING_CIRCLES: tuple[TurningCircleRecord, ...] = (
    TurningCircleRecord("fishing", 33.0, 8.0, "normal", 35.0, 74.1),
    TurningCircleRecord("bulk carrier", 192.3, 20.4, "normal", 35.0, 694.5),
    TurningCircleRecord("bulk carrier", 199.7, 31.8, "normal", 44.0, 601.9),
    TurningCircleRecord("bulk carrier", 363.6, 65.0, "normal", 35.0, 740.8),
    TurningCircleRecord("unknown", 265.6, 44.0, "becker", 65.0, 342.6),
    TurningCircleRecord("supply", 110.0, 24.0, "normal", 35.0, 250.0),
    TurningCircleRecord("coastguard", 55.3, 9.7, "normal", 35.0, 175.9),
    TurningCircleRecord("container", 294.4, 32.4, "normal", 37.0, 463.0),
    TurningCircleRecord("container", 165.0, 27.5, "normal", 35.0, 324.1),
    TurningCircleRecord("cruiseship", 338.3, 56.0, "azipod", 180.0, 500.0),
    TurningCircleRecord("cruiseship", 260.4, 37.4, "normal", 42.0, 416.7),
    TurningCircleRecord("vehicle carrier", 201.1, 34.1, "normal", 35.0, 324.1),
    TurningCircleRecord("tanker", 145.8, 24.0, "becker", 60.0, 231.5),
    TurningCircleRecord("tanker", 277.0, 42.7, "normal", 45.0, 435.2),
)

_CSV_COLUMNS = ["type", "length_m", "breadth_m", "rudder", "max_rudder_deg", "turn_radius_m"]


def load_turning_circles_csv(path: str | Path) -> tuple[TurningCircleRecord, ...]:
    """Read turning-circle records from CSV with the documented column set."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != _CSV_COLUMNS:
            raise ValueError(
                f"turning-circle CSV must have columns {_CSV_COLUMNS}, "
                f"got {reader.fieldnames}"
            )
        records = []
        for row in reader:
            records.append(
                TurningCircleRecord(
                    vessel_type=row["type"],
                    length_m=float(row["length_m"]),
                    breadth_m=float(row["breadth_m"]),
                    rudder=row["rudder"],
                    max_rudder_deg=float(row["max_rudder_deg"]),
                    turn_radius_m=float(row["turn_radius_m"]),
                )
            )
    if not records:
        raise ValueError("turning-circle CSV has no data rows")
    return tuple(records)


@dataclass(frozen=True)
class SwingRate:
    """Heading change per meter travelled, degrees/meter."""

    deg_per_m: float

    def __post_init__(self) -> None:
        value = float(self.deg_per_m)
        if not math.isfinite(value) or value < 0.0:
            raise ValueError(f"swing rate must be finite and >= 0, got {self.deg_per_m!r}")
        object.__setattr__(self, "deg_per_m", value)

    @property
    def rad_per_m(self) -> float:
        return math.radians(self.deg_per_m)

    @property
    def turn_radius_m(self) -> float:
        """Radius of the circle this rate traces; infinite for a zero rate."""
        if self.deg_per_m < STRAIGHT_RATE_EPS_DEG_PER_M:
            return math.inf
        return 1.0 / self.rad_per_m


def swing_rate(turn_radius_m: float) -> SwingRate:
    """Rate of swing for a circle of the given radius: 360 / (2 pi r) deg/m."""
    if turn_radius_m <= 0.0:
        raise ValueError(f"turn radius must be positive, got {turn_radius_m}")
    return SwingRate(360.0 / (2.0 * math.pi * turn_radius_m))


def scaled_swing_rate(rate: SwingRate, alpha: float) -> SwingRate:
    """Derate a hard-over swing rate by alpha in [0, 1].

    A vessel rarely uses full rudder; alpha models the fraction of the
    hard-over rate credible in ordinary maneuvering.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be within [0, 1], got {alpha}")
    return SwingRate(rate.deg_per_m * alpha)


def estimate_swing_rate(
    length_m: float, table: Sequence[TurningCircleRecord] = TURNING_CIRCLES
) -> SwingRate:
    """Swing rate of the table vessel nearest in length.

    Ties pick the smaller rate (the larger turning circle): when in doubt,
    assume the target is the less agile candidate.
    """
    if not table:
        raise ValueError("turning-circle table is empty")
    if length_m <= 0.0:
        raise ValueError(f"length must be positive, got {length_m}")
    best = min(
        table,
        key=lambda rec: (abs(rec.length_m - length_m), -rec.turn_radius_m),
    )
    return swing_rate(best.turn_radius_m)


class TurnDirection(Enum):
    CW = "cw"    # starboard turn, heading increases
    CCW = "ccw"  # port turn, heading decreases


def project_arc(
    start: Pose, rate: SwingRate, arc_length_m: float, direction: TurnDirection
) -> Pose:
    """Pose after travelling `arc_length_m` along a constant-rate turn.

    The heading changes by arc_length * rate, signed by direction (CW
    positive). The body-frame offset for a clockwise turn of angle psi at
    radius r = 1/rate is (r sin psi, r (1 - cos psi)); counter-clockwise
    mirrors the starboard component. Rates below the straight-line threshold
    fall back to travelling straight ahead.
    """
    if arc_length_m < 0.0:
        raise ValueError(f"arc length must be >= 0, got {arc_length_m}")
    sign = 1.0 if direction is TurnDirection.CW else -1.0
    if rate.deg_per_m < STRAIGHT_RATE_EPS_DEG_PER_M:
        body = NedPoint(arc_length_m, 0.0)
        dpsi_deg = sign * arc_length_m * rate.deg_per_m
    else:
        k = rate.rad_per_m
        r = 1.0 / k
        psi = arc_length_m * k
        body = NedPoint(r * math.sin(psi), sign * r * (1.0 - math.cos(psi)))
        dpsi_deg = sign * math.degrees(psi)
    shift = rotate_body_to_ned(body, start.heading)
    return Pose(
        position=start.position.offset(shift.north, shift.east),
        heading=start.heading.plus(dpsi_deg),
    )


def escape_arc_poses(
    start: Pose,
    rate: SwingRate,
    horizon_arc_m: float,
    step_m: float,
    direction: TurnDirection,
) -> list[Pose]:
    """Poses at arc lengths step, 2*step, ... up to the arc horizon.

    Always floor(horizon/step) poses; headings are the arc tangents.
    """
    if step_m <= 0.0:
        raise ValueError(f"step must be positive, got {step_m}")
    if horizon_arc_m < step_m:
        raise ValueError(
            f"horizon_arc_m {horizon_arc_m} shorter than one step {step_m}"
        )
    count = int(math.floor(horizon_arc_m / step_m + 1e-12))
    return [project_arc(start, rate, i * step_m, direction) for i in range(1, count + 1)]


@dataclass(frozen=True)
class ShipDomainSpec:
    """Comfort-zone ellipse sizing: semi-axes as multiples of ship dimensions."""

    length_multiplier: float = 2.0
    breadth_multiplier: float = 3.0

    def __post_init__(self) -> None:
        if self.length_multiplier <= 0.0 or self.breadth_multiplier <= 0.0:
            raise ValueError("domain multipliers must be positive")

    def ellipse_at(self, pose: Pose, length_m: float, breadth_m: float) -> Ellipse:
        """Domain ellipse centered on the pose, major axis along its heading."""
        return Ellipse(
            center=pose.position,
            semi_major_m=self.length_multiplier * length_m,
            semi_minor_m=self.breadth_multiplier * breadth_m,
            orientation=pose.heading,
        )


class RestrictionPolicy(Enum):
    """How per-decision-time blockage aggregates into the restricted verdict.

    BOTH_BLOCKED_EVERYWHERE: restricted only if, at every decision time that
    still leaves room to turn, neither a port nor a starboard escape stays
    clear. ANY_ELLIPSE: a single touching domain anywhere already restricts.
    """

    BOTH_BLOCKED_EVERYWHERE = "both_blocked_everywhere"
    ANY_ELLIPSE = "any_ellipse"


@dataclass(frozen=True)
class ArcSample:
    """One swept domain placement along an escape arc."""

    arc_length_m: float
    pose: Pose
    ellipse: Ellipse
    blocked: bool


@dataclass(frozen=True)
class EscapeProbe:
    """CW and CCW escape arcs launched from one decision time on the track."""

    t_s: float
    start: Pose
    cw: tuple[ArcSample, ...]
    ccw: tuple[ArcSample, ...]

    @property
    def cw_blocked(self) -> bool:
        return any(s.blocked for s in self.cw)

    @property
    def ccw_blocked(self) -> bool:
        return any(s.blocked for s in self.ccw)

    def first_violation_m(self, direction: TurnDirection) -> float | None:
        samples = self.cw if direction is TurnDirection.CW else self.ccw
        for sample in samples:
            if sample.blocked:
                return sample.arc_length_m
        return None


@dataclass(frozen=True)
class ManeuverAssessment:
    """Escape-probe sweep plus the aggregate restricted verdict."""

    policy: RestrictionPolicy
    probes: tuple[EscapeProbe, ...]
    restricted: bool
    degenerate: bool = False


def assess_maneuverability(
    target: VesselState,
    length_m: float,
    breadth_m: float,
    rate: SwingRate,
    domain: ShipDomainSpec,
    feasible: FeasibleRegion,
    horizon_s: float,
    decision_step_s: float,
    arc_step_m: float,
    policy: RestrictionPolicy = RestrictionPolicy.BOTH_BLOCKED_EVERYWHERE,
) -> ManeuverAssessment:
    """Sweep domain ellipses along escape arcs and aggregate per `policy`.

    Decision times run t = 0, decision_step, ... up to the horizon along the
    straight-line predicted track. From each, arcs to port and starboard span
    the distance still coverable before the horizon (sog * (horizon - t)),
    sampled every `arc_step_m`. Decision times too close to the horizon to fit
    one arc step contribute no samples and do not participate in the verdict.
    An empty feasible region means there is no water at all for this draught:
    restricted, flagged degenerate.
    """
    if target.sog_mps <= 0.0:
        raise ValueError("maneuverability assessment needs a moving target")
    if horizon_s <= 0.0 or decision_step_s <= 0.0 or arc_step_m <= 0.0:
        raise ValueError("horizon, decision step and arc step must be positive")
    if feasible.is_empty:
        return ManeuverAssessment(
            policy=policy, probes=(), restricted=True, degenerate=True
        )

    boundary = feasible.outline
    probes: list[EscapeProbe] = []
    steps = int(math.floor(horizon_s / decision_step_s + 1e-12))
    for i in range(steps + 1):
        t = i * decision_step_s
        arc_horizon = target.sog_mps * (horizon_s - t)
        if arc_horizon < arc_step_m:
            continue
        start = Pose(position=predict(target, t).position, heading=target.cog)
        sides: dict[TurnDirection, tuple[ArcSample, ...]] = {}
        for direction in TurnDirection:
            samples = []
            for j, pose in enumerate(
                escape_arc_poses(start, rate, arc_horizon, arc_step_m, direction)
            ):
                ellipse = domain.ellipse_at(pose, length_m, breadth_m)
                blocked = ellipse_intersects_region_boundary(ellipse, boundary)
                samples.append(ArcSample((j + 1) * arc_step_m, pose, ellipse, blocked))
            sides[direction] = tuple(samples)
        probes.append(
            EscapeProbe(
                t_s=t,
                start=start,
                cw=sides[TurnDirection.CW],
                ccw=sides[TurnDirection.CCW],
            )
        )

    if policy is RestrictionPolicy.BOTH_BLOCKED_EVERYWHERE:
        restricted = bool(probes) and all(
            p.cw_blocked and p.ccw_blocked for p in probes
        )
    else:
        restricted = any(p.cw_blocked or p.ccw_blocked for p in probes)
    return ManeuverAssessment(
        policy=policy, probes=tuple(probes), restricted=restricted
    )
