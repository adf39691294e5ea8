"""Time-stepped scenario engine.

Marches two vessels along their tracks, watches for collision risk, runs
the situational assessment exactly once at the first risky step, and emits
the whole run as files: a step table, a map overlay, and a summary record.
Everything is deterministic for a fixed configuration.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .chart import SeaChart, feasible_region, load_chart, synth_channel_chart
from .geo import Heading, NedPoint, ned_to_geodetic
from .kinematics import KNOT_MPS, VesselState, collision_risk, cpa, predict
from .maneuver import RestrictionPolicy, ShipDomainSpec, TurnDirection
from .situation import AssessmentConfig, SituationAssessment, TargetAttributes, assess

OUTCOME_RULE9 = "rule9_applied"
OUTCOME_NO_RULE9 = "not_applied"
OUTCOME_NO_RISK = "no_risk"

_ELLIPSE_VERTICES = 64


class ConfigError(ValueError):
    """A scenario file failed validation."""


@dataclass(frozen=True)
class OwnshipSpec:
    position: NedPoint
    cog: Heading
    speed_kn: float
    draught_m: float
    route: tuple[NedPoint, ...] = ()


@dataclass(frozen=True)
class TargetSpec:
    position: NedPoint
    cog: Heading
    speed_kn: float
    length_m: float
    breadth_m: float
    draught_m: float
    nav_status: str | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    duration_s: float
    timestep_s: float
    chart_path: str | None
    chart_synth: dict | None
    ownship: OwnshipSpec
    target: TargetSpec
    swing_rate_deg_per_m: float | None = 0.2
    alpha: float = 0.4
    tcpa_act_s: float = 180.0
    cpa_req_m: float = 150.0
    domain: ShipDomainSpec = ShipDomainSpec()
    restriction_policy: RestrictionPolicy = RestrictionPolicy.BOTH_BLOCKED_EVERYWHERE
    ukc_fraction: float = 0.10
    arc_step_m: float = 25.0
    decision_step_s: float = 45.0

    def build_chart(self) -> SeaChart:
        if self.chart_path is not None:
            return load_chart(self.chart_path)
        assert self.chart_synth is not None
        return synth_channel_chart(**self.chart_synth)

    def assessment_config(self) -> AssessmentConfig:
        return AssessmentConfig(
            cpa_req_m=self.cpa_req_m,
            tcpa_act_s=self.tcpa_act_s,
            swing_rate_deg_per_m=self.swing_rate_deg_per_m,
            alpha=self.alpha,
            domain=self.domain,
            policy=self.restriction_policy,
            ukc_fraction=self.ukc_fraction,
            arc_step_m=self.arc_step_m,
            decision_step_s=self.decision_step_s,
        )

    def to_record(self) -> dict:
        chart: dict
        if self.chart_path is not None:
            chart = {"path": self.chart_path}
        else:
            chart = {"synthetic": dict(sorted(self.chart_synth.items()))}
        return {
            "duration_s": self.duration_s,
            "timestep_s": self.timestep_s,
            "chart": chart,
            "ownship": {
                "position_ned_m": [self.ownship.position.north, self.ownship.position.east],
                "cog_deg": self.ownship.cog.degrees,
                "speed_kn": self.ownship.speed_kn,
                "draught_m": self.ownship.draught_m,
                "route_ned_m": [[p.north, p.east] for p in self.ownship.route],
            },
            "target": {
                "position_ned_m": [self.target.position.north, self.target.position.east],
                "cog_deg": self.target.cog.degrees,
                "speed_kn": self.target.speed_kn,
                "length_m": self.target.length_m,
                "breadth_m": self.target.breadth_m,
                "draught_m": self.target.draught_m,
                "nav_status": self.target.nav_status,
            },
            "swing_rate_deg_per_m": self.swing_rate_deg_per_m,
            "alpha": self.alpha,
            "tcpa_act_s": self.tcpa_act_s,
            "cpa_req_m": self.cpa_req_m,
            "domain": {
                "length_multiplier": self.domain.length_multiplier,
                "breadth_multiplier": self.domain.breadth_multiplier,
            },
            "restriction_policy": self.restriction_policy.value,
            "ukc_fraction": self.ukc_fraction,
            "arc_step_m": self.arc_step_m,
            "decision_step_s": self.decision_step_s,
        }


_TOP_KEYS = {
    "duration_s",
    "timestep_s",
    "chart",
    "ownship",
    "target",
    "swing_rate_deg_per_m",
    "alpha",
    "tcpa_act_s",
    "cpa_req_m",
    "domain",
    "restriction_policy",
    "ukc_fraction",
    "arc_step_m",
    "decision_step_s",
}
_REQUIRED_TOP = {"duration_s", "timestep_s", "chart", "ownship", "target"}
_SYNTH_KEYS = {"length_m", "wide_width_m", "narrow_width_m", "narrow_depth_m", "flank_depth_m"}
_OWN_KEYS = {"position_ned_m", "cog_deg", "speed_kn", "draught_m", "route_ned_m"}
_OWN_REQUIRED = {"position_ned_m", "cog_deg", "speed_kn", "draught_m"}
_TARGET_KEYS = {"position_ned_m", "cog_deg", "speed_kn", "length_m", "breadth_m", "draught_m", "nav_status"}
_TARGET_REQUIRED = _TARGET_KEYS - {"nav_status"}
_DOMAIN_KEYS = {"length_multiplier", "breadth_multiplier"}


def _check_keys(section: Mapping, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(section, Mapping):
        raise ConfigError(f"{where} must be an object")
    for key in section:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} in {where}")
    for key in sorted(required):
        if key not in section:
            raise ConfigError(f"missing key {key!r} in {where}")


def _number(value, where: str, minimum: float | None = None, strict: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{where} must be finite")
    if minimum is not None and (value <= minimum if strict else value < minimum):
        op = ">" if strict else ">="
        raise ConfigError(f"{where} must be {op} {minimum}")
    return value


def _point(value, where: str) -> NedPoint:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(f"{where} must be a [north_m, east_m] pair")
    return NedPoint(_number(value[0], f"{where}[0]"), _number(value[1], f"{where}[1]"))


def parse_scenario(data: Mapping, source: str = "scenario") -> ScenarioConfig:
    _check_keys(data, _TOP_KEYS, _REQUIRED_TOP, source)

    chart = data["chart"]
    _check_keys(chart, {"path", "synthetic"}, set(), f"{source}.chart")
    if ("path" in chart) == ("synthetic" in chart):
        raise ConfigError(f"{source}.chart needs exactly one of 'path' or 'synthetic'")
    chart_path = None
    chart_synth = None
    if "path" in chart:
        if not isinstance(chart["path"], str):
            raise ConfigError(f"{source}.chart.path must be a string")
        chart_path = chart["path"]
    else:
        _check_keys(chart["synthetic"], _SYNTH_KEYS, _SYNTH_KEYS, f"{source}.chart.synthetic")
        chart_synth = {k: _number(v, f"{source}.chart.synthetic.{k}", 0.0, strict=True)
                       for k, v in chart["synthetic"].items()}

    own = data["ownship"]
    _check_keys(own, _OWN_KEYS, _OWN_REQUIRED, f"{source}.ownship")
    route: tuple[NedPoint, ...] = ()
    if "route_ned_m" in own:
        raw = own["route_ned_m"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError(f"{source}.ownship.route_ned_m must be a non-empty list")
        route = tuple(_point(p, f"{source}.ownship.route_ned_m[{i}]") for i, p in enumerate(raw))
    ownship = OwnshipSpec(
        position=_point(own["position_ned_m"], f"{source}.ownship.position_ned_m"),
        cog=Heading(_number(own["cog_deg"], f"{source}.ownship.cog_deg")),
        speed_kn=_number(own["speed_kn"], f"{source}.ownship.speed_kn", 0.0),
        draught_m=_number(own["draught_m"], f"{source}.ownship.draught_m", 0.0, strict=True),
        route=route,
    )

    tgt = data["target"]
    _check_keys(tgt, _TARGET_KEYS, _TARGET_REQUIRED, f"{source}.target")
    nav_status = tgt.get("nav_status")
    if nav_status is not None and not isinstance(nav_status, str):
        raise ConfigError(f"{source}.target.nav_status must be a string or null")
    target = TargetSpec(
        position=_point(tgt["position_ned_m"], f"{source}.target.position_ned_m"),
        cog=Heading(_number(tgt["cog_deg"], f"{source}.target.cog_deg")),
        speed_kn=_number(tgt["speed_kn"], f"{source}.target.speed_kn", 0.0),
        length_m=_number(tgt["length_m"], f"{source}.target.length_m", 0.0, strict=True),
        breadth_m=_number(tgt["breadth_m"], f"{source}.target.breadth_m", 0.0, strict=True),
        draught_m=_number(tgt["draught_m"], f"{source}.target.draught_m", 0.0, strict=True),
        nav_status=nav_status,
    )

    swing = data.get("swing_rate_deg_per_m", 0.2)
    if swing is not None:
        swing = _number(swing, f"{source}.swing_rate_deg_per_m", 0.0, strict=True)

    domain = ShipDomainSpec()
    if "domain" in data:
        _check_keys(data["domain"], _DOMAIN_KEYS, _DOMAIN_KEYS, f"{source}.domain")
        domain = ShipDomainSpec(
            length_multiplier=_number(data["domain"]["length_multiplier"],
                                      f"{source}.domain.length_multiplier", 0.0, strict=True),
            breadth_multiplier=_number(data["domain"]["breadth_multiplier"],
                                       f"{source}.domain.breadth_multiplier", 0.0, strict=True),
        )

    policy = RestrictionPolicy.BOTH_BLOCKED_EVERYWHERE
    if "restriction_policy" in data:
        try:
            policy = RestrictionPolicy(data["restriction_policy"])
        except ValueError:
            names = sorted(p.value for p in RestrictionPolicy)
            raise ConfigError(
                f"{source}.restriction_policy must be one of {names}"
            ) from None

    duration = _number(data["duration_s"], f"{source}.duration_s", 0.0, strict=True)
    timestep = _number(data["timestep_s"], f"{source}.timestep_s", 0.0, strict=True)
    if timestep > duration:
        raise ConfigError(f"{source}.timestep_s cannot exceed duration_s")

    return ScenarioConfig(
        duration_s=duration,
        timestep_s=timestep,
        chart_path=chart_path,
        chart_synth=chart_synth,
        ownship=ownship,
        target=target,
        swing_rate_deg_per_m=swing,
        alpha=_number(data.get("alpha", 0.4), f"{source}.alpha", 0.0, strict=True),
        tcpa_act_s=_number(data.get("tcpa_act_s", 180.0), f"{source}.tcpa_act_s", 0.0, strict=True),
        cpa_req_m=_number(data.get("cpa_req_m", 150.0), f"{source}.cpa_req_m", 0.0, strict=True),
        domain=domain,
        restriction_policy=policy,
        ukc_fraction=_number(data.get("ukc_fraction", 0.10), f"{source}.ukc_fraction", 0.0),
        arc_step_m=_number(data.get("arc_step_m", 25.0), f"{source}.arc_step_m", 0.0, strict=True),
        decision_step_s=_number(data.get("decision_step_s", 45.0), f"{source}.decision_step_s", 0.0, strict=True),
    )


def load_scenario(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"scenario file {path} must hold a JSON object")
    return parse_scenario(data, source=str(path))


def bundled_scenario(name: str) -> Path:
    """Path of a scenario shipped with the package."""
    folder = Path(__file__).parent / "scenarios"
    path = folder / f"{name}.json"
    if not path.is_file():
        available = sorted(p.stem for p in folder.glob("*.json"))
        raise ConfigError(f"no bundled scenario {name!r}; available: {available}")
    return path


# --------------------------------------------------------------------- run


@dataclass(frozen=True)
class SimStep:
    t_s: float
    own: VesselState
    target: VesselState
    tcpa_s: float
    dcpa_m: float
    risk: bool
    assessed: bool


@dataclass(frozen=True)
class SimulationTrace:
    config: ScenarioConfig
    chart: SeaChart
    steps: tuple[SimStep, ...]
    outcome: str
    trigger_index: int | None
    assessment: SituationAssessment | None
    cpa_own: NedPoint | None
    cpa_target: NedPoint | None


def _own_state_at(spec: OwnshipSpec, t_s: float) -> VesselState:
    speed = spec.speed_kn * KNOT_MPS
    if not spec.route:
        vn = speed * math.cos(spec.cog.radians)
        ve = speed * math.sin(spec.cog.radians)
        return VesselState(spec.position.offset(vn * t_s, ve * t_s), speed, spec.cog, t_s)
    # piecewise-linear waypoint run; past the last leg the course is held
    remaining = speed * t_s
    current = spec.position
    heading = spec.cog
    for wp in spec.route:
        leg_n = wp.north - current.north
        leg_e = wp.east - current.east
        dist = math.hypot(leg_n, leg_e)
        if dist <= 1e-12:
            continue
        heading = Heading(math.degrees(math.atan2(leg_e, leg_n)))
        if remaining < dist:
            f = remaining / dist
            current = current.offset(leg_n * f, leg_e * f)
            break
        current = wp
        remaining -= dist
    else:
        if remaining > 0.0:
            vn = remaining * math.cos(heading.radians)
            ve = remaining * math.sin(heading.radians)
            current = current.offset(vn, ve)
    return VesselState(current, speed, heading, t_s)


def run_scenario(config: ScenarioConfig) -> SimulationTrace:
    """March the scenario and latch the assessment at the first risky step."""
    chart = config.build_chart()
    acfg = config.assessment_config()
    tgt = config.target
    target0 = VesselState(tgt.position, tgt.speed_kn * KNOT_MPS, tgt.cog, 0.0)
    attrs_proto = dict(
        length_m=tgt.length_m,
        breadth_m=tgt.breadth_m,
        draught_m=tgt.draught_m,
        nav_status=tgt.nav_status,
        has_transponder=tgt.nav_status is not None,
    )

    n_steps = int(math.floor(config.duration_s / config.timestep_s + 1e-9))
    steps: list[SimStep] = []
    assessment: SituationAssessment | None = None
    trigger_index: int | None = None
    cpa_own: NedPoint | None = None
    cpa_target: NedPoint | None = None
    for i in range(n_steps + 1):
        t = i * config.timestep_s
        own = _own_state_at(config.ownship, t)
        target = predict(target0, t)
        approach = cpa(own, target)
        risk = collision_risk(own, target, config.cpa_req_m, config.tcpa_act_s)
        assessed = False
        if risk and assessment is None:
            assessment = assess(own, TargetAttributes(state=target, **attrs_proto), chart, acfg)
            trigger_index = i
            assessed = True
            cpa_own = approach.own_at_cpa
            cpa_target = approach.target_at_cpa
        steps.append(SimStep(t, own, target, approach.tcpa_s, approach.dcpa_m, risk, assessed))

    if assessment is None:
        outcome = OUTCOME_NO_RISK
    elif assessment.rule9_applied:
        outcome = OUTCOME_RULE9
    else:
        outcome = OUTCOME_NO_RULE9
    return SimulationTrace(
        config=config,
        chart=chart,
        steps=tuple(steps),
        outcome=outcome,
        trigger_index=trigger_index,
        assessment=assessment,
        cpa_own=cpa_own,
        cpa_target=cpa_target,
    )


# ------------------------------------------------------------------- files

CSV_COLUMNS = [
    "t_s",
    "own_north_m",
    "own_east_m",
    "own_sog_mps",
    "own_cog_deg",
    "target_north_m",
    "target_east_m",
    "target_sog_mps",
    "target_cog_deg",
    "tcpa_s",
    "dcpa_m",
    "risk",
    "assessed",
]


def _state_record(state: VesselState) -> dict:
    return {
        "north_m": state.position.north,
        "east_m": state.position.east,
        "sog_mps": state.sog_mps,
        "cog_deg": state.cog.degrees,
        "timestamp_s": state.timestamp_s,
    }


def _steps_csv(trace: SimulationTrace) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for s in trace.steps:
        row = [
            f"{s.t_s!r}",
            f"{s.own.position.north!r}",
            f"{s.own.position.east!r}",
            f"{s.own.sog_mps!r}",
            f"{s.own.cog.degrees!r}",
            f"{s.target.position.north!r}",
            f"{s.target.position.east!r}",
            f"{s.target.sog_mps!r}",
            f"{s.target.cog.degrees!r}",
            f"{s.tcpa_s!r}",
            f"{s.dcpa_m!r}",
            "true" if s.risk else "false",
            "true" if s.assessed else "false",
        ]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _lonlat(point: NedPoint, chart: SeaChart) -> list[float]:
    geo = ned_to_geodetic(point, chart.origin)
    return [geo.lon_deg, geo.lat_deg]


def _line_feature(points, chart: SeaChart, props: dict) -> dict:
    return {
        "type": "Feature",
        "properties": props,
        "geometry": {
            "type": "LineString",
            "coordinates": [_lonlat(p, chart) for p in points],
        },
    }


def _ellipse_ring(ellipse, chart: SeaChart) -> list[list[float]]:
    co = math.cos(ellipse.orientation.radians)
    si = math.sin(ellipse.orientation.radians)
    ring = []
    for k in range(_ELLIPSE_VERTICES):
        th = 2.0 * math.pi * k / _ELLIPSE_VERTICES
        f = ellipse.semi_major_m * math.cos(th)
        s = ellipse.semi_minor_m * math.sin(th)
        point = NedPoint(
            ellipse.center.north + f * co - s * si,
            ellipse.center.east + f * si + s * co,
        )
        ring.append(_lonlat(point, chart))
    ring.append(ring[0])
    return ring


def _overlay_geojson(trace: SimulationTrace) -> dict:
    chart = trace.chart
    features: list[dict] = [
        _line_feature((s.own.position for s in trace.steps), chart, {"kind": "own_track"}),
        _line_feature((s.target.position for s in trace.steps), chart, {"kind": "target_track"}),
    ]
    if trace.cpa_own is not None:
        for vessel, point in (("own", trace.cpa_own), ("target", trace.cpa_target)):
            features.append(
                {
                    "type": "Feature",
                    "properties": {"kind": "cpa_marker", "vessel": vessel},
                    "geometry": {"type": "Point", "coordinates": _lonlat(point, chart)},
                }
            )
    assessment = trace.assessment
    if assessment is not None and assessment.maneuver is not None:
        region = feasible_region(
            chart, trace.config.target.draught_m, trace.config.ukc_fraction
        )
        for polygon in region.outline:
            rings = [
                [_lonlat(p, chart) for p in (*ring, ring[0])]
                for ring in (polygon.exterior, *polygon.holes)
            ]
            features.append(
                {
                    "type": "Feature",
                    "properties": {
                        "kind": "feasible_region",
                        "required_depth_m": region.required_depth_m,
                    },
                    "geometry": {"type": "Polygon", "coordinates": rings},
                }
            )
        for probe in assessment.maneuver.probes:
            for side, samples in (("cw", probe.cw), ("ccw", probe.ccw)):
                direction = TurnDirection.CW if side == "cw" else TurnDirection.CCW
                arc_points = [probe.start.position, *(s.pose.position for s in samples)]
                features.append(
                    _line_feature(
                        arc_points,
                        chart,
                        {
                            "kind": "escape_arc",
                            "side": side,
                            "t_s": probe.t_s,
                            "blocked": probe.cw_blocked if side == "cw" else probe.ccw_blocked,
                            "first_violation_m": probe.first_violation_m(direction),
                        },
                    )
                )
                for sample in samples:
                    features.append(
                        {
                            "type": "Feature",
                            "properties": {
                                "kind": "domain_ellipse",
                                "side": side,
                                "t_s": probe.t_s,
                                "arc_length_m": sample.arc_length_m,
                                "blocked": sample.blocked,
                            },
                            "geometry": {
                                "type": "Polygon",
                                "coordinates": [_ellipse_ring(sample.ellipse, chart)],
                            },
                        }
                    )
    return {"type": "FeatureCollection", "features": features}


def _summary(trace: SimulationTrace) -> dict:
    trigger = None
    if trace.trigger_index is not None:
        step = trace.steps[trace.trigger_index]
        trigger = {
            "index": trace.trigger_index,
            "t_s": step.t_s,
            "tcpa_s": step.tcpa_s,
            "dcpa_m": step.dcpa_m,
            "own": _state_record(step.own),
            "target": _state_record(step.target),
        }
    return {
        "outcome": trace.outcome,
        "steps": len(trace.steps),
        "trigger": trigger,
        "assessment": None if trace.assessment is None else trace.assessment.to_record(),
        "parameters": trace.config.to_record(),
    }


def write_trace(trace: SimulationTrace, out_dir: str | Path) -> dict[str, Path]:
    """Emit steps.csv, overlay.geojson, and summary.json into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "steps_csv": out / "steps.csv",
        "overlay_geojson": out / "overlay.geojson",
        "summary_json": out / "summary.json",
    }
    paths["steps_csv"].write_text(_steps_csv(trace), encoding="utf-8")
    paths["overlay_geojson"].write_text(
        json.dumps(_overlay_geojson(trace), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    paths["summary_json"].write_text(
        json.dumps(_summary(trace), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return paths
