"""Command-line surface: scenario runs, one-shot assessments, data utilities.

Records print as single-line JSON by default so scripts can parse them;
--pretty switches the record commands to indented or tabular output. Exit
codes: 0 success, 2 usage, 3 bad input, 4 internal protocol violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Mapping

from .ais import (
    RegionFilter,
    dimension_stats,
    filter_region,
    format_stats_table,
    parse_ais_csv,
    stats_to_record,
)
from .automaton import UndefinedTransitionError
from .chart import ChartError, feasible_region, load_chart, save_chart, synth_channel_chart
from .geo import Heading, NedPoint, ned_to_geodetic
from .kinematics import VesselState
from .maneuver import (
    TURNING_CIRCLES,
    RestrictionPolicy,
    ShipDomainSpec,
    load_turning_circles_csv,
    swing_rate,
)
from .sim import ConfigError, load_scenario, run_scenario, write_trace
from .situation import AssessmentConfig, TargetAttributes, assess

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_PROTOCOL = 4

# the quoted ballpark for the fleet's weakest swing rate
QUOTED_MIN_SWING_DEG_PER_M = 0.1

_STATE_KEYS = {"north_m", "east_m", "sog_mps", "cog_deg", "timestamp_s"}
_TARGET_KEYS = _STATE_KEYS | {"length_m", "breadth_m", "draught_m", "nav_status"}
_PARAM_KEYS = {
    "cpa_req_m",
    "tcpa_act_s",
    "swing_rate_deg_per_m",
    "alpha",
    "domain",
    "restriction_policy",
    "ukc_fraction",
    "arc_step_m",
    "decision_step_s",
    "horizon_s",
    "d2_includes_draught_constrained",
    "force",
}


def _emit(record: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print(json.dumps(record, sort_keys=True))


def _json_object(text: str, flag: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"--{flag} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError(f"--{flag} must be a JSON object")
    return obj


def _check_keys(obj: Mapping, allowed: set[str], required: set[str], flag: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ValueError(f"unknown key {key!r} in --{flag}")
    for key in sorted(required):
        if key not in obj:
            raise ValueError(f"missing key {key!r} in --{flag}")


def _num(obj: Mapping, key: str, flag: str, default=None) -> float:
    value = obj.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{key!r} in --{flag} must be a number")
    if not math.isfinite(float(value)):
        raise ValueError(f"{key!r} in --{flag} must be finite")
    return float(value)


def _state_from(obj: Mapping, flag: str) -> VesselState:
    _check_keys(obj, _STATE_KEYS if flag == "own" else _TARGET_KEYS,
                {"north_m", "east_m", "sog_mps", "cog_deg"}, flag)
    return VesselState(
        position=NedPoint(_num(obj, "north_m", flag), _num(obj, "east_m", flag)),
        sog_mps=_num(obj, "sog_mps", flag),
        cog=Heading(_num(obj, "cog_deg", flag)),
        timestamp_s=_num(obj, "timestamp_s", flag, 0.0),
    )


def _target_from(obj: Mapping) -> TargetAttributes:
    state = _state_from(obj, "target")
    for key in ("length_m", "breadth_m", "draught_m"):
        if key not in obj:
            raise ValueError(f"missing key {key!r} in --target")
    nav_status = obj.get("nav_status")
    if nav_status is not None and not isinstance(nav_status, str):
        raise ValueError("'nav_status' in --target must be a string or null")
    return TargetAttributes(
        state=state,
        length_m=_num(obj, "length_m", "target"),
        breadth_m=_num(obj, "breadth_m", "target"),
        draught_m=_num(obj, "draught_m", "target"),
        nav_status=nav_status,
        has_transponder=nav_status is not None,
    )


def _params_from(obj: Mapping) -> tuple[AssessmentConfig, bool]:
    _check_keys(obj, _PARAM_KEYS, set(), "params")
    domain = ShipDomainSpec()
    if "domain" in obj:
        section = obj["domain"]
        if not isinstance(section, Mapping):
            raise ValueError("'domain' in --params must be an object")
        _check_keys(section, {"length_multiplier", "breadth_multiplier"},
                    {"length_multiplier", "breadth_multiplier"}, "params")
        domain = ShipDomainSpec(
            length_multiplier=_num(section, "length_multiplier", "params"),
            breadth_multiplier=_num(section, "breadth_multiplier", "params"),
        )
    policy = RestrictionPolicy.BOTH_BLOCKED_EVERYWHERE
    if "restriction_policy" in obj:
        try:
            policy = RestrictionPolicy(obj["restriction_policy"])
        except ValueError:
            names = sorted(p.value for p in RestrictionPolicy)
            raise ValueError(f"'restriction_policy' in --params must be one of {names}") from None
    swing = obj.get("swing_rate_deg_per_m")
    if swing is not None:
        swing = _num(obj, "swing_rate_deg_per_m", "params")
    horizon = obj.get("horizon_s")
    if horizon is not None:
        horizon = _num(obj, "horizon_s", "params")
    force = obj.get("force", False)
    if not isinstance(force, bool):
        raise ValueError("'force' in --params must be a boolean")
    d2_draught = obj.get("d2_includes_draught_constrained", True)
    if not isinstance(d2_draught, bool):
        raise ValueError("'d2_includes_draught_constrained' in --params must be a boolean")
    config = AssessmentConfig(
        cpa_req_m=_num(obj, "cpa_req_m", "params", 150.0),
        tcpa_act_s=_num(obj, "tcpa_act_s", "params", 180.0),
        swing_rate_deg_per_m=swing,
        alpha=_num(obj, "alpha", "params", 0.4),
        domain=domain,
        policy=policy,
        ukc_fraction=_num(obj, "ukc_fraction", "params", 0.10),
        arc_step_m=_num(obj, "arc_step_m", "params", 25.0),
        decision_step_s=_num(obj, "decision_step_s", "params", 45.0),
        horizon_s=horizon,
        d2_includes_draught_constrained=d2_draught,
    )
    return config, force


# -------------------------------------------------------------- subcommands


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = load_scenario(args.config)
    trace = run_scenario(config)
    write_trace(trace, args.out)
    print(trace.outcome)
    return EXIT_OK


def _cmd_assess(args: argparse.Namespace) -> int:
    chart = load_chart(args.chart)
    own = _state_from(_json_object(args.own, "own"), "own")
    target = _target_from(_json_object(args.target, "target"))
    config, force = _params_from(_json_object(args.params, "params"))
    result = assess(own, target, chart, config, force=force)
    _emit(result.to_record(), args.pretty)
    return EXIT_OK


def _cmd_swing_table(args: argparse.Namespace) -> int:
    table = TURNING_CIRCLES if args.csv is None else load_turning_circles_csv(args.csv)
    rows = []
    for rec in table:
        rows.append(
            {
                "vessel_type": rec.vessel_type,
                "length_m": rec.length_m,
                "breadth_m": rec.breadth_m,
                "rudder": rec.rudder,
                "max_rudder_deg": rec.max_rudder_deg,
                "turn_radius_m": rec.turn_radius_m,
                "swing_rate_deg_per_m": swing_rate(rec.turn_radius_m).deg_per_m,
            }
        )
    minimum = min(rows, key=lambda r: r["swing_rate_deg_per_m"])
    record = {
        "rows": rows,
        "minimum": minimum,
        "quoted_min_deg_per_m": QUOTED_MIN_SWING_DEG_PER_M,
        "quoted_matches_to_one_decimal": round(minimum["swing_rate_deg_per_m"], 1)
        == QUOTED_MIN_SWING_DEG_PER_M,
    }
    if not args.pretty:
        _emit(record, False)
        return EXIT_OK
    header = f"{'vessel type':<18}{'length':>8}{'radius':>9}{'rate deg/m':>12}"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(
            f"{row['vessel_type']:<18}{row['length_m']:>8.1f}{row['turn_radius_m']:>9.1f}"
            f"{row['swing_rate_deg_per_m']:>12.5f}"
        )
    tick = "~" if record["quoted_matches_to_one_decimal"] else "!"
    print(
        f"minimum: {minimum['vessel_type']} ({minimum['length_m']:.1f} m), "
        f"{minimum['swing_rate_deg_per_m']:.5f} deg/m "
        f"[{tick} quoted {QUOTED_MIN_SWING_DEG_PER_M} deg/m]"
    )
    return EXIT_OK


def _cmd_ais_stats(args: argparse.Namespace) -> int:
    records, dropped = parse_ais_csv(args.csv)
    in_region = None
    if args.region is not None:
        lat_min, lat_max, lon_min, lon_max = args.region
        records = filter_region(records, RegionFilter(lat_min, lat_max, lon_min, lon_max))
        in_region = len(records)
    stats = dimension_stats(records)
    record = {
        "dropped": dropped,
        "in_region": in_region,
        "records": len(records),
        "stats": stats_to_record(stats),
    }
    if args.pretty:
        print(f"records: {len(records)} (dropped {dropped})")
        print(format_stats_table(stats))
    else:
        _emit(record, False)
    return EXIT_OK


def _cmd_chart_feasible(args: argparse.Namespace) -> int:
    chart = load_chart(args.chart)
    region = feasible_region(chart, args.draught, args.ukc)
    features = []
    for polygon in region.outline:
        rings = []
        for ring in (polygon.exterior, *polygon.holes):
            coords = []
            for point in (*ring, ring[0]):
                geo = ned_to_geodetic(point, chart.origin)
                coords.append([geo.lon_deg, geo.lat_deg])
            rings.append(coords)
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
    overlay = {"type": "FeatureCollection", "features": features}
    Path(args.out).write_text(
        json.dumps(overlay, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    _emit(
        {
            "required_depth_m": region.required_depth_m,
            "qualifying_contours": len(region.contours),
            "outline_polygons": len(region.outline),
            "empty": region.is_empty,
            "out": str(args.out),
        },
        args.pretty,
    )
    return EXIT_OK


def _cmd_make_chart(args: argparse.Namespace) -> int:
    narrow = args.wide_width if args.preset == "uniform" else args.narrow_width
    chart = synth_channel_chart(
        length_m=args.length,
        wide_width_m=args.wide_width,
        narrow_width_m=narrow,
        narrow_depth_m=args.narrow_depth,
        flank_depth_m=args.flank_depth,
    )
    save_chart(chart, args.out)
    _emit(
        {
            "out": str(args.out),
            "preset": args.preset,
            "contours": len(chart.contours),
            "narrow_width_m": narrow,
            "wide_width_m": args.wide_width,
        },
        args.pretty,
    )
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairway",
        description="Decide whether a narrow-channel duty inversion applies to an encounter.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("simulate", help="run a scenario file and write its trace")
    p.add_argument("--config", required=True, help="scenario JSON file")
    p.add_argument("--out", required=True, help="output directory for trace files")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("assess", help="assess a single own/target snapshot")
    p.add_argument("--chart", required=True, help="chart GeoJSON file")
    p.add_argument("--own", required=True, help="own state JSON: north_m, east_m, sog_mps, cog_deg[, timestamp_s]")
    p.add_argument("--target", required=True,
                   help="target JSON: state keys plus length_m, breadth_m, draught_m[, nav_status]")
    p.add_argument("--params", default="{}", help="assessment parameter JSON (see docs)")
    p.add_argument("--pretty", action="store_true", help="indent the record")
    p.set_defaults(func=_cmd_assess)

    p = sub.add_parser("swing-table", help="swing rates for the embedded or a custom turning-circle table")
    p.add_argument("--csv", default=None, help="turning-circle CSV (defaults to the embedded table)")
    p.add_argument("--pretty", action="store_true", help="aligned table instead of JSON")
    p.set_defaults(func=_cmd_swing_table)

    p = sub.add_parser("ais-stats", help="fleet dimension statistics from a track CSV")
    p.add_argument("--csv", required=True, help="track CSV file")
    p.add_argument("--region", nargs=4, type=float, default=None,
                   metavar=("LAT_MIN", "LAT_MAX", "LON_MIN", "LON_MAX"),
                   help="inclusive geographic window")
    p.add_argument("--pretty", action="store_true", help="aligned table instead of JSON")
    p.set_defaults(func=_cmd_ais_stats)

    p = sub.add_parser("chart-feasible", help="compute the feasible region for a draught")
    p.add_argument("--chart", required=True, help="chart GeoJSON file")
    p.add_argument("--draught", required=True, type=float, help="vessel draught in meters")
    p.add_argument("--ukc", type=float, default=0.10, help="under-keel clearance fraction")
    p.add_argument("--out", required=True, help="overlay GeoJSON to write")
    p.add_argument("--pretty", action="store_true", help="indent the record")
    p.set_defaults(func=_cmd_chart_feasible)

    p = sub.add_parser("make-chart", help="write a synthetic channel chart")
    p.add_argument("--preset", required=True, choices=("narrowing", "uniform"))
    p.add_argument("--length", type=float, default=6000.0, help="channel length in meters")
    p.add_argument("--wide-width", type=float, default=1200.0, dest="wide_width")
    p.add_argument("--narrow-width", type=float, default=70.0, dest="narrow_width",
                   help="neck width (narrowing preset only)")
    p.add_argument("--narrow-depth", type=float, default=9.0, dest="narrow_depth")
    p.add_argument("--flank-depth", type=float, default=4.0, dest="flank_depth")
    p.add_argument("--out", required=True, help="chart GeoJSON to write")
    p.add_argument("--pretty", action="store_true", help="indent the record")
    p.set_defaults(func=_cmd_make_chart)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UndefinedTransitionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    except (ConfigError, ChartError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
