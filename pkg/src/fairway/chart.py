"""Depth-contour charts and the water a given draught can actually use.

Chart files are GeoJSON FeatureCollections with one extra top-level member,
``origin`` (``[lon, lat]``), about which all coordinates are flattened into
the local north-east plane. Features are polygons tagged by ``properties``:

    {"kind": "contour", "min_depth": 6.0}   water at least 6 m deep inside
    {"kind": "land"}                        dry land

Contours nest: a deeper contour must lie inside some next-shallower one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .geo import (
    GeodeticPoint,
    NedPoint,
    Polygon,
    geodetic_to_ned,
    ned_to_geodetic,
    point_in_polygon,
    point_on_polygon_boundary,
)

DEFAULT_UKC_FRACTION = 0.10

# default origin for synthetic charts: the Limfjord crossing at Aalborg
DEFAULT_ORIGIN = GeodeticPoint(57.0535305, 9.940739)

# slack for float products like 5.0 * 1.1 when comparing against a contour depth
_DEPTH_EPS_M = 1e-9


class ChartError(ValueError):
    """Malformed or inconsistent chart data."""


@dataclass(frozen=True)
class DepthContour:
    """Region guaranteed at least `min_depth_m` of water."""

    min_depth_m: float
    area: Polygon

    def __post_init__(self) -> None:
        depth = float(self.min_depth_m)
        if not math.isfinite(depth) or depth < 0.0:
            raise ChartError(f"contour min_depth must be >= 0, got {self.min_depth_m!r}")
        object.__setattr__(self, "min_depth_m", depth)


@dataclass(frozen=True)
class SeaChart:
    """Validated chart: nested depth contours plus land, in local NED meters.

    `features` keeps the source geodetic features verbatim so that saving a
    loaded chart reproduces the file byte for byte.
    """

    origin: GeodeticPoint
    contours: tuple[DepthContour, ...]
    land: tuple[Polygon, ...]
    features: tuple[dict, ...]


@dataclass(frozen=True)
class FeasibleRegion:
    """Contours deep enough for a required depth.

    `contours` lists every qualifying contour, nested ones included;
    `outline` reduces their areas to the outermost polygons, whose rings form
    the boundary of the navigable water (what a ship domain must not touch).
    """

    required_depth_m: float
    contours: tuple[DepthContour, ...]

    @property
    def polygons(self) -> tuple[Polygon, ...]:
        return tuple(c.area for c in self.contours)

    @cached_property
    def outline(self) -> tuple[Polygon, ...]:
        keep: list[Polygon] = []
        for i, contour in enumerate(self.contours):
            contained = False
            for j, other in enumerate(self.contours):
                if j == i or other.min_depth_m >= contour.min_depth_m - 1e-12:
                    continue
                if all(point_in_polygon(v, other.area) for v in contour.area.exterior):
                    contained = True
                    break
            if not contained:
                keep.append(contour.area)
        return tuple(keep)

    @property
    def is_empty(self) -> bool:
        return not self.contours


def feasible_region(
    chart: SeaChart, draught_m: float, ukc_fraction: float = DEFAULT_UKC_FRACTION
) -> FeasibleRegion:
    """Water deep enough for `draught_m` plus an under-keel clearance margin.

    required_depth = draught * (1 + ukc_fraction). A contour whose min_depth
    equals the requirement qualifies (boundary inclusive). The region may be
    empty; that is a result, not an error.
    """
    if draught_m <= 0.0 or not math.isfinite(draught_m):
        raise ValueError(f"draught must be > 0, got {draught_m!r}")
    if ukc_fraction < 0.0 or not math.isfinite(ukc_fraction):
        raise ValueError(f"ukc_fraction must be >= 0, got {ukc_fraction!r}")
    required = draught_m * (1.0 + ukc_fraction)
    qualifying = tuple(
        c for c in chart.contours if c.min_depth_m + _DEPTH_EPS_M >= required
    )
    return FeasibleRegion(required_depth_m=required, contours=qualifying)


# ---------------------------------------------------------------------------
# parsing and validation


def load_chart(path: str | Path) -> SeaChart:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ChartError(f"chart file {path} is not valid JSON: {exc}") from exc
    return parse_chart(doc)


def parse_chart(doc: dict) -> SeaChart:
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise ChartError("chart must be a FeatureCollection object")
    raw_origin = doc.get("origin")
    if (
        not isinstance(raw_origin, (list, tuple))
        or len(raw_origin) != 2
        or not all(isinstance(v, (int, float)) for v in raw_origin)
    ):
        raise ChartError("chart needs a top-level origin: [lon, lat]")
    try:
        origin = GeodeticPoint(lat_deg=float(raw_origin[1]), lon_deg=float(raw_origin[0]))
    except ValueError as exc:
        raise ChartError(f"bad chart origin: {exc}") from exc

    features = doc.get("features")
    if not isinstance(features, list):
        raise ChartError("chart features must be a list")

    contours: list[DepthContour] = []
    land: list[Polygon] = []
    for idx, feature in enumerate(features):
        kind, polygon = _parse_feature(idx, feature, origin)
        if kind == "land":
            land.append(polygon)
        else:
            depth = feature["properties"]["min_depth"]
            try:
                contours.append(DepthContour(min_depth_m=depth, area=polygon))
            except ChartError as exc:
                raise ChartError(f"feature {idx}: {exc}") from exc

    _validate_nesting(contours)
    _validate_land(contours, land)
    return SeaChart(
        origin=origin,
        contours=tuple(contours),
        land=tuple(land),
        features=tuple(features),
    )


def _parse_feature(idx: int, feature: object, origin: GeodeticPoint) -> tuple[str, Polygon]:
    if not isinstance(feature, dict) or feature.get("type") != "Feature":
        raise ChartError(f"feature {idx} is not a Feature object")
    props = feature.get("properties")
    if not isinstance(props, dict):
        raise ChartError(f"feature {idx} has no properties object")
    kind = props.get("kind")
    if kind not in ("contour", "land"):
        raise ChartError(f"feature {idx}: unknown kind {kind!r}")
    if kind == "contour" and not isinstance(props.get("min_depth"), (int, float)):
        raise ChartError(f"feature {idx}: contour needs a numeric min_depth")
    geometry = feature.get("geometry")
    if not isinstance(geometry, dict) or geometry.get("type") != "Polygon":
        raise ChartError(f"feature {idx}: geometry must be a Polygon")
    raw_rings = geometry.get("coordinates")
    if not isinstance(raw_rings, list) or not raw_rings:
        raise ChartError(f"feature {idx}: polygon needs at least an exterior ring")
    rings = [_parse_ring(idx, ring) for ring in raw_rings]
    ned_rings = [
        tuple(geodetic_to_ned(p, origin) for p in ring) for ring in rings
    ]
    try:
        return kind, Polygon(exterior=ned_rings[0], holes=tuple(ned_rings[1:]))
    except ValueError as exc:
        raise ChartError(f"feature {idx}: {exc}") from exc


def _parse_ring(idx: int, ring: object) -> tuple[GeodeticPoint, ...]:
    if not isinstance(ring, list) or len(ring) < 4:
        raise ChartError(
            f"feature {idx}: ring must be a closed list of at least 4 positions"
        )
    points: list[GeodeticPoint] = []
    for pos in ring:
        if (
            not isinstance(pos, (list, tuple))
            or len(pos) != 2
            or not all(isinstance(v, (int, float)) for v in pos)
        ):
            raise ChartError(f"feature {idx}: positions must be [lon, lat] pairs")
        try:
            points.append(GeodeticPoint(lat_deg=float(pos[1]), lon_deg=float(pos[0])))
        except ValueError as exc:
            raise ChartError(f"feature {idx}: {exc}") from exc
    first, last = points[0], points[-1]
    if first.lat_deg != last.lat_deg or first.lon_deg != last.lon_deg:
        raise ChartError(f"feature {idx}: ring is not closed")
    return tuple(points[:-1])


def _validate_nesting(contours: list[DepthContour]) -> None:
    levels = sorted({c.min_depth_m for c in contours})
    for contour in contours:
        level = levels.index(contour.min_depth_m)
        if level == 0:
            continue
        shallower = [c for c in contours if c.min_depth_m == levels[level - 1]]
        if not any(
            all(point_in_polygon(v, outer.area) for v in contour.area.exterior)
            for outer in shallower
        ):
            raise ChartError(
                f"contour at depth {contour.min_depth_m} m is not nested inside "
                f"a {levels[level - 1]} m contour"
            )


def _validate_land(contours: list[DepthContour], land: list[Polygon]) -> None:
    if not contours or not land:
        return
    deepest = max(c.min_depth_m for c in contours)
    deep_areas = [c.area for c in contours if c.min_depth_m == deepest]
    for i, block in enumerate(land):
        for area in deep_areas:
            if any(_strictly_inside(v, area) for v in block.exterior) or any(
                _strictly_inside(v, block) for v in area.exterior
            ):
                raise ChartError(f"land polygon {i} overlaps the {deepest} m contour")


def _strictly_inside(p: NedPoint, polygon: Polygon) -> bool:
    return point_in_polygon(p, polygon) and not point_on_polygon_boundary(p, polygon)


# ---------------------------------------------------------------------------
# serialization


def chart_to_geojson(chart: SeaChart) -> dict:
    return {
        "type": "FeatureCollection",
        "origin": [chart.origin.lon_deg, chart.origin.lat_deg],
        "features": list(chart.features),
    }


def save_chart(chart: SeaChart, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(chart_to_geojson(chart), indent=2, sort_keys=True) + "\n"
    )


# ---------------------------------------------------------------------------
# synthetic channels


def synth_channel_chart(
    length_m: float,
    wide_width_m: float,
    narrow_width_m: float,
    narrow_depth_m: float,
    flank_depth_m: float,
    origin: GeodeticPoint = DEFAULT_ORIGIN,
) -> SeaChart:
    """Deterministic east-west test channel.

    The shallow flank contour is a `length_m` by `wide_width_m` rectangle. The
    deep contour runs at full width for the outer thirds of the channel and
    necks down linearly to `narrow_width_m` over the middle third, holding
    that width for |east| <= length/6. Equal widths degenerate to a uniform
    channel of two coincident rectangles.
    """
    if min(length_m, wide_width_m, narrow_width_m, narrow_depth_m, flank_depth_m) <= 0:
        raise ValueError("all channel parameters must be positive")
    if narrow_width_m > wide_width_m:
        raise ValueError("narrow_width_m must not exceed wide_width_m")
    if flank_depth_m >= narrow_depth_m:
        raise ValueError("flank_depth_m must be shallower than narrow_depth_m")

    half_l = length_m / 2.0
    half_wide = wide_width_m / 2.0
    half_narrow = narrow_width_m / 2.0

    flank_ring = [
        NedPoint(-half_wide, -half_l),
        NedPoint(-half_wide, half_l),
        NedPoint(half_wide, half_l),
        NedPoint(half_wide, -half_l),
    ]
    if narrow_width_m == wide_width_m:
        deep_ring = list(flank_ring)
    else:
        third = length_m / 3.0
        sixth = length_m / 6.0
        deep_ring = [
            NedPoint(-half_wide, -half_l),
            NedPoint(-half_wide, -third),
            NedPoint(-half_narrow, -sixth),
            NedPoint(-half_narrow, sixth),
            NedPoint(-half_wide, third),
            NedPoint(-half_wide, half_l),
            NedPoint(half_wide, half_l),
            NedPoint(half_wide, third),
            NedPoint(half_narrow, sixth),
            NedPoint(half_narrow, -sixth),
            NedPoint(half_wide, -third),
            NedPoint(half_wide, -half_l),
        ]

    doc = {
        "type": "FeatureCollection",
        "origin": [origin.lon_deg, origin.lat_deg],
        "features": [
            _contour_feature(flank_ring, flank_depth_m, origin),
            _contour_feature(deep_ring, narrow_depth_m, origin),
        ],
    }
    return parse_chart(doc)


def _contour_feature(
    ring: Iterable[NedPoint], min_depth_m: float, origin: GeodeticPoint
) -> dict:
    coords = []
    for p in ring:
        g = ned_to_geodetic(p, origin)
        coords.append([g.lon_deg, g.lat_deg])
    coords.append(list(coords[0]))
    return {
        "type": "Feature",
        "properties": {"kind": "contour", "min_depth": float(min_depth_m)},
        "geometry": {"type": "Polygon", "coordinates": [coords]},
    }
