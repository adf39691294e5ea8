"""Planar geometry for local vessel-traffic computations.

Everything operates in a flat local tangent plane with axes north and east,
in meters. Headings are compass angles: degrees clockwise from true north,
normalized to [0, 360). Geodetic positions enter only at the chart boundary
and are flattened through an equirectangular projection about a chart origin,
which is accurate to well under a meter at the few-kilometer scales charts
cover here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

EARTH_RADIUS_M = 6_371_000.0

# Distance (m) at which a point sitting on a polygon edge still counts as
# inside; keeps grounding checks conservative for positions on the boundary.
ON_EDGE_EPS_M = 1e-9


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class NedPoint:
    """Point in the local plane: north and east offsets from the origin, meters."""

    north: float
    east: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "north", _require_finite("north", self.north))
        object.__setattr__(self, "east", _require_finite("east", self.east))

    def offset(self, d_north: float, d_east: float) -> "NedPoint":
        return NedPoint(self.north + d_north, self.east + d_east)

    def distance_to(self, other: "NedPoint") -> float:
        return math.hypot(other.north - self.north, other.east - self.east)


@dataclass(frozen=True)
class Heading:
    """Compass heading, degrees clockwise from true north, stored in [0, 360)."""

    degrees: float

    def __post_init__(self) -> None:
        deg = _require_finite("degrees", self.degrees) % 360.0
        object.__setattr__(self, "degrees", deg)

    @property
    def radians(self) -> float:
        return math.radians(self.degrees)

    def plus(self, delta_degrees: float) -> "Heading":
        return Heading(self.degrees + delta_degrees)


def angle_diff_deg(a_deg: float, b_deg: float) -> float:
    """Signed smallest rotation from b to a, in (-180, 180]."""
    d = (a_deg - b_deg) % 360.0
    if d > 180.0:
        d -= 360.0
    return d


@dataclass(frozen=True)
class Pose:
    """Position plus heading."""

    position: NedPoint
    heading: Heading


@dataclass(frozen=True)
class Ellipse:
    """Axis-aligned-in-body ellipse: semi-major along `orientation`.

    `orientation` is the compass direction of the semi-major axis; the
    semi-minor axis lies 90 degrees clockwise from it.
    """

    center: NedPoint
    semi_major_m: float
    semi_minor_m: float
    orientation: Heading

    def __post_init__(self) -> None:
        a = _require_finite("semi_major_m", self.semi_major_m)
        b = _require_finite("semi_minor_m", self.semi_minor_m)
        if a <= 0.0 or b <= 0.0:
            raise ValueError("ellipse semi-axes must be positive")
        if a < b:
            raise ValueError(
                f"semi-major axis {a} must not be shorter than semi-minor {b}"
            )
        object.__setattr__(self, "semi_major_m", a)
        object.__setattr__(self, "semi_minor_m", b)


@dataclass(frozen=True)
class GeodeticPoint:
    """WGS-84-style latitude/longitude pair in decimal degrees."""

    lat_deg: float
    lon_deg: float

    def __post_init__(self) -> None:
        lat = _require_finite("lat_deg", self.lat_deg)
        lon = _require_finite("lon_deg", self.lon_deg)
        if not -90.0 <= lat <= 90.0:
            raise ValueError(f"latitude {lat} outside [-90, 90]")
        if not -180.0 <= lon <= 180.0:
            raise ValueError(f"longitude {lon} outside [-180, 180]")
        object.__setattr__(self, "lat_deg", lat)
        object.__setattr__(self, "lon_deg", lon)


def _as_point_tuple(ring: Sequence[NedPoint]) -> tuple[NedPoint, ...]:
    return tuple(ring)


@dataclass(frozen=True)
class Polygon:
    """Simple polygon with optional holes.

    Rings are implicitly closed: the last vertex connects back to the first,
    and vertices must not repeat consecutively (including across the wrap).
    The exterior ring must not self-intersect.
    """

    exterior: tuple[NedPoint, ...]
    holes: tuple[tuple[NedPoint, ...], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        exterior = _as_point_tuple(self.exterior)
        holes = tuple(_as_point_tuple(h) for h in self.holes)
        object.__setattr__(self, "exterior", exterior)
        object.__setattr__(self, "holes", holes)
        _validate_ring(exterior)
        if _ring_self_intersects(exterior):
            raise ValueError("polygon exterior is self-intersecting")
        for hole in holes:
            _validate_ring(hole)

    def rings(self) -> tuple[tuple[NedPoint, ...], ...]:
        return (self.exterior, *self.holes)


def _validate_ring(ring: tuple[NedPoint, ...]) -> None:
    if len(ring) < 3:
        raise ValueError(f"ring needs at least 3 vertices, got {len(ring)}")
    for i, p in enumerate(ring):
        q = ring[(i + 1) % len(ring)]
        if p.north == q.north and p.east == q.east:
            raise ValueError(f"ring repeats vertex at index {i}")


def _orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if cross > 1e-12:
        return 1
    if cross < -1e-12:
        return -1
    return 0


def _on_segment(ax, ay, bx, by, px, py) -> bool:
    # collinearity assumed; checks the bounding box only
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def _segments_intersect(p1: NedPoint, p2: NedPoint, q1: NedPoint, q2: NedPoint) -> bool:
    o1 = _orient(p1.north, p1.east, p2.north, p2.east, q1.north, q1.east)
    o2 = _orient(p1.north, p1.east, p2.north, p2.east, q2.north, q2.east)
    o3 = _orient(q1.north, q1.east, q2.north, q2.east, p1.north, p1.east)
    o4 = _orient(q1.north, q1.east, q2.north, q2.east, p2.north, p2.east)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(p1.north, p1.east, p2.north, p2.east, q1.north, q1.east):
        return True
    if o2 == 0 and _on_segment(p1.north, p1.east, p2.north, p2.east, q2.north, q2.east):
        return True
    if o3 == 0 and _on_segment(q1.north, q1.east, q2.north, q2.east, p1.north, p1.east):
        return True
    if o4 == 0 and _on_segment(q1.north, q1.east, q2.north, q2.east, p2.north, p2.east):
        return True
    return False


def _ring_self_intersects(ring: tuple[NedPoint, ...]) -> bool:
    n = len(ring)
    for i in range(n):
        a1, a2 = ring[i], ring[(i + 1) % n]
        for j in range(i + 1, n):
            # skip the edge itself and the two edges sharing a vertex with it
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            b1, b2 = ring[j], ring[(j + 1) % n]
            if _segments_intersect(a1, a2, b1, b2):
                return True
    return False


def rotate_body_to_ned(p_body: NedPoint, heading: Heading) -> NedPoint:
    """Rotate body-frame components (north=forward, east=starboard) into the plane.

    For heading psi the forward axis points (cos psi, sin psi) in (north, east)
    and the starboard axis 90 degrees clockwise from it, so

        north = fwd * cos(psi) - stbd * sin(psi)
        east  = fwd * sin(psi) + stbd * cos(psi)
    """
    c = math.cos(heading.radians)
    s = math.sin(heading.radians)
    return NedPoint(
        p_body.north * c - p_body.east * s,
        p_body.north * s + p_body.east * c,
    )


def geodetic_to_ned(point: GeodeticPoint, origin: GeodeticPoint) -> NedPoint:
    """Flatten a geodetic point about `origin` with an equirectangular projection."""
    d_lat = math.radians(point.lat_deg - origin.lat_deg)
    d_lon = math.radians(point.lon_deg - origin.lon_deg)
    north = EARTH_RADIUS_M * d_lat
    east = EARTH_RADIUS_M * math.cos(math.radians(origin.lat_deg)) * d_lon
    return NedPoint(north, east)


def ned_to_geodetic(point: NedPoint, origin: GeodeticPoint) -> GeodeticPoint:
    """Inverse of :func:`geodetic_to_ned` about the same origin."""
    lat = origin.lat_deg + math.degrees(point.north / EARTH_RADIUS_M)
    lon = origin.lon_deg + math.degrees(
        point.east / (EARTH_RADIUS_M * math.cos(math.radians(origin.lat_deg)))
    )
    return GeodeticPoint(lat, lon)


def _point_on_ring(p: NedPoint, ring: tuple[NedPoint, ...], eps: float) -> bool:
    n = len(ring)
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        abn = b.north - a.north
        abe = b.east - a.east
        apn = p.north - a.north
        ape = p.east - a.east
        seg2 = abn * abn + abe * abe
        t = 0.0 if seg2 == 0.0 else max(0.0, min(1.0, (apn * abn + ape * abe) / seg2))
        dn = apn - t * abn
        de = ape - t * abe
        if math.hypot(dn, de) <= eps:
            return True
    return False


def point_in_polygon(p: NedPoint, polygon: Polygon, *, eps: float = ON_EDGE_EPS_M) -> bool:
    """Even-odd containment; a point on any ring edge counts as inside."""
    for ring in polygon.rings():
        if _point_on_ring(p, ring, eps):
            return True
    inside = False
    for ring in polygon.rings():
        n = len(ring)
        for i in range(n):
            a = ring[i]
            b = ring[(i + 1) % n]
            if (a.north > p.north) != (b.north > p.north):
                t = (p.north - a.north) / (b.north - a.north)
                east_crossing = a.east + t * (b.east - a.east)
                if east_crossing > p.east:
                    inside = not inside
    return inside


def point_on_polygon_boundary(
    p: NedPoint, polygon: Polygon, *, eps: float = ON_EDGE_EPS_M
) -> bool:
    """True if `p` lies within `eps` of any ring edge of the polygon."""
    return any(_point_on_ring(p, ring, eps) for ring in polygon.rings())


def point_in_region(p: NedPoint, region: Sequence[Polygon]) -> bool:
    """True if `p` is inside (or on the boundary of) any polygon of the set."""
    return any(point_in_polygon(p, poly) for poly in region)


def _ring_to_unit_frame(
    ring: tuple[NedPoint, ...], ellipse: Ellipse
) -> tuple[np.ndarray, np.ndarray]:
    theta = ellipse.orientation.radians
    c, s = math.cos(theta), math.sin(theta)
    pn = np.fromiter((v.north for v in ring), dtype=float, count=len(ring))
    pe = np.fromiter((v.east for v in ring), dtype=float, count=len(ring))
    pn -= ellipse.center.north
    pe -= ellipse.center.east
    # project onto major/minor axes, then scale both to a unit circle
    x = (pn * c + pe * s) / ellipse.semi_major_m
    y = (-pn * s + pe * c) / ellipse.semi_minor_m
    return x, y


def _any_segment_touches_unit_circle(x: np.ndarray, y: np.ndarray) -> bool:
    ax, ay = x, y
    bx, by = np.roll(x, -1), np.roll(y, -1)
    dx, dy = bx - ax, by - ay
    seg2 = dx * dx + dy * dy
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(seg2 > 0.0, -(ax * dx + ay * dy) / np.where(seg2 > 0.0, seg2, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    px = ax + t * dx
    py = ay + t * dy
    return bool(np.any(px * px + py * py <= 1.0))


def ellipse_intersects_region_boundary(ellipse: Ellipse, region: Sequence[Polygon]) -> bool:
    """True if the ellipse leaves the region or touches its boundary.

    The region is a set of polygons (with holes); its boundary is every ring.
    The test maps ring vertices into the frame where the ellipse becomes the
    unit circle and checks segment-to-origin distances, so it is exact up to
    floating point. An ellipse whose center lies outside the region counts as
    intersecting even if no edge comes within reach (the region may be empty).
    """
    if not point_in_region(ellipse.center, region):
        return True
    for polygon in region:
        for ring in polygon.rings():
            x, y = _ring_to_unit_frame(ring, ellipse)
            if _any_segment_touches_unit_circle(x, y):
                return True
    return False
