"""Geometry tests: frame rotations, projections, containment, ellipse checks."""

import math

import numpy as np
import pytest

from fairway.geo import (
    EARTH_RADIUS_M,
    Ellipse,
    GeodeticPoint,
    Heading,
    NedPoint,
    Polygon,
    angle_diff_deg,
    ellipse_intersects_region_boundary,
    geodetic_to_ned,
    ned_to_geodetic,
    point_in_polygon,
    point_in_region,
    rotate_body_to_ned,
)

import oracles


def square(half: float, cn: float = 0.0, ce: float = 0.0) -> Polygon:
    return Polygon(
        exterior=(
            NedPoint(cn - half, ce - half),
            NedPoint(cn - half, ce + half),
            NedPoint(cn + half, ce + half),
            NedPoint(cn + half, ce - half),
        )
    )


def rectangle(n0: float, n1: float, e0: float, e1: float) -> Polygon:
    return Polygon(
        exterior=(
            NedPoint(n0, e0),
            NedPoint(n0, e1),
            NedPoint(n1, e1),
            NedPoint(n1, e0),
        )
    )


# ---------------------------------------------------------------------------
# value types


def test_heading_normalizes_into_range():
    assert Heading(370.0).degrees == pytest.approx(10.0)
    assert Heading(-30.0).degrees == pytest.approx(330.0)
    assert Heading(360.0).degrees == 0.0


def test_heading_normalization_random():
    rng = np.random.default_rng(20260822)
    for raw in rng.uniform(-1e4, 1e4, size=500):
        h = Heading(float(raw))
        assert 0.0 <= h.degrees < 360.0
        assert math.isclose(
            math.cos(h.radians), math.cos(math.radians(raw)), abs_tol=1e-9
        )


def test_angle_diff_signed_range():
    assert angle_diff_deg(10.0, 350.0) == pytest.approx(20.0)
    assert angle_diff_deg(350.0, 10.0) == pytest.approx(-20.0)
    assert angle_diff_deg(180.0, 0.0) == pytest.approx(180.0)


def test_nonfinite_inputs_rejected():
    with pytest.raises(ValueError):
        NedPoint(float("nan"), 0.0)
    with pytest.raises(ValueError):
        Heading(float("inf"))


def test_geodetic_bounds_enforced():
    with pytest.raises(ValueError):
        GeodeticPoint(91.0, 0.0)
    with pytest.raises(ValueError):
        GeodeticPoint(0.0, 181.0)


def test_ellipse_axis_order_enforced():
    with pytest.raises(ValueError):
        Ellipse(NedPoint(0, 0), 10.0, 20.0, Heading(0.0))
    with pytest.raises(ValueError):
        Ellipse(NedPoint(0, 0), 0.0, 0.0, Heading(0.0))


def test_polygon_validation_rejects_bad_rings():
    with pytest.raises(ValueError):
        Polygon(exterior=(NedPoint(0, 0), NedPoint(1, 1)))
    with pytest.raises(ValueError):
        Polygon(exterior=(NedPoint(0, 0), NedPoint(0, 0), NedPoint(1, 1)))
    # bowtie
    with pytest.raises(ValueError):
        Polygon(
            exterior=(
                NedPoint(0, 0),
                NedPoint(1, 1),
                NedPoint(0, 1),
                NedPoint(1, 0),
            )
        )


# ---------------------------------------------------------------------------
# rotations


def test_rotation_identity_at_zero():
    p = NedPoint(1.0, 0.0)
    out = rotate_body_to_ned(p, Heading(0.0))
    assert out.north == pytest.approx(1.0)
    assert out.east == pytest.approx(0.0)


def test_rotation_quarter_turn_maps_forward_to_east():
    out = rotate_body_to_ned(NedPoint(1.0, 0.0), Heading(90.0))
    assert out.north == pytest.approx(0.0, abs=1e-12)
    assert out.east == pytest.approx(1.0)


def test_rotation_starboard_unit_at_zero_heading_points_east():
    out = rotate_body_to_ned(NedPoint(0.0, 1.0), Heading(0.0))
    assert out.north == pytest.approx(0.0, abs=1e-12)
    assert out.east == pytest.approx(1.0)


def test_rotation_45_degree_diagonal():
    # hand evaluation: both components 286.479, rotated 45 degrees clockwise,
    # lands on the east axis at 286.479 * sqrt(2)
    out = rotate_body_to_ned(NedPoint(286.479, 286.479), Heading(45.0))
    assert out.north == pytest.approx(0.0, abs=1e-9)
    assert out.east == pytest.approx(286.479 * math.sqrt(2), abs=1e-9)
    assert out.east == pytest.approx(405.142, abs=1e-3)


def test_rotation_preserves_norm_and_inverts():
    rng = np.random.default_rng(42)
    for _ in range(500):
        p = NedPoint(float(rng.uniform(-1e4, 1e4)), float(rng.uniform(-1e4, 1e4)))
        h = float(rng.uniform(0.0, 360.0))
        out = rotate_body_to_ned(p, Heading(h))
        r_in = math.hypot(p.north, p.east)
        r_out = math.hypot(out.north, out.east)
        assert r_out == pytest.approx(r_in, rel=1e-9)
        back = rotate_body_to_ned(out, Heading(-h))
        assert back.north == pytest.approx(p.north, rel=1e-9, abs=1e-9)
        assert back.east == pytest.approx(p.east, rel=1e-9, abs=1e-9)


# ---------------------------------------------------------------------------
# geodetic projection


def test_geodetic_origin_maps_to_zero_exactly():
    origin = GeodeticPoint(57.05, 9.94)
    out = geodetic_to_ned(origin, origin)
    assert out.north == 0.0
    assert out.east == 0.0


def test_geodetic_one_degree_north():
    origin = GeodeticPoint(57.0, 9.9)
    out = geodetic_to_ned(GeodeticPoint(58.0, 9.9), origin)
    assert out.north == pytest.approx(math.pi / 180.0 * EARTH_RADIUS_M, rel=1e-12)
    assert out.north == pytest.approx(111194.9266, abs=1e-3)
    assert out.east == 0.0


def test_geodetic_east_offset_scaled_by_latitude():
    origin = GeodeticPoint(57.05, 9.94)
    out = geodetic_to_ned(GeodeticPoint(57.05, 9.95), origin)
    expected = math.cos(math.radians(57.05)) * math.pi / 180.0 * EARTH_RADIUS_M * 0.01
    assert out.east == pytest.approx(expected, rel=1e-12)
    assert out.east == pytest.approx(604.7969, abs=1e-3)
    assert out.north == 0.0


def test_geodetic_round_trip():
    origin = GeodeticPoint(57.0535, 9.9407)
    rng = np.random.default_rng(7)
    for _ in range(200):
        p = NedPoint(float(rng.uniform(-5e3, 5e3)), float(rng.uniform(-5e3, 5e3)))
        geo = ned_to_geodetic(p, origin)
        back = geodetic_to_ned(geo, origin)
        assert back.north == pytest.approx(p.north, abs=1e-6)
        assert back.east == pytest.approx(p.east, abs=1e-6)


# ---------------------------------------------------------------------------
# point in polygon


def test_point_in_unit_square():
    poly = square(0.5)
    assert point_in_polygon(NedPoint(0.0, 0.0), poly)
    assert not point_in_polygon(NedPoint(5.0, 5.0), poly)


def test_point_on_edge_counts_as_inside():
    poly = square(0.5)
    assert point_in_polygon(NedPoint(0.5, 0.0), poly)
    assert point_in_polygon(NedPoint(0.5, 0.5), poly)


def test_point_inside_hole_is_outside():
    outer = square(10.0)
    hole = (
        NedPoint(-1.0, -1.0),
        NedPoint(-1.0, 1.0),
        NedPoint(1.0, 1.0),
        NedPoint(1.0, -1.0),
    )
    poly = Polygon(exterior=outer.exterior, holes=(hole,))
    assert not point_in_polygon(NedPoint(0.0, 0.0), poly)
    assert point_in_polygon(NedPoint(5.0, 5.0), poly)


def test_point_in_region_any_polygon():
    region = [square(1.0, cn=0.0), square(1.0, cn=10.0)]
    assert point_in_region(NedPoint(10.0, 0.0), region)
    assert not point_in_region(NedPoint(5.0, 0.0), region)


def test_point_in_polygon_matches_ray_cast_oracle():
    rng = np.random.default_rng(20260822)
    checked = 0
    while checked < 400:
        pts = rng.uniform(-100.0, 100.0, size=(12, 2))
        hull = oracles.convex_hull(pts)
        if len(hull) < 3:
            continue
        poly = Polygon(exterior=tuple(NedPoint(float(n), float(e)) for n, e in hull))
        pn = rng.uniform(-150.0, 150.0, size=32)
        pe = rng.uniform(-150.0, 150.0, size=32)
        expected = oracles.region_contains_points([poly], pn, pe)
        for i in range(len(pn)):
            p = NedPoint(float(pn[i]), float(pe[i]))
            # stay away from edges where the two edge conventions differ
            if _min_edge_distance(p, poly) < 1e-6:
                continue
            assert point_in_polygon(p, poly) == bool(expected[i])
            checked += 1


def _min_edge_distance(p: NedPoint, poly: Polygon) -> float:
    best = math.inf
    for ring in poly.rings():
        n = len(ring)
        for i in range(n):
            a, b = ring[i], ring[(i + 1) % n]
            abn, abe = b.north - a.north, b.east - a.east
            seg2 = abn * abn + abe * abe
            t = 0.0 if seg2 == 0 else max(0.0, min(1.0, ((p.north - a.north) * abn + (p.east - a.east) * abe) / seg2))
            best = min(best, math.hypot(p.north - a.north - t * abn, p.east - a.east - t * abe))
    return best


# ---------------------------------------------------------------------------
# ellipse vs region boundary


def big_half_plane_east_below(limit: float) -> Polygon:
    return rectangle(-1e4, 1e4, -1e4, limit)


def test_ellipse_clear_of_boundary():
    e = Ellipse(NedPoint(0.0, 0.0), 100.0, 20.0, Heading(0.0))
    region = [big_half_plane_east_below(25.0)]
    assert not ellipse_intersects_region_boundary(e, region)
    assert not oracles.ellipse_blocked_sampled(e, region)


def test_ellipse_crosses_near_boundary():
    e = Ellipse(NedPoint(0.0, 0.0), 100.0, 20.0, Heading(0.0))
    region = [big_half_plane_east_below(15.0)]
    assert ellipse_intersects_region_boundary(e, region)
    assert oracles.ellipse_blocked_sampled(e, region)


def test_rotated_ellipse_reaches_with_major_axis():
    e = Ellipse(NedPoint(0.0, 0.0), 100.0, 20.0, Heading(90.0))
    region = [big_half_plane_east_below(50.0)]
    assert ellipse_intersects_region_boundary(e, region)
    assert oracles.ellipse_blocked_sampled(e, region)


def test_ellipse_center_outside_region_intersects():
    e = Ellipse(NedPoint(0.0, 500.0), 10.0, 5.0, Heading(0.0))
    region = [big_half_plane_east_below(25.0)]
    assert ellipse_intersects_region_boundary(e, region)
    assert oracles.ellipse_blocked_sampled(e, region)


def test_ellipse_in_empty_region_intersects():
    e = Ellipse(NedPoint(0.0, 0.0), 10.0, 5.0, Heading(0.0))
    assert ellipse_intersects_region_boundary(e, [])


def test_ellipse_vs_hole_boundary():
    outer = square(1000.0)
    hole = (
        NedPoint(-5.0, -5.0),
        NedPoint(-5.0, 5.0),
        NedPoint(5.0, 5.0),
        NedPoint(5.0, -5.0),
    )
    poly = Polygon(exterior=outer.exterior, holes=(hole,))
    near = Ellipse(NedPoint(0.0, 20.0), 16.0, 4.0, Heading(90.0))
    far = Ellipse(NedPoint(0.0, 40.0), 16.0, 4.0, Heading(0.0))
    assert ellipse_intersects_region_boundary(near, [poly])
    assert not ellipse_intersects_region_boundary(far, [poly])


def test_ellipse_check_matches_sampling_oracle_randomized():
    rng = np.random.default_rng(987654321)
    agree_true = agree_false = 0
    cases = 0
    while cases < 1000:
        pts = rng.uniform(-150.0, 150.0, size=(rng.integers(6, 20), 2))
        hull = oracles.convex_hull(pts)
        if len(hull) < 3:
            continue
        poly = Polygon(exterior=tuple(NedPoint(float(n), float(e)) for n, e in hull))
        a = float(10.0 ** rng.uniform(0.3, 2.0))
        b = a * float(rng.uniform(0.2, 1.0))
        e = Ellipse(
            NedPoint(float(rng.uniform(-120, 120)), float(rng.uniform(-120, 120))),
            a,
            b,
            Heading(float(rng.uniform(0.0, 360.0))),
        )
        # skip grazing contacts where sampling density decides the answer
        clearance = oracles.unit_frame_min_edge_distance(e, [poly])
        if abs(clearance - 1.0) < 1e-6:
            continue
        got = ellipse_intersects_region_boundary(e, [poly])
        want = oracles.ellipse_blocked_sampled(e, [poly])
        assert got == want
        cases += 1
        if got:
            agree_true += 1
        else:
            agree_false += 1
    assert agree_true > 0 and agree_false > 0
