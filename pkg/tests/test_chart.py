"""Chart loading, validation, feasibility, and the synthetic channel."""

import copy
import json
import math

import numpy as np
import pytest

from fairway.chart import (
    ChartError,
    DepthContour,
    SeaChart,
    feasible_region,
    load_chart,
    parse_chart,
    save_chart,
    synth_channel_chart,
)
from fairway.geo import GeodeticPoint, NedPoint, ned_to_geodetic, point_in_region

ORIGIN = GeodeticPoint(57.05, 9.94)


def geo_ring(ned_corners, origin=ORIGIN):
    """Closed lon/lat ring from NED (north, east) corner tuples."""
    coords = []
    for n, e in ned_corners:
        g = ned_to_geodetic(NedPoint(n, e), origin)
        coords.append([g.lon_deg, g.lat_deg])
    coords.append(list(coords[0]))
    return coords


def rect(n0, n1, e0, e1):
    return [(n0, e0), (n0, e1), (n1, e1), (n1, e0)]


def contour_feature(ned_corners, min_depth, origin=ORIGIN):
    return {
        "type": "Feature",
        "properties": {"kind": "contour", "min_depth": min_depth},
        "geometry": {"type": "Polygon", "coordinates": [geo_ring(ned_corners, origin)]},
    }


def land_feature(ned_corners, origin=ORIGIN):
    return {
        "type": "Feature",
        "properties": {"kind": "land"},
        "geometry": {"type": "Polygon", "coordinates": [geo_ring(ned_corners, origin)]},
    }


@pytest.fixture
def two_contour_doc():
    """2 m contour 4 km x 2 km, 6 m contour inside it, land strip to the north."""
    return {
        "type": "FeatureCollection",
        "origin": [ORIGIN.lon_deg, ORIGIN.lat_deg],
        "features": [
            contour_feature(rect(-1000, 1000, -2000, 2000), 2.0),
            contour_feature(rect(-400, 400, -1500, 1500), 6.0),
            land_feature(rect(1100, 1400, -2000, 2000)),
        ],
    }


def test_load_fixture_counts(tmp_path, two_contour_doc):
    path = tmp_path / "chart.geojson"
    path.write_text(json.dumps(two_contour_doc))
    chart = load_chart(path)
    assert len(chart.contours) == 2
    assert len(chart.land) == 1
    assert sorted(c.min_depth_m for c in chart.contours) == [2.0, 6.0]


def test_contours_converted_to_ned(two_contour_doc):
    chart = parse_chart(two_contour_doc)
    deep = next(c for c in chart.contours if c.min_depth_m == 6.0)
    norths = sorted({round(v.north, 3) for v in deep.area.exterior})
    easts = sorted({round(v.east, 3) for v in deep.area.exterior})
    assert norths == [-400.0, 400.0]
    assert easts == [-1500.0, 1500.0]


def test_two_vertex_ring_rejected(two_contour_doc):
    doc = copy.deepcopy(two_contour_doc)
    ring = doc["features"][0]["geometry"]["coordinates"][0]
    doc["features"][0]["geometry"]["coordinates"][0] = [ring[0], ring[1], ring[0]]
    with pytest.raises(ChartError):
        parse_chart(doc)


def test_unclosed_ring_rejected(two_contour_doc):
    doc = copy.deepcopy(two_contour_doc)
    doc["features"][0]["geometry"]["coordinates"][0].pop()
    with pytest.raises(ChartError, match="not closed"):
        parse_chart(doc)


def test_self_intersecting_ring_rejected():
    bowtie = [(0, 0), (400, 400), (0, 400), (400, 0)]
    doc = {
        "type": "FeatureCollection",
        "origin": [ORIGIN.lon_deg, ORIGIN.lat_deg],
        "features": [contour_feature(bowtie, 2.0)],
    }
    with pytest.raises(ChartError, match="self-intersect"):
        parse_chart(doc)


def test_non_nested_contours_rejected(two_contour_doc):
    doc = copy.deepcopy(two_contour_doc)
    # move the 6 m contour outside the 2 m one
    doc["features"][1] = contour_feature(rect(-400, 400, 2500, 3500), 6.0)
    with pytest.raises(ChartError, match="not nested"):
        parse_chart(doc)


def test_land_inside_deep_contour_rejected(two_contour_doc):
    doc = copy.deepcopy(two_contour_doc)
    doc["features"][2] = land_feature(rect(-100, 100, -100, 100))
    with pytest.raises(ChartError, match="overlaps"):
        parse_chart(doc)


def test_unknown_kind_rejected(two_contour_doc):
    doc = copy.deepcopy(two_contour_doc)
    doc["features"][0]["properties"]["kind"] = "buoy"
    with pytest.raises(ChartError, match="unknown kind"):
        parse_chart(doc)


def test_contour_without_depth_rejected(two_contour_doc):
    doc = copy.deepcopy(two_contour_doc)
    del doc["features"][0]["properties"]["min_depth"]
    with pytest.raises(ChartError, match="min_depth"):
        parse_chart(doc)


def test_missing_origin_rejected(two_contour_doc):
    doc = copy.deepcopy(two_contour_doc)
    del doc["origin"]
    with pytest.raises(ChartError, match="origin"):
        parse_chart(doc)


def test_bad_json_file_rejected(tmp_path):
    path = tmp_path / "broken.geojson"
    path.write_text("{not json")
    with pytest.raises(ChartError, match="JSON"):
        load_chart(path)


# ---------------------------------------------------------------------------
# feasibility


def test_feasible_deep_draught_selects_deep_contour_only(two_contour_doc):
    chart = parse_chart(two_contour_doc)
    region = feasible_region(chart, draught_m=5.0, ukc_fraction=0.1)
    assert region.required_depth_m == pytest.approx(5.5)
    assert [c.min_depth_m for c in region.contours] == [6.0]


def test_feasible_shallow_draught_keeps_both_contours(two_contour_doc):
    chart = parse_chart(two_contour_doc)
    region = feasible_region(chart, draught_m=0.5, ukc_fraction=0.1)
    assert sorted(c.min_depth_m for c in region.contours) == [2.0, 6.0]
    # the navigable outline is the outermost polygon only
    assert len(region.outline) == 1
    norths = {round(v.north) for v in region.outline[0].exterior}
    assert norths == {-1000, 1000}


def test_feasible_excessive_draught_is_empty(two_contour_doc):
    chart = parse_chart(two_contour_doc)
    region = feasible_region(chart, draught_m=50.0, ukc_fraction=0.0)
    assert region.is_empty
    assert region.polygons == ()


def test_feasible_boundary_inclusive(two_contour_doc):
    chart = parse_chart(two_contour_doc)
    region = feasible_region(chart, draught_m=6.0, ukc_fraction=0.0)
    assert 6.0 in [c.min_depth_m for c in region.contours]


def test_feasible_boundary_survives_float_products():
    doc = {
        "type": "FeatureCollection",
        "origin": [ORIGIN.lon_deg, ORIGIN.lat_deg],
        "features": [contour_feature(rect(-100, 100, -100, 100), 5.5)],
    }
    chart = parse_chart(doc)
    # 5.0 * 1.1 = 5.500000000000001 in binary floats; must still qualify
    region = feasible_region(chart, draught_m=5.0, ukc_fraction=0.1)
    assert len(region.contours) == 1


def test_feasible_monotone_in_draught(two_contour_doc):
    chart = parse_chart(two_contour_doc)
    rng = np.random.default_rng(3)
    for _ in range(50):
        d1 = float(rng.uniform(0.2, 8.0))
        d2 = d1 + float(rng.uniform(0.01, 4.0))
        shallow = feasible_region(chart, d1).polygons
        deep = feasible_region(chart, d2).polygons
        for _ in range(20):
            p = NedPoint(float(rng.uniform(-1200, 1200)), float(rng.uniform(-2200, 2200)))
            if point_in_region(p, deep):
                assert point_in_region(p, shallow)


def test_feasible_rejects_bad_arguments(two_contour_doc):
    chart = parse_chart(two_contour_doc)
    with pytest.raises(ValueError):
        feasible_region(chart, draught_m=0.0)
    with pytest.raises(ValueError):
        feasible_region(chart, draught_m=3.0, ukc_fraction=-0.1)


# ---------------------------------------------------------------------------
# synthetic channel


def test_synth_channel_narrow_width_at_midpoint():
    chart = synth_channel_chart(4000, 1200, 300, 9, 3)
    deep = next(c for c in chart.contours if c.min_depth_m == 9.0)
    mid_norths = sorted(
        round(v.north, 6) for v in deep.area.exterior if abs(v.east) <= 4000 / 6 + 1
    )
    assert mid_norths == pytest.approx([-150.0, -150.0, 150.0, 150.0], abs=1e-6)


def test_synth_channel_flank_spans_full_width():
    chart = synth_channel_chart(4000, 1200, 300, 9, 3)
    flank = next(c for c in chart.contours if c.min_depth_m == 3.0)
    assert {round(v.north, 6) for v in flank.area.exterior} == {-600.0, 600.0}
    assert {round(v.east, 6) for v in flank.area.exterior} == {-2000.0, 2000.0}


def test_synth_uniform_channel_is_two_rectangles():
    chart = synth_channel_chart(4000, 1200, 1200, 9, 3)
    assert len(chart.contours) == 2
    for contour in chart.contours:
        assert len(contour.area.exterior) == 4
    deep = next(c for c in chart.contours if c.min_depth_m == 9.0)
    assert {round(v.north, 6) for v in deep.area.exterior} == {-600.0, 600.0}


def test_synth_channel_parameter_validation():
    with pytest.raises(ValueError):
        synth_channel_chart(4000, 1200, 1300, 9, 3)
    with pytest.raises(ValueError):
        synth_channel_chart(4000, 1200, 300, 3, 9)
    with pytest.raises(ValueError):
        synth_channel_chart(-1, 1200, 300, 9, 3)


def test_synth_round_trips_bit_identically(tmp_path):
    chart = synth_channel_chart(4000, 1200, 300, 9, 3)
    p1 = tmp_path / "a.geojson"
    p2 = tmp_path / "b.geojson"
    save_chart(chart, p1)
    save_chart(load_chart(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_fixture_round_trips_bit_identically(tmp_path, two_contour_doc):
    src = tmp_path / "src.geojson"
    src.write_text(json.dumps(two_contour_doc))
    p1 = tmp_path / "a.geojson"
    p2 = tmp_path / "b.geojson"
    save_chart(load_chart(src), p1)
    save_chart(load_chart(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_depth_contour_rejects_negative_depth(two_contour_doc):
    chart = parse_chart(two_contour_doc)
    with pytest.raises(ChartError):
        DepthContour(min_depth_m=-1.0, area=chart.contours[0].area)
