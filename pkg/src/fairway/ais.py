"""Transponder track ingest and fleet dimension statistics.

Reads position reports from CSV, filters them to a geographic window, and
summarises vessel dimensions per unique vessel. Sizing the simulator's
default target (and sanity-checking the turning-circle table against the
local fleet) starts from these numbers.
"""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

CSV_COLUMNS = [
    "mmsi",
    "timestamp_iso8601",
    "lat",
    "lon",
    "sog_kn",
    "cog_deg",
    "length_m",
    "breadth_m",
    "draught_m",
    "nav_status",
]

_DIMENSIONS = ("length_m", "breadth_m", "draught_m")


@dataclass(frozen=True)
class AisRecord:
    mmsi: int
    timestamp: datetime
    lat_deg: float
    lon_deg: float
    sog_kn: float | None
    cog_deg: float | None
    length_m: float | None
    breadth_m: float | None
    draught_m: float | None
    nav_status: str | None


@dataclass(frozen=True)
class RegionFilter:
    lat_min_deg: float
    lat_max_deg: float
    lon_min_deg: float
    lon_max_deg: float

    def __post_init__(self) -> None:
        if not (self.lat_min_deg < self.lat_max_deg):
            raise ValueError("lat_min_deg must be below lat_max_deg")
        if not (self.lon_min_deg < self.lon_max_deg):
            raise ValueError("lon_min_deg must be below lon_max_deg")

    def contains(self, record: AisRecord) -> bool:
        # bounds are inclusive on every edge
        return (
            self.lat_min_deg <= record.lat_deg <= self.lat_max_deg
            and self.lon_min_deg <= record.lon_deg <= self.lon_max_deg
        )


@dataclass(frozen=True)
class StatSummary:
    count: int
    mean: float
    median: float
    std: float
    minimum: float
    maximum: float

    def __post_init__(self) -> None:
        if self.count <= 0:
            raise ValueError("summary requires at least one value")
        if not (self.minimum <= self.median <= self.maximum):
            raise ValueError("median must sit between minimum and maximum")
        if self.std < 0.0:
            raise ValueError("standard deviation cannot be negative")


@dataclass(frozen=True)
class DimensionStats:
    vessels: int
    length: StatSummary | None
    breadth: StatSummary | None
    draught: StatSummary | None


def _parse_timestamp(text: str) -> datetime:
    # fromisoformat on 3.10 rejects a trailing Z; normalize it first
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    return datetime.fromisoformat(text)


def _opt_float(text: str) -> float | None:
    if text == "":
        return None
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {text!r}")
    return value


def _parse_row(row: dict[str, str]) -> AisRecord:
    lat = float(row["lat"])
    lon = float(row["lon"])
    if not (-90.0 <= lat <= 90.0):
        raise ValueError(f"latitude {lat} out of range")
    if not (-180.0 <= lon <= 180.0):
        raise ValueError(f"longitude {lon} out of range")
    for name in _DIMENSIONS:
        if row[name] != "" and float(row[name]) <= 0.0:
            raise ValueError(f"{name} must be positive when present")
    return AisRecord(
        mmsi=int(row["mmsi"]),
        timestamp=_parse_timestamp(row["timestamp_iso8601"]),
        lat_deg=lat,
        lon_deg=lon,
        sog_kn=_opt_float(row["sog_kn"]),
        cog_deg=_opt_float(row["cog_deg"]),
        length_m=_opt_float(row["length_m"]),
        breadth_m=_opt_float(row["breadth_m"]),
        draught_m=_opt_float(row["draught_m"]),
        nav_status=row["nav_status"] or None,
    )


def parse_ais_csv(path: str | Path) -> tuple[list[AisRecord], int]:
    """Read position reports, dropping malformed rows.

    Returns the good records plus the count of rows that failed to parse.
    The header must match CSV_COLUMNS exactly; a wrong header is an error,
    a bad row is merely skipped.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise ValueError(
                f"unexpected CSV header {reader.fieldnames}; want {CSV_COLUMNS}"
            )
        records: list[AisRecord] = []
        dropped = 0
        for row in reader:
            if None in row or any(v is None for v in row.values()):
                dropped += 1  # ragged row
                continue
            try:
                records.append(_parse_row(row))
            except (ValueError, KeyError):
                dropped += 1
    return records, dropped


def filter_region(records: list[AisRecord], region: RegionFilter) -> list[AisRecord]:
    return [r for r in records if region.contains(r)]


def _summary(values: list[float]) -> StatSummary:
    return StatSummary(
        count=len(values),
        mean=statistics.fmean(values),
        median=statistics.median(values),
        std=statistics.pstdev(values),
        minimum=min(values),
        maximum=max(values),
    )


def dimension_stats(records: list[AisRecord]) -> DimensionStats:
    """Per-vessel dimension summary.

    Each vessel (unique mmsi) contributes one value per dimension: the last
    non-missing report in timestamp order. Vessels never reporting a
    dimension simply do not contribute to that dimension's summary.
    """
    latest: dict[int, dict[str, tuple[datetime, float]]] = {}
    seen: set[int] = set()
    for record in sorted(records, key=lambda r: (r.timestamp, r.mmsi)):
        seen.add(record.mmsi)
        slot = latest.setdefault(record.mmsi, {})
        for name in _DIMENSIONS:
            value = getattr(record, name)
            if value is not None:
                slot[name] = (record.timestamp, value)
    per_dim: dict[str, list[float]] = {name: [] for name in _DIMENSIONS}
    for slot in latest.values():
        for name, (_, value) in slot.items():
            per_dim[name].append(value)
    return DimensionStats(
        vessels=len(seen),
        length=_summary(per_dim["length_m"]) if per_dim["length_m"] else None,
        breadth=_summary(per_dim["breadth_m"]) if per_dim["breadth_m"] else None,
        draught=_summary(per_dim["draught_m"]) if per_dim["draught_m"] else None,
    )


def stats_to_record(stats: DimensionStats) -> dict:
    def render(summary: StatSummary | None) -> dict | None:
        if summary is None:
            return None
        return {
            "count": summary.count,
            "mean": summary.mean,
            "median": summary.median,
            "std": summary.std,
            "min": summary.minimum,
            "max": summary.maximum,
        }

    return {
        "vessels": stats.vessels,
        "length_m": render(stats.length),
        "breadth_m": render(stats.breadth),
        "draught_m": render(stats.draught),
    }


def format_stats_table(stats: DimensionStats) -> str:
    """Aligned text table, one row per dimension."""
    header = f"{'dimension':<12}{'n':>5}{'mean':>10}{'median':>10}{'std':>10}{'min':>10}{'max':>10}"
    lines = [header, "-" * len(header)]
    rows = (("length_m", stats.length), ("breadth_m", stats.breadth), ("draught_m", stats.draught))
    for name, summary in rows:
        if summary is None:
            lines.append(f"{name:<12}{0:>5}{'-':>10}{'-':>10}{'-':>10}{'-':>10}{'-':>10}")
            continue
        lines.append(
            f"{name:<12}{summary.count:>5}{summary.mean:>10.2f}{summary.median:>10.2f}"
            f"{summary.std:>10.2f}{summary.minimum:>10.2f}{summary.maximum:>10.2f}"
        )
    lines.append(f"vessels: {stats.vessels}")
    return "\n".join(lines)
