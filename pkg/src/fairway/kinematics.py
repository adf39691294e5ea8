"""Constant-velocity prediction and closest-point-of-approach metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geo import Heading, NedPoint

KNOT_MPS = 0.514444

# relative speeds below this are treated as zero (parallel tracks)
_REL_SPEED_EPS_MPS = 1e-12


@dataclass(frozen=True)
class VesselState:
    """Track state: where a vessel is and how it moves over ground."""

    position: NedPoint
    sog_mps: float
    cog: Heading
    timestamp_s: float = 0.0

    def __post_init__(self) -> None:
        sog = float(self.sog_mps)
        if not math.isfinite(sog) or sog < 0.0:
            raise ValueError(f"speed over ground must be >= 0, got {self.sog_mps!r}")
        object.__setattr__(self, "sog_mps", sog)

    @property
    def velocity(self) -> tuple[float, float]:
        """(north, east) m/s."""
        return (
            self.sog_mps * math.cos(self.cog.radians),
            self.sog_mps * math.sin(self.cog.radians),
        )


@dataclass(frozen=True)
class CpaResult:
    """Closest point of approach between two constant-velocity tracks."""

    tcpa_s: float
    dcpa_m: float
    own_at_cpa: NedPoint
    target_at_cpa: NedPoint


def predict(state: VesselState, dt_s: float) -> VesselState:
    """Dead-reckon `dt_s` seconds ahead on constant course and speed."""
    if dt_s < 0.0:
        raise ValueError(f"dt must be >= 0, got {dt_s}")
    vn, ve = state.velocity
    return VesselState(
        position=state.position.offset(vn * dt_s, ve * dt_s),
        sog_mps=state.sog_mps,
        cog=state.cog,
        timestamp_s=state.timestamp_s + dt_s,
    )


def cpa(own: VesselState, target: VesselState) -> CpaResult:
    """CPA of two constant-velocity tracks, clamped to the future.

    With zero relative velocity the separation never changes: tcpa is 0 and
    dcpa is the current distance. An opening geometry (separation already
    growing) clamps the analytic time to 0 as well.
    """
    rn = target.position.north - own.position.north
    re = target.position.east - own.position.east
    von, voe = own.velocity
    vtn, vte = target.velocity
    wn, we = vtn - von, vte - voe
    w2 = wn * wn + we * we
    if w2 <= _REL_SPEED_EPS_MPS**2:
        t = 0.0
    else:
        t = max(0.0, -(rn * wn + re * we) / w2)
    dcpa = math.hypot(rn + wn * t, re + we * t)
    return CpaResult(
        tcpa_s=t,
        dcpa_m=dcpa,
        own_at_cpa=predict(own, t).position,
        target_at_cpa=predict(target, t).position,
    )


def collision_risk(
    own: VesselState, target: VesselState, cpa_req_m: float, tcpa_act_s: float
) -> bool:
    """True when the predicted pass is both too close and soon enough to act on.

    Risk requires dcpa < cpa_req and 0 <= tcpa <= tcpa_act.
    """
    result = cpa(own, target)
    return result.dcpa_m < cpa_req_m and 0.0 <= result.tcpa_s <= tcpa_act_s
