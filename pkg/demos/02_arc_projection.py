"""Where does a turning ship end up?

Given a starting pose and a swing rate, the projected track is a circular
arc. This demo sweeps a handful of rates in both directions from the same
start and draws the family of escape arcs a target vessel could follow.
A rate of zero degenerates to a straight line, which the projection
handles as its own case.

Run:  python3 demos/02_arc_projection.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fairway.geo import Heading, NedPoint, Pose
from fairway.maneuver import SwingRate, TurnDirection, project_arc

OUT = pathlib.Path(__file__).parent / "output"

RATES = [0.05, 0.1, 0.2, 0.5]
ARC_LENGTH_M = 900.0


def arc_points(start: Pose, rate: SwingRate, direction: TurnDirection, n: int = 120):
    east = np.empty(n + 1)
    north = np.empty(n + 1)
    for i in range(n + 1):
        pose = project_arc(start, rate, ARC_LENGTH_M * i / n, direction)
        east[i] = pose.position.east
        north[i] = pose.position.north
    return east, north


def main() -> None:
    OUT.mkdir(exist_ok=True)
    start = Pose(NedPoint(0.0, 0.0), Heading(0.0))

    fig, ax = plt.subplots(figsize=(7, 7))
    cmap = plt.get_cmap("viridis")
    for k, rate_value in enumerate(RATES):
        color = cmap(k / (len(RATES) - 1))
        rate = SwingRate(rate_value)
        for direction, style in ((TurnDirection.CW, "-"), (TurnDirection.CCW, "--")):
            east, north = arc_points(start, rate, direction)
            label = f"{rate_value} deg/m" if direction is TurnDirection.CW else None
            ax.plot(east, north, style, color=color, label=label)

    # zero rate: straight ahead
    straight = project_arc(start, SwingRate(0.0), ARC_LENGTH_M, TurnDirection.CW)
    ax.plot([0.0, straight.position.east], [0.0, straight.position.north],
            color="gray", linewidth=2, label="0 deg/m (straight)")

    ax.plot(0, 0, "k^", markersize=10, label="start (heading north)")
    ax.set_aspect("equal")
    ax.set_xlabel("east (m)")
    ax.set_ylabel("north (m)")
    ax.set_title(f"Escape arcs over {ARC_LENGTH_M:.0f} m of track\nsolid = starboard turn, dashed = port turn")
    ax.legend(loc="lower left", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    target = OUT / "arc_projection.png"
    fig.savefig(target, dpi=130)
    print(f"wrote {target}")

    # sanity: after 360/rate meters the arc closes on itself
    rate = SwingRate(0.2)
    closed = project_arc(start, rate, 360.0 / 0.2, TurnDirection.CW)
    print(f"full-circle closure error at 0.2 deg/m: "
          f"{start.position.distance_to(closed.position):.2e} m")


if __name__ == "__main__":
    main()
