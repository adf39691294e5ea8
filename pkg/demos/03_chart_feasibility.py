"""Which parts of a channel can a deep ship actually use?

A chart is a set of depth contours. Feasibility for a given draught keeps
only the contours at least as deep as draught plus a 10 percent
under-keel clearance. This demo builds the synthetic narrowing channel
(wide approach funneling into a 70 m dredged cut, shallow flanks either
side) and shades the water that remains available to a 3 m and a 5 m
draught vessel.

Run:  python3 demos/03_chart_feasibility.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import Polygon as MplPolygon

from fairway.chart import feasible_region, synth_channel_chart

OUT = pathlib.Path(__file__).parent / "output"

DRAUGHTS = [3.0, 5.0]


def main() -> None:
    OUT.mkdir(exist_ok=True)
    chart = synth_channel_chart(
        length_m=6000.0,
        wide_width_m=1200.0,
        narrow_width_m=70.0,
        narrow_depth_m=9.0,
        flank_depth_m=4.0,
    )

    fig, axes = plt.subplots(1, len(DRAUGHTS), figsize=(11, 6), sharey=True)
    for ax, draught in zip(axes, DRAUGHTS):
        # chart outlines first, faint
        for contour in chart.contours:
            ring = list(contour.area.exterior) + [contour.area.exterior[0]]
            xs = [p.east for p in ring]
            ys = [p.north for p in ring]
            ax.plot(xs, ys, color="0.75", linewidth=0.8)

        region = feasible_region(chart, draught)
        for poly in region.outline:
            ring = [(p.east, p.north) for p in poly.exterior]
            ax.add_patch(MplPolygon(ring, closed=True, facecolor="#74c476", alpha=0.55,
                                    edgecolor="#238b45", linewidth=1.2))

        ax.set_title(f"draught {draught:.1f} m -> needs {region.required_depth_m:.1f} m")
        ax.set_xlabel("east (m)")
        ax.set_aspect("equal")
    axes[0].set_ylabel("north (m)")
    fig.suptitle("Feasible water in the narrowing channel (shaded)")
    fig.tight_layout()
    target = OUT / "chart_feasibility.png"
    fig.savefig(target, dpi=130)

    for draught in DRAUGHTS:
        region = feasible_region(chart, draught)
        print(f"draught {draught:.1f} m: required depth {region.required_depth_m:.2f} m, "
              f"{len(region.outline)} feasible outline polygon(s)")
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
