"""The two bundled scenarios, side by side.

Same encounter twice: own ship creeping south at 2 knots, a 50 m target
crossing westbound at 7 knots on a collision course from port. In the
first scenario the target is funneled into a 70 m dredged cut with
4 m flanks it cannot use, every escape arc it might steer runs its
safety ellipse into the boundary of usable water, and the stand-on duty
flips onto us. In the second the channel stays 1200 m wide all the way
and the ordinary crossing rules hold.

The plot shows both runs: tracks, positions at closest approach, the
water feasible for the target's draught, and the fan of escape arcs the
estimate actually swept (red where blocked, green where clear).

Run:  python3 demos/05_scenario_walkthrough.py
"""

import math
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import Polygon as MplPolygon

from fairway.chart import feasible_region
from fairway.sim import bundled_scenario, load_scenario, run_scenario

OUT = pathlib.Path(__file__).parent / "output"


def draw_ellipse(ax, ellipse, **kwargs):
    th = ellipse.orientation.radians
    c, s = math.cos(th), math.sin(th)
    ring = []
    for k in range(48):
        a = 2.0 * math.pi * k / 48
        f = ellipse.semi_major_m * math.cos(a)
        g = ellipse.semi_minor_m * math.sin(a)
        ring.append((ellipse.center.east + f * s + g * c,
                     ellipse.center.north + f * c - g * s))
    ax.add_patch(MplPolygon(ring, closed=True, fill=False, **kwargs))


def draw_trace(ax, trace, title):
    chart = trace.chart
    cfg = trace.config

    region = feasible_region(chart, cfg.target.draught_m, cfg.ukc_fraction)
    for poly in region.outline:
        ring = [(p.east, p.north) for p in poly.exterior]
        ax.add_patch(MplPolygon(ring, closed=True, facecolor="#c6dbef", alpha=0.6,
                                edgecolor="#6baed6", linewidth=0.8, zorder=0))

    own_e = [s.own.position.east for s in trace.steps]
    own_n = [s.own.position.north for s in trace.steps]
    tgt_e = [s.target.position.east for s in trace.steps]
    tgt_n = [s.target.position.north for s in trace.steps]
    ax.plot(own_e, own_n, color="black", linewidth=1.4, label="own track")
    ax.plot(tgt_e, tgt_n, color="#756bb1", linewidth=1.4, label="target track")

    if trace.cpa_own is not None:
        ax.plot(trace.cpa_own.east, trace.cpa_own.north, "k*", markersize=12)
        ax.plot(trace.cpa_target.east, trace.cpa_target.north, "*",
                color="#756bb1", markersize=12)

    assessment = trace.assessment
    if assessment is not None and assessment.maneuver is not None:
        for probe in assessment.maneuver.probes:
            for samples in (probe.cw, probe.ccw):
                if not samples:
                    continue
                xs = [probe.start.position.east] + [a.pose.position.east for a in samples]
                ys = [probe.start.position.north] + [a.pose.position.north for a in samples]
                blocked = any(a.blocked for a in samples)
                ax.plot(xs, ys, color="crimson" if blocked else "#31a354",
                        linewidth=1.0, alpha=0.9)
                # sketch the swept domain at the first violation, or at the tip
                hit = next((a for a in samples if a.blocked), samples[-1])
                draw_ellipse(ax, hit.ellipse,
                             edgecolor="crimson" if blocked else "#31a354",
                             linewidth=0.7, alpha=0.6)

    ax.set_title(f"{title}\noutcome: {trace.outcome}")
    ax.set_xlabel("east (m)")
    ax.set_ylabel("north (m)")
    ax.set_aspect("equal")
    ax.set_xlim(-700, 1300)
    ax.set_ylim(-500, 1300)


def main() -> None:
    OUT.mkdir(exist_ok=True)
    fig, axes = plt.subplots(1, 2, figsize=(13, 7))
    for ax, name in zip(axes, ("restricted", "unrestricted")):
        config = load_scenario(bundled_scenario(name))
        trace = run_scenario(config)
        draw_trace(ax, trace, name)

        print(f"scenario {name}: outcome {trace.outcome}")
        assessment = trace.assessment
        if assessment is not None:
            step = trace.steps[trace.trigger_index]
            print(f"  triggered at t={step.t_s:.0f} s "
                  f"(tcpa {step.tcpa_s:.1f} s, dcpa {step.dcpa_m:.1f} m)")
            print(f"  encounter {assessment.encounter.kind.value}, "
                  f"events {list(assessment.events)}, "
                  f"trace {' -> '.join(assessment.automaton_trace)}")
            print(f"  own duty {assessment.initial_duty_own.value}"
                  f" -> {assessment.final_duty_own.value}")

    axes[0].legend(loc="lower left", fontsize=8)
    fig.suptitle("Crossing from port in a narrow cut vs open water")
    fig.tight_layout()
    target = OUT / "scenario_walkthrough.png"
    fig.savefig(target, dpi=130)
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
