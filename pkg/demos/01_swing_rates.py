"""How fast can a ship of a given size actually turn?

The library carries a table of published turning-circle radii for fourteen
vessels, from a 33 m fishing boat to a 363 m bulk carrier. Dividing a full
turn by the circle's circumference gives the rate of swing: degrees of
heading change per meter travelled. Big ships swing slowly; that single
number is what the restriction estimate feeds on.

Run:  python3 demos/01_swing_rates.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from fairway.maneuver import TURNING_CIRCLES, scaled_swing_rate, swing_rate

OUT = pathlib.Path(__file__).parent / "output"


def main() -> None:
    OUT.mkdir(exist_ok=True)

    rows = sorted(TURNING_CIRCLES, key=lambda r: r.length_m)
    labels = [f"{r.vessel_type} ({r.length_m:.0f} m)" for r in rows]
    hard_over = [swing_rate(r.turn_radius_m).deg_per_m for r in rows]
    # alpha scales the hard-over figure down to an ordinary evasive turn
    realistic = [scaled_swing_rate(swing_rate(r.turn_radius_m), 0.4).deg_per_m for r in rows]

    fig, ax = plt.subplots(figsize=(9, 5.5))
    y = range(len(rows))
    ax.barh(y, hard_over, color="#9ecae1", label="hard-over rudder")
    ax.barh(y, realistic, color="#3182bd", label="scaled (alpha = 0.4)")
    ax.set_yticks(list(y), labels, fontsize=8)
    ax.set_xlabel("rate of swing (deg per meter travelled)")
    ax.axvline(0.1, color="crimson", linestyle="--", linewidth=1, label="0.1 deg/m reference")
    ax.legend(loc="lower right")
    ax.set_title("Turning-circle table as swing rates")
    fig.tight_layout()
    target = OUT / "swing_rates.png"
    fig.savefig(target, dpi=130)

    slowest = min(rows, key=lambda r: swing_rate(r.turn_radius_m).deg_per_m)
    rate = swing_rate(slowest.turn_radius_m).deg_per_m
    print(f"slowest swinger: {slowest.vessel_type}, {slowest.length_m} m, "
          f"radius {slowest.turn_radius_m} m -> {rate:.5f} deg/m")
    print("note: the conventional round figure for the fleet minimum is 0.1 deg/m;")
    print(f"      the exact table minimum computes to {rate:.5f} deg/m.")
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
