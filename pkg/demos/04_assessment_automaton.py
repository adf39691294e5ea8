"""Walking the duty-inversion automaton by hand.

The assessment machine has four states. D1 is the resting state: nothing
to decide, or the decision came back negative. D2 asks whether the target
itself reports being restricted, D3 asks whether the geometry estimate
says so, and D4 is the inversion verdict. This demo prints the full
transition table, runs the three canonical event sequences, checks the
machine is non-blocking, and writes a Graphviz dot file you can render
with `dot -Tpng`.

Run:  python3 demos/04_assessment_automaton.py
"""

import pathlib

from fairway.automaton import build_g_d, is_nonblocking, run, to_dot

OUT = pathlib.Path(__file__).parent / "output"

SEQUENCES = {
    "target would not give way": ["not_d1"],
    "target reports restricted": ["d1", "d2"],
    "estimate says restricted": ["d1", "not_d2", "d3"],
    "estimate says free": ["d1", "not_d2", "not_d3"],
}


def main() -> None:
    OUT.mkdir(exist_ok=True)
    g_d = build_g_d()

    print("transition table:")
    for (src, event), dst in sorted(g_d.transitions.items()):
        print(f"  {src} --{event:>7}--> {dst}")
    print(f"initial: {g_d.initial}   marked: {sorted(g_d.marked)}")
    print(f"non-blocking: {is_nonblocking(g_d)}")
    print()

    for label, events in SEQUENCES.items():
        result = run(g_d, events)
        arrow = " -> ".join(result.trace)
        verdict = "inversion" if result.final_state == "D4" else "no inversion"
        print(f"{label}:")
        print(f"  events {events}")
        print(f"  trace  {arrow}   ({verdict}, accepted={result.accepted})")

    dot_path = OUT / "assessment_automaton.dot"
    dot_path.write_text(to_dot(g_d, name="assessment"))
    print(f"\nwrote {dot_path} (render with: dot -Tpng {dot_path} -o g_d.png)")


if __name__ == "__main__":
    main()
