"""Deterministic finite automata, and the narrow-channel assessment automaton.

The concrete machine built by :func:`build_g_d` tracks whether an inversion of
give-way/stand-on duties is warranted for one encounter. Its events come in
positive/negative pairs about the target vessel:

    d1 / not_d1   the target is the one that would have to give way
    d2 / not_d2   the target reports restricted manoeuvrability itself
    d3 / not_d3   the target is estimated to be restricted by the geometry

State D4 means the duty inversion applies; D1 means assessment over, no
inversion. Both are marked: every assessment run ends in a definite answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence


class AssessmentEvent(Enum):
    """Events driving the assessment automaton."""

    TARGET_GIVE_WAY = "d1"
    TARGET_NOT_GIVE_WAY = "not_d1"
    REPORTED_RESTRICTED = "d2"
    NOT_REPORTED_RESTRICTED = "not_d2"
    ESTIMATED_RESTRICTED = "d3"
    NOT_ESTIMATED_RESTRICTED = "not_d3"


class UndefinedTransitionError(KeyError):
    """A (state, event) pair with no outgoing edge was exercised."""

    def __init__(self, state: str, event: str, index: int | None = None):
        self.state = state
        self.event = event
        self.index = index
        at = f" at event index {index}" if index is not None else ""
        super().__init__(f"no transition from state {state!r} on event {event!r}{at}")


@dataclass(frozen=True)
class Dfa:
    """Deterministic finite automaton over string labels.

    The transition map is partial: exercising a missing (state, event) pair
    raises rather than self-looping, so protocol violations stay loud.
    """

    states: frozenset[str]
    events: frozenset[str]
    transitions: Mapping[tuple[str, str], str]
    initial: str
    marked: frozenset[str]

    def __post_init__(self) -> None:
        if self.initial not in self.states:
            raise ValueError(f"initial state {self.initial!r} not in state set")
        if not self.marked <= self.states:
            raise ValueError("marked states must be a subset of the state set")
        for (state, event), successor in self.transitions.items():
            if state not in self.states or successor not in self.states:
                raise ValueError(f"transition {(state, event)} -> {successor} leaves the state set")
            if event not in self.events:
                raise ValueError(f"transition uses unknown event {event!r}")


def make_dfa(
    states: Iterable[str],
    events: Iterable[str],
    transitions: Iterable[tuple[str, str, str]],
    initial: str,
    marked: Iterable[str],
) -> Dfa:
    """Build a Dfa from (state, event, successor) triples, rejecting duplicates."""
    table: dict[tuple[str, str], str] = {}
    for state, event, successor in transitions:
        key = (state, event)
        if key in table:
            raise ValueError(f"duplicate transition for {key}")
        table[key] = successor
    return Dfa(
        states=frozenset(states),
        events=frozenset(events),
        transitions=table,
        initial=initial,
        marked=frozenset(marked),
    )


D1, D2, D3, D4 = "D1", "D2", "D3", "D4"


def build_g_d() -> Dfa:
    """The four-state duty-inversion assessment automaton.

    D1 waits for an encounter where the target must give way; D2 checks the
    target's own reporting; D3 checks the geometric estimate; D4 applies the
    inversion. No edges leave D4: the caller resets to a fresh instance per
    encounter.
    """
    events = [e.value for e in AssessmentEvent]
    return make_dfa(
        states=[D1, D2, D3, D4],
        events=events,
        transitions=[
            (D1, AssessmentEvent.TARGET_NOT_GIVE_WAY.value, D1),
            (D1, AssessmentEvent.TARGET_GIVE_WAY.value, D2),
            (D2, AssessmentEvent.REPORTED_RESTRICTED.value, D4),
            (D2, AssessmentEvent.NOT_REPORTED_RESTRICTED.value, D3),
            (D3, AssessmentEvent.ESTIMATED_RESTRICTED.value, D4),
            (D3, AssessmentEvent.NOT_ESTIMATED_RESTRICTED.value, D1),
        ],
        initial=D1,
        marked=[D1, D4],
    )


def step(dfa: Dfa, state: str, event: str, *, index: int | None = None) -> str:
    """One transition; raises UndefinedTransitionError for missing edges."""
    if state not in dfa.states:
        raise ValueError(f"state {state!r} not in the automaton")
    if event not in dfa.events:
        raise ValueError(f"event {event!r} not in the automaton's alphabet")
    try:
        return dfa.transitions[(state, event)]
    except KeyError:
        raise UndefinedTransitionError(state, event, index) from None


@dataclass(frozen=True)
class RunResult:
    """Execution record: where the run ended and every state it visited."""

    final_state: str
    accepted: bool
    trace: tuple[str, ...]


def run(dfa: Dfa, events: Sequence[str]) -> RunResult:
    """Fold `step` over the events from the initial state.

    The trace starts with the initial state and records the state after each
    event, self-loops included.
    """
    state = dfa.initial
    trace = [state]
    for i, event in enumerate(events):
        state = step(dfa, state, event, index=i)
        trace.append(state)
    return RunResult(
        final_state=state, accepted=state in dfa.marked, trace=tuple(trace)
    )


def is_nonblocking(dfa: Dfa) -> bool:
    """Every state reachable from the initial state can still reach a mark.

    Forward reachability from the initial state intersected with reverse
    reachability from the marked set; non-blocking iff the former is covered
    by the latter.
    """
    forward = {dfa.initial}
    frontier = [dfa.initial]
    while frontier:
        state = frontier.pop()
        for (src, _event), dst in dfa.transitions.items():
            if src == state and dst not in forward:
                forward.add(dst)
                frontier.append(dst)

    coaccessible = set(dfa.marked)
    changed = True
    while changed:
        changed = False
        for (src, _event), dst in dfa.transitions.items():
            if dst in coaccessible and src not in coaccessible:
                coaccessible.add(src)
                changed = True
    return forward <= coaccessible


def to_dot(dfa: Dfa, name: str = "dfa") -> str:
    """Graphviz dot rendering; marked states are double circles."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for state in sorted(dfa.states):
        shape = "doublecircle" if state in dfa.marked else "circle"
        lines.append(f"  {state} [shape={shape}];")
    lines.append(f"  __start -> {dfa.initial};")
    for (src, event), dst in sorted(dfa.transitions.items()):
        lines.append(f'  {src} -> {dst} [label="{event}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
