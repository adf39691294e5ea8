import re

_CRITERIA = {
    1: "bundled scenarios reproduce the reference outcomes and traces",
    2: "swing rates for all 14 turning circles; minimum 0.07734 deg/m",
    3: "arc projection matches 1 mm Euler integration and closes circles",
    4: "closed-form CPA matches the brute-force time scan",
    5: "assessment automaton: exact shape, non-blocking, mutants caught",
    6: "analytic ellipse test agrees with dense boundary sampling",
    7: "rule 9 verdict, trace end, and duty inversion always agree",
    8: "raising target draught 3.0 -> 5.0 m flips the verdict exactly once",
    9: "bundled scenarios write byte-identical trace files",
}

_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion, after the normal summary."""
    results: dict[int, bool] = {}
    for outcome, ok in (("passed", True), ("failed", False), ("error", False)):
        for report in terminalreporter.stats.get(outcome, []):
            match = _PATTERN.search(getattr(report, "nodeid", ""))
            if match:
                num = int(match.group(1))
                results[num] = results.get(num, True) and ok
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num, label in sorted(_CRITERIA.items()):
        if num in results:
            status = "PASS" if results[num] else "FAIL"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(f"criterion {num}: {status} - {label}")
