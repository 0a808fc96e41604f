from __future__ import annotations

import pytest

CRITERIA = {
    1: "character-table oracle equivalence",
    2: "orthogonality relations",
    3: "S4 / A5 / S5 remark facts",
    4: "theorem A harness",
    5: "theorem B harness",
    6: "corollary C",
    7: "lemma suite",
    8: "stretch groups M11 and A8",
    9: "determinism of verify",
}

_results: dict[int, list[tuple[str, str, float | None]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        elapsed = dict(item.user_properties).get("elapsed")
        _results.setdefault(marker.args[0], []).append((item.name, rep.outcome, elapsed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        runs = _results.get(n)
        if not runs:
            continue
        ok = all(outcome == "passed" for _, outcome, _ in runs)
        times = [t for _, _, t in runs if t is not None]
        timing = f"  ({sum(times):.1f} s)" if times else ""
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {CRITERIA[n]}{timing}")
