import sys

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--run-extended",
        action="store_true",
        default=False,
        help="run the minutes-scale opt-in checks (large-field sweeps)",
    )


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "extended: minutes-scale opt-in checks, enabled with --run-extended",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-extended"):
        return
    skip = pytest.mark.skip(reason="extended check; enable with --run-extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance") or sys.modules.get(
        "tests.test_acceptance"
    )
    results = getattr(mod, "RESULTS", None) if mod else None
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        n, variant = key
        ok, detail = results[key]
        label = f"ACCEPTANCE {n}" + (f" ({variant})" if variant else "")
        line = f"{label}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f" — {detail}"
        terminalreporter.write_line(line)
