import numpy as np
import pytest

from metriclie import StructureTensor, Subspace, build_model

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1][len("test_criterion_"):]
        _CRITERIA[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        num, _, label = name.partition("_")
        verdict = "PASS" if _CRITERIA[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {int(num):2d} {verdict}  {label.replace('_', ' ')}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_metric(rng, r):
    a = rng.standard_normal((r, r))
    return a @ a.T + r * np.eye(r)


def left_invariant(algebra, metric, name="group"):
    n = algebra.dim
    return build_model(algebra, Subspace.zero(n), metric, Subspace.full(n), name=name)


def so3():
    return StructureTensor.from_brackets(3, [(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)])
