from fractions import Fraction

import pytest

from topolines import Topoline, build_arrangement, load_fixture


def straight(id, point, direction):
    return Topoline.straight(id, point, direction)


def gplus(id="Gplus"):
    return Topoline(id, (1, 0), [(0, 0)], (0, 1))


def gminus(id="Gminus"):
    return Topoline(id, (-1, 0), [(0, 0)], (0, -1))


def x_axis(id="x"):
    return straight(id, (0, 0), (1, 0))


def y_axis(id="y"):
    return straight(id, (0, 0), (0, 1))


def arrangement(*lines):
    return build_arrangement(lines)


@pytest.fixture
def noproj2():
    return build_arrangement(load_fixture("noproj2.arr"))


@pytest.fixture
def gpm():
    return build_arrangement(load_fixture("gplus-gminus.arr"))


@pytest.fixture
def touching3():
    return build_arrangement(load_fixture("touching-k3.arr"))


# (a, b, c, d, e, f): (x, y) -> (a x + b y + e, c x + d y + f); all invertible
AFFINE_MAPS = [
    (2, 0, 0, 3, 1, -1),
    (1, 1, 0, 1, 0, 0),
    (0, -1, 1, 0, 5, 2),
    (-1, 0, 0, 1, 0, 0),
    (Fraction(1, 2), Fraction(1, 3), Fraction(-1, 5), 1, Fraction(7, 4), 0),
]


def apply_map(t, m):
    a, b, c, d, e, f = m

    def pt(p):
        return (a * p.x + b * p.y + e, c * p.x + d * p.y + f)

    def vec(v):
        return (a * v.dx + b * v.dy, c * v.dx + d * v.dy)

    return Topoline(t.id, vec(t.start_ray), [pt(p) for p in t.vertices], vec(t.end_ray))


_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    n = int(name.rsplit("_", 1)[1])
    if report.when == "call" or report.failed:
        _criteria[n] = _criteria.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        verdict = "PASS" if _criteria[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  {CRITERIA[n]}")
