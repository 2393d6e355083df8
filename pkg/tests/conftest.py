import pytest

from planejac.algebra import GF, QQ, PolyRing
from planejac.curve import validate_curve


def quartic_points(F, p):
    """All GF(p)-points of a plane quartic with (0:1:0) off the curve."""
    pts = [(a, b, 1) for a in range(p) for b in range(p)
           if F.evaluate({"x": a, "y": b, "z": 1}) == 0]
    pts += [(1, b, 0) for b in range(p) if F.evaluate({"x": 1, "y": b, "z": 0}) == 0]
    return pts


@pytest.fixture(scope="session")
def fermat():
    """x^4 + y^4 = 2 z^4 over Q with base point (1,1,1)."""
    R = PolyRing(QQ, "xyz")
    return validate_curve(R.parse("x^4 + y^4 - 2*z^4"), [], (1, 1, 1))


@pytest.fixture(scope="session")
def nodal():
    """x^4 - y^4 = 30 x y z^2 over Q, one node at the origin."""
    R = PolyRing(QQ, "xyz")
    return validate_curve(R.parse("x^4 - y^4 - 30*x*y*z^2"), [(0, 0, 1)], (1, 1, 0))


@pytest.fixture(scope="session")
def quartic31():
    """A smooth quartic over GF(31) together with its rational points."""
    R = PolyRing(GF(31), "xyz")
    F = R.parse("x^4 + y^4 + z^4 + x^2*y*z + 3*x*y^3")
    pts = quartic_points(F, 31)
    return validate_curve(F, [], pts[0]), pts


@pytest.fixture(scope="session")
def nodal31():
    """The nodal quartic reduced mod 31 (30 = -1) with its smooth rational points."""
    R = PolyRing(GF(31), "xyz")
    F = R.parse("x^4 - y^4 + x*y*z^2")
    pts = [p for p in quartic_points(F, 31) if p != (0, 0, 1)]
    return validate_curve(F, [(0, 0, 1)], pts[0]), pts


def pytest_terminal_summary(terminalreporter):
    rows = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when != "call":
                continue
            for name, value in rep.user_properties:
                if name == "acceptance":
                    rows.append((value, "PASS" if rep.passed else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for label, status in sorted(rows):
            terminalreporter.write_line(f"{status}  {label}")
