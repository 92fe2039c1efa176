import math

import numpy as np
import pytest

from expseries.geometry import ConvexDomain, Direction, HalfPlane, disc, polygon

ACCEPTANCE_LINES: list[str] = []


def random_domain(rng: np.random.Generator, kind: str) -> tuple[ConvexDomain, tuple[float, float, float, float]]:
    """A bounded random domain and a box containing it."""
    if kind == "polygon":
        k = int(rng.integers(3, 9))
        angles = np.sort(rng.uniform(0, 2 * math.pi, k))
        radii = rng.uniform(0.5, 2.0)
        center = complex(*rng.uniform(-1, 1, 2))
        # points on a circle are in convex position, so ccw order is the angle order
        verts = [center + radii * complex(math.cos(a), math.sin(a)) for a in angles]
        area = 0.5 * abs(sum((a.conjugate() * b).imag for a, b in zip(verts, verts[1:] + verts[:1])))
        if area < 0.05:
            return random_domain(rng, kind)
        r = radii
        return polygon(verts), (center.real - r, center.real + r, center.imag - r, center.imag + r)
    if kind == "disc":
        c = complex(*rng.uniform(-2, 2, 2))
        r = float(rng.uniform(0.2, 2.0))
        return disc(c, r), (c.real - r, c.real + r, c.imag - r, c.imag + r)
    # disc cut by one or two half-planes passing near the center
    c = complex(*rng.uniform(-2, 2, 2))
    r = float(rng.uniform(0.5, 2.0))
    hps = []
    for _ in range(int(rng.integers(1, 3))):
        a = float(rng.uniform(-math.pi, math.pi))
        s = Direction(a)
        offset = float(rng.uniform(-0.4, 0.6)) * r
        hps.append(HalfPlane(s, (s.unit * c).real + offset))
    try:
        dom = ConvexDomain(tuple(hps), (disc(c, r).discs[0],))
    except ValueError:
        return random_domain(rng, kind)
    return dom, (c.real - r, c.real + r, c.imag - r, c.imag + r)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
