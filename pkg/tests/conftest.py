import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from critarrow.conecore import SimplicialCone  # noqa: E402
from critarrow import exactlinalg as xl  # noqa: E402

TERMINAL_CONE = ((1, 0, 0), (0, 1, 0), (1, 1, 2))


@pytest.fixture
def terminal_cone():
    return SimplicialCone(TERMINAL_CONE)


@pytest.fixture
def standard3():
    return SimplicialCone(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def random_cone(rnd: random.Random, d: int, entry: int = 3, max_det: int = 50) -> SimplicialCone:
    """Random simplicial cone with primitive generators and |det| <= max_det."""
    while True:
        gens = [tuple(rnd.randint(-entry, entry) for _ in range(d)) for _ in range(d)]
        if any(not any(g) for g in gens):
            continue
        try:
            cone = SimplicialCone.from_vectors(gens)
        except ValueError:
            continue
        if 0 < cone.index <= max_det:
            return cone


def random_point(rnd: random.Random, cone: SimplicialCone, interior: bool = False):
    """Small nonnegative integer combination of generators plus a parallelepiped shift."""
    from critarrow.conecore import parallelepiped_points

    pts, _ = parallelepiped_points(cone)
    while True:
        lo = 1 if interior else 0
        coeffs = [rnd.randint(lo, 1) for _ in range(cone.d)]
        base = pts[rnd.randrange(len(pts))]
        w = tuple(int(base[k]) + sum(c * g[k] for c, g in zip(coeffs, cone.generators))
                  for k in range(cone.d))
        if any(w):
            return w


def random_unimodular(rnd: random.Random, d: int, steps: int = 3):
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rnd.sample(range(d), 2)
        c = rnd.choice((-1, 1))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    if rnd.random() < 0.5:
        i, j = rnd.sample(range(d), 2)
        m[i], m[j] = m[j], m[i]
    assert abs(xl.det(m)) == 1
    return m


def apply(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)
