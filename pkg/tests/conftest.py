import numpy as np
import pytest

from pmod import IntervalSet, components, intersect, make_rect


def staircase(lo, steps):
    """Union of boxes, each step moving right and down; ``steps`` lists (width, height)."""
    x, y = lo
    pts = set()
    for w, h in steps:
        for i in range(w):
            for j in range(h):
                pts.add((x + i, y + j))
        x += w - 1
        y -= h - 1
    return IntervalSet(pts)


def random_staircase(rng):
    steps = [tuple(int(v) for v in rng.integers(2, 4, size=2)) for _ in range(int(rng.integers(2, 4)))]
    lo = tuple(int(c) for c in rng.integers(-3, 3, size=2))
    return staircase(lo, steps)


def multi_component_pairs(count, seed=0):
    """Pairs of staircase intervals whose intersection has at least two components."""
    rng = np.random.default_rng(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        assert tries < 20000, "could not build enough multi-component pairs"
        A = random_staircase(rng)
        if rng.random() < 0.5:
            B = A.shifted(int(rng.integers(-2, 3)))
        else:
            B = random_staircase(rng)
            dx, dy = (int(v) for v in rng.integers(-2, 3, size=2))
            B = IntervalSet([(x + dx, y + dy) for x, y in B])
        if len(components(intersect(A, B))) >= 2:
            out.append((A, B))
    return out


@pytest.fixture
def stagger():
    return make_rect((0, 0), (3, 3)), make_rect((1, 1), (4, 4))
