"""The integer grid poset Z^n with coordinatewise order and diagonal flow.

Points are plain tuples of ints. All functions are pure.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence

from .errors import CoordinateOverflow, DimensionError

GridPoint = tuple[int, ...]

COORD_MIN = -(2**63)
COORD_MAX = 2**63 - 1


def check_coord(c: int) -> int:
    if c < COORD_MIN or c > COORD_MAX:
        raise CoordinateOverflow(f"coordinate {c} outside signed 64-bit range")
    return c


def as_point(p: Sequence[int], dim: int | None = None) -> GridPoint:
    """Normalize ``p`` to a tuple of ints, optionally checking its dimension."""
    pt = tuple(int(c) for c in p)
    if not pt:
        raise DimensionError("points must have at least one coordinate")
    if dim is not None and len(pt) != dim:
        raise DimensionError(f"expected a {dim}-dimensional point, got {pt}")
    for c in pt:
        check_coord(c)
    return pt


def _same_dim(p: Sequence[int], q: Sequence[int]) -> None:
    if len(p) != len(q):
        raise DimensionError(f"dimension mismatch: {tuple(p)} vs {tuple(q)}")


def leq(p: Sequence[int], q: Sequence[int]) -> bool:
    """Coordinatewise order: ``p <= q`` iff ``p_i <= q_i`` for every i."""
    _same_dim(p, q)
    return all(a <= b for a, b in zip(p, q))


def box(p: Sequence[int], q: Sequence[int]) -> set[GridPoint]:
    """All ``r`` with ``p <= r <= q``, i.e. the integer box between two comparable points."""
    if not leq(p, q):
        raise ValueError(f"box needs p <= q, got {tuple(p)} and {tuple(q)}")
    as_point(p)
    as_point(q)
    ranges = [range(a, b + 1) for a, b in zip(p, q)]
    return set(itertools.product(*ranges))


def flow(p: Sequence[int], t: int) -> GridPoint:
    """Diagonal flow: add ``t`` to every coordinate."""
    return tuple(check_coord(int(c) + int(t)) for c in p)
