"""Generators for the named examples and for randomized test families."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import InvalidIntervalError
from .grid import as_point
from .intervals import (
    Barcode,
    IntervalSet,
    components,
    intersect,
    make_rect,
    make_upperset_in_window,
    rasterize_convex_polygon,
)
from .morphisms import ScalarMorphism

__all__ = [
    "instability_instance",
    "tightness_polygons",
    "tightness_vertices",
    "tightness_instance",
    "TightnessInstance",
    "composition_counterexample",
    "random_rect_barcode",
    "random_upperset_barcode",
]


def instability_instance(a: int) -> tuple[Barcode, Barcode]:
    """Two ``a x a`` squares touching at one corner point, against their union.

    ``I`` sits upper-left and ``J`` lower-right; they share only the point
    ``(a-1, a-1)``, so ``K = I | J`` is a staircase-shaped interval. ``M`` is
    ``C(I) + C(J)`` and ``N`` is ``C(K)``. The two summands of ``M`` glue into
    ``K`` after a unit shift, yet each sits about ``a/2`` away from ``K``.
    """
    a = int(a)
    if a < 1:
        raise ValueError("a must be a positive integer")
    I = make_rect((0, a - 1), (a - 1, 2 * a - 2))
    J = make_rect((a - 1, 0), (2 * a - 2, a - 1))
    K = IntervalSet(I.union(J))
    return Barcode([I, J]), Barcode([K])


def tightness_polygons(delta: Fraction, edge: int = 8) -> tuple[list, list]:
    """Exact vertices of the square and the hexagon in unscaled units.

    The square is the open box ``(0, s)^2`` with ``s = 4 - 2 delta``. The
    hexagon has vertices ``q = (1, s-1)``, ``(1, 1)``, a far point on the ray
    from ``(1, 1)`` through ``(s-1, -1)``, the right-angle corner, a far point
    on the ray from ``(s-1, s-1)`` through ``(s+1, 1)``, and ``(s-1, s-1)``.
    The far points sit at the same parameter ``lam`` along both rays, chosen
    so the two edges at the right-angle corner have length ``edge``.
    """
    delta = Fraction(delta)
    if not 0 < delta < 2:
        raise ValueError("delta must lie strictly between 0 and 2")
    s = 4 - 2 * delta
    square = [(0, 0), (s, 0), (s, s), (0, s)]
    # the right-angle edges have length 2 - 2 delta + 2 delta lam
    lam = (Fraction(edge) - 2 + 2 * delta) / (2 * delta)
    far1 = (1 + lam * (s - 2), 1 - 2 * lam)
    far2 = (s - 1 + 2 * lam, s - 1 + lam * (2 - s))
    corner = (far2[0], far1[1])
    hexagon = [(1, s - 1), (1, 1), far1, corner, far2, (s - 1, s - 1)]
    return square, hexagon


class TightnessInstance(NamedTuple):
    M: Barcode
    N: Barcode
    I: IntervalSet
    J: IntervalSet
    K: IntervalSet
    scale: int
    delta: Fraction


def tightness_vertices(delta: Fraction, scale: int, edge: int = 8) -> tuple[list, list]:
    """The polygons of :func:`tightness_polygons` as rasterized at ``scale``.

    They are translated by ``(1, 1) / (4 * scale)``, a quarter grid unit
    along the diagonal, so no tip of ``J`` lands on a lattice antidiagonal,
    where its first interior point would be isolated.
    """
    nudge = Fraction(1, 4 * int(scale))
    return tuple([(x + nudge, y + nudge) for x, y in P] for P in tightness_polygons(delta, edge))


def tightness_instance(delta_num: int, delta_den: int, scale: int, edge: int = 8) -> TightnessInstance:
    """Square ``I`` and hexagon ``K`` rasterized at ``scale``, with ``J = K(scale) & K(-scale)``.

    The polygons come from :func:`tightness_vertices`.

    Distances of the result are in grid units; divide by ``scale`` for the
    continuous values. Only ``0 < delta <= 1`` gives a convex hexagon; larger
    values raise ``ValueError``. Raises ``InvalidIntervalError`` when the
    scale is too coarse for a valid rasterization.
    """
    delta = Fraction(delta_num, delta_den)
    scale = int(scale)
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    if not 0 < delta <= 1:
        raise ValueError("the hexagon is convex only for 0 < delta <= 1")
    if (scale * delta).denominator != 1:
        raise ValueError("scale * delta must be an integer")
    square, hexagon = tightness_vertices(delta, scale, edge)
    I = rasterize_convex_polygon(square, scale)
    K = rasterize_convex_polygon(hexagon, scale)
    pieces = components(intersect(K.shifted(scale), K.shifted(-scale)))
    if len(pieces) != 1:
        raise InvalidIntervalError(f"J has {len(pieces)} components at this scale")
    J = pieces[0]
    if not I.isdisjoint(J):
        raise InvalidIntervalError("I and J overlap at this scale")
    return TightnessInstance(Barcode([I, J]), Barcode([K]), I, J, K, scale, delta)


def _halfplane(a: int, b: int, c: int, sense: str, window) -> IntervalSet:
    (x0, y0), (x1, y1) = window
    gx, gy = np.meshgrid(np.arange(x0, x1 + 1), np.arange(y0, y1 + 1), indexing="ij")
    v = a * gx + b * gy
    mask = v > c if sense == ">" else v < c
    return IntervalSet.from_mask((x0, y0), mask, 2)


class CompositionExample(NamedTuple):
    I: IntervalSet
    J: IntervalSet
    K: IntervalSet
    f: ScalarMorphism
    g: ScalarMorphism


def composition_counterexample(field: int = 2) -> CompositionExample:
    """Nonzero ``f: C(I) -> C(J)`` and ``g: C(J) -> C(K)`` whose composite is zero.

    ``I`` is a half-plane above a steep line, ``J`` a box on the left, ``K``
    a half-plane below a shallow line, all cut to a common window. ``I & K``
    is nonempty but misses ``J``, so ``g o f = 0``.
    """
    window = ((-6, -4), (7, 5))
    I = _halfplane(45, 17, -14, ">", window)
    J = make_rect((-6, 1), (-1, 5))
    K = _halfplane(3, 13, 8, "<", window)
    return CompositionExample(I, J, K, ScalarMorphism(I, J, 1, field), ScalarMorphism(J, K, 1, field))


def random_rect_barcode(count: int, coord_range, max_side: int, seed: int, dim: int = 2) -> Barcode:
    """Random boxes drawn with ``numpy.random.default_rng(seed)`` (PCG64).

    For each bar, in order: ``lo`` gets ``dim`` integers uniform on
    ``[cmin, cmax]`` (one ``integers(cmin, cmax + 1, size=dim)`` call), then
    the side lengths get ``dim`` integers uniform on ``[0, max_side]``;
    ``hi = min(lo + side, cmax)`` coordinatewise.
    """
    cmin, cmax = (int(c) for c in coord_range)
    if cmin > cmax:
        raise ValueError("coord_range must satisfy min <= max")
    if count < 0 or max_side < 0:
        raise ValueError("count and max_side must be nonnegative")
    rng = np.random.default_rng(seed)
    bars = []
    for _ in range(count):
        lo = rng.integers(cmin, cmax + 1, size=dim)
        side = rng.integers(0, max_side + 1, size=dim)
        hi = np.minimum(lo + side, cmax)
        bars.append(make_rect(lo.tolist(), hi.tolist()))
    return Barcode(bars, dim=dim)


def random_upperset_barcode(count: int, window, max_generators: int, seed: int) -> Barcode:
    """Random uppersets of a common window box, drawn with ``default_rng(seed)``.

    For each bar: the generator count is uniform on ``[1, max_generators]``,
    then each generator is uniform on the window box (one ``integers`` call
    per generator). Uppersets cut to one window are closed under
    intersection, including shifted intersections.
    """
    lo, hi = (as_point(c) for c in window)
    dim = len(lo)
    if count < 0 or max_generators < 1:
        raise ValueError("count must be nonnegative and max_generators positive")
    rng = np.random.default_rng(seed)
    bars = []
    for _ in range(count):
        k = int(rng.integers(1, max_generators + 1))
        gens = [rng.integers(lo, np.asarray(hi) + 1, size=dim).tolist() for _ in range(k)]
        bars.append(make_upperset_in_window(gens, (lo, hi)))
    return Barcode(bars, dim=dim)
