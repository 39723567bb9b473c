"""Finite subsets of Z^n, validated intervals, and interval constructors.

A set is stored as the corner ``lo`` of its tight bounding box plus a boolean
mask over that box. Diagonal shifts only move ``lo``, so they are exact and
cheap; intersections and inclusions work on the overlap of two boxes.

For a poset-convex set, two points are joined by a zig-zag path iff they are
joined by a path of axis-neighbours: comparable points span a box that the
set contains, and axis-neighbours are comparable. Component labelling of
convex sets therefore uses ``scipy.ndimage.label`` with the cross-shaped
structuring element. Arbitrary sets fall back to the comparability graph.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy import ndimage
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DimensionError, InvalidIntervalError
from .grid import GridPoint, as_point, check_coord, leq

__all__ = [
    "GridSet",
    "ConvexSubset",
    "IntervalSet",
    "Barcode",
    "is_poset_convex",
    "is_poset_connected",
    "components",
    "intersect",
    "shift",
    "diag_extent",
    "make_rect",
    "make_upperset_in_window",
    "make_downset_in_window",
    "rasterize_convex_polygon",
    "is_intersection_closed",
    "is_flow_intersection_closed",
    "canvas_of",
    "ClosureReport",
]


class GridSet:
    """Immutable finite subset of Z^n."""

    __slots__ = ("dim", "lo", "mask", "_hash", "_points")

    def __init__(self, points: Iterable[Sequence[int]] = (), dim: int | None = None):
        pts = [as_point(p) for p in points]
        if dim is None:
            if not pts:
                raise DimensionError("dim is required for an empty point set")
            dim = len(pts[0])
        for p in pts:
            if len(p) != dim:
                raise DimensionError(f"point {p} is not {dim}-dimensional")
        if pts:
            arr = np.array(pts, dtype=np.int64)
            lo = arr.min(axis=0)
            shape = arr.max(axis=0) - lo + 1
            mask = np.zeros(tuple(int(s) for s in shape), dtype=bool)
            mask[tuple((arr - lo).T)] = True
            self._set(dim, tuple(int(c) for c in lo), mask)
        else:
            self._set(dim, (0,) * dim, np.zeros((0,) * dim, dtype=bool))

    def _set(self, dim, lo, mask):
        mask.setflags(write=False)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_points", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def _from_mask(cls, lo: Sequence[int], mask: np.ndarray, dim: int | None = None):
        """Build from a mask anchored at ``lo``; trims to the tight bounding box."""
        dim = mask.ndim if dim is None else dim
        obj = cls.__new__(cls)
        if not mask.any():
            obj._set(dim, (0,) * dim, np.zeros((0,) * dim, dtype=bool))
            return obj
        idx = np.nonzero(mask)
        mins = [int(a.min()) for a in idx]
        maxs = [int(a.max()) for a in idx]
        sl = tuple(slice(a, b + 1) for a, b in zip(mins, maxs))
        new_lo = tuple(check_coord(int(l) + m) for l, m in zip(lo, mins))
        obj._set(dim, new_lo, np.array(mask[sl], dtype=bool))
        return obj

    @classmethod
    def empty(cls, dim: int):
        return cls._from_mask((0,) * dim, np.zeros((0,) * dim, dtype=bool), dim)

    # -- basic protocol -------------------------------------------------

    @property
    def hi(self) -> GridPoint:
        """Upper corner of the bounding box (inclusive); meaningless when empty."""
        return tuple(l + s - 1 for l, s in zip(self.lo, self.mask.shape))

    @property
    def is_empty(self) -> bool:
        return self.mask.size == 0 or not self.mask.any()

    @property
    def points(self) -> frozenset[GridPoint]:
        if self._points is None:
            if self.is_empty:
                pts = frozenset()
            else:
                arr = np.argwhere(self.mask) + np.array(self.lo, dtype=np.int64)
                pts = frozenset(tuple(int(c) for c in row) for row in arr)
            object.__setattr__(self, "_points", pts)
        return self._points

    def sorted_points(self) -> list[GridPoint]:
        return sorted(self.points)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __iter__(self) -> Iterator[GridPoint]:
        return iter(self.sorted_points())

    def __contains__(self, p) -> bool:
        if len(p) != self.dim or self.is_empty:
            return False
        idx = tuple(int(c) - l for c, l in zip(p, self.lo))
        if any(i < 0 or i >= s for i, s in zip(idx, self.mask.shape)):
            return False
        return bool(self.mask[idx])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridSet):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return (
            self.lo == other.lo
            and self.mask.shape == other.mask.shape
            and bool(np.array_equal(self.mask, other.mask))
        )

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_empty:
                h = hash((self.dim, "empty"))
            else:
                h = hash((self.dim, self.lo, self.mask.shape, np.packbits(self.mask).tobytes()))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self) -> str:
        if self.is_empty:
            return f"{type(self).__name__}(empty, dim={self.dim})"
        if self.mask.all():
            return f"{type(self).__name__}(box {self.lo}..{self.hi})"
        return f"{type(self).__name__}({len(self)} points in {self.lo}..{self.hi})"

    # -- set operations -------------------------------------------------

    def _check_dim(self, other: "GridSet") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def on_canvas(self, lo: Sequence[int], shape: Sequence[int]) -> np.ndarray:
        """This set as a boolean array over the box ``lo + [0, shape)``."""
        out = np.zeros(tuple(shape), dtype=bool)
        if self.is_empty:
            return out
        src, dst = [], []
        for l, s, cl, cs in zip(self.lo, self.mask.shape, lo, shape):
            a = max(l, cl)
            b = min(l + s, cl + cs)
            if a >= b:
                return out
            src.append(slice(a - l, b - l))
            dst.append(slice(a - cl, b - cl))
        out[tuple(dst)] = self.mask[tuple(src)]
        return out

    def raw_intersection(self, other: "GridSet") -> tuple[GridPoint, np.ndarray]:
        self._check_dim(other)
        if self.is_empty or other.is_empty:
            return (0,) * self.dim, np.zeros((0,) * self.dim, dtype=bool)
        lo = tuple(max(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, other.hi))
        if any(l > h for l, h in zip(lo, hi)):
            return (0,) * self.dim, np.zeros((0,) * self.dim, dtype=bool)
        shape = tuple(h - l + 1 for l, h in zip(lo, hi))
        return lo, self.on_canvas(lo, shape) & other.on_canvas(lo, shape)

    def intersection(self, other: "GridSet") -> "GridSet":
        lo, m = self.raw_intersection(other)
        return GridSet._from_mask(lo, m, self.dim)

    def union(self, other: "GridSet") -> "GridSet":
        self._check_dim(other)
        if self.is_empty:
            return GridSet._from_mask(other.lo, other.mask, self.dim)
        if other.is_empty:
            return GridSet._from_mask(self.lo, self.mask, self.dim)
        lo, shape = canvas_of([self, other])
        return GridSet._from_mask(lo, self.on_canvas(lo, shape) | other.on_canvas(lo, shape), self.dim)

    def isdisjoint(self, other: "GridSet") -> bool:
        _, m = self.raw_intersection(other)
        return not m.any()

    def issubset(self, other: "GridSet") -> bool:
        self._check_dim(other)
        if self.is_empty:
            return True
        return not (self.mask & ~other.on_canvas(self.lo, self.mask.shape)).any()

    __le__ = issubset

    def shifted(self, t: int):
        """The set ``{p : p + t*(1,...,1) in self}``; keeps the concrete type."""
        obj = type(self).__new__(type(self))
        if self.is_empty:
            obj._set(self.dim, self.lo, self.mask)
        else:
            obj._set(self.dim, tuple(check_coord(l - int(t)) for l in self.lo), self.mask)
        return obj


class ConvexSubset(GridSet):
    """A poset-convex finite subset of Z^n."""

    __slots__ = ()

    def __init__(self, points=(), dim=None):
        super().__init__(points, dim)
        if not _mask_is_convex(self.mask):
            raise InvalidIntervalError("point set is not poset-convex")


class IntervalSet(ConvexSubset):
    """A poset-convex, poset-connected finite subset of Z^n (an interval).

    ``IntervalSet.empty(dim)`` is the empty interval; barcodes reject it.
    """

    __slots__ = ()

    def __init__(self, points=(), dim=None):
        GridSet.__init__(self, points, dim)
        _validate_interval_mask(self.mask)

    @classmethod
    def from_mask(cls, lo, mask, dim=None) -> "IntervalSet":
        """Validated construction from a boolean mask anchored at ``lo``."""
        _validate_interval_mask(np.asarray(mask, dtype=bool))
        return cls._from_mask(lo, np.asarray(mask, dtype=bool), dim)

    @property
    def diag_extent(self) -> int:
        return diag_extent(self)


def _validate_interval_mask(mask: np.ndarray) -> None:
    if mask.size == 0 or not mask.any():
        return
    if not _mask_is_convex(mask):
        raise InvalidIntervalError("point set is not poset-convex")
    _, n = _label_convex(mask)
    if n != 1:
        raise InvalidIntervalError(f"point set is not poset-connected ({n} components)")


class Barcode(tuple):
    """Finite multiset of nonempty intervals, identified by position."""

    def __new__(cls, intervals: Iterable[IntervalSet] = (), dim: int | None = None):
        items = tuple(intervals)
        for I in items:
            if not isinstance(I, IntervalSet):
                raise TypeError(f"barcode entries must be IntervalSet, got {type(I).__name__}")
            if I.is_empty:
                raise InvalidIntervalError("barcodes contain nonempty intervals only")
        dims = {I.dim for I in items}
        if dim is not None:
            dims.add(dim)
        if len(dims) > 1:
            raise DimensionError(f"mixed dimensions in barcode: {sorted(dims)}")
        obj = super().__new__(cls, items)
        obj.dim = dims.pop() if dims else None
        return obj

    def shifted(self, t: int) -> "Barcode":
        return Barcode((I.shifted(t) for I in self), dim=self.dim)

    def __repr__(self) -> str:
        return f"Barcode({list(self)!r})"


# -- masks ---------------------------------------------------------------


def _up_closure(mask: np.ndarray) -> np.ndarray:
    out = mask
    for ax in range(mask.ndim):
        out = np.logical_or.accumulate(out, axis=ax)
    return out


def _down_closure(mask: np.ndarray) -> np.ndarray:
    flip = tuple(slice(None, None, -1) for _ in range(mask.ndim))
    return _up_closure(mask[flip])[flip]


def _mask_is_convex(mask: np.ndarray) -> bool:
    # S is convex iff S equals (up-closure of S) & (down-closure of S) inside its box.
    if mask.size == 0:
        return True
    return bool(np.array_equal(mask, _up_closure(mask) & _down_closure(mask)))


def _label_convex(mask: np.ndarray) -> tuple[np.ndarray, int]:
    structure = ndimage.generate_binary_structure(mask.ndim, 1)
    labels, n = ndimage.label(mask, structure=structure)
    return labels, int(n)


def canvas_of(sets: Iterable[GridSet]) -> tuple[GridPoint, GridPoint]:
    """Common bounding box ``(lo, shape)`` of the nonempty sets given."""
    sets = [S for S in sets if not S.is_empty]
    if not sets:
        raise ValueError("canvas_of needs at least one nonempty set")
    dim = sets[0].dim
    lo = tuple(min(S.lo[k] for S in sets) for k in range(dim))
    hi = tuple(max(S.hi[k] for S in sets) for k in range(dim))
    return lo, tuple(h - l + 1 for l, h in zip(lo, hi))


def _as_gridset(S) -> GridSet:
    if isinstance(S, GridSet):
        return S
    pts = [as_point(p) for p in S]
    if not pts:
        return GridSet.empty(1)
    return GridSet(pts)


# -- operations ------------------------------------------------------------


def is_poset_convex(S) -> bool:
    """True iff every box between two comparable points of ``S`` lies in ``S``."""
    return _mask_is_convex(_as_gridset(S).mask)


def is_poset_connected(S) -> bool:
    """True iff the comparability graph of ``S`` is connected (vacuously for 0 or 1 points)."""
    G = _as_gridset(S)
    if len(G) <= 1:
        return True
    if _mask_is_convex(G.mask):
        return _label_convex(G.mask)[1] == 1
    pts = np.argwhere(G.mask)
    le = np.all(pts[:, None, :] <= pts[None, :, :], axis=2)
    adj = csr_matrix(le | le.T)
    n, _ = connected_components(adj, directed=False)
    return n == 1


def components(S) -> list[IntervalSet]:
    """Interval components of a poset-convex set, ordered by their lexicographically least point."""
    G = _as_gridset(S)
    if G.is_empty:
        return []
    if not _mask_is_convex(G.mask):
        raise InvalidIntervalError("components() needs a poset-convex set")
    labels, n = _label_convex(G.mask)
    if n == 1:
        return [IntervalSet._from_mask(G.lo, G.mask, G.dim)]
    # argwhere walks in C order, i.e. lexicographically; first hit per label is its least point.
    flat = labels[labels > 0]
    _, first = np.unique(flat, return_index=True)
    order = np.unique(flat)[np.argsort(first)]
    return [IntervalSet._from_mask(G.lo, labels == k, G.dim) for k in order]


def intersect(I: GridSet, J: GridSet) -> ConvexSubset:
    """Set intersection; convex whenever both inputs are."""
    lo, m = I.raw_intersection(J)
    out = ConvexSubset._from_mask(lo, m, I.dim)
    if __debug__ and isinstance(I, ConvexSubset) and isinstance(J, ConvexSubset):
        assert _mask_is_convex(out.mask)
    return out


def shift(I: GridSet, t: int):
    """``I(t) = {p : p + t(1,...,1) in I}``."""
    return I.shifted(t)


def diag_extent(I: GridSet) -> int:
    """Largest ``t >= 0`` with ``I`` meeting ``shift(I, t)``."""
    if I.is_empty:
        raise ValueError("diag_extent of the empty set is undefined")
    m = I.mask
    best = 0
    for t in range(1, min(m.shape)):
        a = m[tuple(slice(t, None) for _ in m.shape)]
        b = m[tuple(slice(None, -t) for _ in m.shape)]
        if (a & b).any():
            best = t
        else:
            break
    return best


def make_rect(lo: Sequence[int], hi: Sequence[int]) -> IntervalSet:
    lo, hi = as_point(lo), as_point(hi)
    if len(lo) != len(hi):
        raise DimensionError("rectangle corners differ in dimension")
    if not leq(lo, hi):
        raise ValueError(f"rectangle needs lo <= hi, got {lo} and {hi}")
    shape = tuple(b - a + 1 for a, b in zip(lo, hi))
    return IntervalSet._from_mask(lo, np.ones(shape, dtype=bool), len(lo))


def _window_set(generators, window, upward: bool) -> IntervalSet:
    lo, hi = (as_point(c) for c in window)
    dim = len(lo)
    if not leq(lo, hi):
        raise ValueError("window needs lo <= hi")
    shape = tuple(b - a + 1 for a, b in zip(lo, hi))
    seeds = np.zeros(shape, dtype=bool)
    for g in generators:
        g = as_point(g, dim)
        # clamp the generator into the window; skip it if its cone misses the window
        if upward:
            if any(c > h for c, h in zip(g, hi)):
                continue
            idx = tuple(max(c, l) - l for c, l in zip(g, lo))
        else:
            if any(c < l for c, l in zip(g, lo)):
                continue
            idx = tuple(min(c, h) - l for c, l, h in zip(g, lo, hi))
        seeds[idx] = True
    mask = _up_closure(seeds) if upward else _down_closure(seeds)
    if not mask.any():
        kind = "upperset" if upward else "downset"
        raise InvalidIntervalError(f"{kind} is empty inside the window")
    return IntervalSet.from_mask(lo, mask, dim)


def make_upperset_in_window(generators, window) -> IntervalSet:
    """Points of the window box lying above some generator."""
    return _window_set(generators, window, upward=True)


def make_downset_in_window(generators, window) -> IntervalSet:
    """Points of the window box lying below some generator."""
    return _window_set(generators, window, upward=False)


def _to_fraction(v) -> Fraction:
    if isinstance(v, (list, tuple)):
        num, den = v
        return Fraction(int(num), int(den))
    return Fraction(v)


def rasterize_convex_polygon(vertices, scale: int = 1) -> IntervalSet:
    """Integer points strictly inside the convex polygon ``scale * vertices``.

    Vertices may be ints, ``Fraction``s, or ``[num, den]`` pairs. Raises
    ``InvalidIntervalError`` when the rasterization is empty or is not an
    interval; a finer ``scale`` usually fixes that.
    """
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    V = [(_to_fraction(x) * scale, _to_fraction(y) * scale) for x, y in vertices]
    # repeated consecutive vertices would give zero-length edges
    V = [v for i, v in enumerate(V) if v != V[i - 1]] or V[:1]
    if len(V) < 3:
        raise ValueError("a polygon needs at least three vertices")
    den = math.lcm(*(c.denominator for v in V for c in v))
    P = [(int(x * den), int(y * den)) for x, y in V]
    n = len(P)
    area2 = sum(P[i][0] * P[(i + 1) % n][1] - P[(i + 1) % n][0] * P[i][1] for i in range(n))
    if area2 == 0:
        raise ValueError("polygon has empty interior")
    sign = 1 if area2 > 0 else -1
    for i in range(n):
        a, b, c = P[i], P[(i + 1) % n], P[(i + 2) % n]
        turn = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if turn * sign < 0:
            raise ValueError("polygon is not convex")
    xs = [x for x, _ in V]
    ys = [y for _, y in V]
    x0, x1 = math.floor(min(xs)), math.ceil(max(xs))
    y0, y1 = math.floor(min(ys)), math.ceil(max(ys))
    gx, gy = np.meshgrid(
        np.arange(x0, x1 + 1, dtype=object) * den,
        np.arange(y0, y1 + 1, dtype=object) * den,
        indexing="ij",
    )
    inside = np.ones(gx.shape, dtype=bool)
    for i in range(n):
        (ax, ay), (bx, by) = P[i], P[(i + 1) % n]
        cross = (bx - ax) * (gy - ay) - (by - ay) * (gx - ax)
        inside &= (cross * sign > 0).astype(bool)
    if not inside.any():
        raise InvalidIntervalError("rasterization is empty; increase scale")
    try:
        return IntervalSet.from_mask((x0, y0), inside, 2)
    except InvalidIntervalError as exc:
        raise InvalidIntervalError(f"rasterization is not an interval ({exc}); increase scale") from exc


class ClosureReport(NamedTuple):
    ok: bool
    pair: tuple[int, int] | None = None
    shift: int = 0
    n_components: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _n_components(S: GridSet) -> int:
    if S.is_empty:
        return 0
    return _label_convex(S.mask)[1]


def is_intersection_closed(family: Sequence[IntervalSet]) -> ClosureReport:
    """Check that every pairwise intersection is empty or a single interval.

    Membership of the intersection in ``family`` is not required.
    """
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            k = _n_components(intersect(family[i], family[j]))
            if k > 1:
                return ClosureReport(False, (i, j), 0, k)
    return ClosureReport(True)


def is_flow_intersection_closed(family: Sequence[IntervalSet]) -> ClosureReport:
    """Like :func:`is_intersection_closed` but over every diagonal shift of the second member.

    Only shifts with overlapping bounding boxes are examined; all others give
    empty intersections.
    """
    for i, X in enumerate(family):
        for j, Y in enumerate(family):
            if j < i:
                continue
            lo_t = max(y - x for y, x in zip(Y.lo, X.hi))
            hi_t = min(y - x for y, x in zip(Y.hi, X.lo))
            for t in range(lo_t, hi_t + 1):
                k = _n_components(intersect(X, Y.shifted(t)))
                if k > 1:
                    return ClosureReport(False, (i, j), t, k)
    return ClosureReport(True)
