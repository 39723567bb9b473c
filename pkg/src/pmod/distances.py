"""Hausdorff and bottleneck distances between barcodes, and the stability check.

Distances are integers in grid units. Both are computed by a linear scan
over eps up to the search bound, deciding feasibility at each eps.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx
import numpy as np

from .errors import DimensionError, OracleBudgetExceeded
from .intervals import Barcode, IntervalSet, is_flow_intersection_closed
from .interleaving import (
    DEFAULT_BUDGET,
    oracle_module_distance,
    pair_distance,
    pair_interleaved,
    search_bound,
)

__all__ = [
    "Correspondence",
    "Matching",
    "hausdorff",
    "correspondence",
    "bottleneck",
    "matching",
    "check_hausdorff_le_bottleneck",
    "Status",
    "StabilityReport",
    "verify_stability",
    "pairwise_distance_matrix",
    "thread_count",
]


def _empty(dim: int) -> IntervalSet:
    return IntervalSet.empty(dim)


def _barcodes(M, N) -> tuple[Barcode, Barcode]:
    M, N = Barcode(M), Barcode(N)
    if M and N and M.dim != N.dim:
        raise DimensionError("barcodes differ in dimension")
    return M, N


def _dim(M: Barcode, N: Barcode) -> int:
    for B in (M, N):
        if B:
            return B.dim
    return 0


def _bound(M: Barcode, N: Barcode) -> int:
    return search_bound(*M, *N)


@dataclass(frozen=True)
class Correspondence:
    """An eps-correspondence: related index pairs, unpaired bars die within eps."""

    pairs: tuple[tuple[int, int], ...]
    eps: int

    def check(self, M, N) -> bool:
        M, N = _barcodes(M, N)
        e = _empty(_dim(M, N))
        if not all(pair_interleaved(M[i], N[j], self.eps) for i, j in self.pairs):
            return False
        left = {i for i, _ in self.pairs}
        right = {j for _, j in self.pairs}
        return all(pair_interleaved(I, e, self.eps) for i, I in enumerate(M) if i not in left) and all(
            pair_interleaved(J, e, self.eps) for j, J in enumerate(N) if j not in right
        )


@dataclass(frozen=True)
class Matching(Correspondence):
    """An eps-correspondence that is a partial injection both ways."""

    def check(self, M, N) -> bool:
        left = [i for i, _ in self.pairs]
        right = [j for _, j in self.pairs]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            return False
        return super().check(M, N)


def _pd_table(M: Barcode, N: Barcode) -> np.ndarray:
    """Distances with one extra row/column for the empty interval."""
    e = _empty(_dim(M, N))
    rows = list(M) + [e]
    cols = list(N) + [e]
    return np.array([[pair_distance(I, J) for J in cols] for I in rows], dtype=np.int64).reshape(len(rows), len(cols))


def hausdorff(M, N) -> int:
    """Hausdorff distance: each bar is matched to its nearest bar or to zero."""
    M, N = _barcodes(M, N)
    if not M and not N:
        return 0
    T = _pd_table(M, N)
    a = T[:-1, :].min(axis=1).max(initial=0)
    b = T[:, :-1].min(axis=0).max(initial=0)
    return int(max(a, b))


def correspondence(M, N, eps: int | None = None) -> Correspondence:
    """An eps-correspondence (default eps = hausdorff distance) relating every close pair."""
    M, N = _barcodes(M, N)
    if eps is None:
        eps = hausdorff(M, N)
    pairs = tuple((i, j) for i, I in enumerate(M) for j, J in enumerate(N) if pair_interleaved(I, J, eps))
    c = Correspondence(pairs, eps)
    if not c.check(M, N):
        raise ValueError(f"no {eps}-correspondence exists")
    return c


def _matching_at(M: Barcode, N: Barcode, eps: int) -> Matching | None:
    e = _empty(_dim(M, N))
    G = nx.DiGraph()
    G.add_node("s")
    G.add_node("t")
    G.add_edge("s", "slackL", capacity=len(N))
    G.add_edge("slackR", "t", capacity=len(M))
    G.add_edge("slackL", "slackR")  # unbounded
    for i, I in enumerate(M):
        G.add_edge("s", ("m", i), capacity=1)
        if pair_interleaved(I, e, eps):
            G.add_edge(("m", i), "slackR", capacity=1)
    for j, J in enumerate(N):
        G.add_edge(("n", j), "t", capacity=1)
        if pair_interleaved(J, e, eps):
            G.add_edge("slackL", ("n", j), capacity=1)
    for i, I in enumerate(M):
        for j, J in enumerate(N):
            if pair_interleaved(I, J, eps):
                G.add_edge(("m", i), ("n", j), capacity=1)
    value, flow = nx.maximum_flow(G, "s", "t")
    if value != len(M) + len(N):
        return None
    pairs = sorted(
        (i, v[1])
        for i in range(len(M))
        for v, amount in flow[("m", i)].items()
        if isinstance(v, tuple) and amount > 0
    )
    return Matching(tuple(pairs), eps)


def matching(M, N, eps: int | None = None) -> Matching:
    """An eps-matching (default eps = bottleneck distance)."""
    M, N = _barcodes(M, N)
    if eps is None:
        eps = bottleneck(M, N)
    m = _matching_at(M, N, eps)
    if m is None:
        raise ValueError(f"no {eps}-matching exists")
    return m


def bottleneck(M, N) -> int:
    """Bottleneck distance, via max-flow feasibility with droppable bars.

    Bars that die within eps may stay unmatched: they are routed through a
    slack node, so an eps-matching exists iff the flow saturates every bar.
    """
    M, N = _barcodes(M, N)
    if not M and not N:
        return 0
    for eps in range(_bound(M, N) + 1):
        if _matching_at(M, N, eps) is not None:
            return eps
    raise AssertionError("unreachable: every bar can be dropped at the search bound")


@dataclass(frozen=True)
class BoundCheck:
    hausdorff: int
    bottleneck: int

    @property
    def ok(self) -> bool:
        return self.hausdorff <= self.bottleneck


def check_hausdorff_le_bottleneck(M, N) -> BoundCheck:
    rep = BoundCheck(hausdorff(M, N), bottleneck(M, N))
    assert rep.ok, f"hausdorff {rep.hausdorff} exceeds bottleneck {rep.bottleneck}"
    return rep


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"
    OUTSIDE_HYPOTHESIS = "OUTSIDE_HYPOTHESIS"


@dataclass(frozen=True)
class StabilityReport:
    hausdorff: int
    interleaving: int | None  # exact oracle distance, None when over budget
    bracket: tuple[int, int]
    status: Status
    intersection_closed: bool
    notes: tuple[str, ...] = field(default=())

    @property
    def ratio(self) -> float | None:
        """``h / d`` with ``0/0 := 0``; None when only a bracket is known."""
        if self.interleaving is None:
            return None
        if self.interleaving == 0:
            return 0.0 if self.hausdorff == 0 else float("inf")
        return self.hausdorff / self.interleaving


def verify_stability(M, N, field: int = 2, budget: int = DEFAULT_BUDGET) -> StabilityReport:
    """Check ``hausdorff <= 2 * interleaving distance`` on one pair of barcodes.

    The interleaving distance comes from the exhaustive oracle. If the oracle
    would exceed ``budget`` only the bracket ``[0, bottleneck]`` is known and
    the check can confirm but not refute. A violation on a family that is not
    closed under shifted intersections is reported as outside the hypothesis.
    """
    M, N = _barcodes(M, N)
    h = hausdorff(M, N)
    notes = []
    try:
        d = oracle_module_distance(M, N, field, budget)
        lo = hi = d
    except OracleBudgetExceeded as exc:
        d = None
        lo, hi = 0, bottleneck(M, N)
        notes.append(str(exc))
    closed = bool(is_flow_intersection_closed(list(M) + list(N)))
    if h <= 2 * lo:
        status = Status.PASS
    elif d is None and h <= 2 * hi:
        status = Status.INCONCLUSIVE
    else:
        status = Status.FAIL if closed else Status.OUTSIDE_HYPOTHESIS
    return StabilityReport(h, d, (lo, hi), status, closed, tuple(notes))


def thread_count() -> int:
    """Worker count, capped by the PMOD_THREADS environment variable."""
    cap = os.environ.get("PMOD_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def pairwise_distance_matrix(barcodes, metric: str = "hausdorff") -> np.ndarray:
    """Symmetric matrix of ``metric`` between all given barcodes."""
    fn = {"hausdorff": hausdorff, "bottleneck": bottleneck}[metric]
    barcodes = [Barcode(B) for B in barcodes]
    k = len(barcodes)
    jobs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    out = np.zeros((k, k), dtype=np.int64)
    with ThreadPoolExecutor(max_workers=thread_count()) as ex:
        for (i, j), v in zip(jobs, ex.map(lambda ij: fn(barcodes[ij[0]], barcodes[ij[1]]), jobs)):
            out[i, j] = out[j, i] = v
    return out
