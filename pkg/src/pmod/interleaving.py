"""Interleavings of interval modules and of interval-decomposable modules.

Epsilons are nonnegative integers (grid units). The pairwise functions
decide interleavings geometrically; ``oracle_interleaving_exists`` decides
them for whole barcodes by exhaustive search over F_p scalars and is the
ground truth the geometric criteria are checked against.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._gf import check_prime, solve_lexmin
from .errors import DimensionError, MultiComponentError, OracleBudgetExceeded
from .intervals import Barcode, GridSet, IntervalSet, canvas_of, diag_extent, intersect
from .morphisms import MorphismMatrix, hom_exists, valid_components

log = logging.getLogger(__name__)

__all__ = [
    "is_trivial",
    "transition_scalar_matrix",
    "left_interleaved",
    "pair_interleaved",
    "pair_distance",
    "death_time",
    "search_bound",
    "InterleavingPair",
    "oracle_interleaving_exists",
    "oracle_module_distance",
    "oracle_field_check",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 24


def _eps(eps) -> int:
    eps = int(eps)
    if eps < 0:
        raise ValueError("epsilon must be nonnegative")
    return eps


def is_trivial(I: GridSet, eps: int) -> bool:
    """Whether the eps-transition morphism of ``C(I)`` is zero, i.e. ``I`` misses ``I(eps)``."""
    eps = _eps(eps)
    if I.is_empty:
        return True
    return eps > diag_extent(I)


def death_time(I: GridSet) -> int:
    """Smallest eps at which ``C(I)`` is eps-interleaved with the zero module."""
    if I.is_empty:
        return 0
    return (diag_extent(I) + 2) // 2  # ceil((extent + 1) / 2)


def search_bound(*intervals: GridSet) -> int:
    """An eps at which every given interval is 2*eps-trivial, hence interleaved with anything."""
    return 1 + max((death_time(I) for I in intervals), default=0)


def transition_scalar_matrix(M, delta: int, field: int = 2) -> MorphismMatrix:
    """``phi^delta_M`` as a diagonal matrix ``M -> M(delta)``."""
    delta = _eps(delta)
    M = Barcode(M)
    entries = {(i, i): 1 for i, I in enumerate(M) if not is_trivial(I, delta)}
    return MorphismMatrix(M, M.shifted(delta), entries, field)


def left_interleaved(I: IntervalSet, J: IntervalSet, eps: int) -> bool:
    """Whether ``(C(I), C(J))`` admits ``f, g`` with ``g(eps) o f = phi^{2 eps}_{C(I)}``.

    True iff ``I`` is 2eps-trivial, or there are nonzero morphisms
    ``C(I) -> C(J(eps))`` and ``C(J) -> C(I(eps))`` and ``I & I(2eps)`` is a
    nonempty subset of ``J(eps)``.
    """
    eps = _eps(eps)
    if is_trivial(I, 2 * eps):
        return True
    if J.is_empty:
        return False
    Je = J.shifted(eps)
    if not hom_exists(I, Je):
        return False
    if not hom_exists(J, I.shifted(eps)):
        return False
    core = intersect(I, I.shifted(2 * eps))
    return not core.is_empty and core.issubset(Je)


def pair_interleaved(I: GridSet, J: GridSet, eps: int, strict: bool = False) -> bool:
    """Whether ``C(I)`` and ``C(J)`` are eps-interleaved (either may be empty).

    Decided geometrically by two left interleavings. If a needed
    intersection has several components the geometric test does not apply;
    with ``strict`` that raises ``MultiComponentError``, otherwise the
    exhaustive oracle on the two singleton barcodes decides instead.
    """
    eps = _eps(eps)
    if I.is_empty and J.is_empty:
        return True
    if J.is_empty:
        return is_trivial(I, 2 * eps)
    if I.is_empty:
        return is_trivial(J, 2 * eps)
    try:
        return left_interleaved(I, J, eps) and left_interleaved(J, I, eps)
    except MultiComponentError:
        if strict:
            raise
        return oracle_interleaving_exists(Barcode([I]), Barcode([J]), eps, budget=_PAIR_BUDGET)[0]


# a pair has at most a handful of components per entry, so this never binds in practice
_PAIR_BUDGET = 64


@lru_cache(maxsize=65536)
def _pair_distance(I: GridSet, J: GridSet, strict: bool) -> int:
    bound = search_bound(I, J)
    for eps in range(bound + 1):
        if pair_interleaved(I, J, eps, strict):
            return eps
    raise AssertionError("unreachable: every pair is interleaved at the search bound")


def pair_distance(I: GridSet, J: GridSet, strict: bool = False) -> int:
    """Integer interleaving distance between ``C(I)`` and ``C(J)``.

    Linear scan over eps up to :func:`search_bound`; at that bound both
    intervals are 2eps-trivial so the zero morphisms interleave them.
    ``strict`` is passed on to :func:`pair_interleaved`.
    """
    if I.dim != J.dim:
        raise DimensionError("intervals differ in dimension")
    return _pair_distance(I, J, bool(strict))


# -- module-level oracle --------------------------------------------------------


@dataclass(frozen=True)
class _Unknown:
    side: str  # "f" for M -> N(eps), "g" for N -> M(eps)
    src: int
    dst: int
    comp: int
    region: IntervalSet  # component of src & dst(eps)


@dataclass(frozen=True)
class InterleavingPair:
    """A witness ``f: M -> N(eps)``, ``g: N -> M(eps)`` found by the oracle.

    ``f`` and ``g`` map ``(source index, target index, component index)`` to
    nonzero scalars; the component index refers to ``components()`` of the
    intersection of the source interval with the shifted target interval.
    """

    M: Barcode
    N: Barcode
    eps: int
    field: int
    f: dict
    g: dict

    def matrices(self) -> tuple[MorphismMatrix, MorphismMatrix]:
        """``(f, g)`` as :class:`MorphismMatrix` objects (single-component entries only)."""
        out = []
        for coeffs, src, dst in ((self.f, self.M, self.N), (self.g, self.N, self.M)):
            entries = {}
            for (a, b, c), w in coeffs.items():
                if (a, b) in entries or c != 0:
                    raise ValueError("witness uses several components of one entry")
                entries[(a, b)] = w
            out.append(MorphismMatrix(src, dst.shifted(self.eps), entries, self.field))
        return out[0], out[1]


def _unknowns(src: Barcode, dst: Barcode, eps: int, side: str) -> list[_Unknown]:
    out = []
    for a, A in enumerate(src):
        for b, B in enumerate(dst):
            for c, (Q, ok) in enumerate(valid_components(A, B.shifted(eps))):
                if ok:
                    out.append(_Unknown(side, a, b, c, Q))
    return out


def _triangle_equations(src, dst, eps, first, second, canvas):
    """Pointwise equations of ``second(eps) o first = phi^{2 eps}_src``.

    ``first`` are unknowns ``src -> dst(eps)``, ``second`` are unknowns
    ``dst -> src(eps)``. Returns a set of ``(monomials, rhs)`` where each
    monomial is a pair ``(index into first, index into second)``. Every
    point of every ``src[a] & src[a2](2 eps)`` contributes one equation;
    duplicates collapse.
    """
    lo, shape = canvas
    reg1 = [u.region.on_canvas(lo, shape) for u in first]
    # second(eps) at p is second at p + eps(1,...,1): shift its regions down by eps
    reg2 = [u.region.shifted(eps).on_canvas(lo, shape) for u in second]
    eqs = set()
    for a, A in enumerate(src):
        for a2, A2 in enumerate(src):
            target = intersect(A, A2.shifted(2 * eps))
            if target.is_empty:
                continue
            tmask = target.on_canvas(lo, shape)
            pairs = [
                (x, y)
                for x, u in enumerate(first)
                if u.src == a
                for y, v in enumerate(second)
                if v.dst == a2 and v.src == u.dst
            ]
            rhs = 1 if a == a2 else 0
            if not pairs:
                eqs.add(((), rhs))
                continue
            sig = np.stack([reg1[x] & reg2[y] for x, y in pairs], axis=-1)[tmask]
            for row in np.unique(sig, axis=0):
                eqs.add((tuple(pairs[k] for k in np.nonzero(row)[0]), rhs))
    return eqs


def _interleaving_system(M: Barcode, N: Barcode, eps: int):
    fs = _unknowns(M, N, eps, "f")
    gs = _unknowns(N, M, eps, "g")
    sets = [S for S in (*M, *N) for S in (S, S.shifted(eps), S.shifted(2 * eps))]
    canvas = canvas_of(sets) if sets else None
    eqs = []
    if canvas is not None:
        for mono, rhs in _triangle_equations(M, N, eps, fs, gs, canvas):
            eqs.append((tuple((x, y) for x, y in mono), rhs))
        for mono, rhs in _triangle_equations(N, M, eps, gs, fs, canvas):
            # store every monomial as (f index, g index)
            eqs.append((tuple((x, y) for y, x in mono), rhs))
    eqs.sort()
    return fs, gs, eqs


def _search(nf: int, ng: int, eqs, p: int):
    """First ``(f, g)`` in enumeration order solving the bilinear system, or None."""
    if any(not mono and rhs % p for mono, rhs in eqs):
        return None
    eqs = [(mono, rhs) for mono, rhs in eqs if mono]
    enumerate_f = nf <= ng
    n_enum, n_lin = (nf, ng) if enumerate_f else (ng, nf)
    for fixed in itertools.product(range(p), repeat=n_enum):
        rows, rhs_list = [], []
        for mono, rhs in eqs:
            row = [0] * n_lin
            for x, y in mono:
                if enumerate_f:
                    row[y] += fixed[x]
                else:
                    row[x] += fixed[y]
            rows.append(row)
            rhs_list.append(rhs)
        sol = solve_lexmin(rows, rhs_list, n_lin, p) if n_lin else (
            [] if all(r % p == 0 for r in rhs_list) else None
        )
        if sol is not None:
            return (list(fixed), sol) if enumerate_f else (sol, list(fixed))
    return None


def oracle_interleaving_exists(M, N, eps: int, field: int = 2, budget: int = DEFAULT_BUDGET):
    """Exhaustively decide whether ``M`` and ``N`` are eps-interleaved over F_p.

    Unknowns are one scalar per valid component of every entry of
    ``f: M -> N(eps)`` and ``g: N -> M(eps)``; both triangle identities are
    imposed pointwise. The side with fewer unknowns (``f`` on ties) is
    enumerated in lexicographic order and the other side is solved as a
    linear system, taking its lexicographically least solution. Returns
    ``(exists, witness_or_None)``.
    """
    check_prime(field)
    eps = _eps(eps)
    M, N = Barcode(M), Barcode(N)
    fs, gs, eqs = _interleaving_system(M, N, eps)
    if len(fs) + len(gs) > budget:
        raise OracleBudgetExceeded(len(fs) + len(gs), budget)
    found = _search(len(fs), len(gs), eqs, field)
    if found is None:
        return False, None
    fv, gv = found
    f = {(u.src, u.dst, u.comp): w for u, w in zip(fs, fv) if w}
    g = {(u.src, u.dst, u.comp): w for u, w in zip(gs, gv) if w}
    return True, InterleavingPair(M, N, eps, field, f, g)


def oracle_module_distance(M, N, field: int = 2, budget: int = DEFAULT_BUDGET) -> int:
    """Smallest integer eps for which the oracle finds an eps-interleaving."""
    M, N = Barcode(M), Barcode(N)
    bound = search_bound(*M, *N)
    for eps in range(bound + 1):
        if oracle_interleaving_exists(M, N, eps, field, budget)[0]:
            return eps
    raise AssertionError("unreachable: zero morphisms interleave at the search bound")


def oracle_field_check(M, N, eps: int, fields=(2, 3), budget: int = DEFAULT_BUDGET) -> dict[int, bool]:
    """Run the oracle over several fields and log any disagreement."""
    res = {p: oracle_interleaving_exists(M, N, eps, p, budget)[0] for p in fields}
    if len(set(res.values())) > 1:
        log.warning("oracle answer depends on the field at eps=%d: %s", eps, res)
    return res
