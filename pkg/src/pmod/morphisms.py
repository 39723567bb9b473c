"""Morphisms between interval modules and between interval-decomposable modules.

A morphism ``C(I) -> C(J)`` is a scalar on each interval component of
``I & J``; a nonzero scalar is allowed exactly on the ``(I, J)``-valid
components. The scalar calculus below (``ScalarMorphism``, ``compose``,
``MorphismMatrix``) only handles pairs whose intersection has at most one
component and raises ``MultiComponentError`` otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from ._gf import check_prime, rank_mod_p
from .errors import DimensionError, MultiComponentError
from .intervals import Barcode, GridSet, IntervalSet, canvas_of, components, intersect
from .intervals import _down_closure, _up_closure

__all__ = [
    "is_valid_component",
    "valid_components",
    "count_valid_components",
    "hom_exists",
    "hom_dimension_bruteforce",
    "enumerate_natural_transformations",
    "ScalarMorphism",
    "compose",
    "MorphismMatrix",
    "matrix_compose",
]


def _validity(Q: GridSet, I: GridSet, J: GridSet) -> bool:
    lo, shape = canvas_of([I, J])
    q = Q.on_canvas(lo, shape)
    i = I.on_canvas(lo, shape)
    j = J.on_canvas(lo, shape)
    below = i & _down_closure(q)  # points of I under some point of Q
    above = j & _up_closure(q)  # points of J over some point of Q
    return not (below & ~j).any() and not (above & ~i).any()


def is_valid_component(Q: GridSet, I: GridSet, J: GridSet) -> bool:
    """Whether the component ``Q`` of ``I & J`` is ``(I, J)``-valid.

    Valid means: every point of ``I`` below a point of ``Q`` lies in ``J``,
    and every point of ``J`` above a point of ``Q`` lies in ``I``.
    """
    if Q.is_empty or Q not in components(intersect(I, J)):
        raise ValueError("Q is not an interval component of I & J")
    return _validity(Q, I, J)


def valid_components(I: GridSet, J: GridSet) -> list[tuple[IntervalSet, bool]]:
    """Components of ``I & J`` in canonical order, each with its validity flag."""
    return [(Q, _validity(Q, I, J)) for Q in components(intersect(I, J))]


def count_valid_components(I: GridSet, J: GridSet) -> int:
    return sum(ok for _, ok in valid_components(I, J))


def hom_exists(I: GridSet, J: GridSet) -> bool:
    """Is there a nonzero morphism ``C(I) -> C(J)``? Needs ``I & J`` to have at most one component."""
    comps = valid_components(I, J)
    if len(comps) > 1:
        raise MultiComponentError(
            f"I & J has {len(comps)} components; hom_exists needs at most one", len(comps)
        )
    return bool(comps) and comps[0][1]


# -- brute-force naturality --------------------------------------------------


def _window_canvas(I: GridSet, J: GridSet, window):
    if window is None:
        sets = [S for S in (I, J) if not S.is_empty]
        if not sets:
            return None
        return canvas_of(sets)
    lo, hi = (tuple(int(c) for c in w) for w in window)
    for S in (I, J):
        if not S.is_empty and (
            any(a < b for a, b in zip(S.lo, lo)) or any(a > b for a, b in zip(S.hi, hi))
        ):
            raise ValueError("intervals must lie inside the window")
    return lo, tuple(h - l + 1 for l, h in zip(lo, hi))


def _naturality_constraints(I: GridSet, J: GridSet, window, pairs: str):
    """Rows ``a*f_p - b*f_q = 0`` over unknowns ``f_x, x in I & J``.

    ``a = [p, q in J]`` and ``b = [p, q in I]``; unknowns off ``I & J`` are the
    zero map and drop out. ``pairs='covering'`` uses ``q = p + e_k`` only,
    which generates the order; ``pairs='all'`` uses every ``p <= q``.
    """
    if I.dim != J.dim:
        raise DimensionError("I and J differ in dimension")
    canvas = _window_canvas(I, J, window)
    if canvas is None:
        return [], np.zeros((0, 0), dtype=np.int64)
    lo, shape = canvas
    inI = I.on_canvas(lo, shape)
    inJ = J.on_canvas(lo, shape)
    both = inI & inJ
    unknown = -np.ones(shape, dtype=np.int64)
    where = np.argwhere(both)
    unknown[tuple(where.T)] = np.arange(len(where))
    pts = np.argwhere(np.ones(shape, dtype=bool))
    flat = lambda P: np.ravel_multi_index(tuple(P.T), shape)
    if pairs == "covering":
        src, dst = [], []
        for k in range(len(shape)):
            ok = pts[:, k] + 1 < shape[k]
            P = pts[ok]
            Q = P.copy()
            Q[:, k] += 1
            src.append(flat(P))
            dst.append(flat(Q))
        src = np.concatenate(src) if src else np.zeros(0, dtype=np.int64)
        dst = np.concatenate(dst) if dst else np.zeros(0, dtype=np.int64)
    elif pairs == "all":
        le = np.all(pts[:, None, :] <= pts[None, :, :], axis=2)
        a, b = np.nonzero(le)
        src, dst = flat(pts[a]), flat(pts[b])
    else:
        raise ValueError("pairs must be 'covering' or 'all'")
    fI, fJ, fU = inI.ravel(), inJ.ravel(), unknown.ravel()
    coef_p = (fJ[src] & fJ[dst]).astype(np.int64)  # phi_J(p, q)
    coef_q = (fI[src] & fI[dst]).astype(np.int64)  # phi_I(p, q)
    up, uq = fU[src], fU[dst]
    coef_p[up < 0] = 0
    coef_q[uq < 0] = 0
    keep = (coef_p != 0) | (coef_q != 0)
    n = len(where)
    A = np.zeros((int(keep.sum()), n), dtype=np.int64)
    rows = np.arange(A.shape[0])
    sel_p = coef_p[keep] != 0
    A[rows[sel_p], up[keep][sel_p]] += 1
    sel_q = coef_q[keep] != 0
    A[rows[sel_q], uq[keep][sel_q]] -= 1
    labels = [tuple(int(c) + l for c, l in zip(w, lo)) for w in where]
    return labels, A


def hom_dimension_bruteforce(I: GridSet, J: GridSet, window=None, field: int = 2, pairs: str = "covering") -> int:
    """Dimension of the space of natural transformations ``C(I) -> C(J)``.

    Solves the naturality squares directly as a linear system over F_p on
    the points of ``window`` (default: the bounding box of ``I | J``). This
    never consults component validity, so it serves as an oracle for
    :func:`hom_exists` and for :func:`count_valid_components`.
    """
    check_prime(field)
    labels, A = _naturality_constraints(I, J, window, pairs)
    n = len(labels)
    if n == 0:
        return 0
    if A.shape[0] == 0:
        return n
    return n - rank_mod_p(A, field)


def enumerate_natural_transformations(I: GridSet, J: GridSet, window=None, field: int = 2, max_points: int = 14):
    """All natural transformations ``C(I) -> C(J)`` as dicts point -> scalar.

    Enumerates every F_p-valued family on ``I & J`` and keeps those whose
    naturality squares commute for all ``p <= q`` in the window.
    """
    check_prime(field)
    labels, A = _naturality_constraints(I, J, window, "all")
    n = len(labels)
    if n > max_points:
        raise ValueError(f"{n} unknowns exceed max_points={max_points}")
    if n == 0:
        return [{}]
    X = np.array(list(itertools.product(range(field), repeat=n)), dtype=np.int64)
    ok = np.all((X @ A.T) % field == 0, axis=1) if A.shape[0] else np.ones(len(X), dtype=bool)
    return [dict(zip(labels, (int(v) for v in row))) for row in X[ok]]


# -- scalar calculus -----------------------------------------------------------


def _single_component(I: GridSet, J: GridSet, what: str) -> None:
    k = len(components(intersect(I, J)))
    if k > 1:
        raise MultiComponentError(f"{what} intersection has {k} components", k)


@dataclass(frozen=True)
class ScalarMorphism:
    """Morphism ``C(source) -> C(target)`` given by one scalar in F_p."""

    source: IntervalSet
    target: IntervalSet
    omega: int
    field: int = 2

    def __post_init__(self):
        check_prime(self.field)
        object.__setattr__(self, "omega", int(self.omega) % self.field)
        if self.omega and not hom_exists(self.source, self.target):
            raise ValueError("no nonzero morphism exists between these intervals")

    @property
    def is_zero(self) -> bool:
        return self.omega == 0

    def shifted(self, t: int) -> "ScalarMorphism":
        return ScalarMorphism(self.source.shifted(t), self.target.shifted(t), self.omega, self.field)


def compose(f: ScalarMorphism, g: ScalarMorphism) -> ScalarMorphism:
    """``g o f`` for ``f: C(I) -> C(J)`` and ``g: C(J) -> C(K)``.

    Nonzero iff both factors are and ``I & K`` is nonempty and inside ``J``.
    """
    if f.target != g.source:
        raise ValueError("f.target must equal g.source")
    if f.field != g.field:
        raise ValueError("morphisms live over different fields")
    I, J, K = f.source, f.target, g.target
    _single_component(I, J, "I & J")
    _single_component(J, K, "J & K")
    _single_component(I, K, "I & K")
    IK = intersect(I, K)
    if IK.is_empty or not IK.issubset(J):
        return ScalarMorphism(I, K, 0, f.field)
    return ScalarMorphism(I, K, f.omega * g.omega, f.field)


@dataclass(frozen=True, eq=False)
class MorphismMatrix:
    """``f ~ (+) f_{I,J}`` between two barcodes, keyed by barcode positions.

    Absent entries are zero; stored entries are nonzero scalars in F_p.
    """

    source: Barcode
    target: Barcode
    entries: dict = dc_field(default_factory=dict)
    field: int = 2

    def __post_init__(self):
        check_prime(self.field)
        object.__setattr__(self, "source", Barcode(self.source))
        object.__setattr__(self, "target", Barcode(self.target))
        clean = {}
        for (i, j), w in self.entries.items():
            w = int(w) % self.field
            if not w:
                continue
            if not (0 <= i < len(self.source) and 0 <= j < len(self.target)):
                raise IndexError(f"entry {(i, j)} out of range")
            if not hom_exists(self.source[i], self.target[j]):
                raise ValueError(f"entry {(i, j)}: no nonzero morphism between these intervals")
            clean[(i, j)] = w
        object.__setattr__(self, "entries", clean)

    @classmethod
    def identity(cls, barcode, field: int = 2) -> "MorphismMatrix":
        return cls(barcode, barcode, {(i, i): 1 for i in range(len(barcode))}, field)

    @classmethod
    def zero(cls, source, target, field: int = 2) -> "MorphismMatrix":
        return cls(source, target, {}, field)

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def shifted(self, t: int) -> "MorphismMatrix":
        return MorphismMatrix(self.source.shifted(t), self.target.shifted(t), dict(self.entries), self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MorphismMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and tuple(self.source) == tuple(other.source)
            and tuple(self.target) == tuple(other.target)
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"MorphismMatrix({len(self.source)}x{len(self.target)}, entries={self.entries}, p={self.field})"


def matrix_compose(F: MorphismMatrix, G: MorphismMatrix) -> MorphismMatrix:
    """Entry ``(I, K)`` of ``G o F`` is the F_p-sum over ``J`` of ``G[J, K] o F[I, J]``."""
    if tuple(F.target) != tuple(G.source):
        raise ValueError("F.target and G.source barcodes differ")
    if F.field != G.field:
        raise ValueError("matrices live over different fields")
    p = F.field
    out: dict[tuple[int, int], int] = {}
    for (i, j), a in F.entries.items():
        for (j2, k), b in G.entries.items():
            if j2 != j:
                continue
            h = compose(
                ScalarMorphism(F.source[i], F.target[j], a, p),
                ScalarMorphism(G.source[j], G.target[k], b, p),
            )
            if h.omega:
                out[(i, k)] = (out.get((i, k), 0) + h.omega) % p
    return MorphismMatrix(F.source, G.target, out, p)
