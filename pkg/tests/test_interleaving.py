import logging

import numpy as np
import pytest

from pmod import (
    Barcode,
    IntervalSet,
    MorphismMatrix,
    diag_extent,
    is_trivial,
    left_interleaved,
    make_rect,
    matrix_compose,
    oracle_interleaving_exists,
    oracle_module_distance,
    pair_distance,
    pair_interleaved,
    transition_scalar_matrix,
)
from pmod.constructions import instability_instance, random_rect_barcode
from pmod.errors import DimensionError, MultiComponentError, OracleBudgetExceeded
from pmod.interleaving import death_time, oracle_field_check, search_bound

from conftest import staircase


def jittered_pair(rng, size=10, jitter=2):
    lo = rng.integers(-4, 4, size=2)
    hi = lo + rng.integers(4, size, size=2)
    dlo, dhi = rng.integers(-jitter, jitter + 1, size=(2, 2))
    I = make_rect(tuple(map(int, lo)), tuple(map(int, hi)))
    return I, make_rect(tuple(map(int, lo + dlo)), tuple(map(int, hi + dhi)))


UNIT = make_rect((0, 0), (1, 1))
EMPTY = IntervalSet.empty(2)


class TestTransition:
    def test_zero_shift_is_identity(self):
        M = Barcode([UNIT, make_rect((3, 3), (5, 4))])
        assert transition_scalar_matrix(M, 0) == MorphismMatrix.identity(M)

    def test_dies(self):
        assert transition_scalar_matrix(Barcode([UNIT]), 2).entries == {}

    def test_survives(self):
        assert transition_scalar_matrix(Barcode([UNIT]), 1).entries == {(0, 0): 1}


class TestTrivial:
    def test_eps_zero(self):
        assert not is_trivial(UNIT, 0)

    def test_unit_box(self):
        assert is_trivial(UNIT, 2)
        assert not is_trivial(UNIT, 1)

    def test_column(self):
        assert is_trivial(make_rect((0, 0), (0, 9)), 1)

    def test_negative_eps(self):
        with pytest.raises(ValueError):
            is_trivial(UNIT, -1)


class TestLeft:
    def test_self(self):
        for eps in range(4):
            assert left_interleaved(UNIT, UNIT, eps)

    def test_trivial_source(self):
        assert left_interleaved(UNIT, make_rect((40, -40), (41, -39)), 1)

    def test_staggered(self, stagger):
        I, J = stagger
        assert left_interleaved(I, J, 1)

    def test_multi_component_raises(self):
        K = staircase((0, 4), [(2, 3), (3, 2), (2, 2)])
        with pytest.raises(MultiComponentError):
            left_interleaved(K, K.shifted(1), 0)


class TestPair:
    def test_staggered(self, stagger):
        I, J = stagger
        assert pair_interleaved(I, J, 1)
        assert not pair_interleaved(I, J, 0)

    def test_empty_conventions(self):
        assert pair_interleaved(EMPTY, EMPTY, 0)
        eps = death_time(UNIT)
        assert eps == 1
        assert pair_interleaved(UNIT, EMPTY, eps) and pair_interleaved(EMPTY, UNIT, eps)
        assert not pair_interleaved(UNIT, EMPTY, 0)

    def test_instability_component_vs_union(self):
        M, N = instability_instance(4)
        assert not pair_interleaved(M[0], N[0], 1)
        assert pair_distance(M[0], N[0]) == 2

    def test_strict_raises_where_fallback_decides(self):
        K = staircase((0, 4), [(2, 3), (3, 2), (2, 2)])
        L = K.shifted(1)
        with pytest.raises(MultiComponentError):
            pair_interleaved(K, L, 0, strict=True)
        assert pair_interleaved(K, L, 0) is False
        got = pair_distance(K, L)
        assert got == oracle_module_distance(Barcode([K]), Barcode([L]), budget=64)

    def test_significance_lifts_left_to_full(self):
        # when I is 4eps-significant, a left interleaving is already a full one
        rng = np.random.default_rng(3)
        hits = 0
        for _ in range(400):
            I, J = jittered_pair(rng)
            eps = int(rng.integers(0, 3))
            if not is_trivial(I, 4 * eps) and left_interleaved(I, J, eps):
                assert pair_interleaved(I, J, eps)
                hits += 1
        assert hits > 10

    def test_monotone(self):
        for seed in range(150):
            I, J = random_rect_barcode(2, (-6, 6), 6, seed)
            vals = [pair_interleaved(I, J, e) for e in range(search_bound(I, J) + 2)]
            first = vals.index(True)
            assert all(vals[first:])


class TestPairDistance:
    def test_self(self):
        assert pair_distance(UNIT, UNIT) == 0

    def test_staggered(self, stagger):
        assert pair_distance(*stagger) == 1

    def test_to_empty(self):
        assert pair_distance(UNIT, EMPTY) == 1

    def test_bound_suffices(self):
        # at the search bound both intervals are 2eps-trivial
        for seed in range(50):
            I, J = random_rect_barcode(2, (-8, 8), 6, seed)
            B = search_bound(I, J)
            assert 2 * B > max(diag_extent(I), diag_extent(J))
            assert pair_distance(I, J) <= B

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            pair_distance(UNIT, make_rect((0,), (3,)))


class TestOracle:
    def test_identity_witness(self):
        M = Barcode([UNIT, make_rect((2, 0), (4, 3))])
        ok, w = oracle_interleaving_exists(M, M, 0)
        assert ok
        f, g = w.matrices()
        assert f == MorphismMatrix.identity(M) and g == MorphismMatrix.identity(M)

    def test_witness_satisfies_triangles(self, stagger):
        M, N = Barcode([stagger[0]]), Barcode([stagger[1]])
        for p in (2, 3):
            ok, w = oracle_interleaving_exists(M, N, 1, p)
            assert ok
            f, g = w.matrices()
            assert matrix_compose(f, g.shifted(1)).entries == transition_scalar_matrix(M, 2, p).entries
            assert matrix_compose(g, f.shifted(1)).entries == transition_scalar_matrix(N, 2, p).entries

    def test_instability(self):
        M, N = instability_instance(4)
        assert oracle_interleaving_exists(M, N, 1)[0]
        assert not oracle_interleaving_exists(M, N, 0)[0]
        assert oracle_module_distance(M, N) == 1

    def test_self_distance(self):
        M, _ = instability_instance(4)
        assert oracle_module_distance(M, M) == 0

    def test_against_empty(self):
        M = Barcode([UNIT, make_rect((0, 0), (4, 4)), make_rect((5, 0), (5, 9))])
        Z = Barcode([], dim=2)
        assert oracle_module_distance(M, Z) == max(pair_distance(I, EMPTY) for I in M) == 3

    def test_budget(self):
        M, N = instability_instance(4)
        with pytest.raises(OracleBudgetExceeded):
            oracle_interleaving_exists(M, N, 1, budget=1)

    def test_field_check_agrees(self, caplog):
        M, N = instability_instance(2)
        with caplog.at_level(logging.WARNING):
            assert oracle_field_check(M, N, 1) == {2: True, 3: True}
        assert not caplog.records

    def test_rejects_composite_field(self, stagger):
        with pytest.raises(ValueError):
            oracle_interleaving_exists(Barcode([stagger[0]]), Barcode([stagger[1]]), 1, field=4)
