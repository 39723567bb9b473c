import numpy as np
import pytest

from pmod import (
    Barcode,
    Correspondence,
    Matching,
    Status,
    bottleneck,
    check_hausdorff_le_bottleneck,
    hausdorff,
    make_rect,
    verify_stability,
)
from pmod.constructions import instability_instance, random_rect_barcode
from pmod.distances import correspondence, matching, pairwise_distance_matrix, thread_count
from pmod.errors import DimensionError

from conftest import staircase

Z = Barcode([], dim=2)


@pytest.fixture
def staggered(stagger):
    return Barcode([stagger[0]]), Barcode([stagger[1]])


class TestHausdorff:
    def test_self(self, staggered):
        M, _ = staggered
        assert hausdorff(M, M) == 0

    def test_staggered(self, staggered):
        assert hausdorff(*staggered) == 1

    def test_instability(self):
        assert hausdorff(*instability_instance(4)) == 2

    def test_both_empty(self):
        assert hausdorff(Z, Z) == 0
        assert hausdorff(Barcode([]), Barcode([])) == 0

    def test_against_empty(self):
        M = Barcode([make_rect((0, 0), (1, 1)), make_rect((0, 0), (4, 4))])
        assert hausdorff(M, Z) == 3

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            hausdorff(Barcode([make_rect((0,), (1,))]), Barcode([make_rect((0, 0), (1, 1))]))


class TestBottleneck:
    def test_self(self, staggered):
        M, _ = staggered
        assert bottleneck(M, M) == 0

    def test_staggered(self, staggered):
        assert bottleneck(*staggered) == 1

    def test_instability_equals_hausdorff(self):
        M, N = instability_instance(4)
        assert bottleneck(M, N) == hausdorff(M, N) == 2

    def test_multiplicity_separates_from_hausdorff(self):
        # two copies of a long bar against one: Hausdorff sees no difference
        L = make_rect((0, 0), (8, 8))
        M, N = Barcode([L, L]), Barcode([L])
        assert hausdorff(M, N) == 0
        assert bottleneck(M, N) == 5

    def test_bound_report(self, staggered):
        for M, N in [staggered, instability_instance(4), instability_instance(2)]:
            rep = check_hausdorff_le_bottleneck(M, N)
            assert rep.ok and rep.hausdorff <= rep.bottleneck


class TestWitnesses:
    def test_correspondence_checks(self):
        M, N = instability_instance(4)
        c = correspondence(M, N)
        assert c.eps == 2 and c.check(M, N)
        assert not Correspondence(c.pairs, 1).check(M, N)

    def test_matching_checks(self):
        M, N = instability_instance(4)
        m = matching(M, N)
        assert m.eps == 2 and m.check(M, N)
        # every bar dies within 2 here, so the flow may drop them all
        assert m.pairs == ()
        with pytest.raises(ValueError):
            matching(M, N, eps=1)

    def test_matching_rejects_non_injective(self):
        L = make_rect((0, 0), (8, 8))
        M, N = Barcode([L, L]), Barcode([L])
        assert Correspondence(((0, 0), (1, 0)), 0).check(M, N)
        assert not Matching(((0, 0), (1, 0)), 0).check(M, N)

    def test_no_witness_below_distance(self, staggered):
        with pytest.raises(ValueError):
            matching(*staggered, eps=0)
        with pytest.raises(ValueError):
            correspondence(*staggered, eps=0)

    def test_matching_monotone(self):
        for seed in range(40):
            M = random_rect_barcode(3, (-5, 5), 4, seed)
            N = random_rect_barcode(2, (-5, 5), 4, seed + 1000)
            b = bottleneck(M, N)
            for eps in range(b, b + 3):
                assert matching(M, N, eps).check(M, N)


class TestStability:
    def test_self(self, staggered):
        M, _ = staggered
        r = verify_stability(M, M)
        assert (r.hausdorff, r.interleaving, r.ratio, r.status) == (0, 0, 0.0, Status.PASS)

    def test_instability(self):
        r = verify_stability(*instability_instance(4))
        assert (r.hausdorff, r.interleaving, r.ratio) == (2, 1, 2.0)
        assert r.status is Status.PASS
        assert not r.intersection_closed

    def test_over_budget_gives_bracket(self):
        r = verify_stability(*instability_instance(4), budget=1)
        assert r.interleaving is None and r.ratio is None
        assert r.bracket == (0, 2)
        assert r.status is Status.INCONCLUSIVE
        assert r.notes

    def test_closed_random_pairs(self):
        for seed in range(30):
            M = random_rect_barcode(2, (-5, 5), 4, seed)
            N = random_rect_barcode(2, (-5, 5), 4, seed + 500)
            r = verify_stability(M, N)
            assert r.intersection_closed
            assert r.status is Status.PASS

    def test_non_closed_family_flagged(self):
        K = staircase((0, 4), [(2, 3), (3, 2), (2, 2)])
        r = verify_stability(Barcode([K]), Barcode([K.shifted(1)]))
        assert not r.intersection_closed
        assert r.status is Status.PASS


class TestPairwise:
    def test_matrix(self, monkeypatch):
        bars = [random_rect_barcode(2, (-4, 4), 3, s) for s in range(5)]
        monkeypatch.setenv("PMOD_THREADS", "1")
        serial = pairwise_distance_matrix(bars)
        monkeypatch.setenv("PMOD_THREADS", "4")
        parallel = pairwise_distance_matrix(bars)
        assert np.array_equal(serial, parallel)
        assert np.array_equal(serial, serial.T) and not serial.diagonal().any()
        assert serial[0, 1] == hausdorff(bars[0], bars[1])

    def test_thread_cap(self, monkeypatch):
        monkeypatch.setenv("PMOD_THREADS", "1")
        assert thread_count() == 1

    def test_bottleneck_metric(self):
        bars = [random_rect_barcode(2, (-4, 4), 3, s) for s in range(3)]
        D = pairwise_distance_matrix(bars, "bottleneck")
        assert D[1, 2] == bottleneck(bars[1], bars[2])
