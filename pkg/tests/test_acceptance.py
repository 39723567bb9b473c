"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

The lines are printed with output capture disabled so they show up in a
plain ``pytest -v`` run.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from pmod import (
    Barcode,
    IntervalSet,
    bottleneck,
    components,
    compose,
    count_valid_components,
    hausdorff,
    hom_dimension_bruteforce,
    hom_exists,
    intersect,
    is_flow_intersection_closed,
    is_poset_connected,
    is_poset_convex,
    oracle_interleaving_exists,
    oracle_module_distance,
    pair_distance,
    pair_interleaved,
    verify_stability,
)
from pmod.constructions import (
    composition_counterexample,
    instability_instance,
    random_rect_barcode,
    random_upperset_barcode,
    tightness_instance,
)
from pmod.interleaving import search_bound

from conftest import multi_component_pairs, random_staircase


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance] criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok

    return emit


def test_criterion_1_pair_criterion_matches_oracle(report):
    t0 = time.perf_counter()
    checks = mismatches = 0
    for seed in range(500):
        I, J = random_rect_barcode(2, (-8, 8), 6, seed)
        for eps in range(search_bound(I, J) + 1):
            geo = pair_interleaved(I, J, eps, strict=True)
            for p in (2, 3):
                checks += 1
                mismatches += geo != oracle_interleaving_exists(Barcode([I]), Barcode([J]), eps, p)[0]
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 60
    report(1, ok, f"500 rectangle pairs, {checks} checks over F_2 and F_3, {mismatches} mismatches, {dt:.1f}s")
    assert ok


def _single_component_pairs(count, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        kind = len(out) % 3
        s = int(rng.integers(1 << 30))
        if kind == 0:
            A, B = random_rect_barcode(2, (-5, 5), 5, s)
        elif kind == 1:
            A, B = random_upperset_barcode(2, ((-3, -3), (3, 3)), 3, s)
        else:
            A = random_staircase(rng)
            B = A.shifted(int(rng.integers(-3, 4)))
        if len(components(intersect(A, B))) <= 1:
            out.append((A, B))
    return out


def test_criterion_2_hom_matches_naturality(report):
    single = _single_component_pairs(500)
    bad_single = sum(hom_exists(A, B) != (hom_dimension_bruteforce(A, B) > 0) for A, B in single)
    multi = multi_component_pairs(50)
    bad_multi = 0
    for A, B in multi:
        n = count_valid_components(A, B)
        bad_multi += any(hom_dimension_bruteforce(A, B, field=p) != n for p in (2, 3))
    ok = bad_single == 0 and bad_multi == 0
    report(
        2,
        ok,
        f"{len(single)} single-component pairs ({bad_single} disagreements), "
        f"{len(multi)} multi-component pairs ({bad_multi} miscounts)",
    )
    assert ok


def test_criterion_3_stability(report):
    pairs = []
    for k in range(200):
        if k % 2 == 0:
            M = random_rect_barcode(1 + k % 3, (-6, 6), 5, 2 * k)
            N = random_rect_barcode(1 + (k // 2) % 3, (-6, 6), 5, 2 * k + 1)
        else:
            M = random_upperset_barcode(1 + k % 3, ((-4, -4), (4, 4)), 3, 2 * k)
            N = random_upperset_barcode(1 + (k // 2) % 3, ((-4, -4), (4, 4)), 3, 2 * k + 1)
        pairs.append((M, N))
    closed = sum(bool(is_flow_intersection_closed([*M, *N])) for M, N in pairs)
    reports = [verify_stability(M, N) for M, N in pairs]
    exact = [r for r in reports if r.interleaving is not None]
    violations = sum(r.hausdorff > 2 * r.interleaving for r in exact)
    worst = max((r.ratio for r in exact), default=0)
    ok = closed == len(pairs) and len(exact) >= 200 and violations == 0
    report(3, ok, f"{len(exact)} closed pairs within budget, {violations} violations, max ratio {worst:g}")
    assert ok


def test_criterion_4_instability(report):
    rows = []
    for a in (2, 4, 8):
        M, N = instability_instance(a)
        one = oracle_interleaving_exists(M, N, 1)[0]
        zero = oracle_interleaving_exists(M, N, 0)[0]
        d = oracle_module_distance(M, N)
        h = hausdorff(M, N)
        rows.append((a, one, zero, d, h, h / d))
    ok = all(one and not zero and d == 1 and h == math.ceil(a / 2) for a, one, zero, d, h, _ in rows)
    ratios = [r[-1] for r in rows]
    ok = ok and all(x < y for x, y in zip(ratios, ratios[1:]))
    detail = ", ".join(f"a={a}: d_I={d} d_H={h} ratio={q:g}" for a, _, _, d, h, q in rows)
    report(4, ok, detail)
    assert ok


def test_criterion_5_tightness(report):
    rows = {}
    for num, den, scale in [(1, 1, 2), (1, 1, 4), (1, 2, 4)]:
        T = tightness_instance(num, den, scale)
        d = oracle_module_distance(T.M, T.N)
        h = hausdorff(T.M, T.N)
        rows[(T.delta, scale)] = (d, h)
    ok = all(d == s and abs(h - (2 - delta) * s) <= 2 for (delta, s), (d, h) in rows.items())
    err = {s: abs(Fraction(rows[(1, s)][1], rows[(1, s)][0]) - 1) for s in (2, 4)}
    ok = ok and err[4] <= err[2]
    detail = ", ".join(
        f"delta={delta} scale={s}: d_I={d} d_H={h} ratio={h / d:g}" for (delta, s), (d, h) in rows.items()
    )
    report(5, ok, f"{detail}; ratio error {err[2]} -> {err[4]}")
    assert ok


def test_criterion_6_metric_properties(report):
    failures = []
    for seed in range(60):
        M, N, L = (random_rect_barcode(2, (-5, 5), 4, 3 * seed + k) for k in range(3))
        I, J, K = (B[0] for B in (M, N, L))
        t = seed % 7 - 3
        if hausdorff(M, N) > bottleneck(M, N):
            failures.append(("dH<=dB", seed))
        for name, d, (x, y, z) in (
            ("pair", pair_distance, (I, J, K)),
            ("hausdorff", hausdorff, (M, N, L)),
            ("bottleneck", bottleneck, (M, N, L)),
        ):
            if d(x, x) != 0 or d(x, y) != d(y, x):
                failures.append((name, "symmetry", seed))
            if d(x, z) > d(x, y) + d(y, z):
                failures.append((name, "triangle", seed))
            if d(x.shifted(t), y.shifted(t)) != d(x, y):
                failures.append((name, "shift", seed))
    ok = not failures
    report(6, ok, f"60 sampled triples, {len(failures)} failures {failures[:3]}")
    assert ok


def _valid(S) -> bool:
    return isinstance(S, IntervalSet) and is_poset_convex(S.points) and is_poset_connected(S.points)


def test_criterion_7_validation_suite(report):
    outputs = []
    for a in range(1, 65):
        M, N = instability_instance(a)
        outputs += [*M, *N]
    for num, den, s in [(1, 1, 2), (1, 1, 4), (1, 2, 4), (1, 2, 8), (1, 4, 8)]:
        T = tightness_instance(num, den, s)
        outputs += [T.I, T.J, T.K]
    for seed in range(50):
        outputs += list(random_rect_barcode(3, (-8, 8), 6, seed))
        outputs += list(random_upperset_barcode(3, ((-4, -4), (4, 4)), 3, seed))
    ex = composition_counterexample()
    outputs += [ex.I, ex.J, ex.K]
    invalid = sum(not _valid(S) for S in outputs)
    h = compose(ex.f, ex.g)
    fig_ok = ex.f.omega != 0 and ex.g.omega != 0 and h.omega == 0 and not intersect(ex.I, ex.K).is_empty
    ok = invalid == 0 and fig_ok
    report(
        7,
        ok,
        f"{len(outputs)} constructor outputs, {invalid} invalid; "
        f"composition example f={ex.f.omega} g={ex.g.omega} g.f={h.omega}",
    )
    assert ok
