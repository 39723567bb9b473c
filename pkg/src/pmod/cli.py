"""Command-line interface: ``pmod check|dist|verify-stability|example|render``.

Exit codes: 0 success, 1 validation failure, 2 inconclusive, 3 violation of
the stability bound on an intersection-closed input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import io as bio
from .constructions import instability_instance, tightness_instance, tightness_vertices
from .distances import Status, bottleneck, hausdorff, verify_stability
from .errors import InvalidIntervalError, OracleBudgetExceeded, PmodError
from .interleaving import DEFAULT_BUDGET, oracle_interleaving_exists, oracle_module_distance
from .intervals import is_flow_intersection_closed, is_intersection_closed
from .render import render_svg

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE, EXIT_VIOLATION = 0, 1, 2, 3


def _scale_of(bf: bio.BarcodeFile) -> int:
    scales = [s["polygon"]["scale"] for m in bf.modules for s in m.intervals if "polygon" in s]
    return max(scales, default=1)


def cmd_check(args) -> int:
    bf = bio.load(args.file)
    status = EXIT_OK
    for m in bf.modules:
        bars = []
        for i, spec in enumerate(m.intervals):
            try:
                bars.append(bio.materialize(spec, bf.dim))
            except (InvalidIntervalError, ValueError) as exc:
                print(f"{m.name}:{i}: invalid interval: {exc}")
                return EXIT_INVALID
        rep = is_intersection_closed(bars)
        if not rep:
            i, j = rep.pair
            print(f"{m.name}: {m.name}:{i} & {m.name}:{j} intersection has {rep.n_components} components")
            return EXIT_INVALID
        flow = is_flow_intersection_closed(bars)
        note = "" if flow else f" (not closed under shifted intersections: {m.name}:{flow.pair[0]} vs {m.name}:{flow.pair[1]} at shift {flow.shift})"
        print(f"{m.name}: {len(bars)} intervals ok{note}")
    return status


def _print_witness(w) -> None:
    for side, coeffs in (("f", w.f), ("g", w.g)):
        body = ", ".join(f"({a},{b})#{c}={v}" for (a, b, c), v in sorted(coeffs.items())) or "0"
        print(f"  {side}: {body}")


def cmd_dist(args) -> int:
    bfa, _, M = bio.resolve(args.a)
    bfb, _, N = bio.resolve(args.b)
    scale = max(_scale_of(bfa), _scale_of(bfb))
    if args.metric == "hausdorff":
        print(f"hausdorff {hausdorff(M, N)} (grid units, scale {scale})")
    elif args.metric == "bottleneck":
        print(f"bottleneck {bottleneck(M, N)} (grid units, scale {scale})")
    else:
        try:
            d = oracle_module_distance(M, N, args.field, args.budget)
        except OracleBudgetExceeded as exc:
            print(f"interleaving in [0, {bottleneck(M, N)}] (grid units, scale {scale}); {exc}")
            return EXIT_INCONCLUSIVE
        print(f"interleaving {d} (grid units, scale {scale}, field F_{args.field})")
        _, w = oracle_interleaving_exists(M, N, d, args.field, args.budget)
        _print_witness(w)
    return EXIT_OK


_EXIT_FOR = {
    Status.PASS: EXIT_OK,
    Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    Status.FAIL: EXIT_VIOLATION,
    Status.OUTSIDE_HYPOTHESIS: EXIT_INVALID,
}


def _report(M, N, field: int, budget: int, scale: int) -> int:
    r = verify_stability(M, N, field, budget)
    d = str(r.interleaving) if r.interleaving is not None else f"[{r.bracket[0]}, {r.bracket[1]}]"
    ratio = "n/a" if r.ratio is None else f"{r.ratio:g}"
    print(f"d_H = {r.hausdorff}  d_I = {d}  ratio = {ratio}  (grid units, scale {scale})")
    if not r.intersection_closed:
        print("note: family is not closed under shifted intersections")
    print(r.status.value)
    return _EXIT_FOR[r.status]


def cmd_verify(args) -> int:
    bfa, _, M = bio.resolve(args.a)
    bfb, _, N = bio.resolve(args.b)
    return _report(M, N, args.field, args.budget, max(_scale_of(bfa), _scale_of(bfb)))


def cmd_example(args) -> int:
    if args.name == "instability":
        M, N = instability_instance(args.a)
        scale = 1
        default = f"instability_a{args.a}.json"
    else:
        delta = Fraction(args.delta)
        T = tightness_instance(delta.numerator, delta.denominator, args.scale, args.edge)
        M, N, scale = T.M, T.N, T.scale
        default = f"tightness_{delta.numerator}_{delta.denominator}_s{args.scale}.json"
    out = Path(args.out or default)
    bf = bio.barcode_file({"M": M, "N": N}, 2)
    if args.name == "tightness":
        # keep the polygons exact so the file records where the rasters came from
        square, hexagon = tightness_vertices(T.delta, T.scale, args.edge)
        bf.modules[0].intervals[0] = bio.polygon_spec(square, T.scale)
        bf.modules[1].intervals[0] = bio.polygon_spec(hexagon, T.scale)
    bio.save(bf, out)
    print(f"wrote {out}")
    return _report(M, N, args.field, args.budget, scale)


def cmd_render(args) -> int:
    bf = bio.load(args.file)
    if bf.dim != 2:
        print(f"render needs dim 2, file has dim {bf.dim}", file=sys.stderr)
        return EXIT_INVALID
    layers = []
    for m in bf.modules:
        if args.module and m.name != args.module:
            continue
        layers += [(f"{m.name}:{i}", bio.materialize(s, 2)) for i, s in enumerate(m.intervals)]
    Path(args.svg).write_text(render_svg(layers), encoding="utf-8")
    print(f"wrote {args.svg}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pmod", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    def oracle_opts(q):
        q.add_argument("--field", type=int, default=2, help="prime field characteristic (2, 3, 5 or 7)")
        q.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max unknowns for the oracle")

    q = sub.add_parser("check", help="validate intervals and intersection closure")
    q.add_argument("file")
    q.set_defaults(func=cmd_check)

    q = sub.add_parser("dist", help="distance between two modules (file#module)")
    q.add_argument("--metric", choices=("interleaving", "hausdorff", "bottleneck"), default="hausdorff")
    q.add_argument("a")
    q.add_argument("b")
    oracle_opts(q)
    q.set_defaults(func=cmd_dist)

    q = sub.add_parser("verify-stability", help="check d_H <= 2 d_I on two modules")
    q.add_argument("a")
    q.add_argument("b")
    oracle_opts(q)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("example", help="write a named example and report its distances")
    ex = q.add_subparsers(dest="name", required=True)
    e = ex.add_parser("instability")
    e.add_argument("--a", type=int, required=True)
    e = ex.add_parser("tightness")
    e.add_argument("--delta", required=True, help="rational p/q in (0, 1]")
    e.add_argument("--scale", type=int, required=True)
    e.add_argument("--edge", type=int, default=8)
    for e in ex.choices.values():
        e.add_argument("--out", help="output file (default derived from the parameters)")
        oracle_opts(e)
    q.set_defaults(func=cmd_example)

    q = sub.add_parser("render", help="draw a 2-D barcode file as SVG")
    q.add_argument("file")
    q.add_argument("--svg", required=True)
    q.add_argument("--module")
    q.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (PmodError, bio.FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
