"""JSON barcode files.

A file looks like::

    {"version": 1, "dim": 2,
     "modules": [{"name": "M", "intervals": [{"rect": [[0, 0], [3, 3]]}]}]}

Interval specs are one of ``points``, ``rect``, ``upperset``, ``downset``
or ``polygon``; polygon vertices are ``[num, den]`` pairs so no floats are
involved. Modules are addressed on the command line as ``path#name``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import DimensionError, InvalidIntervalError
from .intervals import (
    Barcode,
    IntervalSet,
    make_downset_in_window,
    make_rect,
    make_upperset_in_window,
    rasterize_convex_polygon,
)

FORMAT_VERSION = 1
SPEC_KINDS = ("points", "rect", "upperset", "downset", "polygon")


class FormatError(ValueError):
    pass


@dataclass
class ModuleSpec:
    name: str
    intervals: list = field(default_factory=list)


@dataclass
class BarcodeFile:
    dim: int
    modules: list = field(default_factory=list)
    version: int = FORMAT_VERSION

    def module(self, name: str) -> ModuleSpec:
        for m in self.modules:
            if m.name == name:
                return m
        raise KeyError(f"no module named {name!r}")

    def barcode(self, name: str) -> Barcode:
        return Barcode([materialize(s, self.dim) for s in self.module(name).intervals], dim=self.dim)

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "dim": self.dim,
            "modules": [{"name": m.name, "intervals": m.intervals} for m in self.modules],
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, BarcodeFile):
            return NotImplemented
        return self.to_json() == other.to_json()


def _pt(p, dim: int) -> list[int]:
    if not isinstance(p, (list, tuple)) or len(p) != dim:
        raise FormatError(f"expected a point with {dim} coordinates, got {p!r}")
    if not all(isinstance(c, int) and not isinstance(c, bool) for c in p):
        raise FormatError(f"coordinates must be integers, got {p!r}")
    return list(p)


def _rational(v) -> list[int]:
    if isinstance(v, int) and not isinstance(v, bool):
        return [v, 1]
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(c, int) for c in v) and v[1] != 0:
        return [int(v[0]), int(v[1])]
    raise FormatError(f"rationals are [num, den] pairs, got {v!r}")


def _normalize_spec(spec, dim: int) -> dict:
    if not isinstance(spec, dict) or len(spec) != 1:
        raise FormatError(f"an interval spec is a one-key object, got {spec!r}")
    (kind, body), = spec.items()
    if kind == "points":
        return {"points": [_pt(p, dim) for p in body]}
    if kind == "rect":
        lo, hi = body
        return {"rect": [_pt(lo, dim), _pt(hi, dim)]}
    if kind in ("upperset", "downset"):
        lo, hi = body["window"]
        return {kind: {"generators": [_pt(g, dim) for g in body["generators"]], "window": [_pt(lo, dim), _pt(hi, dim)]}}
    if kind == "polygon":
        if dim != 2:
            raise DimensionError("polygons need dim 2")
        verts = [[_rational(x), _rational(y)] for x, y in body["vertices"]]
        scale = body.get("scale", 1)
        if not isinstance(scale, int) or scale < 1:
            raise FormatError("polygon scale must be a positive integer")
        return {"polygon": {"vertices": verts, "scale": scale}}
    raise FormatError(f"unknown interval kind {kind!r}; expected one of {SPEC_KINDS}")


def materialize(spec: dict, dim: int) -> IntervalSet:
    """Build the interval a (normalized) spec describes."""
    (kind, body), = spec.items()
    if kind == "points":
        return IntervalSet([tuple(p) for p in body], dim=dim)
    if kind == "rect":
        return make_rect(*body)
    if kind == "upperset":
        return make_upperset_in_window(body["generators"], body["window"])
    if kind == "downset":
        return make_downset_in_window(body["generators"], body["window"])
    verts = [tuple(Fraction(*c) for c in v) for v in body["vertices"]]
    return rasterize_convex_polygon(verts, body["scale"])


def parse(text: str) -> BarcodeFile:
    """Parse and normalize file contents; intervals are not materialized here."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    if doc.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported version {doc.get('version')!r}")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise FormatError("dim must be a positive integer")
    modules = []
    names = set()
    for m in doc.get("modules", []):
        name = m.get("name")
        if not isinstance(name, str) or not name or "#" in name:
            raise FormatError(f"bad module name {name!r}")
        if name in names:
            raise FormatError(f"duplicate module name {name!r}")
        names.add(name)
        modules.append(ModuleSpec(name, [_normalize_spec(s, dim) for s in m.get("intervals", [])]))
    return BarcodeFile(dim, modules)


def dumps(bf: BarcodeFile) -> str:
    return json.dumps(bf.to_json(), indent=1, sort_keys=False) + "\n"


def load(path) -> BarcodeFile:
    return parse(Path(path).read_text(encoding="utf-8"))


def save(bf: BarcodeFile, path) -> None:
    Path(path).write_text(dumps(bf), encoding="utf-8")


def interval_to_spec(I: IntervalSet) -> dict:
    """Compact spec for an interval: ``rect`` when it is a full box, else ``points``."""
    if I.mask.all():
        return {"rect": [list(I.lo), list(I.hi)]}
    return {"points": [list(p) for p in I.sorted_points()]}


def polygon_spec(vertices, scale: int) -> dict:
    """Exact ``polygon`` spec from rational vertices."""
    verts = []
    for v in vertices:
        verts.append([[Fraction(c).numerator, Fraction(c).denominator] for c in v])
    return {"polygon": {"vertices": verts, "scale": int(scale)}}


def barcode_file(modules: dict, dim: int) -> BarcodeFile:
    """``BarcodeFile`` from ``{name: Barcode}``."""
    return BarcodeFile(dim, [ModuleSpec(n, [interval_to_spec(I) for I in B]) for n, B in modules.items()])


def resolve(ref: str) -> tuple[BarcodeFile, str, Barcode]:
    """Load ``path#module``; without ``#`` the file must hold exactly one module."""
    path, _, name = ref.partition("#")
    bf = load(path)
    if not name:
        if len(bf.modules) != 1:
            raise FormatError(f"{path} holds {len(bf.modules)} modules; use {path}#name")
        name = bf.modules[0].name
    try:
        return bf, name, bf.barcode(name)
    except KeyError as exc:
        raise FormatError(str(exc)) from exc
    except InvalidIntervalError as exc:
        raise InvalidIntervalError(f"{ref}: {exc}") from exc
