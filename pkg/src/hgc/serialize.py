"""JSON wire formats for groupoids, spaces, functions, tables and matrices.

Rationals travel as reduced ``"p/q"`` strings (``"n"`` for integers),
complex values as ``[re, im]`` pairs, orbit keys as ``"x|y"``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .category import Arrow
from .groupoid import FiniteGroupoid, ValidationError, validate_groupoid
from .gspace import FiniteGSpace, MeasuredGSpace, checked_measure
from .hypergroupoid import HypergroupoidTable
from .representations import WeightedMatrix
from .scalar import GaussQ, format_rational, parse_rational

GROUPOID_KEYS = {"arrows", "units", "range", "source", "compose", "inverse", "haar"}
GROUPOID_REQUIRED = GROUPOID_KEYS - {"haar"}
SPACE_KEYS = {"points", "anchor", "action", "weights"}
SPACE_REQUIRED = SPACE_KEYS - {"weights"}
FUNCTION_KEYS = {"groupoid", "dst_space", "src_space", "values"}


class ParseError(ValueError):
    """Malformed file content (syntax, unknown keys, bad literals)."""


def _render(obj: Any, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return json.dumps(obj, ensure_ascii=False)
        items = [inner + _render(v, depth + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj: Any) -> str:
    """Indented JSON with scalar-only arrays kept on one line."""
    return _render(obj, 0) + "\n"


def read_json(path: str | Path) -> Any:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _check_keys(obj, allowed: set[str], required: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected a JSON object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ParseError(f"{what}: unknown keys {unknown}")
    missing = sorted(required - set(obj))
    if missing:
        raise ParseError(f"{what}: missing keys {missing}")


def _strings(seq, what: str) -> list[str]:
    if not isinstance(seq, list) or not all(isinstance(s, str) for s in seq):
        raise ParseError(f"{what}: expected an array of strings")
    return seq


def _string_map(obj, what: str) -> dict[str, str]:
    if not isinstance(obj, dict) or not all(isinstance(v, str) for v in obj.values()):
        raise ParseError(f"{what}: expected an object of strings")
    return obj


def _triples(seq, what: str) -> list[tuple[str, str, str]]:
    if not isinstance(seq, list):
        raise ParseError(f"{what}: expected an array of triples")
    out = []
    for item in seq:
        if not (isinstance(item, list) and len(item) == 3 and all(isinstance(s, str) for s in item)):
            raise ParseError(f"{what}: bad entry {item!r}")
        out.append(tuple(item))
    return out


def _rational_map(obj, what: str):
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected an object of rationals")
    try:
        return {k: parse_rational(v) for k, v in obj.items()}
    except ValueError as exc:
        raise ParseError(f"{what}: {exc}") from None


def orbit_key(pair: tuple[str, str]) -> str:
    x, y = pair
    if "|" in x or "|" in y:
        raise ValueError(f"identifier contains '|': {pair}")
    return f"{x}|{y}"


def parse_orbit_key(key: str) -> tuple[str, str]:
    parts = key.split("|")
    if len(parts) != 2:
        raise ParseError(f"orbit key {key!r} must be 'x|y'")
    return parts[0], parts[1]


# groupoids


def groupoid_to_json(g: FiniteGroupoid) -> dict:
    out = {
        "arrows": list(g.arrows),
        "units": list(g.units),
        "range": {a: g.range[a] for a in g.arrows},
        "source": {a: g.source[a] for a in g.arrows},
        "compose": [[a, b, c] for (a, b), c in sorted(g.table.items())],
        "inverse": {a: g.inverse[a] for a in g.arrows},
    }
    if any(w != 1 for w in g.haar.values()):
        out["haar"] = {a: format_rational(g.haar[a]) for a in g.arrows}
    return out


def groupoid_from_json(obj, what: str = "groupoid") -> FiniteGroupoid:
    """Parse and validate; raises ParseError or ValidationError."""
    _check_keys(obj, GROUPOID_KEYS, GROUPOID_REQUIRED, what)
    arrows = _strings(obj["arrows"], f"{what}.arrows")
    if not arrows:
        raise ParseError(f"{what}: empty groupoid")
    g = FiniteGroupoid.build(
        arrows=arrows,
        units=_strings(obj["units"], f"{what}.units"),
        range=_string_map(obj["range"], f"{what}.range"),
        source=_string_map(obj["source"], f"{what}.source"),
        compose=_triples(obj["compose"], f"{what}.compose"),
        inverse=_string_map(obj["inverse"], f"{what}.inverse"),
        haar=_rational_map(obj.get("haar", {}), f"{what}.haar"),
    )
    report = validate_groupoid(g)
    if not report.ok:
        raise ValidationError("groupoid", report)
    return g


# spaces


def space_to_json(m: MeasuredGSpace) -> dict:
    X = m.space
    out = {
        "points": list(X.points),
        "anchor": {x: X.anchor[x] for x in X.points},
        "action": [[a, x, y] for (a, x), y in sorted(X.action.items())],
    }
    if any(w != 1 for w in m.weights.values()):
        out["weights"] = {x: format_rational(m.weights[x]) for x in X.points}
    return out


def space_from_json(obj, groupoid: FiniteGroupoid, what: str = "space") -> MeasuredGSpace:
    _check_keys(obj, SPACE_KEYS, SPACE_REQUIRED, what)
    points = _strings(obj["points"], f"{what}.points")
    if not points:
        raise ParseError(f"{what}: empty space")
    space = FiniteGSpace.build(
        groupoid,
        points,
        _string_map(obj["anchor"], f"{what}.anchor"),
        _triples(obj["action"], f"{what}.action"),
    )
    weights = _rational_map(obj.get("weights", {}), f"{what}.weights")
    unknown = set(weights) - set(points)
    if unknown:
        raise ParseError(f"{what}.weights: unknown points {sorted(unknown)}")
    return checked_measure(MeasuredGSpace.build(space, weights))


# functions


def arrow_to_json(f: Arrow, groupoid=None, dst_space=None, src_space=None) -> dict:
    """Function file; references default to inline objects."""
    return {
        "groupoid": groupoid if groupoid is not None else groupoid_to_json(f.dst.groupoid),
        "dst_space": dst_space if dst_space is not None else space_to_json(f.dst),
        "src_space": src_space if src_space is not None else space_to_json(f.src),
        "values": {orbit_key(k): v.to_wire() for k, v in f.values.items()},
    }


def values_from_json(obj, dst: MeasuredGSpace, src: MeasuredGSpace, what="values") -> Arrow:
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected an object")
    vals = {}
    for key, wire in obj.items():
        try:
            vals[parse_orbit_key(key)] = GaussQ.from_wire(wire)
        except ValueError as exc:
            raise ParseError(f"{what}[{key}]: {exc}") from None
    try:
        return Arrow.build(dst, src, vals)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"{what}: {exc}") from None


# hypergroupoid tables and matrices


def table_to_json(t: HypergroupoidTable) -> dict:
    return {
        "orbits": [orbit_key(o) for o in t.orbits],
        "star": {orbit_key(o): orbit_key(t.star[o]) for o in t.orbits},
        "constants": [
            [orbit_key(a), orbit_key(b), orbit_key(c), format_rational(v)]
            for (a, b, c), v in t.constants.items()
        ],
    }


def matrix_to_json(m: WeightedMatrix) -> dict:
    return {
        "rows": list(m.rows),
        "cols": list(m.cols),
        "entries": [[r, c, *v.to_wire()] for (r, c), v in m.entries.items()],
        "row_weights": {r: format_rational(m.row_weights[r]) for r in m.rows},
        "col_weights": {c: format_rational(m.col_weights[c]) for c in m.cols},
    }


# workspace


class Workspace:
    """Loaded objects keyed by resolved path, so shared references share identity."""

    def __init__(self):
        self.groupoids: dict[Path, FiniteGroupoid] = {}
        self.spaces: dict[tuple[Path, Path], MeasuredGSpace] = {}
        self.arrows: dict[Path, Arrow] = {}

    def groupoid(self, path: str | Path) -> FiniteGroupoid:
        path = Path(path).resolve()
        if path not in self.groupoids:
            self.groupoids[path] = groupoid_from_json(read_json(path), what=str(path))
        return self.groupoids[path]

    def space(self, path: str | Path, groupoid_path: str | Path) -> MeasuredGSpace:
        path, gpath = Path(path).resolve(), Path(groupoid_path).resolve()
        key = (path, gpath)
        if key not in self.spaces:
            self.spaces[key] = space_from_json(read_json(path), self.groupoid(gpath), what=str(path))
        return self.spaces[key]

    def function(self, path: str | Path) -> Arrow:
        path = Path(path).resolve()
        if path not in self.arrows:
            self.arrows[path] = self.function_from_json(read_json(path), path.parent, str(path))
        return self.arrows[path]

    def function_from_json(self, obj, base: Path = Path("."), what: str = "function") -> Arrow:
        """Parse a function file body; string references resolve against ``base``."""
        _check_keys(obj, FUNCTION_KEYS, FUNCTION_KEYS, what)
        gref = obj["groupoid"]
        if isinstance(gref, str):
            gpath = (base / gref).resolve()
            g = self.groupoid(gpath)
        else:
            gpath, g = None, groupoid_from_json(gref, what=f"{what}:groupoid")

        def resolve_space(ref, label):
            if isinstance(ref, str):
                if gpath is None:
                    return space_from_json(read_json(base / ref), g, what=str(base / ref))
                return self.space(base / ref, gpath)
            return space_from_json(ref, g, what=f"{what}:{label}")

        dst = resolve_space(obj["dst_space"], "dst_space")
        if obj["src_space"] == obj["dst_space"]:
            src = dst
        else:
            src = resolve_space(obj["src_space"], "src_space")
        return values_from_json(obj["values"], dst, src, what=f"{what}:values")


def load(path: str | Path, groupoid: FiniteGroupoid | None = None, workspace: Workspace | None = None):
    """Load one file, dispatching on its top-level keys.

    Space files need ``groupoid``. Raises ParseError or ValidationError.
    """
    ws = workspace or Workspace()
    obj = read_json(path)
    if isinstance(obj, dict) and "arrows" in obj:
        return ws.groupoid(path)
    if isinstance(obj, dict) and "points" in obj:
        if groupoid is None:
            raise ParseError(f"{path}: a space file needs its groupoid")
        return space_from_json(obj, groupoid, what=str(path))
    if isinstance(obj, dict) and "values" in obj:
        return ws.function(path)
    raise ParseError(f"{path}: not a groupoid, space or function file")
