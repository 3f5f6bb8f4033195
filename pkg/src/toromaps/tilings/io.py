"""JSON reading and writing of tiling specs."""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path
from typing import Any

from ..lattice import IntMatrix2
from .model import (
    AffineSymmetry,
    Edge,
    ExactCoord,
    QSqrt3,
    TilingSpec,
    Vertex,
    format_fraction,
    parse_fraction,
)

TILINGS_ENV = "TMA_TILINGS_DIR"


class SchemaError(ValueError):
    def __init__(self, path: str, message: str, line: int | None = None):
        where = f"{path}" + (f" (line {line})" if line else "")
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


def spec_to_dict(spec: TilingSpec) -> dict[str, Any]:
    def coord(c: ExactCoord) -> list[list[int]]:
        return [c.x.encode(), c.y.encode()]

    return {
        "id": spec.id,
        "type_string": spec.type_string,
        "basis": {"A": coord(spec.basis_a), "B": coord(spec.basis_b)},
        "vertices": [
            {"pos": [format_fraction(x) for x in v.pos], "vtype": v.vtype} for v in spec.vertices
        ],
        "edges": [[e.i, e.j, list(e.offset)] for e in spec.edges],
        "point_group": [
            {
                "label": s.label,
                "linear": s.linear.rows(),
                "translation": [format_fraction(x) for x in s.translation],
            }
            for s in spec.point_group
        ],
        "declared_orbit_count": spec.declared_orbit_count,
        "v0": spec.v0,
    }


def dump_spec(spec: TilingSpec) -> str:
    d = spec_to_dict(spec)
    # one element per line keeps the data files diffable
    lines = ["{"]
    items = list(d.items())
    for k, (key, val) in enumerate(items):
        comma = "," if k < len(items) - 1 else ""
        if isinstance(val, list) and val:
            lines.append(f"  {json.dumps(key)}: [")
            for m, item in enumerate(val):
                c2 = "," if m < len(val) - 1 else ""
                lines.append(f"    {json.dumps(item)}{c2}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(val)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _line_of(text: str, needle: str) -> int | None:
    pos = text.find(needle)
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


def load_spec(source: str) -> TilingSpec:
    """Parse a JSON document; the result is not validated geometrically."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", exc.msg, exc.lineno) from None

    def need(obj: Any, key: str, path: str) -> Any:
        if not isinstance(obj, dict) or key not in obj:
            raise SchemaError(f"{path}.{key}", "missing field", _line_of(source, path.split(".")[-1]))
        return obj[key]

    def fail(path: str, msg: str, hint: str = "") -> SchemaError:
        return SchemaError(path, msg, _line_of(source, hint) if hint else None)

    try:
        basis = need(doc, "basis", "$")
        coords = []
        for name in ("A", "B"):
            raw = need(basis, name, "$.basis")
            if not isinstance(raw, list) or len(raw) != 2:
                raise fail(f"$.basis.{name}", "expected [x, y] with x, y = [p, q, r, s]", f'"{name}"')
            try:
                coords.append(ExactCoord(QSqrt3.decode(raw[0]), QSqrt3.decode(raw[1])))
            except ValueError as exc:
                raise fail(f"$.basis.{name}", str(exc), f'"{name}"') from None

        vertices = []
        for k, v in enumerate(need(doc, "vertices", "$")):
            pos = need(v, "pos", f"$.vertices[{k}]")
            try:
                p = tuple(parse_fraction(x) for x in pos)
            except (ValueError, ZeroDivisionError) as exc:
                raise fail(f"$.vertices[{k}].pos", str(exc)) from None
            if len(p) != 2:
                raise fail(f"$.vertices[{k}].pos", "expected two coordinates")
            vertices.append(Vertex(p, str(need(v, "vtype", f"$.vertices[{k}]"))))

        edges = []
        for k, e in enumerate(need(doc, "edges", "$")):
            if not (isinstance(e, list) and len(e) == 3 and isinstance(e[2], list) and len(e[2]) == 2):
                raise fail(f"$.edges[{k}]", "expected [i, j, [m1, m2]]")
            i, j, (m1, m2) = e
            if not all(isinstance(x, int) for x in (i, j, m1, m2)):
                raise fail(f"$.edges[{k}]", "entries must be integers")
            if not (0 <= i < len(vertices) and 0 <= j < len(vertices)):
                raise fail(f"$.edges[{k}]", "vertex index out of range")
            edges.append(Edge(i, j, (m1, m2)))

        group = []
        for k, s in enumerate(need(doc, "point_group", "$")):
            path = f"$.point_group[{k}]"
            label = str(need(s, "label", path))
            try:
                lin = IntMatrix2.from_rows(need(s, "linear", path))
                tr = tuple(parse_fraction(x) for x in need(s, "translation", path))
                group.append(AffineSymmetry(lin, tr, label))
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise fail(path, str(exc), f'"{label}"') from None

        ident = need(doc, "id", "$")
        orbits = need(doc, "declared_orbit_count", "$")
        v0 = need(doc, "v0", "$")
        if not (isinstance(ident, int) and 1 <= ident <= 27):
            raise fail("$.id", "id must be an integer in 1..27", '"id"')
        if orbits not in (1, 2):
            raise fail("$.declared_orbit_count", "must be 1 or 2", '"declared_orbit_count"')
        return TilingSpec(
            id=ident,
            type_string=str(need(doc, "type_string", "$")),
            basis_a=coords[0],
            basis_b=coords[1],
            vertices=tuple(vertices),
            edges=tuple(edges),
            point_group=tuple(group),
            declared_orbit_count=orbits,
            v0=int(v0),
        )
    except SchemaError:
        raise
    except (TypeError, AttributeError) as exc:
        raise SchemaError("$", f"malformed document: {exc}") from None


def _builtin_texts() -> dict[int, str]:
    out = {}
    pkg = resources.files("toromaps.tilings") / "data"
    for entry in pkg.iterdir():
        if entry.name.endswith(".json"):
            ident = int(entry.name[1:-5])
            out[ident] = entry.read_text()
    return out


_CACHE: dict[str | None, list[TilingSpec]] = {}


def builtin_specs(override_dir: str | os.PathLike | None = None) -> list[TilingSpec]:
    """All 27 specs; files named E<id>.json in override_dir replace the built-in ones."""
    if override_dir is None:
        override_dir = os.environ.get(TILINGS_ENV) or None
    key = str(override_dir) if override_dir else None
    if key not in _CACHE:
        texts = _builtin_texts()
        if override_dir:
            for path in sorted(Path(override_dir).glob("*.json")):
                spec = load_spec(path.read_text())
                texts[spec.id] = path.read_text()
        _CACHE[key] = [load_spec(texts[i]) for i in sorted(texts)]
    return list(_CACHE[key])


def spec(ident: int, override_dir: str | os.PathLike | None = None) -> TilingSpec:
    for s in builtin_specs(override_dir):
        if s.id == ident:
            return s
    raise KeyError(f"no tiling E{ident}")
