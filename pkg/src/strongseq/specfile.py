"""Reading quiver specification documents (JSON)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .quiver import Arrow, MalformedQuiver, Quiver, Vertex

TOP_KEYS = {"name", "description", "vertices", "arrows", "relative", "tower", "order_vector"}
VERTEX_KEYS = {"id", "dim", "frozen"}
ARROW_KEYS = {"id", "tail", "head", "multiplicity"}
RELATIVE_KEYS = {"subquiver", "assert_condition_i", "b_overrides"}


class SpecError(ValueError):
    """Malformed specification; `location` names the offending place."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass(frozen=True)
class RelativeSpec:
    subquiver: tuple[str, ...]
    assert_condition_i: bool = False
    b_overrides: dict = field(default_factory=dict)


@dataclass(frozen=True)
class QuiverSpec:
    quiver: Quiver
    name: str = ""
    relative: RelativeSpec | None = None
    tower: tuple[tuple[str, ...], ...] | None = None
    order_vector: tuple[Fraction, ...] | None = None


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise SpecError(where, "expected an object")
    extra = sorted(set(obj) - allowed)
    if extra:
        raise SpecError(where, f"unknown field(s) {extra}")


def _req(obj, key, typ, where):
    if key not in obj:
        raise SpecError(where, f"missing field {key!r}")
    val = obj[key]
    if typ is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise SpecError(f"{where}.{key}", "expected an integer")
    if typ is str and not isinstance(val, str):
        raise SpecError(f"{where}.{key}", "expected a string")
    return val


def _id_list(val, where) -> tuple[str, ...]:
    if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
        raise SpecError(where, "expected a list of arrow ids")
    return tuple(val)


def parse_spec(doc: dict, source: str = "<spec>") -> QuiverSpec:
    _check_keys(doc, TOP_KEYS, source)
    verts_raw = doc.get("vertices")
    arrs_raw = doc.get("arrows", [])
    if not isinstance(verts_raw, list):
        raise SpecError(f"{source}.vertices", "expected a list")
    if not isinstance(arrs_raw, list):
        raise SpecError(f"{source}.arrows", "expected a list")
    verts = []
    for i, v in enumerate(verts_raw):
        where = f"{source}.vertices[{i}]"
        _check_keys(v, VERTEX_KEYS, where)
        frozen = v.get("frozen", False)
        if not isinstance(frozen, bool):
            raise SpecError(f"{where}.frozen", "expected a boolean")
        verts.append(Vertex(_req(v, "id", str, where), _req(v, "dim", int, where), frozen))
    arrows = []
    for i, a in enumerate(arrs_raw):
        where = f"{source}.arrows[{i}]"
        _check_keys(a, ARROW_KEYS, where)
        mult = a.get("multiplicity", 1)
        if isinstance(mult, bool) or not isinstance(mult, int):
            raise SpecError(f"{where}.multiplicity", "expected an integer")
        aid = a.get("id", "")
        if not isinstance(aid, str):
            raise SpecError(f"{where}.id", "expected a string")
        arrows.append(Arrow(_req(a, "tail", str, where), _req(a, "head", str, where), mult, aid))
    try:
        Q = Quiver(tuple(verts), tuple(arrows))
    except MalformedQuiver as exc:
        raise SpecError(source, str(exc)) from exc
    rel = None
    if "relative" in doc:
        r = doc["relative"]
        _check_keys(r, RELATIVE_KEYS, f"{source}.relative")
        sub = _id_list(r.get("subquiver"), f"{source}.relative.subquiver")
        flag = r.get("assert_condition_i", False)
        if not isinstance(flag, bool):
            raise SpecError(f"{source}.relative.assert_condition_i", "expected a boolean")
        bo = r.get("b_overrides", {})
        if not isinstance(bo, dict) or not all(isinstance(v, int) for v in bo.values()):
            raise SpecError(f"{source}.relative.b_overrides", "expected a mapping to integers")
        rel = RelativeSpec(sub, flag, dict(bo))
    tower = None
    if "tower" in doc:
        t = doc["tower"]
        if not isinstance(t, list):
            raise SpecError(f"{source}.tower", "expected a list of arrow-id lists")
        tower = tuple(_id_list(x, f"{source}.tower[{i}]") for i, x in enumerate(t))
    ov = None
    if "order_vector" in doc:
        raw = doc["order_vector"]
        if not isinstance(raw, list):
            raise SpecError(f"{source}.order_vector", "expected a list of rationals")
        try:
            ov = tuple(Fraction(str(x)) for x in raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"{source}.order_vector", str(exc)) from exc
        if len(ov) != Q.shape.rank:
            raise SpecError(f"{source}.order_vector", f"expected {Q.shape.rank} entries")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise SpecError(f"{source}.name", "expected a string")
    return QuiverSpec(Q, name, rel, tower, ov)


def load_spec(path: str | Path) -> QuiverSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(str(path), f"cannot read file ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    return parse_spec(doc, path.name)
