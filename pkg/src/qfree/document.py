"""JSON input documents: parsing, validation and rendering.

Rationals travel as strings (``"-3/2"``, ``"−1"``); the only floats allowed
are the decimal approximations of the real basis.
"""
from __future__ import annotations

import json
from typing import Any

import jsonschema

from .abelian import IntVector, RealBasis, RealCoord, format_rational, parse_rational
from .fusion import SU2, FiniteTable, UnknownIrrep, builtin_table, cyclic, validate_ring
from .repn import AbelianDual, Representation, Summand


class InputError(ValueError):
    pass


_TABLE = {
    "oneOf": [
        {"type": "string"},
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["labels", "dims", "conj", "coeffs"],
            "properties": {
                "name": {"type": "string"},
                "labels": {"type": "array", "minItems": 1, "items": {"type": "string"}},
                "dims": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "conj": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "coeffs": {"type": "array", "items": {"type": "array", "items": {
                    "type": "array", "items": {"type": "integer", "minimum": 0}}}},
            },
        },
    ]
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["group", "representation"],
    "properties": {
        "group": {
            "type": "object",
            "additionalProperties": False,
            "required": ["compact"],
            "properties": {
                "compact": {"enum": ["finite_table", "su2", "trivial"]},
                "table": _TABLE,
                "abelian": {"enum": ["none", "r_line", "torus"]},
                "basis": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["dim", "numeric"],
                    "properties": {
                        "dim": {"type": "integer", "minimum": 1},
                        "numeric": {"type": "array", "minItems": 1, "items": {"type": "number"}},
                        "names": {"type": "array", "items": {"type": "string"}},
                        "independent": {"type": "boolean"},
                    },
                },
                "torus_dim": {"type": "integer", "minimum": 1},
            },
        },
        "representation": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "irrep": {"type": "string"},
                    "character": {"oneOf": [
                        {"type": "null"},
                        {"type": "array", "minItems": 1, "items": {"type": "string"}},
                        {"type": "array", "minItems": 1, "items": {"type": "integer"}},
                    ]},
                    "mult": {"type": "integer", "minimum": 1},
                },
            },
        },
        "declarations": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"faithful": {"type": "boolean"}},
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _where(path) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<document>"


def _line_of(text: str, path) -> int | None:
    """Best-effort line number of the deepest named key on ``path``."""
    keys = [p for p in path if isinstance(p, str)]
    if not keys:
        return None
    needle = f'"{keys[-1]}"'
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return None


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def validate_document(data: Any, text: str | None = None) -> None:
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        msgs = []
        for err in errors:
            loc = _where(err.absolute_path)
            line = _line_of(text, err.absolute_path) if text else None
            prefix = f"line {line}, {loc}" if line else loc
            detail = err.message
            if err.validator == "oneOf" and "character" in loc:
                detail = f"{json.dumps(err.instance)} is not a list of rational strings or integers"
            msgs.append(f"{prefix}: {detail}")
        raise InputError("; ".join(msgs))


def _table(spec) -> FiniteTable:
    if isinstance(spec, str):
        try:
            return builtin_table(spec)
        except KeyError as exc:
            raise InputError(f"group.table: {exc.args[0]}") from None
    n = len(spec["labels"])
    try:
        table = FiniteTable.from_array(spec.get("name", "custom"), spec["labels"], spec["dims"],
                                       spec["conj"], spec["coeffs"])
    except ValueError as exc:
        raise InputError(f"group.table: {exc}") from None
    problems = validate_ring(table)
    if problems:
        raise InputError(f"group.table ({n} irreducibles) is not a fusion ring: " + "; ".join(problems))
    return table


def document_to_rep(data: dict) -> Representation:
    group = data["group"]
    compact = group["compact"]
    abelian = group.get("abelian", "none")
    if compact == "finite_table":
        if "table" not in group:
            raise InputError("group.table is required when compact is finite_table")
        ring = _table(group["table"])
    elif compact == "su2":
        ring = SU2()
    else:
        ring = cyclic(1)
    if compact != "finite_table" and "table" in group:
        raise InputError("group.table is only allowed when compact is finite_table")

    if abelian == "r_line":
        b = group.get("basis")
        if b is None:
            raise InputError("group.basis is required when abelian is r_line")
        if len(b["numeric"]) != b["dim"]:
            raise InputError(f"group.basis: dim is {b['dim']} but {len(b['numeric'])} numeric values given")
        try:
            basis = RealBasis(tuple(float(x) for x in b["numeric"]), b.get("independent", True),
                              tuple(b["names"]) if "names" in b else None)
        except ValueError as exc:
            raise InputError(f"group.basis: {exc}") from None
        dual = AbelianDual.r_line(basis)
    elif abelian == "torus":
        if "torus_dim" not in group:
            raise InputError("group.torus_dim is required when abelian is torus")
        dual = AbelianDual.torus(group["torus_dim"])
    else:
        dual = AbelianDual()
    for key, need in (("basis", "r_line"), ("torus_dim", "torus")):
        if key in group and abelian != need:
            raise InputError(f"group.{key} is only allowed when abelian is {need}")

    summands = []
    for i, item in enumerate(data["representation"]):
        loc = f"representation[{i}]"
        label = item.get("irrep")
        if label is None:
            if compact != "trivial":
                raise InputError(f"{loc}.irrep is required")
            irrep = ring.trivial
        else:
            try:
                irrep = ring.parse(label)
            except UnknownIrrep:
                raise InputError(f"{loc}.irrep: unknown irreducible {label!r}") from None
        raw = item.get("character")
        if dual.kind == "trivial":
            if raw is not None:
                raise InputError(f"{loc}.character: no abelian factor declared")
            ch = None
        elif raw is None:
            raise InputError(f"{loc}.character is required")
        elif dual.kind == "r_line":
            if not all(isinstance(x, str) for x in raw):
                raise InputError(f"{loc}.character: rationals must be strings such as \"-3/2\"")
            if len(raw) != dual.basis.dim:
                raise InputError(f"{loc}.character: expected {dual.basis.dim} coordinates, got {len(raw)}")
            try:
                ch = RealCoord(tuple(parse_rational(x) for x in raw))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"{loc}.character: {exc}") from None
        else:
            if not all(isinstance(x, int) for x in raw):
                raise InputError(f"{loc}.character: torus characters are integer lists")
            if len(raw) != dual.torus_dim:
                raise InputError(f"{loc}.character: expected {dual.torus_dim} entries, got {len(raw)}")
            ch = IntVector(tuple(raw))
        summands.append(Summand(irrep, ch, item.get("mult", 1)))

    declared = data.get("declarations", {}).get("faithful")
    try:
        return Representation(ring, dual, tuple(summands), declared)
    except ValueError as exc:
        raise InputError(f"representation: {exc}") from None


def parse_input(text: str) -> Representation:
    data = load_json(text)
    validate_document(data, text)
    return document_to_rep(data)


def render_input(rep: Representation) -> dict:
    """The canonical document for ``rep``; ``parse_input`` inverts it."""
    ring, dual = rep.ring, rep.dual
    group: dict[str, Any] = {}
    if isinstance(ring, SU2):
        group["compact"] = "su2"
    elif isinstance(ring, FiniteTable) and ring.size == 1 and ring.labels == ("1",):
        group["compact"] = "trivial"
    else:
        group["compact"] = "finite_table"
        try:
            same = builtin_table(ring.name) == ring
        except KeyError:
            same = False
        if same:
            group["table"] = ring.name
        else:
            group["table"] = {"name": ring.name, "labels": list(ring.labels), "dims": list(ring.dims),
                              "conj": list(ring.conj_map),
                              "coeffs": [[list(r) for r in m] for m in ring.coeffs]}
    group["abelian"] = {"trivial": "none", "r_line": "r_line", "torus": "torus"}[dual.kind]
    if dual.kind == "r_line":
        b = dual.basis
        group["basis"] = {"dim": b.dim, "numeric": list(b.numeric)}
        if b.names is not None:
            group["basis"]["names"] = list(b.names)
        if not b.independence_declared:
            group["basis"]["independent"] = False
    if dual.kind == "torus":
        group["torus_dim"] = dual.torus_dim
    reps = []
    for s in rep.summands:
        item: dict[str, Any] = {"irrep": ring.label(s.irrep)}
        if s.character is not None:
            item["character"] = ([format_rational(c) for c in s.character.coeffs]
                                 if isinstance(s.character, RealCoord) else list(s.character.entries))
        item["mult"] = s.mult
        reps.append(item)
    doc: dict[str, Any] = {"group": group, "representation": reps}
    if rep.declared_faithful is not None:
        doc["declarations"] = {"faithful": rep.declared_faithful}
    return doc


def dumps_input(rep: Representation) -> str:
    return json.dumps(render_input(rep), indent=2, ensure_ascii=False) + "\n"
