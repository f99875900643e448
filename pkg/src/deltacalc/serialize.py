"""Lossless tagged JSON for kernel values, plus the judgment envelope used by the CLI."""

from __future__ import annotations

import dataclasses
import enum
import json
from typing import Any

from . import curry, delta, lam, reduction, stlc, subtyping, typecheck, typeexpr
from .basis import Basis
from .syntax import show_term
from .typeexpr import TypeExpr, show_type

_MODULES = (typeexpr, lam, delta, subtyping, typecheck, curry, stlc, reduction)
_CLASSES: dict[str, type] = {}
_ENUMS: dict[str, type] = {}
for _mod in _MODULES:
    for _name, _obj in vars(_mod).items():
        if isinstance(_obj, type) and _obj.__module__ == _mod.__name__:
            if dataclasses.is_dataclass(_obj):
                _CLASSES[_name] = _obj
            elif issubclass(_obj, enum.Enum):
                _ENUMS[_name] = _obj


def to_json(value: Any) -> Any:
    match value:
        case None | bool() | int() | str():
            return value
        case enum.Enum():
            return {"enum": type(value).__name__, "value": value.name}
        case Basis():
            return {"tag": "Basis", "items": [[n, to_json(t)] for n, t in value]}
        case tuple() | list():
            return [to_json(v) for v in value]
    if dataclasses.is_dataclass(value) and type(value).__name__ in _CLASSES:
        out = {"tag": type(value).__name__}
        for f in dataclasses.fields(value):
            if f.init:
                out[f.name] = to_json(getattr(value, f.name))
        return out
    raise TypeError(f"cannot serialize {type(value).__name__}")


def from_json(data: Any) -> Any:
    match data:
        case None | bool() | int() | str():
            return data
        case list():
            return tuple(from_json(v) for v in data)
        case {"enum": name, "value": member}:
            return _ENUMS[name][member]
        case {"tag": "Basis", "items": items}:
            return Basis((n, from_json(t)) for n, t in items)
        case {"tag": tag, **fields} if tag in _CLASSES:
            return _CLASSES[tag](**{k: from_json(v) for k, v in fields.items()})
    raise ValueError(f"not a serialized kernel value: {data!r}")


def dumps(value: Any) -> str:
    return json.dumps(to_json(value), sort_keys=True)


def loads(text: str) -> Any:
    return from_json(json.loads(text))


def _basis_rows(b: Basis) -> list[list[str]]:
    return [[n, show_type(t)] for n, t in b]


def judgment_json(
    sys: typecheck.SystemId,
    b: Basis,
    d: delta.DeltaTerm,
    result: TypeExpr | typecheck.TypingError,
    derivation: typecheck.Derivation | None = None,
) -> dict:
    if isinstance(result, typecheck.TypingError):
        outcome = {"error": result.code, "message": str(result)}
    else:
        outcome = {"type": show_type(result)}
    env = {
        "style": "typed",
        "system": {"theory": sys.theory.id, "relation": sys.relation.value},
        "basis": _basis_rows(b),
        "term": show_term(d),
        "result": outcome,
    }
    if derivation is not None:
        env["derivation"] = to_json(derivation)
    return env


def curry_json(theory: typeexpr.Theory, deriv: curry.CurryDeriv) -> dict:
    return {
        "style": "curry",
        "system": {"theory": theory.id, "relation": None},
        "basis": _basis_rows(deriv.basis),
        "term": lam.show_lambda(deriv.subject),
        "result": {"type": show_type(deriv.type)},
        "derivation": to_json(deriv),
    }
