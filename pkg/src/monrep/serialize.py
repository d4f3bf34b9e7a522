"""JSON encodings of algebras, modules and representations.

An algebra reference is either an inline algebra object, a path to a JSON
file holding one, or a stock id resolved against a field:

    "field"            the ground field k
    "truncated:n"      k[x]/(x^n)
    "nakayama:v:l"     cyclic Nakayama algebra, v vertices, Loewy length l
    "path:<n>:<s>-<e>,..."  path algebra of a quiver
"""
from __future__ import annotations

import json
import os
from functools import lru_cache

import numpy as np

from .algebra import (
    Algebra,
    Quiver,
    ValidationError,
    ground_field,
    nakayama_algebra,
    path_algebra,
    truncated_polynomial,
)
from .amodule import Module, validate_module
from .exactla import QQ, Field, GF
from .quiverrep import Representation, validate_representation

__all__ = [
    "parse_field",
    "resolve_algebra",
    "algebra_id",
    "module_to_json",
    "module_from_json",
    "rep_to_json",
    "rep_from_json",
]


def parse_field(text: str | int | None) -> Field:
    if text is None:
        return GF(2)
    if isinstance(text, int):
        return GF(text)
    if text.strip().upper() in ("Q", "QQ"):
        return QQ
    try:
        return GF(int(text))
    except ValueError as exc:
        raise ValidationError(f"bad field {text!r}: {exc}") from None


@lru_cache(maxsize=None)
def _stock(ref: str, field: Field) -> Algebra:
    parts = ref.split(":")
    kind = parts[0]
    try:
        if kind in ("field", "k") and len(parts) == 1:
            alg = ground_field(field)
        elif kind == "truncated" and len(parts) == 2:
            alg = truncated_polynomial(field, int(parts[1]))
        elif kind == "nakayama" and len(parts) == 3:
            alg = nakayama_algebra(field, int(parts[1]), int(parts[2]))
        elif kind == "path" and len(parts) == 3:
            arrows = tuple(tuple(int(v) for v in a.split("-")) for a in parts[2].split(",") if a)
            alg = path_algebra(Quiver(int(parts[1]), arrows), field)
        else:
            raise ValidationError(f"unknown algebra id {ref!r}")
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"bad algebra id {ref!r}: {exc}") from None
    alg.name = ref
    return alg


@lru_cache(maxsize=None)
def _from_file(path: str) -> Algebra:
    with open(path) as fh:
        return Algebra.from_json(json.load(fh), name=path)


def resolve_algebra(ref, field: Field) -> Algebra:
    if isinstance(ref, Algebra):
        return ref
    if isinstance(ref, dict):
        return Algebra.from_json(ref)
    if not isinstance(ref, str):
        raise ValidationError(f"bad algebra reference {ref!r}")
    if ref.endswith(".json") or os.path.sep in ref:
        return _from_file(ref)
    return _stock(ref, field)


def algebra_id(a: Algebra):
    """The stock id (or inline JSON) that reproduces ``a``."""
    try:
        if a.name and _stock(a.name, a.field) is a:
            return a.name
    except ValidationError:
        pass
    return a.to_json()


def module_to_json(m: Module, with_algebra: bool = True) -> dict:
    F = m.field
    out = {"algebra": algebra_id(m.algebra)} if with_algebra else {}
    out["dim"] = m.dim
    out["action"] = [F.to_list(m.action[b]) for b in range(m.algebra.dim)]
    return out


def module_from_json(data: dict, field: Field, algebra: Algebra | None = None) -> Module:
    a = algebra if algebra is not None else resolve_algebra(data["algebra"], field)
    F = a.field
    n = int(data["dim"])
    acts = data["action"]
    if len(acts) != a.dim:
        raise ValidationError(f"module needs {a.dim} action matrices, got {len(acts)}")
    mats = [F.from_list(act, n, n) for act in acts]
    m = Module(a, np.stack(mats) if mats else F.zeros(0, 0).reshape(0, n, n))
    validate_module(m)
    return m


def rep_to_json(x: Representation) -> dict:
    F = x.field
    return {
        "quiver": x.quiver.to_json(),
        "algebra": algebra_id(x.algebra),
        "vertices": {str(i): module_to_json(x[i], with_algebra=False) for i in x.quiver.vertices},
        "arrows": [{"arrow": a, "mat": F.to_list(m)} for a, m in enumerate(x.maps)],
    }


def rep_from_json(data: dict, field: Field) -> Representation:
    try:
        q = Quiver.from_json(data["quiver"])
        a = resolve_algebra(data["algebra"], field)
        modules = {i: module_from_json(data["vertices"][str(i)], field, algebra=a) for i in q.vertices}
        mats = [None] * len(q.arrows)
        for entry in data.get("arrows", []):
            k = int(entry["arrow"])
            s, e = q.arrows[k]
            mats[k] = a.field.from_list(entry["mat"], modules[e].dim, modules[s].dim)
    except (KeyError, IndexError, TypeError) as exc:
        raise ValidationError(f"malformed representation: {exc!r}") from None
    if any(m is None for m in mats):
        raise ValidationError("every arrow needs a matrix")
    x = Representation(q, a, modules, mats)
    validate_representation(x)
    return x
