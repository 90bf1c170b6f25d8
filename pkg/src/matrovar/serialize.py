"""JSON encodings of matroids, realizations and rationals."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .exactlinalg import format_fraction
from .matroid import Matroid, Realization, from_circuits, paving_from_hyperplanes


def parse_fraction(s) -> Fraction:
    if isinstance(s, bool):
        raise InputError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"not a rational: {s!r} (use \"p/q\" or \"p\")")


def vector_to_json(v) -> list:
    return [format_fraction(Fraction(x)) for x in v]


def _int(d: dict, key: str, where: str) -> int:
    v = d.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise InputError(f"{where}: '{key}' must be a nonnegative integer, got {v!r}")
    return v


def matroid_from_json(data) -> Matroid:
    if not isinstance(data, dict):
        raise InputError("matroid JSON must be an object")
    g = _int(data, "ground_set", "matroid")
    r = _int(data, "rank", "matroid")
    pres = data.get("presentation")
    if not isinstance(pres, dict):
        raise InputError("matroid: 'presentation' must be an object")
    kind = pres.get("kind")
    sets = pres.get("sets")
    if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
        raise InputError("matroid: 'presentation.sets' must be a list of lists")
    for i, s in enumerate(sets):
        for e in s:
            if not isinstance(e, int) or isinstance(e, bool):
                raise InputError(f"matroid: presentation.sets[{i}] holds a non-integer {e!r}")
    name = data.get("name")
    if kind == "circuits":
        return from_circuits(g, r, sets, name=name)
    if kind == "hyperplanes":
        return paving_from_hyperplanes(g, r, sets, name=name)
    raise InputError(f"matroid: unknown presentation kind {kind!r}")


def matroid_to_json(M: Matroid) -> dict:
    out = {"ground_set": M.ground_size, "rank": M.rank}
    if M.name:
        out["name"] = M.name
    if M.hyperplanes is not None:
        out["presentation"] = {"kind": "hyperplanes", "sets": [list(h) for h in M.hyperplanes]}
    else:
        out["presentation"] = {"kind": "circuits", "sets": [list(c) for c in M.circuits]}
    return out


def realization_from_json(data, M: Matroid) -> Realization:
    if not isinstance(data, dict):
        raise InputError("realization JSON must be an object")
    dim = _int(data, "dim", "realization")
    vecs = data.get("vectors")
    if not isinstance(vecs, dict):
        raise InputError("realization: 'vectors' must be an object")
    out = {}
    for k, v in vecs.items():
        try:
            e = int(k)
        except ValueError:
            raise InputError(f"realization: bad element key {k!r}") from None
        if not isinstance(v, list):
            raise InputError(f"realization: vector {k} must be a list")
        out[e] = tuple(parse_fraction(x) for x in v)
    return Realization(M, dim, out)


def realization_to_json(r: Realization) -> dict:
    return {"dim": r.dim, "vectors": {str(e): vector_to_json(v) for e, v in sorted(r.vectors.items())}}


def read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def load_matroid(source: str) -> Matroid:
    """A JSON file path or ``fixture:NAME``."""
    if source.startswith("fixture:"):
        from .fixtures import fixture
        return fixture(source.split(":", 1)[1])
    return matroid_from_json(read_json(source))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
