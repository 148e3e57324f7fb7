"""Reading and writing problem instances as JSON documents.

Schema::

    {
      "field": "real" | "complex",
      "vectors": [[s, ...], ...],   # n rows of dim scalars
      "x": [s, ...],
      "gammas": [s, ...],           # optional, with Gammas
      "Gammas": [s, ...]
    }

A scalar ``s`` is a plain number in the real case and a two-element
``[re, im]`` array in the complex case. Floats are written with
shortest-round-trip precision, so save -> load reproduces every value
exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .bounds import IntervalData
from .errors import InstanceFormatError
from .generator import Instance
from .gram import VectorSystem
from .space import DEFAULT_TOL, Field, ToleranceConfig, Vector

__all__ = ["load_instance", "save_instance", "instance_to_obj", "instance_from_obj"]

_KNOWN_KEYS = {"field", "vectors", "x", "gammas", "Gammas"}


def _encode_scalar(value: complex | float, field: Field) -> Any:
    if field is Field.REAL:
        return float(np.real(value))
    z = complex(value)
    return [z.real, z.imag]


def _decode_scalar(raw: Any, field: Field, where: str) -> complex | float:
    if field is Field.REAL:
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise InstanceFormatError(f"{where}: expected a real number, got {raw!r}")
        return float(raw)
    if not isinstance(raw, list) or len(raw) != 2:
        raise InstanceFormatError(f"{where}: complex scalars are [re, im] pairs, got {raw!r}")
    re, im = raw
    for part in (re, im):
        if isinstance(part, bool) or not isinstance(part, (int, float)):
            raise InstanceFormatError(f"{where}: complex parts must be numbers, got {part!r}")
    return complex(float(re), float(im))


def _decode_vector(raw: Any, field: Field, where: str) -> list[complex | float]:
    if not isinstance(raw, list) or not raw:
        raise InstanceFormatError(f"{where}: expected a nonempty array of scalars")
    return [_decode_scalar(entry, field, f"{where}[{i}]") for i, entry in enumerate(raw)]


def instance_to_obj(instance: Instance) -> dict[str, Any]:
    field = instance.system.field
    obj: dict[str, Any] = {
        "field": field.value,
        "vectors": [[_encode_scalar(v, field) for v in row] for row in instance.system.rows],
        "x": [_encode_scalar(v, field) for v in instance.x.coords],
    }
    if instance.intervals is not None:
        obj["gammas"] = [_encode_scalar(v, field) for v in instance.intervals.gammas]
        obj["Gammas"] = [_encode_scalar(v, field) for v in instance.intervals.Gammas]
    return obj


def instance_from_obj(obj: Any, tol: ToleranceConfig = DEFAULT_TOL) -> Instance:
    if not isinstance(obj, dict):
        raise InstanceFormatError(f"instance document must be an object, got {type(obj).__name__}")
    unknown = set(obj) - _KNOWN_KEYS
    if unknown:
        raise InstanceFormatError(f"unknown keys in instance document: {sorted(unknown)}")
    for key in ("field", "vectors", "x"):
        if key not in obj:
            raise InstanceFormatError(f"missing required key {key!r}")
    try:
        field = Field(obj["field"])
    except ValueError:
        raise InstanceFormatError(
            f"field must be 'real' or 'complex', got {obj['field']!r}"
        ) from None
    raw_vectors = obj["vectors"]
    if not isinstance(raw_vectors, list) or not raw_vectors:
        raise InstanceFormatError("vectors: expected a nonempty array of rows")
    rows = [_decode_vector(raw, field, f"vectors[{i}]") for i, raw in enumerate(raw_vectors)]
    dim = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != dim:
            raise InstanceFormatError(f"vectors[{i}] has length {len(row)}, expected {dim}")
    x_row = _decode_vector(obj["x"], field, "x")
    if len(x_row) != dim:
        raise InstanceFormatError(f"x has length {len(x_row)}, expected {dim}")
    if ("gammas" in obj) != ("Gammas" in obj):
        raise InstanceFormatError("gammas and Gammas must be given together")
    intervals = None
    if "gammas" in obj:
        gammas = _decode_vector(obj["gammas"], field, "gammas")
        Gammas = _decode_vector(obj["Gammas"], field, "Gammas")
        for name, values in (("gammas", gammas), ("Gammas", Gammas)):
            if len(values) != len(rows):
                raise InstanceFormatError(
                    f"{name} has length {len(values)}, expected n={len(rows)}"
                )
        intervals = IntervalData(gammas=tuple(gammas), Gammas=tuple(Gammas))
    try:
        system = VectorSystem.from_rows(np.array(rows, dtype=field.dtype), field, tol)
        x = Vector(np.array(x_row, dtype=field.dtype), field)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc
    return Instance(system=system, x=x, intervals=intervals)


def save_instance(path: str | Path, instance: Instance) -> None:
    Path(path).write_text(json.dumps(instance_to_obj(instance), indent=2) + "\n")


def load_instance(path: str | Path, tol: ToleranceConfig = DEFAULT_TOL) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path} is not valid JSON: {exc}") from exc
    return instance_from_obj(obj, tol)
