"""Reading and writing biframe systems as JSON manifests.

The on-disk format is deliberately plain: one JSON object with the scalar
field, the dimension, the weighted node list, the two sample families, the
target matrix, and (optionally) a claimed bound pair and a label.  Complex
scalars are two-element ``[re, im]`` arrays.  :func:`save` emits a canonical
form -- sorted keys, two-space indent, shortest round-tripping float
representation -- so saved manifests diff cleanly and ``load(save(x))``
reproduces ``x`` bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..biframe import BiframeSystem
from ..errors import (
    BiframeError,
    ManifestParseError,
    ManifestValidationError,
)
from ..measure import DiscreteMeasure

FORMAT_VERSION = 1

_TOP_LEVEL_FIELDS = {
    "format_version", "field", "dim", "measure", "F", "G", "K",
    "claimed_bounds", "label",
}


@dataclass(frozen=True)
class ManifestRecord:
    """A loaded manifest: the system plus its optional claim and label."""

    system: BiframeSystem
    claimed_bounds: tuple[float, float] | None = None
    label: str | None = None


def _fail(field: str, problem: str) -> ManifestValidationError:
    return ManifestValidationError(f"{field}: {problem}")


def _parse_scalar(value, complex_field: bool, where: str) -> complex | float:
    if isinstance(value, bool):
        raise _fail(where, "booleans are not numbers")
    if isinstance(value, (int, float)):
        return complex(value) if complex_field else float(value)
    if complex_field and isinstance(value, list) and len(value) == 2 \
            and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in value):
        return complex(float(value[0]), float(value[1]))
    expected = "a number or [re, im] pair" if complex_field else "a number"
    raise _fail(where, f"expected {expected}, got {value!r}")


def _parse_matrix(rows, n_rows: int, n_cols: int, complex_field: bool, name: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != n_rows:
        raise _fail(name, f"expected {n_rows} rows")
    out = np.zeros((n_rows, n_cols), dtype=np.complex128 if complex_field else np.float64)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n_cols:
            raise _fail(f"{name}[{i}]", f"expected a row of {n_cols} entries")
        for j, value in enumerate(row):
            out[i, j] = _parse_scalar(value, complex_field, f"{name}[{i}][{j}]")
    return out


def loads(text: str) -> ManifestRecord:
    """Parse a manifest from a JSON string (see :func:`load`)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestParseError(
            f"not valid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})",
            line=exc.lineno,
            column=exc.colno,
        ) from exc

    if not isinstance(raw, dict):
        raise _fail("manifest", "top level must be a JSON object")
    unknown = set(raw) - _TOP_LEVEL_FIELDS
    if unknown:
        raise _fail(", ".join(sorted(unknown)), "unexpected field")
    for required in ("format_version", "field", "dim", "measure", "F", "G", "K"):
        if required not in raw:
            raise _fail(required, "missing required field")

    if raw["format_version"] != FORMAT_VERSION:
        raise _fail("format_version", f"expected {FORMAT_VERSION}, got {raw['format_version']!r}")
    if raw["field"] not in ("real", "complex"):
        raise _fail("field", f'must be "real" or "complex", got {raw["field"]!r}')
    complex_field = raw["field"] == "complex"

    dim = raw["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise _fail("dim", f"must be a positive integer, got {dim!r}")

    nodes = raw["measure"]
    if not isinstance(nodes, list) or not nodes:
        raise _fail("measure", "must be a non-empty list of nodes")
    ids: list[str] = []
    weights: list[float] = []
    for i, node in enumerate(nodes):
        if not isinstance(node, dict) or set(node) != {"id", "weight"}:
            raise _fail(f"measure[{i}]", 'each node needs exactly "id" and "weight"')
        if not isinstance(node["id"], str):
            raise _fail(f"measure[{i}].id", "must be a string")
        weight = node["weight"]
        if isinstance(weight, bool) or not isinstance(weight, (int, float)) \
                or not np.isfinite(weight) or weight <= 0:
            raise _fail(f"measure[{i}].weight", "weights strictly positive and finite required")
        ids.append(node["id"])
        weights.append(float(weight))
    if len(set(ids)) != len(ids):
        raise _fail("measure", "node ids must be unique")

    f_mat = _parse_matrix(raw["F"], len(nodes), dim, complex_field, "F")
    g_mat = _parse_matrix(raw["G"], len(nodes), dim, complex_field, "G")
    k_mat = _parse_matrix(raw["K"], dim, dim, complex_field, "K")

    claimed: tuple[float, float] | None = None
    if "claimed_bounds" in raw and raw["claimed_bounds"] is not None:
        pair = raw["claimed_bounds"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise _fail("claimed_bounds", "must be a [lower, upper] pair")
        lo, hi = (float(_parse_scalar(p, False, "claimed_bounds")) for p in pair)
        if not (np.isfinite(lo) and np.isfinite(hi) and 0 < lo <= hi):
            raise _fail("claimed_bounds", f"need finite 0 < lower <= upper, got [{lo}, {hi}]")
        claimed = (lo, hi)

    label = raw.get("label")
    if label is not None and not isinstance(label, str):
        raise _fail("label", "must be a string")

    try:
        system = BiframeSystem.from_samples(
            DiscreteMeasure(tuple(ids), np.array(weights)), f_mat, g_mat, k_mat
        )
    except (BiframeError, ValueError) as exc:
        # ValueError covers non-finite entries (JSON's Infinity/NaN literals
        # parse as floats and pass the schema checks above)
        raise ManifestValidationError(str(exc)) from exc
    return ManifestRecord(system=system, claimed_bounds=claimed, label=label)


def load(path) -> ManifestRecord:
    """Load and validate a manifest file.

    Syntactic problems raise :class:`ManifestParseError` (with line/column);
    schema problems raise :class:`ManifestValidationError` naming the field.
    """
    return loads(Path(path).read_text(encoding="utf-8"))


def _emit_scalar(value, complex_field: bool):
    if complex_field:
        value = complex(value)
        return [value.real, value.imag]
    return float(value)


def _emit_matrix(mat: np.ndarray, complex_field: bool):
    return [[_emit_scalar(v, complex_field) for v in row] for row in np.asarray(mat)]


def dumps(system: BiframeSystem, *, claimed_bounds=None, label: str | None = None) -> str:
    """Serialize a system to the canonical manifest string."""
    complex_field = system.field_name == "complex"
    doc = {
        "format_version": FORMAT_VERSION,
        "field": system.field_name,
        "dim": system.dim,
        "measure": [
            {"id": node_id, "weight": float(weight)}
            for node_id, weight in zip(system.measure.ids, system.measure.weights)
        ],
        "F": _emit_matrix(system.analysis.samples, complex_field),
        "G": _emit_matrix(system.synthesis.samples, complex_field),
        "K": _emit_matrix(system.target, complex_field),
    }
    if claimed_bounds is not None:
        doc["claimed_bounds"] = [float(claimed_bounds[0]), float(claimed_bounds[1])]
    if label is not None:
        doc["label"] = label
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def save(system: BiframeSystem, path, *, claimed_bounds=None, label: str | None = None) -> None:
    """Write the canonical manifest for ``system`` (overwrites)."""
    Path(path).write_text(dumps(system, claimed_bounds=claimed_bounds, label=label),
                          encoding="utf-8")
