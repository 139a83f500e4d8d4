"""JSON export of ball-model figures (schema version "1").

Numbers are written with 17 significant digits so that a reader recovers the
exact doubles; key order is fixed, so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

import jsonschema
import numpy as np

SCHEMA_VERSION = "1"
KINDS = ("polyline", "circle", "points")


def load_schema():
    return json.loads(resources.files("nkahler").joinpath("export_schema.json").read_text())


@dataclass(frozen=True)
class ExportObject:
    kind: str
    coordinates: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        c = np.asarray(self.coordinates, dtype=float)
        if c.ndim != 2 or c.shape[1] != 3:
            raise ValueError("coordinates must be an (n, 3) array")
        if not np.all(np.isfinite(c)):
            raise ValueError("coordinates must be finite")
        if self.kind == "polyline" and len(c) < 2:
            raise ValueError("a polyline needs at least two points")
        object.__setattr__(self, "coordinates", c)


@dataclass(frozen=True)
class ExportDocument:
    objects: tuple
    metadata: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION


def _num(x):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite number in export")
    s = "%.17g" % x
    return "0" if s == "-0" else s


def _value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _num(v)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_value(x) for x in v) + "]"
    raise TypeError(f"unsupported metadata value {v!r}")


def _meta(d):
    return "{" + ", ".join(f"{json.dumps(str(k))}: {_value(d[k])}" for k in sorted(d)) + "}"


def dumps(doc: ExportDocument) -> str:
    lines = ["{", f'  "schema_version": {json.dumps(doc.schema_version)},']
    lines.append(f'  "metadata": {_meta(doc.metadata)},')
    lines.append('  "objects": [')
    objs = []
    for ob in doc.objects:
        coords = ",\n".join(
            "        [" + ", ".join(_num(c) for c in row) + "]" for row in ob.coordinates
        )
        objs.append(
            "    {\n"
            f'      "kind": {json.dumps(ob.kind)},\n'
            f'      "metadata": {_meta(ob.metadata)},\n'
            '      "coordinates": [\n' + coords + "\n      ]\n    }"
        )
    lines.append(",\n".join(objs))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def validate(text_or_obj):
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    jsonschema.validate(obj, load_schema())
    return obj


def write_export(doc: ExportDocument, path):
    text = dumps(doc)
    validate(text)  # self-check before touching the file
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text


def torus_figure(params, n_geodesics=16, n_samples=48, n_circle=256):
    """Boundary circles and sampled geodesic arcs of an L(H^3) beta-surface."""
    from .geodesics import (
        ball_geodesic,
        beta_surface_h3,
        boundary_curves,
        default_grid,
    )

    objs = []
    meta = {"case": params.case, "C0": params.C0, "C1": params.C1, "variant": params.variant}
    if params.case == "torus":
        _, e1, e2 = boundary_curves(params, n_circle)
        objs.append(ExportObject("circle", e1, {"role": "start-circle"}))
        objs.append(ExportObject("circle", e2, {"role": "end-circle"}))
    S = beta_surface_h3(params)
    k = max(1, int(math.ceil(math.sqrt(n_geodesics))))
    for s, t in default_grid(params, k)[:n_geodesics]:
        arc = ball_geodesic(S.point(s, t), n_samples)
        objs.append(ExportObject("polyline", arc, {"role": "geodesic", "params": [s, t]}))
    return ExportDocument(tuple(objs), meta)
