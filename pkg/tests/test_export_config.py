import json

import jsonschema
import numpy as np
import pytest
from hypothesis import given, strategies as st

from nkahler.config import RunConfig
from nkahler.export import ExportDocument, ExportObject, dumps, torus_figure, validate, write_export
from nkahler.geodesics import BetaParamsH3

coords = st.lists(st.tuples(*[st.floats(-1e6, 1e6, allow_nan=False)] * 3), min_size=2, max_size=20).map(np.array)


@given(coords)
def test_export_roundtrip_is_exact(c):
    doc = ExportDocument((ExportObject("polyline", c, {"role": "x", "n": len(c)}),), {"seed": 1})
    text = dumps(doc)
    obj = validate(text)
    assert np.array_equal(np.array(obj["objects"][0]["coordinates"]), c)
    assert dumps(doc) == text


def test_export_object_validation():
    with pytest.raises(ValueError):
        ExportObject("polyline", np.zeros((1, 3)))
    with pytest.raises(ValueError):
        ExportObject("circle", np.array([[0.0, np.inf, 0.0]]))
    with pytest.raises(ValueError):
        ExportObject("surface", np.zeros((2, 3)))
    with pytest.raises(ValueError):
        ExportObject("points", np.zeros((2, 2)))


def test_schema_rejects_bad_documents():
    bad = {"schema_version": "2", "objects": []}
    with pytest.raises(jsonschema.ValidationError):
        validate(bad)
    bad = {"schema_version": "1", "objects": [{"kind": "polyline", "coordinates": [[0, 0, 0]], "metadata": {}}]}
    with pytest.raises(jsonschema.ValidationError):
        validate(bad)


def test_torus_figure(tmp_path):
    doc = torus_figure(BetaParamsH3("torus", C1=1.0), n_geodesics=5, n_samples=10, n_circle=32)
    kinds = [o.kind for o in doc.objects]
    assert kinds == ["circle", "circle"] + ["polyline"] * 5
    path = tmp_path / "fig.json"
    text = write_export(doc, path)
    assert path.read_text() == text
    obj = json.loads(text)
    for o in obj["objects"]:
        assert np.all(np.linalg.norm(np.array(o["coordinates"]), axis=1) <= 1 + 1e-12)


def test_config_precedence(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"seed": 3, "grid": 12}))
    assert RunConfig.load(str(path), env={}).seed == 3
    assert RunConfig.load(str(path), env={"NK_SEED": "5"}).seed == 5
    cfg = RunConfig.load(str(path), env={"NK_SEED": "5"}, seed=9, grid=None)
    assert (cfg.seed, cfg.grid) == (9, 12)
    assert RunConfig.from_dict(cfg.to_dict()) == cfg


def test_config_validation(tmp_path):
    with pytest.raises(ValueError):
        RunConfig(null_tol=0)
    with pytest.raises(ValueError):
        RunConfig(grid=0)
    with pytest.raises(ValueError):
        RunConfig.from_dict({"tolerance": 1})
