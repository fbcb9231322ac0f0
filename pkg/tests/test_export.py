import json

import numpy as np
import pytest

from lagsurf import catalog, export
from lagsurf.core import DegenerateError, DomainError, Grid


def test_fmt_round_trips():
    for x in (np.pi, 1e-300, -2.5e17, 1 / 3):
        assert float(export.fmt(x)) == x


def test_obj_round_trip_periodic():
    spec = catalog.build("clifford_torus")
    grid = spec.default_grid(10, 12)
    verts, faces, lines = export.parse_obj(export.obj_text(spec, grid))
    assert verts.shape == (120, 3)
    assert len(faces) == 2 * 9 * 12  # t wraps around
    assert len(lines) == 10 and all(l[0] == l[-1] for l in lines)
    _, _, x = export.surface_samples(spec, grid)
    assert np.array_equal(verts, export.project(x).reshape(-1, 3))


def test_obj_open_grid_and_no_circles():
    spec = catalog.build("blair_helicoid")
    grid = spec.default_grid(8, 9)
    verts, faces, lines = export.parse_obj(export.obj_text(spec, grid))
    assert len(faces) == 2 * 7 * 8 and lines == []
    assert max(max(f) for f in faces) == len(verts)


def test_obj_faces_are_consistently_oriented():
    spec = catalog.build("product_circles")
    grid = spec.default_grid(8, 8)
    verts, faces, _ = export.parse_obj(export.obj_text(spec, grid))
    edges = set()
    for f in faces:
        for a, b in zip(f, f[1:] + f[:1]):
            assert (a, b) not in edges  # each directed edge used once
            edges.add((a, b))


def test_degenerate_triangles_dropped():
    # type III over a constant AdS point: every leaf is the same circle
    spec = catalog.spec_from_family({"family": "centered_type3", "curve": "ads_point"})
    text = export.obj_text(spec, spec.default_grid(4, 8))
    assert "# dropped 48 degenerate triangles" in text
    assert export.parse_obj(text)[1] == []


def test_projections():
    x = np.array([[0.6 + 0.0j, 0.0 + 0.8j], [0.0, 1.0]])
    assert np.allclose(export.project(x, "re1_re2_im2")[0], [0.6, 0.0, 0.8])
    with pytest.raises(DegenerateError):  # (0, i) is the pole
        export.project(np.array([[0.6, 0.8j], [0.0, 1j]]), "stereographic")
    y = np.array([[1.0, 0.0], [0.0, 1.0]], complex)
    p = export.project(y, "stereographic")
    assert np.allclose(p, [[1, 0, 0], [0, 0, 1]])
    with pytest.raises(DomainError):
        export.project(x, "bogus")


def test_csv_and_json_writers(tmp_path):
    spec = catalog.build("clifford_torus")
    grid = spec.default_grid(4, 4)
    path = tmp_path / "sub" / "surf.csv"
    export.atomic_write(path, export.surface_csv_text(spec, grid))
    rows = path.read_text().splitlines()
    assert rows[0] == "s,t,re_z1,im_z1,re_z2,im_z2" and len(rows) == 17
    export.write_json(tmp_path / "r.json", {"a": 1})
    assert json.loads((tmp_path / "r.json").read_text()) == {"a": 1}
    assert [p.name for p in tmp_path.iterdir() if p.name.startswith(".tmp")] == []
