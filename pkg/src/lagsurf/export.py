"""OBJ and CSV writers. All files are written to a temporary sibling and
renamed into place."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile

import numpy as np

from .core import DegenerateError, DomainError
from .diffgeo import surface_jet

PROJECTIONS = ("re1_im1_re2", "re1_re2_im2", "stereographic")


def fmt(x):
    """17 significant digits: round-trip exact for doubles."""
    return format(float(x), ".17g")


def atomic_write(path, text):
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp_", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def project(x, projection="re1_im1_re2"):
    """R^4 -> R^3. Stereographic projection is taken from the pole
    (0, 0, 0, rho), rho the largest |X|, i.e. the usual one for surfaces
    lying on a round sphere centered at the origin."""
    x = np.asarray(x)
    z1, z2 = x[..., 0], x[..., 1]
    if projection == "re1_im1_re2":
        return np.stack([z1.real, z1.imag, z2.real], axis=-1)
    if projection == "re1_re2_im2":
        return np.stack([z1.real, z2.real, z2.imag], axis=-1)
    if projection == "stereographic":
        rho = float(np.sqrt(np.max(np.sum(np.abs(x) ** 2, axis=-1))))
        den = rho - z2.imag
        if np.any(den < 1e-12 * max(rho, 1.0)):
            raise DegenerateError("surface passes through the projection pole")
        return rho * np.stack([z1.real, z1.imag, z2.real], axis=-1) / den[..., None]
    raise DomainError(f"unknown projection {projection!r}; use one of {PROJECTIONS}")


def surface_samples(spec, grid):
    S, T = grid.mesh()
    return S, T, surface_jet(spec, S, T).x


def _faces(n_s, n_t, periodic_t):
    """Two triangles per quad, counterclockwise in (s, t); 1-based."""
    idx = np.arange(n_s * n_t).reshape(n_s, n_t) + 1
    cols = n_t if periodic_t else n_t - 1
    faces = []
    for i in range(n_s - 1):
        for j in range(cols):
            jn = (j + 1) % n_t
            a, b, c, d = idx[i, j], idx[i + 1, j], idx[i + 1, jn], idx[i, jn]
            faces.append((a, b, c))
            faces.append((a, c, d))
    return faces


def _area(p, f):
    a, b, c = (p[k - 1] for k in f)
    return 0.5 * np.linalg.norm(np.cross(b - a, c - a))


def obj_text(spec, grid, projection="re1_im1_re2", circles=None, area_tol=1e-14):
    """Wavefront OBJ of the projected surface. Triangles of zero area (a
    collapsed leaf, say) are dropped and counted in a comment line."""
    S, T, x = surface_samples(spec, grid)
    p = project(x, projection).reshape(-1, 3)
    scale = max(1.0, float(np.max(np.abs(p))))
    circles = spec.cyclic if circles is None else circles
    out = io.StringIO()
    out.write(f"# {spec.name or spec.family.value}; projection {projection}; "
              f"grid {grid.n_s}x{grid.n_t}\n")
    out.write(f"o {spec.name or spec.family.value}\n")
    for v in p:
        out.write(f"v {fmt(v[0])} {fmt(v[1])} {fmt(v[2])}\n")
    faces = _faces(grid.n_s, grid.n_t, grid.periodic_t)
    kept = [f for f in faces if _area(p, f) > area_tol * scale ** 2]
    if len(kept) < len(faces):
        out.write(f"# dropped {len(faces) - len(kept)} degenerate triangles\n")
    out.write("g surface\n")
    for f in kept:
        out.write(f"f {f[0]} {f[1]} {f[2]}\n")
    if circles:
        out.write("g circles\n")
        for i in range(grid.n_s):
            row = [i * grid.n_t + j + 1 for j in range(grid.n_t)]
            if grid.periodic_t:
                row.append(row[0])
            out.write("l " + " ".join(map(str, row)) + "\n")
    return out.getvalue()


def write_obj(path, spec, grid, projection="re1_im1_re2", circles=None):
    atomic_write(path, obj_text(spec, grid, projection, circles))


def parse_obj(text):
    """Vertices, triangles and polylines of an OBJ produced by obj_text."""
    verts, faces, lines = [], [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(v) for v in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(v.split("/")[0]) for v in parts[1:]])
        elif parts[0] == "l":
            lines.append([int(v) for v in parts[1:]])
    return np.array(verts), faces, lines


def csv_text(header, rows):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return out.getvalue()


def surface_csv_text(spec, grid):
    S, T, x = surface_samples(spec, grid)
    rows = zip(S.ravel(), T.ravel(), x[..., 0].real.ravel(), x[..., 0].imag.ravel(),
               x[..., 1].real.ravel(), x[..., 1].imag.ravel())
    return csv_text(["s", "t", "re_z1", "im_z1", "re_z2", "im_z2"], rows)


def write_json(path, obj):
    atomic_write(path, json.dumps(obj, indent=2) + "\n")
