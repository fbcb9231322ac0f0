import csv
import json

import numpy as np
import pytest

from lagsurf.cli import PROFILE_COLUMNS, THRESHOLDS, main
from lagsurf.export import parse_obj


def write(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_catalog_json(capsys):
    assert main(["catalog", "--json"]) == 0
    names = [e["name"] for e in json.loads(capsys.readouterr().out)]
    assert "clifford_torus" in names and "blair_helicoid" in names


def test_verify_pass_and_fail(tmp_path, capsys):
    ok = write(tmp_path, {"surface": {"catalog": "clifford_torus"},
                          "checks": ["lagrangian", {"self_similar": {"lambda": 1}}]})
    assert main(["verify", "--config", ok]) == 0
    assert "PASSED" in capsys.readouterr().out
    bad = write(tmp_path, {"surface": {"catalog": "blair_helicoid"},
                           "checks": [{"self_similar": 1}]}, "bad.json")
    assert main(["verify", "--config", bad]) == 1
    assert "FAIL self_similar" in capsys.readouterr().out


def test_verify_json_is_deterministic(tmp_path, capsys):
    cfg = write(tmp_path, {"surface": {"catalog": "hs_closed", "args": {"p": 1, "q": 3}},
                           "grid": {"n_s": 32, "n_t": 32},
                           "checks": ["hamiltonian_stationary", "r2K"]})
    main(["verify", "--config", cfg, "--json"])
    first = capsys.readouterr().out
    main(["verify", "--config", cfg, "--json"])
    assert capsys.readouterr().out == first
    rep = json.loads(first)
    assert rep["passed"] and rep["grid"]["n_s"] == 32
    assert rep["checks"][0]["threshold"] == THRESHOLDS["hamiltonian_stationary"]


def test_verify_writes_json_output(tmp_path):
    out = tmp_path / "res"
    cfg = write(tmp_path, {"surface": {"catalog": "product_circles"},
                           "checks": ["lagrangian"],
                           "output": {"formats": ["json"], "path": str(out)}})
    assert main(["verify", "--config", cfg]) == 0
    assert json.loads((tmp_path / "res.json").read_text())["passed"]


@pytest.mark.parametrize("cfg", [
    "{not json",
    {"surface": {"catalog": "nope"}},
    {"surface": {"catalog": "clifford_torus"}, "grid": {"n_s": 4}},
    {"surface": {"catalog": "clifford_torus"}, "checks": ["bogus"]},
    {"surface": {"catalog": "clifford_torus"}, "checks": [{"self_similar": {}}]},
    {"surface": {"catalog": "clifford_torus"}, "checks": [{"self_similar": 0}]},
    {"surface": {"catalog": "blair_helicoid"}, "checks": ["r2K"]},
    {"surface": {"catalog": "clifford_torus"}, "extra": 1},
    {"surface": {"catalog": "clifford_torus", "family": "ruled"}},
    {"surface": {"catalog": "clifford_torus"}, "output": {"projection": "x"}},
    {"surface": {"catalog": "clifford_torus"}, "grid": {"s_range": [1, 0]}},
    {"surface": {"catalog": "clifford_torus"}, "grid": {"n_s": 8, "n_t": 8},
     "checks": ["hamiltonian_stationary"]},
])
def test_usage_errors_exit_2(tmp_path, capsys, cfg):
    assert main(["verify", "--config", write(tmp_path, cfg)]) == 2
    assert "lagsurf: error:" in capsys.readouterr().err


def test_missing_config_file(capsys):
    assert main(["verify", "--config", "/nonexistent/cfg.json"]) == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["profile", "--out", "x.csv"])
    assert exc.value.code == 2


def read_profile(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], float)


def test_profile_pq(tmp_path, capsys):
    out = tmp_path / "p.csv"
    assert main(["profile", "--pq", "1", "3", "--out", str(out), "--samples", "300"]) == 0
    header, data = read_profile(out)
    assert header == PROFILE_COLUMNS and data.shape == (300, 7)
    assert np.ptp(data[:, 6]) < 1e-8 * abs(data[0, 6])
    # closed: last sample returns to the first
    assert np.hypot(*(data[-1, 4:6] - data[0, 4:6])) < 1e-6


def test_profile_bounded_C_periods(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["profile", "--C", "3", "--periods", "2", "--out", str(out)]) == 0
    _, data = read_profile(out)
    # alpha' = C - 2 sin(alpha) > 0: alpha gains 2 pi per period
    assert abs(data[-1, 2] - data[0, 2] - 4 * np.pi) < 1e-7


def test_profile_open_regime_diagnostic(tmp_path, capsys):
    out = tmp_path / "p.csv"
    assert main(["profile", "--C", "1.5", "--length", "5", "--out", str(out)]) == 0
    assert "spiraling_ends" in capsys.readouterr().err
    _, data = read_profile(out)
    assert data[-1, 0] == 5.0


def test_profile_bad_pq(tmp_path):
    assert main(["profile", "--pq", "2", "4", "--out", str(tmp_path / "p.csv")]) == 2


def test_mesh(tmp_path):
    cfg = write(tmp_path, {"surface": {"catalog": "clifford_torus"},
                           "grid": {"n_s": 8, "n_t": 8},
                           "output": {"formats": ["obj", "csv"]}})
    out = tmp_path / "m.obj"
    assert main(["mesh", "--config", cfg, "--out", str(out)]) == 0
    verts, faces, _ = parse_obj(out.read_text())
    assert verts.shape == (64, 3) and len(faces) == 2 * 7 * 8
    assert (tmp_path / "m.csv").read_text().count("\n") == 65


def test_certify(capsys):
    assert main(["certify", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] and len(rep["roots"]) == 2
