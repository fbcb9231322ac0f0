import time

import pytest

from lagsurf import catalog
from lagsurf.cli import parse_config, verify
from lagsurf.core import DomainError, Family

SELF_SIMILAR = {"clifford_torus": {"lambda": 1.0},
                "centered_selfsimilar": {"lambda": 1.0, "threshold": 1e-4},
                "circle_times_shrinker": {"lambda": 1.0, "convention": "full"}}


@pytest.mark.parametrize("name", list(catalog.CATALOG))
def test_entry_passes_its_declared_checks(name):
    entry = catalog.get(name)
    checks = [{c: SELF_SIMILAR[name]} if c == "self_similar" else c
              for c in entry.checks]
    t0 = time.perf_counter()
    report = verify(parse_config({"surface": {"catalog": name}, "checks": checks}))
    assert report["passed"], report
    assert time.perf_counter() - t0 < 10


def test_index_lists_defaults():
    idx = catalog.get("product_circles").index()
    assert idx["defaults"] == {"r1": 1.0, "r2": 2.0}


def test_build_names_arguments():
    spec = catalog.build("product_circles", r1=2, r2=0.5)
    assert spec.name == "product_circles(r1=2,r2=0.5)"
    assert spec.radius == 2.0


def test_unknown_entry_and_argument():
    with pytest.raises(DomainError):
        catalog.get("nope")
    with pytest.raises(DomainError):
        catalog.build("clifford_torus", c=2)


def test_curve_registry():
    c = catalog.curve_from({"name": "s3_torus_curve", "args": {"c": 0.3}})
    assert c.name == "torus_curve(c=0.3)"
    assert catalog.curve_from("planar_circle").domain[1] > 6
    with pytest.raises(DomainError):
        catalog.curve_from({"name": "planar_circle", "args": {"bogus": 1}})
    with pytest.raises(DomainError):
        catalog.curve_from("nope")


@pytest.mark.parametrize("desc", [
    {"family": "centered_type1", "curve": "planar_ellipse"},
    {"family": "general_type1", "curve": "planar_ellipse", "W1": 0.3, "W2": -1},
    {"family": "centered_type2", "curve": "s3_hopf_circle", "c": 2.0},
    {"family": "general_type2", "curve": "s3_torus_curve", "W": [0.2, 0.1]},
    {"family": "general_type2", "curve": "s3_torus_curve", "W": 0.3, "alt_form": True},
    {"family": "centered_type3", "curve": "ads_hyperbola"},
    {"family": "general_type3", "curve": "ads_torus_curve", "W": [0, 1]},
    {"family": "ruled", "curve": "s3_great_circle", "alpha": [1, 2]},
    {"family": "product_circle_curve", "curve": "planar_ellipse", "radius": 2},
    {"family": "product_line_curve", "curve": "planar_circle"},
    {"family": "cc_product", "alpha_curve": "ads_torus_curve",
     "gamma_curve": {"name": "s3_torus_curve", "args": {"c": 0.4}}},
])
def test_spec_from_family(desc):
    spec = catalog.spec_from_family(desc)
    assert spec.family is Family(desc["family"])
    assert verify(parse_config({"surface": desc, "checks": ["lagrangian"]}))["passed"]


def test_spec_from_family_errors():
    with pytest.raises(DomainError):
        catalog.spec_from_family({"family": "nope"})
    with pytest.raises(DomainError):
        catalog.spec_from_family({"family": "centered_type1"})
