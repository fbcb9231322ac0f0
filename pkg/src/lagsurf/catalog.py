"""Named example surfaces and a small registry of generating curves, both
addressable from JSON configs by name plus numeric arguments."""

from __future__ import annotations

import dataclasses
import inspect
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import curves
from .core import DomainError, Family, ImmersionSpec
from .cyclic import (make_centered_type1, make_centered_type2,
                     make_centered_type3, make_general_type1,
                     make_general_type2, make_general_type3)
from .hamstat import build_closed_hs_curve, make_contact_stationary_hopf
from .ruled import make_blair_helicoid, make_product_line_curve, make_ruled
from .solitons import (cc_product_immersion, make_product_circle_curve,
                       shoot_closed_profile)


@dataclass(frozen=True)
class Entry:
    name: str
    builder: object
    anchor: str
    description: str
    checks: tuple = ("lagrangian",)

    @property
    def defaults(self):
        sig = inspect.signature(self.builder)
        return {k: p.default for k, p in sig.parameters.items()}

    def build(self, **args):
        unknown = set(args) - set(self.defaults)
        if unknown:
            raise DomainError(f"{self.name} has no argument(s) {sorted(unknown)}")
        spec = self.builder(**{k: float(v) if isinstance(self.defaults[k], float) else v
                               for k, v in args.items()})
        return dataclasses.replace(spec, name=self.name + _arg_suffix(args))

    def index(self):
        return {"name": self.name, "anchor": self.anchor,
                "description": self.description, "defaults": self.defaults,
                "checks": list(self.checks)}


def _arg_suffix(args):
    if not args:
        return ""
    return "(" + ",".join(f"{k}={v:g}" if isinstance(v, (int, float)) else f"{k}={v}"
                          for k, v in sorted(args.items())) + ")"


# builders ---------------------------------------------------------------------

def clifford_torus():
    return make_centered_type2(curves.s3_hopf_circle(), 1.0)


def product_circles(r1=1.0, r2=2.0):
    return make_product_circle_curve(r1, curves.planar_circle(r2))


def hopf_contact_stationary(c=0.6):
    return make_contact_stationary_hopf(c)


@lru_cache(maxsize=32)
def _hs_curve(p, q):
    return build_closed_hs_curve(p, q).curve


def hs_closed(p=1, q=1):
    return make_centered_type1(_hs_curve(int(p), int(q)))


@lru_cache(maxsize=32)
def _soliton_curve(p, q, kind):
    return shoot_closed_profile(p, q, kind).curve


def centered_selfsimilar(p=1, q=3):
    return make_centered_type1(_soliton_curve(int(p), int(q), "centered"))


def ads_hyperbola_type3(c=1.0):
    return make_centered_type3(curves.ads_hyperbola(), c)


def blair_helicoid(k=0.6, l=0.8, x0=1.0, y0=1.0):
    return make_blair_helicoid(k, l, x0, y0)


def general_type1_demo(w1=1.0, w2=0.0):
    return make_general_type1(curves.planar_circle(), w1, w2)


def cc_product(rho=0.5, c=0.6):
    return cc_product_immersion(curves.ads_torus_curve(rho), curves.s3_torus_curve(c))


def general_type2_demo(c=0.6, w=0.5):
    return make_general_type2(curves.s3_torus_curve(c), 1.0,
                              lambda u: w * np.exp(1j * u))


def general_type2_alt(c=0.6, w=0.5):
    return make_general_type2(curves.s3_torus_curve(c), 1.0,
                              lambda u: w * np.exp(1j * u), alt_form=True)


def general_type3_demo(w=1.0):
    return make_general_type3(curves.ads_hyperbola(), 1.0, w)


def spiral_type1():
    return make_centered_type1(curves.planar_spiral())


def line_times_circle(r=1.0):
    return make_product_line_curve(curves.planar_circle(r))


def circle_times_shrinker(r=1.0, p=2, q=3):
    return make_product_circle_curve(r, _soliton_curve(int(p), int(q), "shrinker"))


def ruled_great_circle():
    return make_ruled(curves.s3_great_circle(domain=(0.0, 1.0)),
                      (lambda u: u + 0j, lambda u: 1.0 + 0j * u))


ENTRIES = (
    Entry("clifford_torus", clifford_torus, "Clifford torus as a Hopf torus",
          "c e^{it}(e^{is}, e^{-is})/sqrt(2): minimal in S^3, self-similar, "
          "Hamiltonian stationary",
          ("lagrangian", "self_similar", "hamiltonian_stationary", "r2K", "constraints")),
    Entry("product_circles", product_circles, "Cartesian product of two round circles",
          "S^1(r1) x S^1(r2)", ("lagrangian", "hamiltonian_stationary", "r2K")),
    Entry("hopf_contact_stationary", hopf_contact_stationary,
          "contact stationary Hopf torus",
          "centered type II over a Legendrian torus curve of S^3",
          ("lagrangian", "hamiltonian_stationary", "r2K", "constraints")),
    Entry("hs_closed", hs_closed, "closed q-symmetric Hamiltonian stationary profile",
          "centered type I over the closed profile with Phi(C) = 2 pi p / q",
          ("lagrangian", "hamiltonian_stationary", "r2K")),
    Entry("centered_selfsimilar", centered_selfsimilar,
          "centered type I self-similar profile with p/q in (1/4, 1/2)",
          "centered type I over a closed shooting solution of the profile law",
          ("lagrangian", "self_similar", "r2K")),
    Entry("ads_hyperbola_type3", ads_hyperbola_type3,
          "centered type III over the anti-de Sitter hyperbola",
          "c (sinh s e^{it}, cosh s e^{-it}); special Lagrangian",
          ("lagrangian", "r2K", "constraints")),
    Entry("blair_helicoid", blair_helicoid, "Lagrangian helicoid",
          "ruled over (k + il)(cos s, sin s) with constant density x0 + i y0",
          ("lagrangian", "constraints")),
    Entry("general_type1_demo", general_type1_demo,
          "general type I with translation term",
          "e^{is}(cos t, sin t) + int e^{iu}(W1, W2) du", ("lagrangian", "r2K")),
    Entry("cc_product", cc_product, "product of Legendrian curves of H^3_1 and S^3",
          "(a1(s) g1(t), a2(s) g2(t))", ("lagrangian", "constraints")),
    Entry("general_type2_demo", general_type2_demo,
          "general type II with translation along the orthogonal complex line",
          "Hopf torus over a torus curve plus int W (conj g2, -conj g1) du",
          ("lagrangian", "r2K", "constraints")),
    Entry("general_type2_alt", general_type2_alt,
          "general type II, translation along the curve's tangent",
          "Hopf torus over a torus curve plus int W g' du",
          ("lagrangian", "r2K", "constraints")),
    Entry("general_type3_demo", general_type3_demo, "general type III with translation term",
          "hyperbola type III plus int (W |a2|^2, conj(W) a1 a2) du",
          ("lagrangian", "r2K", "constraints")),
    Entry("spiral_type1", spiral_type1, "complex extensor over a non-solution spiral",
          "(1 + s) e^{is}(cos t, sin t); Lagrangian but not Hamiltonian stationary",
          ("lagrangian", "r2K")),
    Entry("line_times_circle", line_times_circle, "product of a line and a planar curve",
          "(t, r e^{is/r})", ("lagrangian",)),
    Entry("circle_times_shrinker", circle_times_shrinker,
          "product of a circle and a closed self-shrinking curve",
          "S^1(r) x Abresch-Langer curve with rotation p/q", ("lagrangian", "self_similar")),
    Entry("ruled_great_circle", ruled_great_circle, "ruled surface with linear density",
          "t (cos s, sin s) + int u (-sin u, cos u) du", ("lagrangian", "constraints")),
)

CATALOG = {e.name: e for e in ENTRIES}


def get(name) -> Entry:
    try:
        return CATALOG[name]
    except KeyError:
        raise DomainError(f"unknown catalog entry {name!r}; known: "
                          f"{', '.join(CATALOG)}") from None


def build(name, **args) -> ImmersionSpec:
    return get(name).build(**args)


# generating curves by name -----------------------------------------------------

CURVES = {
    "planar_circle": curves.planar_circle,
    "planar_line": curves.planar_line,
    "planar_ellipse": curves.planar_ellipse,
    "planar_spiral": curves.planar_spiral,
    "s3_great_circle": curves.s3_great_circle,
    "s3_hopf_circle": curves.s3_hopf_circle,
    "s3_torus_curve": curves.s3_torus_curve,
    "s3_phase_great_circle": curves.s3_phase_great_circle,
    "s3_point": curves.s3_point,
    "ads_hyperbola": curves.ads_hyperbola,
    "ads_torus_curve": curves.ads_torus_curve,
    "ads_point": curves.ads_point,
    "hs_profile": lambda p=1, q=1: _hs_curve(int(p), int(q)),
    "selfsimilar_profile": lambda p=1, q=3: _soliton_curve(int(p), int(q), "centered"),
    "shrinker_profile": lambda p=2, q=3: _soliton_curve(int(p), int(q), "shrinker"),
}


def curve_from(desc):
    """{"name": ..., "args": {...}} -> curve."""
    if isinstance(desc, str):
        desc = {"name": desc}
    name = desc.get("name")
    if name not in CURVES:
        raise DomainError(f"unknown curve {name!r}; known: {', '.join(CURVES)}")
    args = desc.get("args", {})
    if "domain" in args:
        args = {**args, "domain": tuple(args["domain"])}
    try:
        return CURVES[name](**args)
    except TypeError as exc:
        raise DomainError(f"bad arguments for curve {name!r}: {exc}") from None


def _complex(v):
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def spec_from_family(desc) -> ImmersionSpec:
    """Build a spec from {"family": ..., "curve": ..., ...}; coefficient
    functions are constants (W as a number or [re, im])."""
    try:
        family = Family(desc["family"])
    except (KeyError, ValueError):
        raise DomainError(f"unknown or missing family {desc.get('family')!r}") from None
    c = float(desc.get("c", 1.0))
    curve = curve_from(desc["curve"]) if "curve" in desc else None
    if curve is None and family is not Family.CCProduct:
        raise DomainError(f"family {family.value} needs a curve")
    s0 = desc.get("s0")
    if family is Family.CenteredType1:
        return make_centered_type1(curve)
    if family is Family.GeneralType1:
        return make_general_type1(curve, float(desc.get("W1", 0.0)),
                                  float(desc.get("W2", 0.0)), s0)
    if family is Family.CenteredType2:
        return make_centered_type2(curve, c)
    if family is Family.GeneralType2:
        return make_general_type2(curve, c, _complex(desc.get("W", 0.0)), s0,
                                  bool(desc.get("alt_form", False)))
    if family is Family.CenteredType3:
        return make_centered_type3(curve, c)
    if family is Family.GeneralType3:
        return make_general_type3(curve, c, _complex(desc.get("W", 0.0)), s0)
    if family is Family.Ruled:
        return make_ruled(curve, _complex(desc.get("alpha", 0.0)), s0)
    if family is Family.ProductCircleCurve:
        return make_product_circle_curve(float(desc.get("radius", 1.0)), curve)
    if family is Family.ProductLineCurve:
        return make_product_line_curve(curve)
    if family is Family.CCProduct:
        return cc_product_immersion(curve_from(desc["alpha_curve"]),
                                    curve_from(desc["gamma_curve"]))
    raise DomainError(f"family {family.value} cannot be built from a config")
