"""Ruled Lagrangian surfaces X(s, t) = t gamma(s) + V(s) over a unit-speed
Legendrian curve gamma of S^3, with V' = alpha gamma' (+ tau gamma)."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .core import (Curve, CurvePlanar, CurveS3Legendrian, DegenerateError,
                   DomainError, Family, ImmersionSpec, ResidualReport,
                   Translation, as_function, inner, norm, point)
from .cyclic import _require
from .diffgeo import _mean_curvature, first_fundamental_form, surface_jet
from .quadrature import CumulativeIntegral
from .solitons import soliton_obstruction_scan

RULING_RANGE = (-5.0, 5.0)


def _density(alpha):
    """(value, derivative) of a complex density given as a planar curve,
    a constant, a callable or an explicit pair."""
    if isinstance(alpha, Curve):
        return (lambda s: alpha(s)[0]), (lambda s: alpha(s)[1])
    return as_function(alpha, complex_valued=True)


def make_ruled(gamma: CurveS3Legendrian, alpha=0.0, s0=None, tangential=None,
               t_range=RULING_RANGE, check=True) -> ImmersionSpec:
    """X(s, t) = t gamma(s) + int_{s0}^s (alpha gamma' + tau gamma) du.

    `alpha` is the complex density x + iy; the optional real `tangential`
    density tau slides the rulings along themselves and makes the
    parametrization non-orthogonal (see orthogonalize_rulings).
    """
    if check:
        _require(gamma, CurveS3Legendrian)
    speed = norm(gamma(gamma.samples(257))[1])
    if speed.min() < 1e-12:
        raise DegenerateError("gamma' vanishes: rulings are parallel; use "
                              "make_product_line_curve")
    a, da = _density(alpha)
    tau, dtau = as_function(0.0 if tangential is None else tangential)

    def integrand(u):
        g, g1, g2 = gamma(u)
        au, dau = a(u)[..., None], da(u)[..., None]
        tu, dtu = tau(u)[..., None], dtau(u)[..., None]
        return au * g1 + tu * g, dau * g1 + au * g2 + dtu * g + tu * g1

    s0 = gamma.domain[0] if s0 is None else float(s0)
    return ImmersionSpec(Family.Ruled, gamma.domain, tuple(map(float, t_range)),
                         False, curve=gamma,
                         translation=Translation(integrand, gamma.domain, s0),
                         density=(a, da), name=f"ruled[{gamma.name}]",
                         params={"alpha": alpha, "tangential": tangential,
                                 "s0": s0})


def make_blair_helicoid(k=0.6, l=0.8, x0=1.0, y0=1.0, t_range=RULING_RANGE):
    """Ruled surface over (k + il)(cos s, sin s) with constant density
    x0 + i y0."""
    from .curves import s3_phase_great_circle
    spec = make_ruled(s3_phase_great_circle(k, l), complex(x0, y0), t_range=t_range)
    return dataclasses.replace(spec, name=f"blair_helicoid(k={k:g},l={l:g})")


def make_product_line_curve(curve: CurvePlanar, t_range=RULING_RANGE) -> ImmersionSpec:
    """X(s, t) = (t, Gamma(s)): the parallel-rulings case."""
    _require(curve, CurvePlanar)
    return ImmersionSpec(Family.ProductLineCurve, curve.domain,
                         tuple(map(float, t_range)), False, curve=curve,
                         name=f"Rx{curve.name}")


def orthogonalize_rulings(spec: ImmersionSpec) -> ImmersionSpec:
    """Reparametrize t -> t + T(s) with T' = -<X_s, X_t>, so that F = 0.

    With X_t = gamma and <gamma', gamma> = 0, T' = -tau, and the result is
    again of the plain form with density alpha + T.
    """
    if spec.family is not Family.Ruled:
        raise DomainError("orthogonalize_rulings needs a ruled spec")
    gamma = spec.curve
    tau, _ = as_function(0.0 if spec.params.get("tangential") is None
                         else spec.params["tangential"])
    lo, hi = spec.s_domain
    s0 = spec.params.get("s0", lo)
    T = CumulativeIntegral(lambda u: -tau(u), lo, hi, s0=s0)
    a, da = spec.density

    def new_a(u):
        return a(u) + T(u)

    def new_da(u):
        return da(u) - tau(u)

    out = make_ruled(gamma, (new_a, new_da), s0, None, spec.t_domain, check=False)
    return dataclasses.replace(out, name=spec.name + "^",
                               params={**out.params, "shift": T})


def ruled_mean_curvature_oracle(spec: ImmersionSpec, s, t):
    """2 <H, N_t> = -y / ((t + x)^2 + y^2) with N_t = i gamma and
    alpha = x + iy, for the orthogonal form."""
    a = spec.density[0](np.asarray(s, float))
    x, y = np.real(a), np.imag(a)
    return -y / ((t + x) ** 2 + y ** 2)


def ruled_h_nt(spec, s, t):
    """2 <H, i gamma(s)> from the engine."""
    jet = surface_jet(spec, s, t)
    h = _mean_curvature(jet, first_fundamental_form(jet))
    return 2 * inner(h, 1j * spec.curve(np.broadcast_to(s, np.shape(jet.x)[:-1]))[0])


@dataclass(frozen=True)
class RuledObstruction:
    x_nt_variation: float
    h_nt_spread: float
    scan_min_max: float
    best_lambda: float
    reports: tuple


def ruled_soliton_obstruction(spec, lambdas, grid=None, convention="half") -> RuledObstruction:
    """<X, N_t> is constant along each ruling while <H, N_t> is not, so no
    lambda balances them. Returns the largest along-ruling variation of
    <X, N_t>, the smallest along-ruling spread of <H, N_t> and the soliton
    scan."""
    if spec.family is not Family.Ruled:
        raise DomainError("ruled_soliton_obstruction needs a ruled spec")
    grid = spec.default_grid(32, 32) if grid is None else grid
    S, T = grid.mesh()
    jet = surface_jet(spec, S, T)
    nt = 1j * spec.curve(S)[0]
    x_nt = inner(jet.x, nt)
    h_nt = inner(_mean_curvature(jet, first_fundamental_form(jet)), nt)
    scan = soliton_obstruction_scan(spec, lambdas, grid, convention)
    return RuledObstruction(float(np.max(np.var(x_nt, axis=1))),
                            float(np.min(np.ptp(h_nt, axis=1))),
                            scan.min_max, scan.best_lambda, scan.reports)
