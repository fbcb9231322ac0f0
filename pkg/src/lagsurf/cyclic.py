"""Constructors for the centered and general cyclic families, circle frames
of the leaves and the r^2 K invariant."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (ConstraintError, CurveAdSLegendrian, CurvePlanar,
                   CurveS3Legendrian, DegenerateError, DomainError, Family,
                   ImmersionSpec, ResidualReport, Translation, as_function,
                   curve_constraint_residual, norm, point)
from .diffgeo import kahler_angle, surface_jet

CONSTRAINT_TOL = 1e-6


def _require(curve, kind):
    if not isinstance(curve, kind):
        raise TypeError(f"expected {kind.__name__}, got {type(curve).__name__}")
    if isinstance(curve, CurvePlanar):
        return
    report = curve_constraint_residual(curve, 256)
    if report.max_abs > CONSTRAINT_TOL:
        raise ConstraintError(
            f"{curve.name or kind.__name__} violates its constraints by "
            f"{report.max_abs:.3e} at s={report.argmax[0]:.6g}")


def _nonzero(c):
    if not (np.isfinite(c) and c != 0):
        raise ValueError("scale constant c must be finite and nonzero")
    return float(c)


def _base_point(curve, s0):
    return curve.domain[0] if s0 is None else float(s0)


# type I ---------------------------------------------------------------------

def make_centered_type1(gamma: CurvePlanar) -> ImmersionSpec:
    """X(s, t) = gamma(s) (cos t, sin t)."""
    _require(gamma, CurvePlanar)
    probe = np.abs(gamma.value(gamma.samples(1025)))
    if probe.min() <= 1e-12:
        raise DegenerateError("profile curve passes through the origin: "
                              "degenerate leaf")
    return ImmersionSpec(Family.CenteredType1, gamma.domain, curve=gamma,
                         name=f"centered_type1[{gamma.name}]")


def make_general_type1(gamma: CurvePlanar, W1, W2, s0=None) -> ImmersionSpec:
    """Centered type I plus V(s) = int_{s0}^s e^{i phi}(W1, W2) du, where
    e^{i phi} = gamma / |gamma| and W1, W2 are real."""
    base = make_centered_type1(gamma)
    w1, dw1 = as_function(W1)
    w2, dw2 = as_function(W2)

    def integrand(u):
        g, g1, _ = gamma(u)
        phase = (g / np.abs(g))[..., None]
        dphi = np.imag(g1 / g)[..., None]
        w = point(w1(u), w2(u))
        dw = point(dw1(u), dw2(u))
        return phase * w, 1j * dphi * phase * w + phase * dw

    s0 = _base_point(gamma, s0)
    return ImmersionSpec(Family.GeneralType1, base.s_domain, curve=gamma,
                         translation=Translation(integrand, gamma.domain, s0),
                         name=f"general_type1[{gamma.name}]",
                         params={"W1": W1, "W2": W2, "s0": s0})


# type II --------------------------------------------------------------------

def make_centered_type2(gamma: CurveS3Legendrian, c: float = 1.0) -> ImmersionSpec:
    """X(s, t) = c e^{it} (gamma_1(s), gamma_2(s))."""
    _require(gamma, CurveS3Legendrian)
    return ImmersionSpec(Family.CenteredType2, gamma.domain, curve=gamma,
                         c=_nonzero(c), name=f"centered_type2[{gamma.name}]")


def make_general_type2(gamma: CurveS3Legendrian, c: float, W, s0=None,
                       alt_form: bool = False) -> ImmersionSpec:
    """Centered type II plus a translation along the complex line orthogonal
    to gamma.

    The default translation is int W (conj gamma_2, -conj gamma_1) du. With
    `alt_form` it is int W gamma' du instead, which spans the same
    orthogonal line when gamma is regular and unit speed.
    """
    base = make_centered_type2(gamma, c)
    w, dw = as_function(W, complex_valued=True)
    if alt_form:
        def integrand(u):
            _, g1, g2 = gamma(u)
            return w(u)[..., None] * g1, dw(u)[..., None] * g1 + w(u)[..., None] * g2
    else:
        def integrand(u):
            g, g1, _ = gamma(u)
            perp = point(np.conj(g[..., 1]), -np.conj(g[..., 0]))
            dperp = point(np.conj(g1[..., 1]), -np.conj(g1[..., 0]))
            return (w(u)[..., None] * perp,
                    dw(u)[..., None] * perp + w(u)[..., None] * dperp)

    s0 = _base_point(gamma, s0)
    return ImmersionSpec(Family.GeneralType2, base.s_domain, curve=gamma,
                         c=base.c,
                         translation=Translation(integrand, gamma.domain, s0),
                         name=f"general_type2[{gamma.name}]",
                         params={"W": W, "s0": s0, "alt_form": alt_form})


# type III -------------------------------------------------------------------

def make_centered_type3(alpha: CurveAdSLegendrian, c: float = 1.0) -> ImmersionSpec:
    """X(s, t) = c (alpha_1(s) e^{it}, alpha_2(s) e^{-it})."""
    _require(alpha, CurveAdSLegendrian)
    return ImmersionSpec(Family.CenteredType3, alpha.domain, curve=alpha,
                         c=_nonzero(c), name=f"centered_type3[{alpha.name}]")


def make_general_type3(alpha: CurveAdSLegendrian, c: float, W, s0=None) -> ImmersionSpec:
    """Centered type III plus V(s) = int (W |alpha_2|^2, conj(W) alpha_1
    alpha_2) du."""
    base = make_centered_type3(alpha, c)
    w, dw = as_function(W, complex_valued=True)

    def integrand(u):
        a, a1, _ = alpha(u)
        wu, dwu = w(u), dw(u)
        m2 = np.abs(a[..., 1]) ** 2
        dm2 = 2 * np.real(a1[..., 1] * np.conj(a[..., 1]))
        prod = a[..., 0] * a[..., 1]
        dprod = a1[..., 0] * a[..., 1] + a[..., 0] * a1[..., 1]
        return (point(wu * m2, np.conj(wu) * prod),
                point(dwu * m2 + wu * dm2, np.conj(dwu) * prod + np.conj(wu) * dprod))

    s0 = _base_point(alpha, s0)
    return ImmersionSpec(Family.GeneralType3, base.s_domain, curve=alpha,
                         c=base.c,
                         translation=Translation(integrand, alpha.domain, s0),
                         name=f"general_type3[{alpha.name}]",
                         params={"W": W, "s0": s0})


# leaves ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CircleFrame:
    center: np.ndarray
    radius: float
    e1: np.ndarray
    e2: np.ndarray
    roundness: float


def _center(spec, s):
    if spec.family is Family.ProductCircleCurve:
        return point(0.0, spec.curve.value(s))
    if spec.translation is not None:
        return spec.translation(s)[0]
    return np.zeros(np.shape(s) + (2,), complex)


def circle_frame(spec: ImmersionSpec, s: float, n_check: int = 64) -> CircleFrame:
    """Center, radius and orthonormal plane basis of the leaf through s."""
    if not spec.cyclic:
        raise DomainError(f"{spec.family.value} surfaces are not foliated by circles")
    s = float(s)
    center = _center(spec, s)
    x0 = surface_jet(spec, s, 0.0).x - center
    x1 = surface_jet(spec, s, np.pi / 2).x - center
    r = float(norm(x0))
    if not r > 0:
        raise DegenerateError(f"leaf at s={s} collapses to a point")
    t = np.linspace(0, 2 * np.pi, n_check, endpoint=False)
    ring = norm(surface_jet(spec, np.full_like(t, s), t).x - center)
    return CircleFrame(center, r, x0 / r, x1 / r, float(np.max(np.abs(ring - r))))


def r2K_invariant(spec: ImmersionSpec, n_samples: int = 64) -> ResidualReport:
    """Deviation of r(s)^2 K(s) from its mean over uniform stations; the mean
    is kept as the report's reference value."""
    stations = np.linspace(*spec.s_domain, n_samples)
    values = []
    for s in stations:
        fr = circle_frame(spec, s)
        values.append(fr.radius ** 2 * float(kahler_angle(fr.e1, fr.e2)))
    values = np.array(values)
    mean = float(values.mean())
    return ResidualReport.from_values("r2K", values - mean, stations,
                                      reference=mean)
