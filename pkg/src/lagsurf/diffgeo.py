"""Jets of every surface family and the geometry computed from them:
metric, normal frame, mean curvature, Lagrangian angle and the
Laplace-Beltrami operator applied to it."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import (DegenerateError, DomainError, Family, Grid, Metric2,
                   ResidualReport, SurfaceJet, det_c, inner, norm, omega,
                   point)

_DOMAIN_SLACK = 1e-9


def _check_domain(spec, s, t):
    lo, hi = spec.s_domain
    slack = _DOMAIN_SLACK * max(1.0, hi - lo)
    if np.any(s < lo - slack) or np.any(s > hi + slack):
        raise DomainError(f"s outside {spec.s_domain} for {spec.family.value}")
    if not spec.t_periodic:
        lo, hi = spec.t_domain
        slack = _DOMAIN_SLACK * max(1.0, hi - lo)
        if np.any(t < lo - slack) or np.any(t > hi + slack):
            raise DomainError(f"t outside {spec.t_domain} for {spec.family.value}")


def _type1(spec, s, t):
    g, g1, g2 = (z[..., None] for z in spec.curve(s))
    u, du = point(np.cos(t), np.sin(t)), point(-np.sin(t), np.cos(t))
    return g * u, g1 * u, g * du, g2 * u, g1 * du, -g * u


def _type2(spec, s, t):
    g, g1, g2 = spec.curve(s)
    e = spec.c * np.exp(1j * t)[..., None]
    return e * g, e * g1, 1j * e * g, e * g2, 1j * e * g1, -e * g


def _type3(spec, s, t):
    a, a1, a2 = spec.curve(s)
    e = spec.c * point(np.exp(1j * t), np.exp(-1j * t))
    ie = e * np.array([1j, -1j])
    x = a * e
    return x, a1 * e, a * ie, a2 * e, a1 * ie, -x


def _ruled(spec, s, t):
    g, g1, g2 = spec.curve(s)
    tt = t[..., None]
    zero = np.zeros_like(g)
    return g * tt, g1 * tt, g, g2 * tt, g1, zero


def _product_circle(spec, s, t):
    g, g1, g2 = spec.curve(s)
    e = spec.radius * np.exp(1j * t)
    zs, zt = np.zeros_like(g), np.zeros_like(e)
    return (point(e, g), point(zs, g1), point(1j * e, zs), point(zs, g2),
            point(zs, zt), point(-e, zs))


def _product_line(spec, s, t):
    g, g1, g2 = spec.curve(s)
    zs = np.zeros_like(g)
    zt = np.zeros_like(t, dtype=complex)
    return (point(t, g), point(zs, g1), point(zt + 1, zs), point(zs, g2),
            point(zs, zt), point(zs, zt))


def _cc_product(spec, s, t):
    a, a1, a2 = spec.curve(s)
    g, g1, g2 = spec.curve2(t)
    return a * g, a1 * g, a * g1, a2 * g, a1 * g1, a * g2


_BUILDERS = {
    Family.CenteredType1: _type1, Family.GeneralType1: _type1,
    Family.CenteredType2: _type2, Family.GeneralType2: _type2,
    Family.CenteredType3: _type3, Family.GeneralType3: _type3,
    Family.Ruled: _ruled,
    Family.ProductCircleCurve: _product_circle,
    Family.ProductLineCurve: _product_line,
    Family.CCProduct: _cc_product,
}


def surface_jet(spec, s, t) -> SurfaceJet:
    """Analytic jet (X, X_s, X_t, X_ss, X_st, X_tt) of `spec` at (s, t).

    s and t broadcast against each other; every jet component has shape
    broadcast(s, t) + (2,). The translation term, if any, comes from its
    cached cumulative quadrature.
    """
    s, t = np.broadcast_arrays(np.asarray(s, float), np.asarray(t, float))
    _check_domain(spec, s, t)
    x, xs, xt, xss, xst, xtt = _BUILDERS[spec.family](spec, s, t)
    if spec.translation is not None:
        v, v1, v2 = spec.translation(s)
        x, xs, xss = x + v, xs + v1, xss + v2
    return SurfaceJet(x, xs, xt, xss, xst, xtt)


def grid_jet(spec, grid: Grid) -> SurfaceJet:
    S, T = grid.mesh()
    return surface_jet(spec, S, T)


def first_fundamental_form(jet: SurfaceJet) -> Metric2:
    return Metric2(inner(jet.xs, jet.xs), inner(jet.xs, jet.xt),
                   inner(jet.xt, jet.xt))


def tangential_part(jet, metric, v):
    """Orthogonal projection of v onto span(X_s, X_t)."""
    a, b = inner(v, jet.xs), inner(v, jet.xt)
    det = metric.det
    cs = (metric.g * a - metric.f * b) / det
    ct = (metric.e * b - metric.f * a) / det
    return cs[..., None] * jet.xs + ct[..., None] * jet.xt


def normal_part(jet, metric, v):
    return v - tangential_part(jet, metric, v)


def _mean_curvature(jet, metric):
    det = np.where(metric.det > 0, metric.det, np.nan)
    trace = (metric.g[..., None] * jet.xss + metric.e[..., None] * jet.xtt
             - 2 * metric.f[..., None] * jet.xst) / (2 * det[..., None])
    return normal_part(jet, Metric2(metric.e, metric.f, metric.g), trace)


def mean_curvature(jet: SurfaceJet, metric: Metric2 | None = None):
    """Mean curvature vector H, half the trace of the second fundamental
    form: the normal part of (G X_ss + E X_tt - 2F X_st) / (2(EG - F^2))."""
    metric = first_fundamental_form(jet) if metric is None else metric
    if np.any(metric.degenerate):
        raise DegenerateError("mean curvature requested at a degenerate point")
    return _mean_curvature(jet, metric)


@dataclass(frozen=True, eq=False)
class NormalFrame:
    n1: np.ndarray
    n2: np.ndarray


def normal_frame(jet: SurfaceJet) -> NormalFrame:
    """(J X_s, J X_t) Gram-Schmidt orthonormalized; a normal frame when the
    surface is Lagrangian."""
    n1 = 1j * jet.xs / norm(jet.xs)[..., None]
    w = 1j * jet.xt
    w = w - inner(w, n1)[..., None] * n1
    return NormalFrame(n1, w / norm(w)[..., None])


def tangent_frame(jet: SurfaceJet):
    e1 = jet.xs / norm(jet.xs)[..., None]
    w = jet.xt - inner(jet.xt, e1)[..., None] * e1
    return e1, w / norm(w)[..., None]


def lagrangian_angle(jet: SurfaceJet, tol=1e-6):
    """Lagrangian angle beta in (-pi, pi], from det_C(e1, e2) = e^{i beta}
    for the Gram-Schmidt frame of (X_s, X_t)."""
    e1, e2 = tangent_frame(jet)
    d = det_c(e1, e2)
    if np.any(np.abs(np.abs(d) - 1) > tol):
        raise DomainError("tangent plane is not Lagrangian; |det| != 1")
    return np.angle(d)


def kahler_angle(e1, e2, tol=1e-8):
    """K = <e1, J e2> for an orthonormal pair; 0 on Lagrangian planes and
    -1/+1 on complex lines."""
    e1, e2 = np.asarray(e1, complex), np.asarray(e2, complex)
    if (np.any(np.abs(norm(e1) - 1) > tol) or np.any(np.abs(norm(e2) - 1) > tol)
            or np.any(np.abs(inner(e1, e2)) > tol)):
        raise DomainError("kahler_angle needs an orthonormal pair")
    return inner(e1, 1j * e2)


def lagrangian_residual(spec, grid: Grid | None = None) -> ResidualReport:
    """|omega(X_s, X_t)| / (|X_s||X_t|) over the grid."""
    grid = spec.default_grid() if grid is None else grid
    S, T = grid.mesh()
    jet = surface_jet(spec, S, T)
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.abs(omega(jet.xs, jet.xt)) / (norm(jet.xs) * norm(jet.xt))
    return ResidualReport.from_values("lagrangian", r, S, T, grid.describe())


# ---------------------------------------------------------------------------
# Lagrangian angle derivatives and the Laplace-Beltrami residual

@dataclass(frozen=True, eq=False)
class BetaField:
    s: np.ndarray
    t: np.ndarray
    beta_s: np.ndarray
    beta_t: np.ndarray
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray
    periodic_t: bool
    excluded: tuple = ()


def beta_derivative_field(spec, grid: Grid) -> BetaField:
    """beta_s, beta_t on the grid as Im(d log det_C(X_s, X_t)).

    The real positive factor between det_C(X_s, X_t) and det_C(e1, e2) only
    affects the real part of the logarithmic derivative, so no unwrapping of
    beta is needed.
    """
    S, T = grid.mesh()
    jet = surface_jet(spec, S, T)
    metric = first_fundamental_form(jet)
    d = det_c(jet.xs, jet.xt)
    ds = det_c(jet.xss, jet.xt) + det_c(jet.xs, jet.xst)
    dt = det_c(jet.xst, jet.xt) + det_c(jet.xs, jet.xtt)
    scale = norm(jet.xs) * norm(jet.xt)
    bad = ~(metric.det > 1e-14 * np.maximum(scale, 1e-300) ** 2) | ~(np.abs(d) > 0)
    excluded = tuple(zip(S[bad].tolist(), T[bad].tolist()))
    if excluded:
        warnings.warn(f"{len(excluded)} degenerate grid points excluded",
                      RuntimeWarning, stacklevel=2)
    with np.errstate(invalid="ignore", divide="ignore"):
        bs = np.where(bad, np.nan, np.imag(ds / d))
        bt = np.where(bad, np.nan, np.imag(dt / d))
    return BetaField(grid.s, grid.t, bs, bt, metric.e, metric.f, metric.g,
                     grid.periodic_t, excluded)


def laplacian_values(field: BetaField):
    """Divergence-form Laplace-Beltrami of beta by second-order central
    differences on the interior nodes, with the full inverse metric.

    Returns (values, s_nodes, t_nodes) restricted to the interior.
    """
    if len(field.s) < 16 or len(field.t) < 16:
        raise DomainError("grid too coarse for the Laplace-Beltrami residual "
                          "(need at least 16 x 16)")
    e, f, g = field.e, field.f, field.g
    with np.errstate(invalid="ignore", divide="ignore"):
        det = e * g - f * f
        root = np.sqrt(det)
        flux_s = root * (g * field.beta_s - f * field.beta_t) / det
        flux_t = root * (e * field.beta_t - f * field.beta_s) / det
    hs = field.s[1] - field.s[0]
    div = np.full_like(flux_s, np.nan)
    div[1:-1] = (flux_s[2:] - flux_s[:-2]) / (2 * hs)
    if field.periodic_t:
        ht = field.t[1] - field.t[0]
        div = div + (np.roll(flux_t, -1, axis=1) - np.roll(flux_t, 1, axis=1)) / (2 * ht)
        cols = slice(None)
    else:
        ht = field.t[1] - field.t[0]
        div[:, 1:-1] += (flux_t[:, 2:] - flux_t[:, :-2]) / (2 * ht)
        div[:, [0, -1]] = np.nan
        cols = slice(1, -1)
    with np.errstate(invalid="ignore", divide="ignore"):
        lap = div / root
    return lap[1:-1, cols], field.s[1:-1], field.t[cols]


def laplace_beltrami_beta(field: BetaField) -> ResidualReport:
    lap, s, t = laplacian_values(field)
    S, T = np.meshgrid(s, t, indexing="ij")
    grid = (len(field.s), len(field.t), (float(field.s[0]), float(field.s[-1])),
            (float(field.t[0]), float(field.t[-1])))
    return ResidualReport.from_values("laplace_beltrami_beta", lap, S, T, grid)
