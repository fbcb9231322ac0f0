"""Self-similar solutions of mean curvature flow, H + lambda X^perp = 0.

Surface residuals, planar curves driven by a curvature law, shooting for
closed profiles, products with a circle and products of a Legendrian curve
of S^3 with one of anti-de Sitter space.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from . import profile
from .core import (CurveAdSLegendrian, CurvePlanar, CurveS3Legendrian,
                   DegenerateError, DomainError, Family, ImmersionSpec,
                   ResidualReport, inner, norm, pmap)
from .cyclic import _require
from .diffgeo import (_mean_curvature, first_fundamental_form, normal_part,
                      surface_jet)

CONVENTIONS = ("half", "full")


@dataclass(frozen=True)
class SolitonParams:
    """lam > 0 for shrinkers, lam < 0 for expanders.

    With convention "half" the equation is H + lam X^perp = 0 where H is the
    mean (half trace) curvature vector; with "full" it is 2H + lam X^perp =
    0. A planar circle of radius r solves the curve equation at lam = 1/r^2;
    the product of two circles of radius r solves the half form at
    lam = 1/(2 r^2) and the full form at lam = 1/r^2.
    """

    lam: float
    convention: str = "half"

    def __post_init__(self):
        if not (np.isfinite(self.lam) and self.lam != 0):
            raise ValueError("lambda must be finite and nonzero")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}")

    @property
    def trace_factor(self):
        return 1.0 if self.convention == "half" else 2.0


def self_similar_values(spec, params: SolitonParams, grid=None):
    grid = spec.default_grid() if grid is None else grid
    S, T = grid.mesh()
    jet = surface_jet(spec, S, T)
    metric = first_fundamental_form(jet)
    with np.errstate(invalid="ignore", divide="ignore"):
        h = _mean_curvature(jet, metric)
        xperp = normal_part(jet, metric, jet.x)
        vals = norm(params.trace_factor * h + params.lam * xperp)
    bad = ~np.isfinite(vals)
    if bad.any():
        warnings.warn(f"{int(bad.sum())} degenerate grid points excluded",
                      RuntimeWarning, stacklevel=3)
    return vals, S, T, grid


def self_similar_residual(spec, params: SolitonParams, grid=None) -> ResidualReport:
    """Pointwise |H + lam X^perp| over the grid (X^perp: normal part of X)."""
    vals, S, T, grid = self_similar_values(spec, params, grid)
    return ResidualReport.from_values(f"self_similar[{params.lam:g},{params.convention}]",
                                      vals, S, T, grid.describe())


# ---------------------------------------------------------------------------
# curvature laws for planar curves; each maps (position, tangent, normal)
# to the signed curvature k = <gamma'', N> with N = i gamma'

def shrinker_law(lam=1.0):
    """k + lam <X, N> = 0."""

    def law(x, tangent, normal):
        return -lam * inner_c(x, normal)

    return law


def centered_law(lam=1.0, convention="half"):
    """Profile law of a centered type I soliton:
    k = <gamma, N>(1/|gamma|^2 - 2 lam) for the half-trace convention and
    k = <gamma, N>(1/|gamma|^2 - lam) for the full-trace one."""
    mult = 2.0 if SolitonParams(lam, convention).convention == "half" else 1.0

    def law(x, tangent, normal):
        return inner_c(x, normal) * (1.0 / np.abs(x) ** 2 - mult * lam)

    return law


def inner_c(a, b):
    return np.real(a * np.conj(b))


def planar_curve_from_curvature_law(law, initial, s_range, tol=1e-10,
                                    min_radius=1e-8, max_curvature=1e8,
                                    name="") -> CurvePlanar:
    """Unit-speed curve with gamma' = e^{i theta}, theta' = law(gamma, T, N).

    `initial` is (position, angle). If the curve runs into the origin or its
    curvature blows up, the domain is truncated there and the reason is put
    in the curve's note.
    """
    z0, theta0 = initial
    lo, hi = map(float, s_range)

    def kappa(y):
        x = y[0] + 1j * y[1]
        e = np.exp(1j * y[2])
        return law(x, e, 1j * e)

    def rhs(s, y):
        return np.array([np.cos(y[2]), np.sin(y[2]), kappa(y)])

    def hit_origin(s, y):
        return np.hypot(y[0], y[1]) - min_radius

    def blow_up(s, y):
        return max_curvature - abs(kappa(y))

    hit_origin.terminal = blow_up.terminal = True
    sol = solve_ivp(rhs, (lo, hi), [np.real(z0), np.imag(z0), theta0],
                    method="DOP853", rtol=tol, atol=tol * 1e-2,
                    dense_output=True, events=[hit_origin, blow_up],
                    max_step=(hi - lo) / 64)  # events are sign checks at step ends
    if sol.status < 0:
        raise DegenerateError(f"curve integration failed: {sol.message}")
    end, note = hi, ""
    if sol.status == 1:
        end = float(sol.t[-1])
        why = "origin crossing" if len(sol.t_events[0]) else "curvature blow-up"
        note = f"truncated at s={end:.12g}: {why}"
        if not end > lo:
            raise DegenerateError(f"curve degenerates immediately ({why})")

    def fn(s):
        s = np.asarray(s, float)
        y = sol.sol(s.ravel())
        k = kappa(y).reshape(s.shape)
        x = (y[0] + 1j * y[1]).reshape(s.shape)
        e = np.exp(1j * y[2]).reshape(s.shape)
        return x, e, 1j * k * e

    return CurvePlanar(fn, (lo, end), True, name or "law_curve", note)


# ---------------------------------------------------------------------------
# closed profiles by shooting on the initial radius

def _law_dalpha(kind, lam, convention="half"):
    """alpha' for the polar form of a law, alpha' = k - sin(alpha)/r.

    shrinker: k = lam r sin(alpha). centered: k = -r sin(alpha)(1/r^2 - m lam)
    with m = 2 (half) or 1 (full).
    """
    if kind == "shrinker":
        return lambda r, a: np.sin(a) * (lam * r - 1.0 / r)
    if kind == "centered":
        m = 2.0 if convention == "half" else 1.0
        return lambda r, a: np.sin(a) * (m * lam * r - 2.0 / r)
    raise ValueError(f"unknown law {kind!r}")


def _fixed_radius(kind, lam, convention):
    if kind == "shrinker":
        return 1.0 / np.sqrt(lam)
    m = 2.0 if convention == "half" else 1.0
    return np.sqrt(2.0 / (m * lam))


def rotation_per_period(kind, lam, r0, convention="half"):
    """(period, rotation) of the profile started at (r0, pi/2): the increase
    of phi over one period of alpha, divided by 2 pi."""
    rhs = profile.polar_rhs(_law_dalpha(kind, lam, convention))
    y0 = (r0, np.pi / 2, 0.0)
    period, y = profile.next_period(rhs, y0, 200.0 * max(r0, 1.0))
    return period, y[2] / (2 * np.pi)


@dataclass(frozen=True, eq=False)
class ClosedProfile:
    curve: CurvePlanar
    r0: float
    period: float
    rotation: float
    closure: float
    winding: int
    curvature_maxima: int
    p: int
    q: int


def count_maxima(k):
    """Strict local maxima of a periodic sample sequence."""
    k = np.asarray(k)
    return int(np.sum((k > np.roll(k, 1)) & (k >= np.roll(k, -1))))


def shoot_closed_profile(p, q, kind="centered", lam=1.0, convention="half",
                         n_scan=4, name="") -> ClosedProfile:
    """Closed profile with rotation p/q per period of alpha, closing after q
    periods with q curvature maxima. Brent's method on the initial radius
    r0, started at alpha = pi/2 below the circle solution."""
    if p <= 0 or q <= 0 or np.gcd(p, q) != 1:
        raise ValueError("p, q must be coprime positive integers")
    target = p / q
    r_star = _fixed_radius(kind, lam, convention)
    radii = r_star * np.linspace(0.04, 0.96, n_scan)
    rot = np.array(pmap(lambda r: rotation_per_period(kind, lam, r, convention)[1], radii))
    diff = rot - target
    sign = np.nonzero(np.sign(diff[:-1]) != np.sign(diff[1:]))[0]
    if len(sign) == 0:
        raise DomainError(f"rotation {target:.6g} outside the scanned range "
                          f"[{rot.min():.6g}, {rot.max():.6g}]")
    i = sign[-1]
    r0 = brentq(lambda r: rotation_per_period(kind, lam, r, convention)[1] - target,
                radii[i], radii[i + 1], xtol=1e-13)
    period, rotation = rotation_per_period(kind, lam, r0, convention)
    prof = profile.integrate_profile(_law_dalpha(kind, lam, convention),
                                     (r0, np.pi / 2, 0.0), q * period)
    curve = prof.curve(name or f"{kind}_profile({p},{q})")
    g0, g1 = curve.value(0.0), curve.value(q * period)
    t0, t1 = curve(0.0)[1], curve(q * period)[1]
    closure = float(max(abs(g1 - g0), abs(t1 - t0)))
    s = np.linspace(0.0, q * period, 400 * q, endpoint=False)
    y = prof.state(s)
    dy = prof.rhs(0.0, y)
    k = dy[1] + dy[2]
    winding = int(round(prof.state(q * period)[2] / (2 * np.pi)))
    return ClosedProfile(curve, float(r0), float(period), float(rotation),
                         closure, winding, count_maxima(k), p, q)


# ---------------------------------------------------------------------------
# products

def make_product_circle_curve(r, curve: CurvePlanar) -> ImmersionSpec:
    """X(s, t) = (r e^{it}, Gamma(s))."""
    if not (np.isfinite(r) and r > 0):
        raise ValueError("circle radius must be positive")
    _require(curve, CurvePlanar)
    return ImmersionSpec(Family.ProductCircleCurve, curve.domain, curve=curve,
                         radius=float(r), name=f"S1({r:g})x{curve.name}")


def _closes(curve, tol=1e-9):
    lo, hi = curve.domain
    a, b = curve(np.array([lo, hi]))[:2]
    return bool(np.all(np.abs(a[0] - a[1]) < tol) and np.all(np.abs(b[0] - b[1]) < tol))


def cc_product_immersion(alpha: CurveAdSLegendrian, gamma: CurveS3Legendrian) -> ImmersionSpec:
    """X(s, t) = (alpha_1(s) gamma_1(t), alpha_2(s) gamma_2(t)); both curves
    must be unit speed in their own metrics."""
    _require(alpha, CurveAdSLegendrian)
    _require(gamma, CurveS3Legendrian)
    if not (alpha.arclength and gamma.arclength):
        raise DomainError("both curves must be unit speed")
    return ImmersionSpec(Family.CCProduct, alpha.domain, gamma.domain,
                         _closes(gamma), curve=alpha, curve2=gamma,
                         name=f"cc[{alpha.name},{gamma.name}]")


def curvature_s3(gamma, t):
    """k = <gamma'', i gamma'> for a unit-speed Legendrian curve."""
    _, d1, d2 = gamma(t)
    return inner(d2, 1j * d1)


def curvature_ads(alpha, s):
    """k = <<alpha'', i alpha'>> with the indefinite pairing of C^{1,1}."""
    _, d1, d2 = alpha(s)
    pair = np.real(d2 * np.conj(1j * d1))
    return pair[..., 0] - pair[..., 1]


def cc_mean_curvature_oracle(alpha, gamma, s, t):
    """Mean curvature of the product immersion from the curvatures of its
    factors: e^{-2u}(k_alpha J X_s + k_gamma J X_t) / 2 with e^{2u} = |X_s|^2.

    The bracket is the trace of the second fundamental form; halving it
    gives H in the mean (half trace) convention used throughout.
    """
    s, t = np.broadcast_arrays(np.asarray(s, float), np.asarray(t, float))
    a, a1, _ = alpha(s)
    g, g1, _ = gamma(t)
    xs, xt = a1 * g, a * g1
    conf = inner(xs, xs)[..., None]
    return (curvature_ads(alpha, s)[..., None] * 1j * xs
            + curvature_s3(gamma, t)[..., None] * 1j * xt) / (2 * conf)


# ---------------------------------------------------------------------------
# scans

@dataclass(frozen=True)
class ScanResult:
    reports: tuple
    lambdas: tuple
    min_max: float
    best_lambda: float


def soliton_obstruction_scan(spec, lambdas, grid=None, convention="half") -> ScanResult:
    """Max self-similar residual for each lambda and the smallest of them."""
    lambdas = tuple(float(x) for x in lambdas)
    if not lambdas:
        raise ValueError("empty lambda list")
    grid = spec.default_grid(32, 32) if grid is None else grid
    reports = pmap(lambda lam: self_similar_residual(
        spec, SolitonParams(lam, convention), grid), lambdas)
    k = int(np.argmin([r.max_abs for r in reports]))
    return ScanResult(tuple(reports), lambdas, reports[k].max_abs, lambdas[k])
