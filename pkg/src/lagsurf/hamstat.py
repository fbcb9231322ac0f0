"""Hamiltonian-stationary centered type I surfaces and contact-stationary
Hopf tori.

The profile gamma = r e^{i phi} of a Hamiltonian-stationary centered type I
surface satisfies r' = cos(alpha), alpha' = (C - 2 sin(alpha)) / r with
alpha = theta - phi. The constant C (c_flux) fixes r beta_s = C.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import profile
from .core import (DegenerateError, DomainError, ResidualReport,
                   curve_constraint_residual)
from .curves import s3_torus_curve
from .cyclic import make_centered_type1, make_centered_type2
from .diffgeo import beta_derivative_field, laplace_beltrami_beta
from .quadrature import adaptive_gl

PHI_GUARD = 1e-6


@dataclass(frozen=True)
class HsProfileState:
    r: float
    alpha: float
    c_flux: float


def hs_profile_rhs(state: HsProfileState):
    if not state.r > 0:
        raise DomainError(f"profile radius must be positive, got r={state.r}")
    return (np.cos(state.alpha),
            (state.c_flux - 2 * np.sin(state.alpha)) / state.r)


def hs_first_integral(state: HsProfileState):
    return state.r ** 2 * (state.c_flux - 2 * np.sin(state.alpha))


def _dalpha(C):
    return lambda r, a: (C - 2 * np.sin(a)) / r


# total angular variation ----------------------------------------------------

def phi_closed_form(C):
    # pi (C / sqrt(C^2 - 4) - 1), rearranged to avoid cancellation at large C
    C = abs(float(C))
    root = np.sqrt(C * C - 4)
    return np.pi * 4 / (root * (C + root))


def phi_of_C(C, method="quadrature", tol=1e-10):
    """Phi(C) = int_0^{2 pi} sin(a) / (C - 2 sin(a)) da for |C| > 2.

    Phi is even in C (substitute a -> -a), so C < -2 is folded onto -C.
    The integrand's peak grows like 1/(|C| - 2); quadrature is refused
    within PHI_GUARD of the singular value.
    """
    C = float(C)
    if not abs(C) > 2:
        raise DomainError(f"Phi(C) needs |C| > 2, got C={C}")
    C = abs(C)
    if method == "closed_form":
        return phi_closed_form(C)
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    if C < 2 + PHI_GUARD:
        raise DomainError(f"C={C} is within {PHI_GUARD:g} of the singular "
                          "value 2; use method='closed_form'")
    f = lambda a: np.sin(a) / (C - 2 * np.sin(a))
    # split at the peak a = pi/2 so panels resolve the near-singularity
    pts = (0.0, np.pi / 2, 2 * np.pi)
    return float(sum(adaptive_gl(f, a, b, tol=tol / 2) for a, b in zip(pts, pts[1:])))


def C_closed_form(p, q):
    m = 1 + 2 * p / q
    return 2 * m / np.sqrt(m * m - 1)


def solve_C_for_winding(p: int, q: int) -> float:
    """The C > 2 with Phi(C) = 2 pi p / q, by Brent's method on the
    quadrature."""
    p, q = int(p), int(q)
    if p <= 0 or q <= 0 or np.gcd(p, q) != 1:
        raise ValueError("p, q must be coprime positive integers")
    target = 2 * np.pi * p / q
    g = lambda C: phi_of_C(C) - target
    lo, hi = 2.5, 4.0
    while g(hi) > 0:
        hi *= 2
    # approach the singular value only as far as the target needs
    while g(lo) < 0:
        hi, lo = lo, 2 + (lo - 2) / 4
        if lo < 2 + 4 * PHI_GUARD:
            raise DomainError(f"Phi = {target} needs C closer to 2 than the guard allows")
    return brentq(g, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)


# closed curves --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClosedHsCurve:
    curve: object
    c_flux: float
    p: int
    q: int
    period: float
    closure: float
    symmetry: float
    period_rotations: tuple
    self_intersections: int
    profile: object = None


def count_self_intersections(z, block=512):
    """Proper crossings among the edges of the closed polygon z.

    All pairs are screened by bounding-box overlap, then candidate pairs get
    the orientation test.
    """
    z = np.asarray(z)
    ax, ay = z.real, z.imag
    bx, by = np.roll(ax, -1), np.roll(ay, -1)
    x0, x1 = np.minimum(ax, bx), np.maximum(ax, bx)
    y0, y1 = np.minimum(ay, by), np.maximum(ay, by)
    n = len(z)

    def orient(ox, oy, px, py, qx, qy):
        return (px - ox) * (qy - oy) - (py - oy) * (qx - ox)

    count = 0
    for start in range(0, n, block):
        i = np.arange(start, min(n, start + block))[:, None]
        j = np.arange(start, n)[None, :]
        near = ((x0[i] <= x1[j]) & (x0[j] <= x1[i]) & (y0[i] <= y1[j])
                & (y0[j] <= y1[i]) & (j > i + 1) & ~((i == 0) & (j == n - 1)))
        ii, jj = np.nonzero(near)
        ii, jj = ii + start, jj + start
        d1 = orient(ax[jj], ay[jj], bx[jj], by[jj], ax[ii], ay[ii])
        d2 = orient(ax[jj], ay[jj], bx[jj], by[jj], bx[ii], by[ii])
        d3 = orient(ax[ii], ay[ii], bx[ii], by[ii], ax[jj], ay[jj])
        d4 = orient(ax[ii], ay[ii], bx[ii], by[ii], bx[jj], by[jj])
        count += int(np.sum((d1 * d2 < 0) & (d3 * d4 < 0)))
    return count


def build_closed_hs_curve(p, q, samples_per_period=256, tol=1e-6,
                          n_sweep=4096) -> ClosedHsCurve:
    """Closed q-symmetric profile with Phi(C) = 2 pi p / q.

    The system is invariant under r -> k r, s -> k s, so the start is fixed
    at r = 1, alpha = pi/2 without loss of generality.
    """
    C = solve_C_for_winding(p, q)
    rhs = profile.polar_rhs(_dalpha(C))
    y0 = (1.0, np.pi / 2, 0.0)
    period, _ = profile.next_period(rhs, y0, 1e4)
    prof = profile.integrate_profile(_dalpha(C), y0, q * period)
    curve = prof.curve(f"hs_profile({p},{q})", note=f"C={C:.15g}")

    closure = abs(curve.value(q * period) - curve.value(0.0))
    if not closure < tol:
        raise DegenerateError(f"profile ({p},{q}) fails to close: gap {closure:.3e}")

    phis = prof.state(period * np.arange(q + 1))[2]
    rotations = tuple(np.diff(phis))
    u = period * np.arange(samples_per_period) / samples_per_period
    blocks = [curve.value(u + k * period) for k in range(q)]
    turn = np.exp(2j * np.pi * p / q)
    symmetry = max(float(np.max(np.abs(blocks[k + 1] - turn * blocks[k])))
                   for k in range(q - 1)) if q > 1 else 0.0
    if not symmetry < tol:
        raise DegenerateError(f"profile ({p},{q}) is not {q}-symmetric: {symmetry:.3e}")
    sweep = curve.value(q * period * np.arange(n_sweep) / n_sweep)
    return ClosedHsCurve(curve, float(C), p, q, float(period), float(closure),
                         symmetry, rotations, count_self_intersections(sweep), prof)


class Regime(enum.Enum):
    BoundedClosedFamily = "bounded_closed_family"
    SpiralingEnds = "spiraling_ends"
    CirclesAndSpirals = "circles_and_spirals"
    SpecialLagrangian = "special_lagrangian"


def classify_regime(C) -> Regime:
    C = float(C)
    if C == 0:
        return Regime.SpecialLagrangian
    if abs(C) > 2:
        return Regime.BoundedClosedFamily
    if abs(C) < 2:
        return Regime.SpiralingEnds
    return Regime.CirclesAndSpirals


def integrate_hs_profile(C, length, r0=1.0, alpha0=np.pi / 2):
    """Open profile of length `length` for any C, from (r0, alpha0)."""
    return profile.integrate_profile(_dalpha(float(C)), (r0, alpha0, 0.0), length)


def hs_period(C, r0=1.0, alpha0=np.pi / 2):
    """Length of one alpha-period; only defined for |C| > 2."""
    if classify_regime(C) is not Regime.BoundedClosedFamily:
        raise DomainError(f"C={C} is in regime {classify_regime(C).value}: "
                          "alpha is not periodic")
    rhs = profile.polar_rhs(_dalpha(float(C)))
    return profile.next_period(rhs, (r0, alpha0, 0.0), 1e4)[0]


def hs_closed_surface(p, q):
    return make_centered_type1(build_closed_hs_curve(p, q).curve)


# contact-stationary Hopf tori -------------------------------------------------

def make_contact_stationary_hopf(c: float):
    """Centered type II surface over (c e^{ias}, sqrt(1-c^2) e^{ibs}) with
    a = sqrt(1-c^2)/c and b = -c/sqrt(1-c^2), the exponents making the curve
    Legendrian and unit speed. The Legendrian angle is affine in s."""
    if not 0 < c < 1:
        raise DomainError("c must lie in (0, 1)")
    gamma = s3_torus_curve(c)
    rep = curve_constraint_residual(gamma, 256)
    if rep.max_abs > 1e-10:
        raise DegenerateError(f"torus curve constraints off by {rep.max_abs:.3e}")
    # one full turn of the first factor
    length = 2 * np.pi * c / np.sqrt(1 - c * c)
    spec = make_centered_type2(gamma.with_domain(0.0, length), 1.0)
    return dataclasses.replace(spec, name=f"contact_stationary_hopf(c={c:g})")


def hs_residual_suite(spec, grid=None) -> ResidualReport:
    grid = spec.default_grid() if grid is None else grid
    return laplace_beltrami_beta(beta_derivative_field(spec, grid))
