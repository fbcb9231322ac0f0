"""Closed-form generating curves."""

import numpy as np

from .core import CurveAdSLegendrian, CurvePlanar, CurveS3Legendrian, point

TWO_PI = 2 * np.pi


# planar ---------------------------------------------------------------------

def planar_circle(radius=1.0, omega=None, center=0.0, domain=None):
    """center + radius * exp(i omega s); omega defaults to 1/radius (unit speed)."""
    omega = 1.0 / radius if omega is None else omega

    def fn(s):
        e = np.exp(1j * omega * s)
        return center + radius * e, 1j * omega * radius * e, -omega ** 2 * radius * e

    domain = (0.0, TWO_PI / abs(omega)) if domain is None else domain
    return CurvePlanar(fn, domain, np.isclose(abs(radius * omega), 1.0),
                       f"circle(r={radius:g})")


def planar_line(p0=0.0, direction=1.0, domain=(-2.0, 2.0)):
    d = complex(direction)

    def fn(s):
        z = np.zeros_like(s, dtype=complex)
        return p0 + d * s, d + z, z

    return CurvePlanar(fn, domain, np.isclose(abs(d), 1.0), "line")


def planar_ellipse(a=2.0, b=1.0, domain=(0.0, TWO_PI)):
    def fn(s):
        c, sn = np.cos(s), np.sin(s)
        return a * c + 1j * b * sn, -a * sn + 1j * b * c, -a * c - 1j * b * sn

    return CurvePlanar(fn, domain, False, f"ellipse({a:g},{b:g})")


def planar_spiral(domain=(0.0, 1.0)):
    """(1 + s) e^{is}: a regular curve avoiding the origin, not unit speed."""

    def fn(s):
        e = np.exp(1j * s)
        return (1 + s) * e, (1 + 1j * (1 + s)) * e, (2j - (1 + s)) * e

    return CurvePlanar(fn, domain, False, "spiral")


# S^3 ------------------------------------------------------------------------

def s3_great_circle(domain=(0.0, TWO_PI)):
    """(cos s, sin s): a real, hence Legendrian, great circle."""

    def fn(s):
        c, sn = np.cos(s), np.sin(s)
        return point(c, sn), point(-sn, c), point(-c, -sn)

    return CurveS3Legendrian(fn, domain, True, "great_circle")


def s3_hopf_circle(domain=(0.0, TWO_PI)):
    """(e^{is}, e^{-is}) / sqrt(2): the great circle whose Hopf torus is
    the Clifford torus."""
    k = 1 / np.sqrt(2)

    def fn(s):
        e = np.exp(1j * s)
        return (k * point(e, 1 / e), k * point(1j * e, -1j / e),
                k * point(-e, -1 / e))

    return CurveS3Legendrian(fn, domain, True, "hopf_circle")


def torus_exponents(c):
    """Exponents (a, b) making (c e^{ias}, sqrt(1-c^2) e^{ibs}) unit speed
    and Legendrian: c^2 a + (1-c^2) b = 0 and c^2 a^2 + (1-c^2) b^2 = 1."""
    if not 0 < c < 1:
        raise ValueError("c must lie in (0, 1)")
    d = np.sqrt(1 - c * c)
    return d / c, -c / d


def s3_torus_curve(c=0.6, domain=(0.0, TWO_PI)):
    a, b = torus_exponents(c)
    d = np.sqrt(1 - c * c)

    def fn(s):
        e1, e2 = c * np.exp(1j * a * s), d * np.exp(1j * b * s)
        return (point(e1, e2), point(1j * a * e1, 1j * b * e2),
                point(-a * a * e1, -b * b * e2))

    return CurveS3Legendrian(fn, domain, True, f"torus_curve(c={c:g})")


def s3_point(p=(1.0, 0.0), domain=(0.0, 1.0)):
    v = np.asarray(p, complex) / np.linalg.norm(p)

    def fn(s):
        z = np.zeros(np.shape(s) + (2,), complex)
        return z + v, z, z

    return CurveS3Legendrian(fn, domain, False, "point")


def s3_phase_great_circle(k=0.6, l=0.8, domain=(0.0, TWO_PI)):
    """(k + il)(cos s, sin s) with k^2 + l^2 = 1."""
    w = complex(k, l)
    if not np.isclose(abs(w), 1.0):
        raise ValueError("k^2 + l^2 must equal 1")

    def fn(s):
        c, sn = np.cos(s), np.sin(s)
        return w * point(c, sn), w * point(-sn, c), w * point(-c, -sn)

    return CurveS3Legendrian(fn, domain, True, f"phase_circle({k:g},{l:g})")


# anti-de Sitter -------------------------------------------------------------

def ads_hyperbola(domain=(-1.0, 1.0)):
    """(sinh s, cosh s), unit speed for the indefinite metric."""

    def fn(s):
        sh, ch = np.sinh(s), np.cosh(s)
        return point(sh, ch), point(ch, sh), point(sh, ch)

    return CurveAdSLegendrian(fn, domain, True, "hyperbola")


def ads_torus_curve(rho=0.5, domain=(0.0, TWO_PI)):
    """(p e^{i q s / p}, q e^{i p s / q}) with q^2 - p^2 = 1: constant moduli,
    unit speed, Legendrian and of nonzero curvature."""
    p, q = rho, np.sqrt(1 + rho * rho)
    a, b = q / p, p / q

    def fn(s):
        e1, e2 = p * np.exp(1j * a * s), q * np.exp(1j * b * s)
        return (point(e1, e2), point(1j * a * e1, 1j * b * e2),
                point(-a * a * e1, -b * b * e2))

    return CurveAdSLegendrian(fn, domain, True, f"ads_torus(rho={rho:g})")


def ads_point(phase=0.0, domain=(0.0, 1.0)):
    """The constant curve (0, e^{i phase}): type III degenerates to a circle."""
    v = np.array([0.0, np.exp(1j * phase)])

    def fn(s):
        z = np.zeros(np.shape(s) + (2,), complex)
        return z + v, z, z

    return CurveAdSLegendrian(fn, domain, False, "ads_point")
