"""Numeric certificates: quaternion identities behind the r^2 K dichotomy
and the polynomial non-existence argument for Hamiltonian-stationary
non-centered type I surfaces."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .core import LagsurfError


class PoleError(LagsurfError):
    pass


# quaternions ----------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    """w + x i + y j + z k with Hamilton's rule ij = k."""

    w: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def as_array(self):
        return np.array([self.w, self.x, self.y, self.z], float)

    @classmethod
    def from_array(cls, a):
        return cls(*map(float, a))

    def __mul__(self, o):
        if not isinstance(o, Quaternion):
            return Quaternion(self.w * o, self.x * o, self.y * o, self.z * o)
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = o.w, o.x, o.y, o.z
        return Quaternion(a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                          a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                          a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                          a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    __rmul__ = __mul__

    def __add__(self, o):
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    def __sub__(self, o):
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def conj(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        return self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2

    def __abs__(self):
        return float(np.sqrt(self.norm2()))

    def inverse(self):
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conj() * (1.0 / n)


ONE, QI, QJ, QK = (Quaternion(1.0), Quaternion(0, 1.0), Quaternion(0, 0, 1.0),
                   Quaternion(0, 0, 0, 1.0))


def _check_nonzero(p):
    if p.norm2() == 0:
        raise ValueError("p must be nonzero")


def quat_u(p: Quaternion) -> Quaternion:
    """u = p^-1 i p i - i p^-1 i p, by Hamilton products."""
    _check_nonzero(p)
    q = p.inverse()
    return q * QI * p * QI - QI * q * QI * p


def quat_v(p: Quaternion) -> Quaternion:
    """v = p^-1 i p + i p^-1 i p i."""
    _check_nonzero(p)
    q = p.inverse()
    return q * QI * p + QI * q * QI * p * QI


def quat_u_closed(p: Quaternion) -> Quaternion:
    """4(p0 p2 + p1 p3) j - 4(p1 p2 - p0 p3) k, scaled by 1/|p|^2."""
    _check_nonzero(p)
    p0, p1, p2, p3 = p.w, p.x, p.y, p.z
    n = p.norm2()
    return Quaternion(0.0, 0.0, 4 * (p0 * p2 + p1 * p3) / n,
                      -4 * (p1 * p2 - p0 * p3) / n)


def quat_v_closed(p: Quaternion) -> Quaternion:
    _check_nonzero(p)
    p0, p1, p2, p3 = p.w, p.x, p.y, p.z
    n = p.norm2()
    return Quaternion(0.0, 0.0, 4 * (p1 * p2 - p0 * p3) / n,
                      4 * (p0 * p2 + p1 * p3) / n)


def factorization_identity(p: Quaternion):
    """(p0 p2 + p1 p3)^2 + (p1 p2 - p0 p3)^2 and (p0^2 + p1^2)(p2^2 + p3^2)."""
    p0, p1, p2, p3 = p.w, p.x, p.y, p.z
    lhs = (p0 * p2 + p1 * p3) ** 2 + (p1 * p2 - p0 * p3) ** 2
    rhs = (p0 ** 2 + p1 ** 2) * (p2 ** 2 + p3 ** 2)
    return lhs, rhs


def random_unit_quaternions(n, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, 4))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    return [Quaternion.from_array(row) for row in a]


def quaternion_suite(n=1000, seed=0):
    """Largest deviations over n seeded unit quaternions."""
    err_u = err_v = err_vu = err_fact = 0.0
    for p in random_unit_quaternions(n, seed):
        u, v = quat_u(p), quat_v(p)
        err_u = max(err_u, np.max(np.abs((u - quat_u_closed(p)).as_array())))
        err_v = max(err_v, np.max(np.abs((v - quat_v_closed(p)).as_array())))
        err_vu = max(err_vu, np.max(np.abs((v + u * QI).as_array())))
        lhs, rhs = factorization_identity(p)
        err_fact = max(err_fact, abs(lhs - rhs))
    return {"u_closed_form": float(err_u), "v_closed_form": float(err_v),
            "v_equals_minus_u_i": float(err_vu), "factorization": float(err_fact)}


# certificate polynomials ----------------------------------------------------

# E(X, Y) = sum_k e_k(X) Y^k, each e_k listed by increasing power of X.
E_COEFFS = (
    (35.0, 21.0, -489.0, 991.0, -774.0, 216.0),   # Y^0
    (4.0, 8.0, -264.0, 756.0, -504.0),            # Y^1
    (-12.0, 36.0, 90.0, -288.0),                  # Y^2
)

# g = (G_NUM[0](X)(1 - X) + Y G_NUM[1](X)) / (G_DEN[0](X)(1 - X) + Y G_DEN[1](X))
G_NUM = ((5.0, 19.0, 12.0), (3.0, -36.0))
G_DEN = ((-1.0, -26.0, 24.0), (0.0, -6.0, 24.0))


def _poly(c, x):
    return np.polynomial.polynomial.polyval(x, c)


def _dpoly(c, x):
    return np.polynomial.polynomial.polyval(x, np.polynomial.polynomial.polyder(c))


@dataclass(frozen=True)
class CertificatePoint:
    X: float
    Y: float


def _xy(pt):
    return (pt.X, pt.Y) if isinstance(pt, CertificatePoint) else pt


def eval_E(pt):
    X, Y = _xy(pt)
    return sum(_poly(c, X) * Y ** k for k, c in enumerate(E_COEFFS))


def eval_E_X(pt):
    X, Y = _xy(pt)
    return sum(_dpoly(c, X) * Y ** k for k, c in enumerate(E_COEFFS))


def eval_E_Y(pt):
    X, Y = _xy(pt)
    return sum(k * _poly(c, X) * Y ** (k - 1) for k, c in enumerate(E_COEFFS) if k)


def g_parts(pt):
    X, Y = _xy(pt)
    num = _poly(G_NUM[0], X) * (1 - X) + Y * _poly(G_NUM[1], X)
    den = _poly(G_DEN[0], X) * (1 - X) + Y * _poly(G_DEN[1], X)
    return num, den


def eval_g(pt, pole_tol=1e-14):
    num, den = g_parts(pt)
    if np.any(np.abs(den) <= pole_tol):
        raise PoleError(f"g has a pole at {_xy(pt)}: denominator {den!r}")
    return num / den


def eval_F(pt):
    """F = (1 - X) g E_X + 3 Y E_Y."""
    X, Y = _xy(pt)
    return (1 - X) * eval_g(pt) * eval_E_X(pt) + 3 * Y * eval_E_Y(pt)


def coefficient_checksum():
    """Weighted sums pinning every transcribed coefficient."""
    flat = [c for row in E_COEFFS for c in row]
    gflat = [c for part in G_NUM + G_DEN for c in part]
    w = lambda cs: float(sum((i + 1) * c for i, c in enumerate(cs)))
    return {"E_sum": float(sum(flat)), "E_weighted": w(flat),
            "g_sum": float(sum(gflat)), "g_weighted": w(gflat)}


def x0_roots():
    """Roots of E(0, Y) = -12 Y^2 + 4 Y + 35, from numpy's companion solver."""
    c = [E_COEFFS[k][0] for k in range(3)]
    roots = np.polynomial.polynomial.polyroots(c)
    return tuple(sorted((float(np.real(x)) for x in roots), reverse=True))


def endgame_constants(w, alpha=0.7, r=1.3):
    """Both equations of the X = 0 reduced system with k = sin(alpha)/r,
    divided by sin(alpha)/r^2. Returns the two constants, which differ by
    2 and are positive for every real w."""
    sa = np.sin(alpha)
    k = sa / r
    eq1 = k * k / sa - 2 * k / r + 3 * k * w * w / r + 4 * sa / r ** 2
    eq2 = k / r + 3 * w * w * sa / r ** 2 + 4 * sa / r ** 2
    unit = sa / r ** 2
    return eq1 / unit, eq2 / unit


@dataclass(frozen=True)
class CertificateReport:
    roots: tuple
    E_at_roots: tuple
    E_Y_at_roots: tuple
    F_at_roots: tuple
    F_expected_magnitude: tuple
    endgame_min: tuple
    quaternion: dict
    elapsed: float  # polynomial part only
    ok: bool
    failures: tuple

    def to_dict(self):
        return {k: (list(v) if isinstance(v, tuple) else v)
                for k, v in self.__dict__.items()}


def nonexistence_certificate(n_quaternions=1000, seed=0) -> CertificateReport:
    t0 = time.perf_counter()
    roots = x0_roots()
    E = tuple(float(eval_E((0.0, y))) for y in roots)
    EY = tuple(float(eval_E_Y((0.0, y))) for y in roots)
    F = tuple(float(eval_F((0.0, y))) for y in roots)
    s = np.sqrt(106.0)
    expected = (float(1100 + 85 * s), float(abs(1100 - 85 * s)))
    ws = np.linspace(-10, 10, 2001)
    c1, c2 = endgame_constants(ws)
    endgame = (float(np.min(c1)), float(np.min(c2)))
    elapsed = time.perf_counter() - t0
    quat = quaternion_suite(n_quaternions, seed)

    failures = []
    if max(map(abs, E)) >= 1e-9:
        failures.append("E(0, Y) does not vanish at its roots")
    if min(map(abs, EY)) <= 10:
        failures.append("a root of E(0, Y) is not simple")
    for f, m in zip(F, expected):
        if not abs(abs(f) - m) <= 1e-6 * m:
            failures.append(f"|F(0, Y)| = {abs(f)!r} differs from {m!r}")
        if f == 0:
            failures.append("F vanishes at a root of E(0, Y)")
    if not (endgame[0] >= 3 - 1e-12 and endgame[1] >= 5 - 1e-12):
        failures.append("endgame constants can vanish")
    for name, err in quat.items():
        if err >= 1e-12:
            failures.append(f"quaternion identity {name} off by {err:.3e}")
    return CertificateReport(roots, E, EY, F, expected, endgame, quat,
                             elapsed, not failures,
                             tuple(failures))
