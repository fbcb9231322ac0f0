"""Gauss-Legendre quadrature: adaptive definite integrals and cumulative
integrals evaluated at arbitrary points."""

import numpy as np

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class QuadratureError(ValueError):
    pass


def gl16(f, a, b):
    """Single 16-point Gauss-Legendre panel on [a, b].

    `f` must accept a 1-d array of abscissae and return an array whose first
    axis runs over them; any trailing axes are integrated componentwise.
    """
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _GL_NODES
    y = np.asarray(f(x))
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y).reshape(len(x), -1).all(axis=1)]
        raise QuadratureError(f"non-finite integrand at u={bad[0]!r}")
    return half * np.tensordot(_GL_WEIGHTS, y, axes=(0, 0))


def adaptive_gl(f, a, b, tol=1e-10, max_depth=40):
    """Adaptive 16-point Gauss-Legendre integration of `f` over [a, b].

    Panels are bisected until the one-panel and two-half-panel estimates agree
    to within a share of `tol` proportional to the panel width.
    """
    if a == b:
        return 0.0 * gl16(f, a, a + 1.0)
    total = 0.0
    width = abs(b - a)
    stack = [(a, b, gl16(f, a, b), 0)]
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = gl16(f, lo, mid), gl16(f, mid, hi)
        err = np.max(np.abs(left + right - whole))
        if err <= tol * abs(hi - lo) / width or depth >= max_depth:
            if depth >= max_depth and err > tol:
                raise QuadratureError(
                    f"no convergence on [{lo}, {hi}] (estimate {err:.3e})")
            total = total + left + right
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    return total


class CumulativeIntegral:
    """V(s) = integral of f from s0 to s, for s anywhere in [a, b].

    The interval is split into uniform panels, refined until a single GL16
    panel agrees with its two halves to `tol`. Knot values are cached; an
    evaluation adds one GL16 panel from the nearest knot below.
    """

    def __init__(self, f, a, b, s0=None, tol=1e-10, min_panels=8,
                 max_panels=1 << 14):
        if not b > a:
            raise ValueError("empty integration domain")
        self.f = f
        self.a, self.b = float(a), float(b)
        self.s0 = self.a if s0 is None else float(s0)
        if not self.a <= self.s0 <= self.b:
            raise ValueError(f"base point {self.s0} outside [{a}, {b}]")
        n = min_panels
        while True:
            knots = np.linspace(self.a, self.b, n + 1)
            fine = self._panels(np.linspace(self.a, self.b, 2 * n + 1))
            panels = fine[0::2] + fine[1::2]
            err = np.max(np.abs(panels - self._panels(knots)))
            if err <= tol / n or n >= max_panels:
                break
            n *= 2
        self.knots = knots
        cum = np.concatenate([np.zeros_like(panels[:1]), np.cumsum(panels, axis=0)])
        self._cum = cum - self._partial(np.array([self.s0]), knots, cum)[0]

    def _panels(self, knots):
        lo, hi = knots[:-1], knots[1:]
        half = 0.5 * (hi - lo)
        x = (0.5 * (lo + hi))[:, None] + half[:, None] * _GL_NODES[None, :]
        y = np.asarray(self.f(x.ravel()))
        if not np.all(np.isfinite(y)):
            raise QuadratureError("non-finite integrand in cumulative quadrature")
        y = y.reshape(x.shape + y.shape[1:])
        part = np.tensordot(_GL_WEIGHTS, np.moveaxis(y, 1, 0), axes=(0, 0))
        return half.reshape((-1,) + (1,) * (part.ndim - 1)) * part

    def _partial(self, s, knots, cum):
        idx = np.clip(np.searchsorted(knots, s, side="right") - 1,
                      0, len(knots) - 2)
        lo = knots[idx]
        half = 0.5 * (s - lo)
        x = lo[:, None] + half[:, None] * (_GL_NODES + 1.0)[None, :]
        y = np.asarray(self.f(x.ravel()))
        y = y.reshape(x.shape + y.shape[1:])
        part = np.tensordot(_GL_WEIGHTS, np.moveaxis(y, 1, 0), axes=(0, 0))
        shape = (-1,) + (1,) * (part.ndim - 1)
        return cum[idx] + half.reshape(shape) * part

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        if np.any(s < self.a - 1e-12) or np.any(s > self.b + 1e-12):
            raise ValueError(
                f"s outside cumulative-integral domain [{self.a}, {self.b}]")
        flat = np.clip(s.ravel(), self.a, self.b)
        out = self._partial(flat, self.knots, self._cum)
        return out.reshape(s.shape + out.shape[1:])
