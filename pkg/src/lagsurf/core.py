"""Domain types shared by every module.

Points of C^2 are complex numpy arrays whose last axis has length 2; all
geometric routines broadcast over the leading axes. The real scalar product
<u, v> is Re(sum u_j conj(v_j)), J is multiplication by i and the symplectic
form is omega(u, v) = <u, Jv>.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .quadrature import CumulativeIntegral


class LagsurfError(ValueError):
    """Base class for recoverable errors raised by this package."""


class EvaluationError(LagsurfError):
    pass


class DegenerateError(LagsurfError):
    pass


class DomainError(LagsurfError):
    pass


class ConstraintError(LagsurfError):
    pass


# ---------------------------------------------------------------------------
# C^2 arithmetic

def point(z1, z2) -> np.ndarray:
    """Build a PointC2 (or an array of them) from its two complex components."""
    p = np.stack(np.broadcast_arrays(np.asarray(z1, complex),
                                     np.asarray(z2, complex)), axis=-1)
    if not np.all(np.isfinite(p)):
        raise EvaluationError("non-finite point component")
    return p


def inner(u, v):
    return np.real(np.sum(u * np.conj(v), axis=-1))


def norm(u):
    return np.sqrt(inner(u, u))


def J(u):
    return 1j * np.asarray(u)


def omega(u, v):
    return inner(u, 1j * v)


def det_c(u, v):
    """Complex determinant of the pair (u, v) of vectors of C^2."""
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


# ---------------------------------------------------------------------------
# Curves

CurveFn = Callable[[np.ndarray], "tuple[np.ndarray, np.ndarray, np.ndarray]"]


@dataclass(frozen=True, eq=False)
class Curve:
    """A parametrized curve s -> (value, first derivative, second derivative).

    `fn` is vectorized over s. Planar curves return complex arrays of the
    shape of s; curves in C^2 append a trailing axis of length 2.
    """

    fn: CurveFn
    domain: tuple
    arclength: bool = False
    name: str = ""
    note: str = ""

    def __post_init__(self):
        lo, hi = map(float, self.domain)
        if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
            raise DomainError(f"degenerate curve domain {self.domain}")
        object.__setattr__(self, "domain", (lo, hi))

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        value, d1, d2 = self.fn(s)
        for part in (value, d1, d2):
            ok = np.isfinite(part)
            if part.ndim > s.ndim:
                ok = ok.all(axis=-1)
            if not np.all(ok):
                bad = np.broadcast_to(s, ok.shape)[~ok].ravel()[0]
                raise EvaluationError(
                    f"curve {self.name or '?'} is not finite at s={bad!r}")
        return value, d1, d2

    def value(self, s):
        return self(s)[0]

    def samples(self, n):
        return np.linspace(self.domain[0], self.domain[1], n)

    def with_domain(self, lo, hi):
        return type(self)(self.fn, (lo, hi), self.arclength, self.name,
                          self.note)


class CurvePlanar(Curve):
    """Curve in C (the profile curve, ruled translation density, product
    factor)."""


class CurveS3Legendrian(Curve):
    """Legendrian curve of the unit sphere S^3 in C^2."""


class CurveAdSLegendrian(Curve):
    """Legendrian curve of the anti-de Sitter space |a1|^2 - |a2|^2 = -1."""


# ---------------------------------------------------------------------------
# Surface data

class Family(enum.Enum):
    CenteredType1 = "centered_type1"
    GeneralType1 = "general_type1"
    CenteredType2 = "centered_type2"
    GeneralType2 = "general_type2"
    CenteredType3 = "centered_type3"
    GeneralType3 = "general_type3"
    Ruled = "ruled"
    ProductCircleCurve = "product_circle_curve"
    ProductLineCurve = "product_line_curve"
    CCProduct = "cc_product"


CYCLIC_FAMILIES = frozenset({
    Family.CenteredType1, Family.GeneralType1, Family.CenteredType2,
    Family.GeneralType2, Family.CenteredType3, Family.GeneralType3,
    Family.ProductCircleCurve,
})


class Translation:
    """Translation term V(s) = int_{s0}^s f(u) du with f, f' known in closed
    form. `integrand(s)` returns (f(s), f'(s)) as C^2 arrays."""

    def __init__(self, integrand, domain, s0, tol=1e-10):
        self.integrand = integrand
        self.s0 = float(s0)
        self._cumulative = CumulativeIntegral(
            lambda u: integrand(u)[0], domain[0], domain[1], s0=self.s0,
            tol=tol)

    def __call__(self, s):
        """(V, V', V'') at s."""
        s = np.asarray(s, dtype=float)
        d1, d2 = self.integrand(s)
        return self._cumulative(s), d1, d2


@dataclass(frozen=True, eq=False)
class ImmersionSpec:
    """A member of one of the surface families, with its generating data.

    Only the fields relevant to `family` are populated: `curve` is the
    generating curve (planar profile for type I, S^3 curve for type II and
    ruled, AdS curve for type III and CC products), `curve2` the second
    curve (product factor, or S^3 factor of a CC product), `c` the scale
    constant, `radius` the circle radius of a product, `translation` the
    V(s) term, `density` the ruled translation density alpha(s) as a pair of
    callables (value, derivative) and `params` the raw user inputs.
    """

    family: Family
    s_domain: tuple
    t_domain: tuple = (0.0, 2 * np.pi)
    t_periodic: bool = True
    curve: Curve | None = None
    curve2: Curve | None = None
    c: float = 1.0
    radius: float = 1.0
    translation: Translation | None = None
    density: tuple | None = None
    name: str = ""
    params: dict = field(default_factory=dict)

    @property
    def cyclic(self):
        return self.family in CYCLIC_FAMILIES

    def default_grid(self, n_s=64, n_t=64):
        return Grid(n_s, n_t, self.s_domain, self.t_domain, self.t_periodic)


@dataclass(frozen=True)
class Grid:
    """Uniform (s, t) grid. Periodic t grids exclude the right endpoint."""

    n_s: int
    n_t: int
    s_range: tuple
    t_range: tuple
    periodic_t: bool = True

    def __post_init__(self):
        if self.n_s < 2 or self.n_t < 2:
            raise DomainError("grid needs at least 2 nodes per direction")
        for lo, hi in (self.s_range, self.t_range):
            if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
                raise DomainError(f"bad grid range ({lo}, {hi})")

    @property
    def s(self):
        return np.linspace(*self.s_range, self.n_s)

    @property
    def t(self):
        lo, hi = self.t_range
        if self.periodic_t:
            return lo + (hi - lo) * np.arange(self.n_t) / self.n_t
        return np.linspace(lo, hi, self.n_t)

    def mesh(self):
        return np.meshgrid(self.s, self.t, indexing="ij")

    def describe(self):
        return (self.n_s, self.n_t, tuple(map(float, self.s_range)),
                tuple(map(float, self.t_range)))


@dataclass(frozen=True, eq=False)
class SurfaceJet:
    """Position and first/second partial derivatives of an immersion."""

    x: np.ndarray
    xs: np.ndarray
    xt: np.ndarray
    xss: np.ndarray
    xst: np.ndarray
    xtt: np.ndarray

    def __post_init__(self):
        for name in ("x", "xs", "xt", "xss", "xst", "xtt"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise EvaluationError(f"non-finite jet component {name}")


@dataclass(frozen=True, eq=False)
class Metric2:
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray

    @property
    def det(self):
        return self.e * self.g - self.f ** 2

    @property
    def degenerate(self):
        return ~(self.det > 0)


@dataclass(frozen=True)
class ResidualReport:
    name: str
    grid: tuple
    max_abs: float
    mean_abs: float
    argmax: tuple
    excluded: int = 0
    reference: float | None = None

    @classmethod
    def from_values(cls, name, values, s, t=None, grid=None, excluded=0,
                    reference=None):
        """Summarize |values| sampled at parameters s (and t)."""
        v = np.abs(np.asarray(values, dtype=float))
        s = np.broadcast_to(np.asarray(s, dtype=float), v.shape)
        t = np.zeros_like(s) if t is None else np.broadcast_to(t, v.shape)
        ok = np.isfinite(v)
        if not ok.any():
            raise EvaluationError(f"residual {name} has no finite samples")
        vv = np.where(ok, v, -np.inf)
        k = np.unravel_index(np.argmax(vv), v.shape)
        if grid is None:
            grid = (int(v.shape[0]) if v.ndim else 1,
                    int(v.shape[1]) if v.ndim > 1 else 1,
                    (float(s.min()), float(s.max())),
                    (float(t.min()), float(t.max())))
        return cls(name, grid, float(v[k]), float(v[ok].mean()),
                   (float(s[k]), float(t[k])), excluded + int((~ok).sum()),
                   reference)

    def passed(self, tol):
        return self.max_abs < tol

    def to_dict(self):
        n_s, n_t, s_rng, t_rng = self.grid
        return {"name": self.name,
                "grid": {"n_s": n_s, "n_t": n_t, "s_range": list(s_rng),
                         "t_range": list(t_rng)},
                "max_abs": self.max_abs, "mean_abs": self.mean_abs,
                "argmax": list(self.argmax), "excluded": self.excluded,
                "reference": self.reference}


# ---------------------------------------------------------------------------
# Operations on curves

def _constraint_terms(curve, s):
    value, d1, _ = curve(s)
    if isinstance(curve, CurveS3Legendrian):
        terms = [inner(value, value) - 1.0, inner(d1, 1j * value)]
        if curve.arclength:
            terms.append(norm(d1) - 1.0)
    elif isinstance(curve, CurveAdSLegendrian):
        a1, a2 = value[..., 0], value[..., 1]
        b1, b2 = d1[..., 0], d1[..., 1]
        terms = [abs(a1) ** 2 - abs(a2) ** 2 + 1.0,
                 np.real(b1 * np.conj(1j * a1)) - np.real(b2 * np.conj(1j * a2))]
        if curve.arclength:
            terms += [abs(b1) ** 2 - abs(b2) ** 2 - 1.0, abs(a1) - abs(b2)]
    elif isinstance(curve, CurvePlanar):
        terms = [np.abs(d1) - 1.0] if curve.arclength else [np.zeros_like(s)]
    else:
        raise TypeError(f"unsupported curve type {type(curve).__name__}")
    return np.max(np.abs(np.stack(terms)), axis=0)


def curve_constraint_residual(curve: Curve, n_samples: int = 200) -> ResidualReport:
    """Largest violation of the curve's subtype invariants over uniform samples.

    Sphere curves: |g|^2 = 1 and <g', ig> = 0. AdS curves: |a1|^2 - |a2|^2 =
    -1 and <a1', i a1> - <a2', i a2> = 0, plus the unit-speed relations
    |a1'|^2 - |a2'|^2 = 1 and |a1| = |a2'| when flagged arclength. Planar
    arclength curves: |g'| = 1.
    """
    if n_samples < 2:
        raise DomainError("n_samples must be >= 2")
    s = curve.samples(n_samples)
    return ResidualReport.from_values(
        f"constraints[{curve.name or type(curve).__name__}]",
        _constraint_terms(curve, s), s)


def arclength_reparametrize(curve: CurvePlanar, tol: float = 1e-10,
                            n_check: int = 512) -> CurvePlanar:
    """Reparametrize a regular planar curve by arclength, starting at 0."""
    lo, hi = curve.domain
    probe = np.linspace(lo, hi, n_check)
    speed = np.abs(curve(probe)[1])
    if speed.min() < 1e-12 * max(1.0, speed.max()):
        raise DegenerateError(
            f"curve speed vanishes near s={probe[np.argmin(speed)]!r}")
    if np.max(np.abs(speed - 1.0)) < tol:
        return CurvePlanar(lambda s: curve.fn(s + lo), (0.0, hi - lo), True,
                           curve.name, curve.note)

    length_of = CumulativeIntegral(lambda u: np.abs(curve(u)[1]), lo, hi,
                                   s0=lo, tol=min(tol, 1e-10))
    total = float(length_of(hi))
    knots_s = np.linspace(lo, hi, 2049)
    knots_len = length_of(knots_s)

    def invert(sigma):
        # Newton on L(s) = sigma from the piecewise-linear inverse.
        s = np.interp(sigma, knots_len, knots_s)
        for _ in range(30):
            step = (length_of(s) - sigma) / np.abs(curve(s)[1])
            s = np.clip(s - step, lo, hi)
            if np.max(np.abs(step), initial=0.0) < 1e-15 * (hi - lo + 1.0):
                break
        return s

    def fn(sigma):
        sigma = np.asarray(sigma, dtype=float)
        s = invert(sigma.ravel()).reshape(sigma.shape)
        value, d1, d2 = curve(s)
        v = np.abs(d1)
        tangent = d1 / v
        # second derivative with respect to arclength
        acc = (d2 - np.real(d2 * np.conj(tangent)) * tangent) / v ** 2
        return value, tangent, acc

    return CurvePlanar(fn, (0.0, total), True, curve.name, curve.note)


# ---------------------------------------------------------------------------
# Scalar functions given with or without derivatives

def as_function(w, *, complex_valued=False):
    """Normalize a coefficient function to a (value, derivative) pair.

    Accepts a constant, a callable (differentiated by a fourth-order central
    difference), or an explicit (f, df) tuple.
    """
    dtype = complex if complex_valued else float
    if isinstance(w, tuple):
        f, df = w
        return (lambda s: np.asarray(f(s), dtype) + 0 * np.asarray(s),
                lambda s: np.asarray(df(s), dtype) + 0 * np.asarray(s))
    if callable(w):
        h = 1e-3

        def df(s):
            s = np.asarray(s, dtype=float)
            return (8 * (w(s + h) - w(s - h)) - (w(s + 2 * h) - w(s - 2 * h))) / (12 * h)

        return (lambda s: np.asarray(w(s), dtype) + 0 * np.asarray(s)), df
    c = dtype(w)
    return (lambda s: np.full(np.shape(s), c, dtype)), \
        (lambda s: np.zeros(np.shape(s), dtype))


# ---------------------------------------------------------------------------
# Parallel map honouring LAGSURF_THREADS

def max_workers():
    env = os.environ.get("LAGSURF_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def pmap(fn, items):
    """Ordered map over a thread pool; results do not depend on scheduling."""
    items = list(items)
    n = max_workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
