"""Polar-form integration of planar profile curves.

A profile is carried as the state (r, alpha, phi) with gamma = r e^{i phi},
gamma' = e^{i theta} and alpha = theta - phi, so that r' = cos(alpha) and
phi' = sin(alpha) / r. Only alpha' depends on the law being integrated.

Internally the integrator advances (r, cos alpha, sin alpha, phi, alpha).
The solver scales its error tolerance by the size of each component, and
alpha grows without bound on rotating profiles, so its accuracy would
degrade period after period; cos and sin stay of unit size. The raw alpha
component is only used to unwrap the angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .core import CurvePlanar, DegenerateError

RTOL = 1e-10
ATOL = 1e-12


def polar_rhs(dalpha):
    """Full right-hand side from the law alpha' = dalpha(r, alpha)."""

    def rhs(s, y):
        r, a = y[0], y[1]
        return np.array([np.cos(a), dalpha(r, a), np.sin(a) / r])

    rhs.dalpha = dalpha
    return rhs


def _lift_state(y):
    r, a, phi = y
    return np.array([r, np.cos(a), np.sin(a), phi, a], float)


def _drop_state(Y):
    """(r, alpha, phi) from the lifted state; works on (5,) and (5, n)."""
    Y = np.asarray(Y)
    ref = Y[4]
    wrapped = np.mod(np.arctan2(Y[2], Y[1]) - ref + np.pi, 2 * np.pi) - np.pi
    return np.stack([Y[0], ref + wrapped, Y[3]])


def _lift_rhs(rhs):
    dalpha = getattr(rhs, "dalpha", None)
    if dalpha is None:
        def f(s, Y):
            d = rhs(s, _drop_state(Y))
            da = d[1]
            return np.array([d[0], -Y[2] * da, Y[1] * da, d[2], da])
        return f

    def f(s, Y):
        # hot path: scalar math on the polar form, no angle unwrapping needed
        r, c, sn = Y[0], Y[1], Y[2]
        da = dalpha(r, math.atan2(sn, c))
        return np.array([c, -sn * da, c * da, sn / r, da])

    return f


def _lift_event(ev):
    def f(s, Y):
        return ev(s, _drop_state(Y))

    f.terminal = getattr(ev, "terminal", False)
    f.direction = getattr(ev, "direction", 0)
    return f


@dataclass(frozen=True, eq=False)
class Solution:
    """solve_ivp result seen through the (r, alpha, phi) state."""

    raw: object

    @property
    def t(self):
        return self.raw.t

    @property
    def y(self):
        return _drop_state(self.raw.y)

    @property
    def status(self):
        return self.raw.status

    @property
    def t_events(self):
        return self.raw.t_events

    @property
    def y_events(self):
        return [np.array([_drop_state(Y) for Y in ys]) for ys in self.raw.y_events]

    def sol(self, s):
        return _drop_state(self.raw.sol(s))


def integrate(rhs, y0, s_end, events=(), rtol=RTOL, atol=ATOL, max_step=np.inf,
              s_start=0.0, dense=True):
    """DOP853 on the lifted state; `rhs` and `events` see (r, alpha, phi)."""
    raw = solve_ivp(_lift_rhs(rhs), (s_start, s_end), _lift_state(y0),
                    method="DOP853", rtol=rtol, atol=atol, dense_output=dense,
                    events=[_lift_event(e) for e in events], max_step=max_step)
    if raw.status < 0:
        raise DegenerateError(f"profile integration failed: {raw.message}")
    return Solution(raw)


def period_event(alpha0, direction=-1):
    """Event for alpha returning to alpha0 mod 2 pi. sin((alpha - alpha0)/2)
    falls through zero both when an oscillating alpha comes back down to
    alpha0 and when an increasing alpha reaches alpha0 + 2 pi."""

    def ev(s, y):
        return np.sin(0.5 * (y[1] - alpha0))

    ev.direction = direction
    return ev


def next_period(rhs, y0, s_max, direction=-1, **kw):
    """(length, state) of one period of alpha, found by event detection.

    A short event-free start moves off the trivial root at s = 0; the second
    leg stops at the first return of alpha.
    """
    y0 = np.asarray(y0, float)
    lead = 1e-3 * min(1.0, abs(y0[0]))
    first = integrate(rhs, y0, lead, dense=False, **kw)
    ev = period_event(y0[1], direction)
    ev.terminal = True
    sol = integrate(rhs, first.y[:, -1], s_max, events=[ev], s_start=lead,
                    dense=False, **kw)
    if sol.status != 1:
        raise DegenerateError(f"alpha did not return to {y0[1]:.6g} within s <= {s_max:g}")
    return float(sol.t_events[0][0]), sol.y_events[0][0]


@dataclass(frozen=True, eq=False)
class PolarProfile:
    """Dense polar solution with curve accessors."""

    sol: Solution
    rhs: object
    length: float

    def state(self, s):
        s = np.asarray(s, float)
        y = self.sol.sol(s.ravel())
        return y.reshape((3,) + s.shape)

    def curve(self, name="", note=""):
        rhs, sol = self.rhs, self.sol

        def fn(s):
            s = np.asarray(s, float)
            y = sol.sol(s.ravel())
            r, a, phi = (v.reshape(s.shape) for v in y)
            dy = rhs(0.0, y)
            k = (dy[1] + dy[2]).reshape(s.shape)
            e = np.exp(1j * (a + phi))
            return r * np.exp(1j * phi), e, 1j * k * e

        return CurvePlanar(fn, (0.0, self.length), True, name, note)


def integrate_profile(dalpha, y0, length, **kw) -> PolarProfile:
    rhs = polar_rhs(dalpha)
    sol = integrate(rhs, y0, length, **kw)
    return PolarProfile(sol, rhs, float(length))
