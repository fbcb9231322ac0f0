import numpy as np
import pytest
from hypothesis import given, strategies as st

from lagsurf.certify import (ONE, QI, QJ, QK, PoleError, Quaternion,
                             coefficient_checksum, endgame_constants, eval_E,
                             eval_E_X, eval_E_Y, eval_F, eval_g,
                             factorization_identity, nonexistence_certificate,
                             quat_u, quat_u_closed, quat_v, quat_v_closed,
                             quaternion_suite, x0_roots)

comp = st.floats(-3, 3, allow_nan=False)
quats = st.tuples(comp, comp, comp, comp).map(lambda a: Quaternion(*a))
nonzero = quats.filter(lambda q: q.norm2() > 1e-3)


def close(a, b, tol=1e-12):
    return np.max(np.abs((a - b).as_array())) < tol


def test_hamilton_rules():
    for q in (QI, QJ, QK):
        assert close(q * q, -ONE)
    assert close(QI * QJ, QK) and close(QJ * QK, QI) and close(QK * QI, QJ)
    assert close(QJ * QI, -QK)


@given(quats, quats, quats)
def test_associative_and_multiplicative_norm(a, b, c):
    assert close((a * b) * c, a * (b * c), 1e-9)
    assert abs(abs(a * b) - abs(a) * abs(b)) < 1e-9


@given(nonzero)
def test_inverse(p):
    assert close(p * p.inverse(), ONE, 1e-10)


@given(nonzero)
def test_u_v_closed_forms_any_scale(p):
    assert close(quat_u(p), quat_u_closed(p), 1e-10)
    assert close(quat_v(p), quat_v_closed(p), 1e-10)
    assert close(quat_v(p), -(quat_u(p) * QI), 1e-10)


@given(quats)
def test_factorization_identity(p):
    lhs, rhs = factorization_identity(p)
    assert abs(lhs - rhs) < 1e-9 * max(1.0, rhs)


def test_u_v_special_values():
    p = Quaternion(1, 0, 1, 0) * (1 / np.sqrt(2))
    assert close(quat_u(p), Quaternion(0, 0, 2, 0))
    assert close(quat_v(p), Quaternion(0, 0, 0, 2))
    assert close(quat_u(ONE), Quaternion(0)) and close(quat_u(QJ), Quaternion(0))
    with pytest.raises(ValueError):
        quat_u(Quaternion(0))


def test_quaternion_suite_seeded():
    a = quaternion_suite(200, seed=3)
    assert a == quaternion_suite(200, seed=3)
    assert max(a.values()) < 1e-12


def test_x0_roots_closed_form():
    # E(0, Y) = 35 + 4 Y - 12 Y^2
    s = np.sqrt(106.0)
    assert np.allclose(x0_roots(), ((1 + s) / 6, (1 - s) / 6), atol=1e-14)
    assert all(isinstance(r, float) for r in x0_roots())


def test_E_derivatives_match_differences():
    h = 1e-6
    for X, Y in [(0.3, -0.7), (1.2, 0.4), (-0.5, 2.0)]:
        fx = (eval_E((X + h, Y)) - eval_E((X - h, Y))) / (2 * h)
        fy = (eval_E((X, Y + h)) - eval_E((X, Y - h))) / (2 * h)
        assert abs(fx - eval_E_X((X, Y))) < 1e-5 * max(1, abs(fx))
        assert abs(fy - eval_E_Y((X, Y))) < 1e-5 * max(1, abs(fy))


def test_F_at_roots():
    s = np.sqrt(106.0)
    yp, ym = x0_roots()
    assert abs(abs(eval_F((0.0, yp))) - (1100 + 85 * s)) < 1e-9
    assert abs(abs(eval_F((0.0, ym))) - abs(1100 - 85 * s)) < 1e-9
    assert eval_F((0.0, yp)) < 0 and eval_F((0.0, ym)) < 0


def test_g_pole():
    # the denominator contains the factor (1 - X) when Y = 0
    with pytest.raises(PoleError):
        eval_g((1.0, 0.0))
    assert np.isfinite(eval_g((0.0, 0.5)))


def test_coefficient_checksum():
    assert coefficient_checksum() == {"E_sum": -174.0, "E_weighted": -3004.0,
                                      "g_sum": 18.0, "g_weighted": 119.0}


@given(st.floats(-50, 50), st.floats(0.05, 3.0), st.floats(0.1, 5.0))
def test_endgame_constants(w, alpha, r):
    c1, c2 = endgame_constants(w, alpha, r)
    assert abs(c1 - (3 + 3 * w * w)) < 1e-9 * (1 + w * w)
    assert abs(c2 - (5 + 3 * w * w)) < 1e-9 * (1 + w * w)


def test_certificate_report():
    rep = nonexistence_certificate(n_quaternions=100)
    assert rep.ok and not rep.failures
    d = rep.to_dict()
    assert d["roots"] == list(rep.roots) and d["ok"] is True
