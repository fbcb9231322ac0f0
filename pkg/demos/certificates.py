"""Algebraic certificates: quaternion identities and the polynomial system
ruling out non-centered Hamiltonian-stationary type I surfaces.

    python demos/certificates.py
"""

import numpy as np

from lagsurf.certify import (Quaternion, coefficient_checksum, eval_E, eval_F,
                             nonexistence_certificate, quat_u, quat_v)


def main():
    p = Quaternion(1, 0, 1, 0) * (1 / np.sqrt(2))
    print(f"p = (1 + j)/sqrt(2): u = {quat_u(p).as_array().round(12)}, "
          f"v = {quat_v(p).as_array().round(12)}")
    rep = nonexistence_certificate()
    print("quaternion identities over 1000 seeded unit quaternions:")
    for k, v in rep.quaternion.items():
        print(f"  {k:20s} max error {v:.1e}")
    print("roots of E(0, Y) = 35 + 4Y - 12Y^2:")
    for y, f, m in zip(rep.roots, rep.F_at_roots, rep.F_expected_magnitude):
        print(f"  Y = {y:+.15f}: E = {eval_E((0.0, y)):+.1e}, F = {eval_F((0.0, y)):+.6f}, "
              f"|1100 +- 85 sqrt(106)| = {m:.6f}")
    print(f"endgame constants bounded below by {rep.endgame_min}")
    print(f"coefficient checksum {coefficient_checksum()}")
    print(f"certificate {'holds' if rep.ok else 'FAILS'} "
          f"(polynomial part {rep.elapsed * 1e3:.2f} ms)")


if __name__ == "__main__":
    main()
