"""Closed Hamiltonian-stationary profiles and the surfaces they generate.

For each winding (p, q) the flux constant C is found by root-finding on the
total angular variation Phi(C) = 2 pi p / q, the profile is integrated over
q periods of alpha, and the centered type I surface over it is checked for
Delta beta = 0 and written as OBJ.

    python demos/closed_hamiltonian_stationary.py [--out DIR]
"""

import argparse
import os

import numpy as np

from lagsurf import export
from lagsurf.cyclic import make_centered_type1
from lagsurf.hamstat import (C_closed_form, build_closed_hs_curve,
                             hs_residual_suite, phi_of_C)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out", default="demo_output")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    print(f"{'(p,q)':>6} {'C':>18} {'|C - closed form|':>18} {'Phi/2pi':>9} "
          f"{'closure':>9} {'crossings':>9} {'max|Db|':>9}")
    for p, q in [(1, 1), (1, 3), (3, 1), (2, 3), (1, 5)]:
        c = build_closed_hs_curve(p, q)
        spec = make_centered_type1(c.curve)
        lap = hs_residual_suite(spec).max_abs
        print(f"{f'({p},{q})':>6} {c.c_flux:18.15f} {abs(c.c_flux - C_closed_form(p, q)):18.1e} "
              f"{phi_of_C(c.c_flux) / (2 * np.pi):9.5f} {c.closure:9.1e} "
              f"{c.self_intersections:9d} {lap:9.1e}")
        export.write_obj(os.path.join(args.out, f"hs_closed_{p}_{q}.obj"), spec,
                         spec.default_grid(128, 32))
        s = np.linspace(0, c.curve.domain[1], 1000)
        z = c.curve.value(s)
        export.atomic_write(os.path.join(args.out, f"hs_profile_{p}_{q}.csv"),
                            export.csv_text(["s", "x", "y"], zip(s, z.real, z.imag)))
    print(f"\nprofiles and meshes written to {args.out}/")


if __name__ == "__main__":
    main()
