"""Self-similar solutions of mean curvature flow among Lagrangian surfaces.

Positive controls (Clifford torus, centered type I tori, products of equal
circles, a closed centered type I profile found by shooting) have residual
|H + lam X^perp| at roundoff for the right lam. Negative controls (a general
type I surface, the type III hyperbola surface, the Lagrangian helicoid)
keep a residual of order one for every lam in the scan.

    python demos/soliton_controls.py
"""

import numpy as np

from lagsurf import catalog, curves
from lagsurf.cyclic import make_centered_type1, make_centered_type3, make_general_type1
from lagsurf.ruled import make_blair_helicoid, ruled_soliton_obstruction
from lagsurf.solitons import (SolitonParams, make_product_circle_curve,
                              self_similar_residual, shoot_closed_profile,
                              soliton_obstruction_scan)

LAMBDAS = (-2, -1, -0.5, -0.25, 0.25, 0.5, 1, 2)


def positive():
    print("positive controls")
    rows = [("Clifford torus", catalog.build("clifford_torus"), SolitonParams(1.0))]
    for r in (0.5, 1.0, 2.0):
        rows.append((f"r e^(is/r)(cos t, sin t), r={r:g}",
                     make_centered_type1(curves.planar_circle(r)), SolitonParams(1 / r ** 2)))
        rows.append((f"S1({r:g}) x S1({r:g}), full trace",
                     make_product_circle_curve(r, curves.planar_circle(r)),
                     SolitonParams(1 / r ** 2, "full")))
    prof = shoot_closed_profile(1, 3)
    print(f"  shooting (1,3): r0 = {prof.r0:.10f}, closure {prof.closure:.1e}, "
          f"winding {prof.winding}, curvature maxima {prof.curvature_maxima}")
    rows.append(("type I over the (1,3) profile", make_centered_type1(prof.curve),
                 SolitonParams(1.0)))
    for label, spec, params in rows:
        print(f"  {label:40s} lam={params.lam:<6g} residual "
              f"{self_similar_residual(spec, params).max_abs:.1e}")


def negative():
    print("negative controls (best lam over the scan)")
    rng = np.random.default_rng(2024)
    w1, w2 = rng.uniform(0.5, 1.5, 2)
    for label, spec in [(f"general type I, W=({w1:.3f},{w2:.3f})",
                         make_general_type1(curves.planar_circle(), w1, w2)),
                        ("type III over the hyperbola",
                         make_centered_type3(curves.ads_hyperbola()))]:
        scan = soliton_obstruction_scan(spec, LAMBDAS)
        print(f"  {label:40s} min max residual {scan.min_max:.3f} at lam={scan.best_lambda:g}")
    ob = ruled_soliton_obstruction(make_blair_helicoid(), LAMBDAS)
    print(f"  {'Lagrangian helicoid':40s} min max residual {ob.scan_min_max:.3f} "
          f"at lam={ob.best_lambda:g}")
    print(f"    <X, i gamma> varies along rulings by {ob.x_nt_variation:.1e}, "
          f"<H, i gamma> by at least {ob.h_nt_spread:.3f}")


if __name__ == "__main__":
    positive()
    negative()
