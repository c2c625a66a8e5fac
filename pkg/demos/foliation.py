"""Generalized Weierstrass points on the equidistant surfaces S(s) and how j moves them."""
from fuchsian_doubles import foliation as fol
from fuchsian_doubles.cli import Pipeline
from fuchsian_doubles.fixtures import FIXTURES

for name, make in FIXTURES.items():
    P = Pipeline(*make())
    fr = P.frame
    print(name)
    for s in (0.1, 1.0, 5.0):
        W = fol.generalized_weierstrass_points(s, fr)
        worst = max(fol.orbit_distance(Q, fol.surface_involution("j", Q, fr), P.g_table)
                    for Q in W.values())
        print(f"  s = {s:4}:  j moves the six points by at most {worst:.2e} in the quotient")
        for lab, Q in W.items():
            print(f"      {lab:6s} base {Q.base.real:+.5f} {Q.base.imag:+.5f}i  height {Q.height:+.2f}")
