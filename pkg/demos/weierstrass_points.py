"""Print the Schottky and Nielsen Weierstrass points of both reference pairs."""
import cmath
import math

from fuchsian_doubles.cli import Pipeline
from fuchsian_doubles.fixtures import FIXTURES
from fuchsian_doubles.moebius import is_inf


def show(z):
    if is_inf(z):
        return "inf"
    s = f"{z.real:+.6f} {z.imag:+.6f}i"
    if abs(abs(z) - 1) < 1e-9:
        s += f"   ({math.degrees(cmath.phase(z)) % 360:.1f} deg)"
    return s


for name, make in FIXTURES.items():
    P = Pipeline(*make())
    print(f"{name}: {P.stop.case.value} axes")
    for ws in (P.schottky, P.nielsen):
        print(f"  {ws.kind}")
        for lab, z in zip(ws.labels, ws.points):
            print(f"    {lab:6s} {show(z)}")
        for note in ws.notes:
            print(f"    note: {note}")
    print("  relator of Gamma:", " ".join(f"{g}^{e}" if e < 0 else g for g, e in P.pres.relator))
