"""The two reference generator pairs: FD (disjoint axes) and FX (crossing axes)."""
import math

from .geodesics import Geodesic
from .moebius import MoebiusMap

ELL = Geodesic.degrees(160, 200)
ELL_A = Geodesic.degrees(40, 80)
ELL_B = Geodesic.degrees(280, 320)


def fd_pair():
    R = ELL.reflection()
    return R @ ELL_A.reflection(), R @ ELL_B.reflection()


def fx_pair():
    c, s = math.cosh(1.0), math.sinh(1.0)
    A = MoebiusMap(c, s, s, c)
    rot = MoebiusMap(1j, 0, 0, 1)        # z -> iz
    return A, A.conj_by(rot)


FIXTURES = {"FD": fd_pair, "FX": fx_pair}
