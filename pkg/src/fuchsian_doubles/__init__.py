"""Two-generator Fuchsian groups: stopping generators, fundamental domains, the Schottky
and Nielsen doubles with their Weierstrass points, and the equidistant foliation."""
from .errors import GeometryError
from .moebius import EPS, INF, MoebiusMap, classify, dist, word
from .geodesics import Geodesic, bounds_domain, common_perpendicular, half_turn
from .stopping import CaseTag, StoppingFrame, commutator_case, nielsen_search
from .domains import build_domains, locate, quotient_topology, tile, verify_poincare
from .weierstrass import (gamma_group, involution_action, nielsen_weierstrass, phi_check,
                          schottky_weierstrass)
from .foliation import FermiPoint, fermi_dist, pleat, surface_involution, weierstrass_line
from .fixtures import FIXTURES, fd_pair, fx_pair

__version__ = "0.1.0"
