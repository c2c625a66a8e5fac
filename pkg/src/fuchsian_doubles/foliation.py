"""Fermi coordinates over the invariant plane P of G in H^3.

A point of H^3 is (x, t): x in the disk (identified with P) and t the signed
distance to P, positive on the exterior side.  The perpendicular through x
ends at x (t -> -inf) and at 1/conj(x) (t -> +inf).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .domains import locate
from .errors import BadBoundaryElementError, BadLabelError, FrameMismatchError
from .geodesics import Geodesic, half_turn, intersection
from .moebius import INF, MoebiusMap, dist, evaluate_word, translate_to_origin
from .stopping import CaseTag, StoppingFrame
from .weierstrass import GroupPresentation, phi_images

EXTERIOR, INTERIOR = 1, -1


@dataclass(frozen=True)
class FermiPoint:
    base: complex
    height: float
    side: int = 0                      # for height 0: +1 exterior sheet, -1 interior sheet
    ideal: Optional[complex] = None    # set when height is +-inf
    in_core: bool = False

    @property
    def is_ideal(self) -> bool:
        return self.ideal is not None


def _ideal_end(x: complex, t: float) -> complex:
    if t < 0:
        return x
    return INF if x == 0 else 1.0 / x.conjugate()


def fermi(x: complex, t: float, **kw) -> FermiPoint:
    if math.isinf(t):
        return FermiPoint(x, t, ideal=_ideal_end(x, t), **kw)
    return FermiPoint(x, t, **kw)


def fermi_dist(P: FermiPoint, Q: FermiPoint) -> float:
    """cosh d = cosh t1 cosh t2 cosh rho - sinh t1 sinh t2, in half-angle form."""
    x, y = P.base, Q.base
    q = abs(x - y) ** 2 / ((1 - abs(x) ** 2) * (1 - abs(y) ** 2))
    s2 = math.cosh(P.height) * math.cosh(Q.height) * q + math.sinh((P.height - Q.height) / 2) ** 2
    return 2.0 * math.asinh(math.sqrt(s2))


def act(g: MoebiusMap, P: FermiPoint) -> FermiPoint:
    """Isometries of the disk extend to H^3 preserving heights."""
    return FermiPoint(g(P.base), P.height, P.side, P.ideal and g(P.ideal), P.in_core)


# ------------------------------------------------------------ pleating

@dataclass
class PleatResult:
    image: FermiPoint
    on_locus: bool
    reducing: MoebiusMap
    word: tuple = ()


def _locus_lines(pres: GroupPresentation) -> list:
    lines = [s.carrier for s in pres.domain.sides if s.kind == "axis"]
    lines += [s.carrier for s in pres.F_K.sides if s.kind == "axis"]
    return lines


def pleat(x: complex, pres: GroupPresentation, hom: Optional[dict] = None,
          band: float = 1e-9) -> PleatResult:
    hom = hom if hom is not None else phi_images(pres)
    g, rep, w = locate(x, pres.domain, pres.pairing)
    on_locus = any(c.distance(rep) < band for c in _locus_lines(pres))
    back = evaluate_word(w, hom).inverse()
    if pres.F_K.contains(rep, 1e-12):
        img = FermiPoint(back(rep), 0.0, EXTERIOR)
    else:
        img = FermiPoint(back(pres.fold(rep)), 0.0, INTERIOR)
    return PleatResult(img, on_locus, g, w)


# ------------------------------------------------------------ Weierstrass lines

DISJOINT_LABELS = ("p_L", "q_L", "p_L_A", "q_L_A", "p_L_B", "q_L_B")
INTERSECTING_LABELS = ("p", "q", "p_A", "q_A", "p_B", "q_B")


def _boundary_axes(frame: StoppingFrame) -> list:
    return [frame.axis_A, frame.axis_B, frame.axis_AinvB]


def _ray(label: str, frame: StoppingFrame):
    """(line oriented towards the label's ideal endpoint, arc parameter of its S(0) endpoint)."""
    line = {"L": frame.L, "L_A": frame.L_A, "L_B": frame.L_B}[label[2:]]
    ends = line.endpoints
    from .weierstrass import _schottky_labels
    target = dict(_schottky_labels(frame))[label]
    if abs(ends[1] - target) > abs(ends[0] - target):
        line = line.reversed()
    ts = []
    for ax in _boundary_axes(frame):
        hit = intersection(line, ax)
        if hit is not None:
            ts.append(line.parameter(hit[0]))
    if len(ts) != 2:
        raise FrameMismatchError(f"{label}: expected two axis crossings")
    return line, max(ts), min(ts)


def weierstrass_line(label: str, t: float, frame: StoppingFrame) -> FermiPoint:
    if frame.case is CaseTag.INTERSECTING:
        if label not in INTERSECTING_LABELS:
            raise BadLabelError(label)
        x = {"p": frame.p, "p_A": frame.p_A, "p_B": frame.p_B}[label.replace("q", "p")]
        return fermi(x, t)
    if label not in DISJOINT_LABELS:
        raise BadLabelError(label)
    line, t0, t1 = _ray(label, frame)
    if math.isinf(t):
        end = line.endpoints[1] if t > 0 else line.endpoints[0]
        return FermiPoint(line.point(t0), 0.0, ideal=end)
    u = t0 + t
    return FermiPoint(line.point(u), 0.0, in_core=t1 <= u <= t0)


def generalized_weierstrass_points(s: float, frame: StoppingFrame) -> dict:
    """The six points where the Weierstrass lines meet S(s)."""
    if frame.case is CaseTag.INTERSECTING:
        return {lab: weierstrass_line(lab, s if lab.startswith("q") else -s, frame)
                for lab in INTERSECTING_LABELS}
    return {lab: weierstrass_line(lab, s, frame) for lab in DISJOINT_LABELS}


# ------------------------------------------------------------ equidistant sets

def boundary_element(name: str, frame: StoppingFrame) -> tuple:
    """(group element, its axis) for a boundary curve of the quotient."""
    A, B = frame.A, frame.B
    if frame.case is CaseTag.DISJOINT:
        table = {"A": (A, frame.axis_A), "B": (B, frame.axis_B),
                 "A^-1B": (A.inverse() @ B, frame.axis_AinvB)}
    else:
        C = B @ A @ B.inverse() @ A.inverse()
        table = {"[B,A]": (C, frame.comm_axes["[B,A]"])}
    if name not in table:
        raise BadBoundaryElementError(name)
    return table[name]


def offset(line: Geodesic, y: complex, d: float) -> complex:
    """Point on the perpendicular to line at y with signed distance d."""
    T = translate_to_origin(y)
    u = T(line.endpoints[1])
    u /= abs(u)
    return T.inverse()(1j * u * math.tanh(d / 2.0))


@dataclass
class SampledCurve:
    label: str
    samples: list = field(default_factory=list)
    step: float = 0.0


def _period(g: MoebiusMap) -> float:
    tr = abs(g.trace)
    return 2.0 * math.acosh(tr / 2.0)


def equidistant_sample(s: float, which: str, n: int, frame: StoppingFrame,
                       pres: Optional[GroupPresentation] = None, element: Optional[str] = None):
    if which == "weierstrassPoints":
        return list(generalized_weierstrass_points(s, frame).values())
    if which == "coreBoundary":
        if pres is None:
            raise FrameMismatchError("coreBoundary needs the presentation")
        out = []
        for side in pres.F_K.sides:
            if side.kind != "axis":
                continue
            i = pres.F_K.sides.index(side)
            a, b = pres.F_K.side_ends(i)
            ta, tb = side.carrier.parameter(a), side.carrier.parameter(b)
            for k in range(n):
                x = side.carrier.point(ta + (tb - ta) * k / max(n - 1, 1))
                out += [FermiPoint(x, s), FermiPoint(x, -s)]
        return SampledCurve("coreBoundary", out)
    g, ax = boundary_element(element, frame)
    ell = _period(g)
    step = ell / n
    ys = [ax.point(k * step) for k in range(n)]
    if which == "funnelBoundary":
        pts = [FermiPoint(y, s) for y in ys] + [FermiPoint(y, -s) for y in ys]
        return SampledCurve(f"{element}(+-s)", pts, step * math.cosh(s))
    if which == "centralCurve":
        if pres is None:
            raise FrameMismatchError("centralCurve needs the presentation")
        inside = ax.signed_distance(pres.F_K.interior_point())
        d = -math.copysign(s, inside)
        return SampledCurve(f"central {element}", [FermiPoint(offset(ax, y, d), 0.0) for y in ys],
                            step * math.cosh(s))
    raise BadLabelError(which)


# ------------------------------------------------------------ involutions

def involution_map(frame: StoppingFrame) -> MoebiusMap:
    """Plane-level representative h of j."""
    if frame.case is CaseTag.DISJOINT:
        return frame.L.reflection()
    return half_turn(frame.p)


def surface_involution(tag: str, P: FermiPoint, frame: StoppingFrame) -> FermiPoint:
    """J reflects in P.  j is the half-turn about L (disjoint) or about V_p (intersecting)."""
    if tag == "J":
        return FermiPoint(P.base, -P.height, -P.side, P.ideal and _ideal_end(P.base, P.height * -1))
    h = involution_map(frame)
    flip = frame.case is CaseTag.DISJOINT
    if tag == "j":
        t = -P.height if flip else P.height
    elif tag == "Jhat":
        t = P.height if flip else -P.height
    else:
        raise BadLabelError(tag)
    return FermiPoint(h(P.base), t)


def orbit_distance(P: FermiPoint, Q: FermiPoint, table) -> float:
    """Distance in the quotient H^3/G, estimated over a finite word table."""
    return min(fermi_dist(act(m, Q), P) for _, m in table)


__all__ = ["FermiPoint", "fermi", "fermi_dist", "act", "PleatResult", "pleat",
           "weierstrass_line", "generalized_weierstrass_points", "boundary_element",
           "offset", "SampledCurve", "equidistant_sample", "involution_map",
           "surface_involution", "orbit_distance", "EXTERIOR", "INTERIOR", "dist"]
