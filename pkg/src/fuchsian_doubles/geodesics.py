"""Geodesics of the unit disk stored by their ideal endpoints.

A geodesic with endpoint angles (t1, t2) lies on the level set

    F(z) = cos h (|z|^2 + 1) - 2 Re(z e^{-im}) = 0,   m = (t1+t2)/2, h = (t2-t1)/2,

which is a circle of center e^{im}/cos h and radius |tan h|, or a diameter when cos h = 0.
F/sin h is positive on the left of the oriented geodesic t1 -> t2.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import AsymptoticError, CoincidentError, IntersectingError, NotInteriorError
from .moebius import (ALG_TOL, EPS, INF, MoebiusMap, chordal, classify, is_inf, point_tag,
                      translate_to_origin)

TAU = 2.0 * math.pi


def _norm_angle(t: float) -> float:
    t = math.fmod(t, TAU)
    if t < 0:
        t += TAU
    if t >= TAU:
        t -= TAU
    return t


def _arc_contains(start: float, end: float, t: float) -> bool:
    """Is t strictly inside the counterclockwise arc start -> end?"""
    span = _norm_angle(end - start)
    off = _norm_angle(t - start)
    return 0.0 < off < span


def same_ideal_point(t1: float, t2: float, tol: float = EPS) -> bool:
    return abs(cmath.exp(1j * t1) - cmath.exp(1j * t2)) < tol


@dataclass(frozen=True)
class Geodesic:
    theta1: float
    theta2: float

    def __post_init__(self):
        t1, t2 = _norm_angle(float(self.theta1)), _norm_angle(float(self.theta2))
        if same_ideal_point(t1, t2, ALG_TOL):
            raise CoincidentError("geodesic endpoints coincide")
        object.__setattr__(self, "theta1", t1)
        object.__setattr__(self, "theta2", t2)

    @classmethod
    def from_points(cls, e1: complex, e2: complex) -> "Geodesic":
        return cls(cmath.phase(e1), cmath.phase(e2))

    @classmethod
    def degrees(cls, d1: float, d2: float) -> "Geodesic":
        return cls(math.radians(d1), math.radians(d2))

    @property
    def endpoints(self) -> tuple:
        return cmath.exp(1j * self.theta1), cmath.exp(1j * self.theta2)

    @property
    def _mh(self):
        return 0.5 * (self.theta1 + self.theta2), 0.5 * (self.theta2 - self.theta1)

    @property
    def is_diameter(self) -> bool:
        return abs(math.cos(self._mh[1])) < ALG_TOL

    @property
    def center(self) -> Optional[complex]:
        m, h = self._mh
        if self.is_diameter:
            return None
        return cmath.exp(1j * m) / math.cos(h)

    @property
    def radius(self) -> float:
        m, h = self._mh
        if self.is_diameter:
            return math.inf
        return abs(math.tan(h))

    def reversed(self) -> "Geodesic":
        return Geodesic(self.theta2, self.theta1)

    def same_line(self, other: "Geodesic", tol: float = EPS) -> bool:
        a1, a2 = self.theta1, self.theta2
        b1, b2 = other.theta1, other.theta2
        return ((same_ideal_point(a1, b1, tol) and same_ideal_point(a2, b2, tol))
                or (same_ideal_point(a1, b2, tol) and same_ideal_point(a2, b1, tol)))

    def level(self, z: complex) -> float:
        m, h = self._mh
        return math.cos(h) * (abs(z) ** 2 + 1.0) - 2.0 * (z * cmath.exp(-1j * m)).real

    def signed_distance(self, z: complex) -> float:
        """Hyperbolic distance from z to the geodesic, positive on the left."""
        if point_tag(z) != "interior":
            raise NotInteriorError(f"{z} is not interior to the disk")
        return math.asinh(self.level(z) / ((1.0 - abs(z) ** 2) * math.sin(self._mh[1])))

    def distance(self, z: complex) -> float:
        return abs(self.signed_distance(z))

    def side(self, z: complex, tol: float = EPS) -> int:
        """+1 left, -1 right, 0 on the line (closed disk points, by the level function)."""
        s = self.level(z) / math.sin(self._mh[1])
        if abs(s) < tol:
            return 0
        return 1 if s > 0 else -1

    def contains(self, z: complex, tol: float = EPS) -> bool:
        if is_inf(z):
            return False
        if point_tag(z) == "interior":
            return abs(self.signed_distance(z)) < tol
        return min(abs(z - e) for e in self.endpoints) < tol

    def reflection(self) -> MoebiusMap:
        m, h = self._mh
        e = cmath.exp(1j * m)
        return MoebiusMap(e, -math.cos(h), math.cos(h), -e.conjugate(), reversing=True)

    def image(self, g: MoebiusMap) -> "Geodesic":
        e1, e2 = self.endpoints
        return Geodesic.from_points(g(e1), g(e2))

    def foot(self) -> complex:
        """Point of the geodesic closest to the origin."""
        m, h = self._mh
        if self.is_diameter:
            return 0j
        c = math.cos(h)
        return cmath.exp(1j * m) * math.copysign(1.0, c) * (1.0 - abs(math.sin(h))) / abs(c)

    def point(self, t: float) -> complex:
        """Point at signed arc length t from the foot, positive towards theta2."""
        f = self.foot()
        T = translate_to_origin(f)
        u = T(self.endpoints[1])
        u /= abs(u)
        return T.inverse()(u * math.tanh(t / 2.0))

    def parameter(self, z: complex) -> float:
        """Inverse of ``point`` for z on the geodesic."""
        T = translate_to_origin(self.foot())
        u = T(self.endpoints[1])
        u /= abs(u)
        w = T(z) / u
        return 2.0 * math.atanh(max(-1.0, min(1.0, w.real)))

    def __repr__(self):
        return f"Geodesic({math.degrees(self.theta1):.6f}deg, {math.degrees(self.theta2):.6f}deg)"


REAL_DIAMETER = Geodesic(0.0, math.pi)
IMAG_DIAMETER = Geodesic(0.5 * math.pi, 1.5 * math.pi)


@dataclass(frozen=True)
class GeodesicSegment:
    carrier: Geodesic
    start: complex
    end: complex

    def length(self) -> float:
        if point_tag(self.start) != "interior" or point_tag(self.end) != "interior":
            return math.inf
        from .moebius import dist
        return dist(self.start, self.end)

    def points(self, n: int) -> list:
        t0 = self._param(self.start)
        t1 = self._param(self.end)
        return [self.carrier.point(t0 + (t1 - t0) * k / (n - 1)) for k in range(n)]

    def _param(self, z):
        if point_tag(z) != "interior":
            e1, e2 = self.carrier.endpoints
            return 20.0 if abs(z - e2) < abs(z - e1) else -20.0
        return self.carrier.parameter(z)


@dataclass(frozen=True)
class BoundaryInterval:
    """Counterclockwise arc of the unit circle from ``start`` to ``end``."""
    start: float
    end: float

    def __post_init__(self):
        object.__setattr__(self, "start", _norm_angle(self.start))
        object.__setattr__(self, "end", _norm_angle(self.end))

    @property
    def length(self) -> float:
        return _norm_angle(self.end - self.start) or TAU

    def contains(self, t: float) -> bool:
        return _arc_contains(self.start, self.end, _norm_angle(t))


# ------------------------------------------------------------ reflections

class _Boundary:
    def __repr__(self):
        return "BOUNDARY"


BOUNDARY = _Boundary()
BOUNDARY_REFLECTION = MoebiusMap(0, 1, 1, 0, reversing=True)


def half_turn(x: complex) -> MoebiusMap:
    """Order-two elliptic E_x fixing the interior point x."""
    if point_tag(x) != "interior":
        raise NotInteriorError(f"half-turn centre {x} is not interior")
    T = translate_to_origin(x)
    return T.inverse() @ MoebiusMap(1j, 0, 0, -1j) @ T


def reflect_in(obj) -> MoebiusMap:
    """Reflection in a geodesic, half-turn about an interior point, or inversion in the circle."""
    if isinstance(obj, Geodesic):
        return obj.reflection()
    if obj is BOUNDARY:
        return BOUNDARY_REFLECTION
    return half_turn(complex(obj))


# ------------------------------------------------------------ constructions

def geodesic_through(z: complex, w: complex) -> Geodesic:
    """Geodesic through z and w (closed disk), oriented from z to w."""
    tz, tw = point_tag(z), point_tag(w)
    if chordal(z, w) < ALG_TOL:
        raise CoincidentError("points coincide")
    if tz == "boundary" and tw == "boundary":
        return Geodesic.from_points(z, w)
    if tz != "interior":
        return geodesic_through(w, z).reversed()
    T = translate_to_origin(z)
    u = T(w)
    u /= abs(u)
    Ti = T.inverse()
    return Geodesic.from_points(Ti(-u), Ti(u))


def interleaved(g1: Geodesic, g2: Geodesic) -> bool:
    """Do the endpoint pairs separate each other on the circle (so the geodesics cross)?"""
    a1, a2 = g1.theta1, g1.theta2
    inside = [_arc_contains(a1, a2, t) for t in (g2.theta1, g2.theta2)]
    return inside[0] != inside[1]


def asymptotic(g1: Geodesic, g2: Geodesic, tol: float = EPS) -> bool:
    return any(same_ideal_point(s, t, tol) for s in (g1.theta1, g1.theta2)
               for t in (g2.theta1, g2.theta2))


def intersection(g1: Geodesic, g2: Geodesic) -> Optional[tuple]:
    """(point, angle in (0, pi/2]) if the geodesics cross in the disk, else None."""
    if g1.same_line(g2) or asymptotic(g1, g2) or not interleaved(g1, g2):
        return None
    m1, h1 = g1._mh
    m2, h2 = g2._mh
    c1, e1 = math.cos(h1), cmath.exp(1j * m1)
    c2, e2 = math.cos(h2), cmath.exp(1j * m2)
    u = c2 * e1.conjugate() - c1 * e2.conjugate()
    if abs(u) < 1e-15:
        z = 0j
    else:
        d = 1j * u.conjugate() / abs(u)
        # use the line with the larger |cos h| for a well conditioned quadratic
        c, e = (c1, e1) if abs(c1) >= abs(c2) else (c2, e2)
        b = (d * e.conjugate()).real
        disc = max(b * b - c * c, 0.0)
        if abs(c) < 1e-15:
            t = 0.0
        else:
            t = c / (b + math.copysign(math.sqrt(disc), b))
        z = t * d
    n1 = c1 * z - e1
    n2 = c2 * z - e2
    cosang = abs((n1 * n2.conjugate()).real) / (abs(n1) * abs(n2))
    return z, math.acos(min(1.0, cosang))


def crossing_angle(g1: Geodesic, g2: Geodesic, z: complex) -> float:
    """Unsigned angle in [0, pi/2] between the two lines at a common point z."""
    m1, h1 = g1._mh
    m2, h2 = g2._mh
    n1 = math.cos(h1) * z - cmath.exp(1j * m1)
    n2 = math.cos(h2) * z - cmath.exp(1j * m2)
    cosang = abs((n1 * n2.conjugate()).real) / (abs(n1) * abs(n2))
    return math.acos(min(1.0, cosang))


def common_perpendicular(g1: Geodesic, g2: Geodesic) -> Geodesic:
    """Common perpendicular of two ultraparallel geodesics, oriented from g1 to g2."""
    if asymptotic(g1, g2):
        raise AsymptoticError("geodesics share an ideal endpoint")
    if g1.same_line(g2) or interleaved(g1, g2):
        raise IntersectingError("geodesics cross")
    return classify(g2.reflection() @ g1.reflection()).axis


def foot_on(g: Geodesic, z: complex) -> complex:
    """Orthogonal projection of an interior point onto g."""
    R = g.reflection()
    w = R(z)
    if abs(w - z) < 1e-15:
        return z
    return intersection(g, geodesic_through(z, w))[0]


class DomainStatus(enum.Enum):
    BOUNDS_DOMAIN = "BoundsDomain"
    SEPARATES = "Separates"
    NOT_DISJOINT = "NotDisjoint"


class BoundsResult(NamedTuple):
    status: DomainStatus
    index: Optional[int] = None      # 1-based position of the separating line

    def __bool__(self):
        return self.status is DomainStatus.BOUNDS_DOMAIN

    def __str__(self):
        if self.status is DomainStatus.SEPARATES:
            return f"Separates({self.index})"
        return self.status.value


def bounds_domain(g1: Geodesic, g2: Geodesic, g3: Geodesic) -> BoundsResult:
    """Do three geodesics bound a common region, none separating the other two?"""
    gs = (g1, g2, g3)
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = gs[i], gs[j]
            if a.same_line(b) or asymptotic(a, b) or interleaved(a, b):
                return BoundsResult(DomainStatus.NOT_DISJOINT)
    for i in range(3):
        g = gs[i]
        others = [t for k in range(3) if k != i for t in (gs[k].theta1, gs[k].theta2)]
        sides = {_arc_contains(g.theta1, g.theta2, t) for t in others}
        if len(sides) > 1:
            return BoundsResult(DomainStatus.SEPARATES, i + 1)
    return BoundsResult(DomainStatus.BOUNDS_DOMAIN)


def polygon_angle(v: complex, w1: complex, w2: complex) -> float:
    """Interior angle at vertex v between the geodesic rays v->w1 and v->w2, in [0, pi]."""
    T = translate_to_origin(v)
    a = T(w1)
    b = T(w2)
    return abs(cmath.phase(b / a))


def ray_direction(v: complex, w: complex) -> complex:
    """Unit tangent at the interior point v of the geodesic ray towards w."""
    u = translate_to_origin(v)(w)
    return u / abs(u)


__all__ = [
    "Geodesic", "GeodesicSegment", "BoundaryInterval", "BOUNDARY", "BOUNDARY_REFLECTION",
    "REAL_DIAMETER", "IMAG_DIAMETER", "half_turn", "reflect_in", "geodesic_through",
    "interleaved", "asymptotic", "intersection", "crossing_angle", "common_perpendicular",
    "foot_on", "mirror_of", "DomainStatus", "BoundsResult", "bounds_domain", "polygon_angle", "INF",
]


def mirror_of(R: MoebiusMap) -> Geodesic:
    """Fixed geodesic of a reversing involution that is a reflection in a line."""
    if not R.reversing:
        raise NotInteriorError("not an anti-conformal map")
    a, b, c, d = R.a, R.b, R.c, R.d
    # on the circle conj(z) = 1/z, so z = (a + b z)/(c + d z)
    if abs(d) < 1e-14:
        raise NotInteriorError("map does not preserve the disk")
    disc = cmath.sqrt((c - b) ** 2 + 4 * a * d)
    roots = [(-(c - b) + disc) / (2 * d), (-(c - b) - disc) / (2 * d)]
    for z in roots:
        if is_inf(z) or abs(abs(z) - 1.0) > 1e-7:
            raise NotInteriorError("involution has no fixed geodesic in the disk")
    return Geodesic.from_points(*roots)
