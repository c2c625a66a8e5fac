"""Convex hyperbolic polygons with side pairings: F, F_K, the hexagon, vertex cycles, tiling.

Polygons are stored counterclockwise: side i runs from vertex i to vertex i+1 with the
interior on its left. A side is either carried by a geodesic (kind 'reflection' or
'axis') or is an arc of the unit circle (kind 'ideal').
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import CycleFailureError, FrameMismatchError, LocateTimeoutError
from .geodesics import (Geodesic, GeodesicSegment, interleaved, intersection, polygon_angle,
                        same_ideal_point)
from .moebius import (EPS, IDENTITY, MoebiusMap, chordal, evaluate_word, is_identity,
                      point_tag, projective_eq, reduced_words, word_inverse, word_reduce,
                      word_str)
from .stopping import CaseTag, StoppingFrame

MAX_CROSSINGS = 10_000


@dataclass(frozen=True)
class Side:
    carrier: Optional[Geodesic]      # None for an ideal arc
    kind: str                        # 'reflection', 'axis' or 'ideal'
    label: str


@dataclass(frozen=True)
class HyperPolygon:
    vertices: tuple
    sides: tuple
    name: str = ""

    def __len__(self):
        return len(self.sides)

    def index(self, label: str) -> int:
        for i, s in enumerate(self.sides):
            if s.label == label:
                return i
        raise KeyError(label)

    def side_ends(self, i: int) -> tuple:
        n = len(self.sides)
        return self.vertices[i], self.vertices[(i + 1) % n]

    def is_ideal_vertex(self, i: int) -> bool:
        return point_tag(self.vertices[i], 1e-9) == "boundary"

    def angle(self, i: int) -> float:
        """Interior angle at vertex i (0 at ideal vertices)."""
        if self.is_ideal_vertex(i):
            return 0.0
        n = len(self.vertices)
        v = self.vertices[i]
        return polygon_angle(v, self._toward(i, (i - 1) % n), self._toward(i, i))

    def _toward(self, i, s):
        """A point on side s seen from its endpoint vertex i."""
        a, b = self.side_ends(s)
        return b if abs(a - self.vertices[i]) < abs(b - self.vertices[i]) else a

    def angles(self) -> list:
        return [self.angle(i) for i in range(len(self.vertices))]

    def area(self) -> float:
        """Gauss-Bonnet: (n - 2) pi - sum of angles."""
        n = len(self.vertices)
        return (n - 2) * math.pi - sum(self.angles())

    def signed_distances(self, z: complex) -> list:
        return [s.carrier.signed_distance(z) if s.carrier is not None else math.inf
                for s in self.sides]

    def contains(self, z: complex, tol: float = EPS) -> bool:
        if point_tag(z) != "interior":
            return False
        return all(d >= -tol for d in self.signed_distances(z))

    def image(self, g: MoebiusMap) -> "HyperPolygon":
        verts = [g(v) for v in self.vertices]
        sides = [Side(s.carrier.image(g) if s.carrier else None, s.kind, s.label)
                 for s in self.sides]
        if g.reversing:
            # images run clockwise: restart the cycle backwards from vertex 0
            n = len(verts)
            verts = [verts[(-k) % n] for k in range(n)]
            sides = [sides[(-k - 1) % n] for k in range(n)]
            sides = [Side(s.carrier.reversed() if s.carrier else None, s.kind, s.label)
                     for s in sides]
        return HyperPolygon(tuple(verts), tuple(sides), self.name)

    def boundary_samples(self, per_side: int = 16) -> list:
        pts = []
        for i, s in enumerate(self.sides):
            a, b = self.side_ends(i)
            if s.carrier is None:
                t0, t1 = cmath.phase(a), cmath.phase(b)
                span = (t1 - t0) % (2 * math.pi)
                pts += [cmath.exp(1j * (t0 + span * k / per_side)) for k in range(per_side)]
            else:
                pts += GeodesicSegment(s.carrier, a, b).points(per_side + 1)[:-1]
        return pts

    def klein_vertices(self) -> list:
        return [2 * v / (1 + abs(v) ** 2) for v in self.vertices]

    def interior_point(self, weights=None) -> complex:
        """Point of the polygon from a convex combination of its Klein-model vertices."""
        ks = self.klein_vertices()
        if weights is None:
            weights = [1.0] * len(ks)
        tot = sum(weights)
        k = sum(w * x for w, x in zip(weights, ks)) / tot
        return k / (1 + math.sqrt(max(0.0, 1 - abs(k) ** 2)))


def _signed_area(pts) -> float:
    return 0.5 * sum((pts[i].conjugate() * pts[(i + 1) % len(pts)]).imag
                     for i in range(len(pts)))


def _orient(carrier: Geodesic, a: complex, b: complex) -> Geodesic:
    """Carrier oriented so that b follows a."""
    if point_tag(a, 1e-9) == "boundary" or point_tag(b, 1e-9) == "boundary":
        e1, e2 = carrier.endpoints
        if point_tag(a, 1e-9) == "boundary":
            fwd = abs(a - e1) < abs(a - e2)
        else:
            fwd = abs(b - e2) < abs(b - e1)
        return carrier if fwd else carrier.reversed()
    return carrier if carrier.parameter(b) > carrier.parameter(a) else carrier.reversed()


def compact_polygon(items, name: str = "", splits: Optional[dict] = None) -> HyperPolygon:
    """Polygon from a cyclic list of (carrier, kind, label), consecutive carriers crossing.

    ``splits`` maps the index k of a side to an explicit start vertex, for sides whose
    carrier is the same line as the previous side's (straight angles).
    """
    splits = splits or {}
    n = len(items)
    verts = []
    for k in range(n):
        if k in splits:
            verts.append(complex(splits[k]))
            continue
        g0, g1 = items[k - 1][0], items[k][0]
        hit = intersection(g0, g1)
        if hit is None:
            raise FrameMismatchError(f"sides {items[k - 1][2]} and {items[k][2]} do not meet")
        verts.append(hit[0])
    sides = [Side(_orient(g, verts[k], verts[(k + 1) % n]), kind, label)
             for k, (g, kind, label) in enumerate(items)]
    poly = HyperPolygon(tuple(verts), tuple(sides), name)
    if _signed_area(poly.boundary_samples(4)) < 0:
        # run the carriers backwards; old vertex k becomes new vertex 1 - k
        rev_items = [items[(-k) % n] for k in range(n)]
        new_splits = {(1 - k) % n: v for k, v in splits.items()}
        return compact_polygon(rev_items, name, new_splits)
    _check_simple(poly)
    return poly


def ideal_polygon(lines, name: str = "") -> HyperPolygon:
    """Region bounded by pairwise disjoint geodesics, none separating the others.

    ``lines`` is a list of (geodesic, kind, label); the region is the one whose closure
    meets the circle in the arcs between consecutive lines.
    """
    ends = []
    for idx, (g, _, _) in enumerate(lines):
        for t in (g.theta1, g.theta2):
            ends.append((t % (2 * math.pi), idx))
    ends.sort()
    # rotate so that the two endpoints of each line are consecutive
    if ends[0][1] != ends[1][1]:
        ends = ends[1:] + ends[:1]
    verts, sides = [], []
    for k in range(0, len(ends), 2):
        (t1, i1), (t2, i2) = ends[k], ends[k + 1]
        if i1 != i2:
            raise FrameMismatchError("lines interleave; no ideal polygon")
        g, kind, label = lines[i1]
        e1, e2 = cmath.exp(1j * t1), cmath.exp(1j * t2)
        verts += [e1, e2]
        sides.append(Side(Geodesic(t1, t2), kind, label))
        sides.append(Side(None, "ideal", f"arc:{label}"))
    return HyperPolygon(tuple(verts), tuple(sides), name)


def _check_simple(poly: HyperPolygon):
    """Non-adjacent geodesic sides of a convex polygon must not cross inside the segments."""
    n = len(poly.sides)
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            si, sj = poly.sides[i], poly.sides[j]
            if si.carrier is None or sj.carrier is None or si.carrier.same_line(sj.carrier):
                continue
            hit = intersection(si.carrier, sj.carrier)
            if hit is None:
                continue
            z = hit[0]
            if _on_segment(poly, i, z) and _on_segment(poly, j, z):
                raise FrameMismatchError(f"sides {si.label} and {sj.label} cross")


def _on_segment(poly, i, z, tol=1e-9) -> bool:
    a, b = poly.side_ends(i)
    g = poly.sides[i].carrier
    if point_tag(a, 1e-9) != "interior" or point_tag(b, 1e-9) != "interior":
        return True
    ta, tb, tz = g.parameter(a), g.parameter(b), g.parameter(z)
    return min(ta, tb) + tol < tz < max(ta, tb) - tol


# ------------------------------------------------------------ pairings

@dataclass(frozen=True)
class Pairing:
    source: int        # side index i
    target: int        # side index j, with g(side i) = side j
    word: tuple
    map: MoebiusMap


@dataclass(frozen=True)
class SidePairing:
    gens: dict
    pairs: tuple

    def partner(self, side: int):
        """(map sending this side to its partner, partner index, word) or None if free."""
        for p in self.pairs:
            if p.source == side:
                return p.map, p.target, p.word
            if p.target == side:
                return p.map.inverse(), p.source, word_inverse(p.word)
        return None

    def generator_maps(self) -> list:
        return [(p.word, p.map) for p in self.pairs]


def _maps_side(poly: HyperPolygon, g: MoebiusMap, i: int, j: int, tol: float) -> bool:
    a, b = poly.side_ends(i)
    c, d = poly.side_ends(j)
    return chordal(g(a), d) < tol and chordal(g(b), c) < tol


def pair_sides(poly: HyperPolygon, gens: dict, specs, tol: float = EPS) -> SidePairing:
    """Build pairings from (word, source label or None, target label or None) specs.

    The word's map or its inverse must carry one side onto the other with reversed
    orientation. With labels left as None the sides are searched for.
    """
    pairs = []
    n = len(poly)
    for word, li, lj in specs:
        g = evaluate_word(word, gens)
        cand = ([(poly.index(li), poly.index(lj))] if li is not None
                else [(i, j) for i in range(n) for j in range(n) if i != j])
        found = None
        for i, j in cand:
            if poly.sides[i].carrier is None or poly.sides[j].carrier is None:
                continue
            if _maps_side(poly, g, i, j, tol):
                found = Pairing(i, j, word, g)
                break
            if _maps_side(poly, g.inverse(), i, j, tol):
                found = Pairing(i, j, word_inverse(word), g.inverse())
                break
        if found is None:
            raise FrameMismatchError(f"{word_str(word)} pairs no sides of {poly.name}")
        pairs.append(found)
    used = [s for p in pairs for s in (p.source, p.target)]
    if len(used) != len(set(used)):
        raise FrameMismatchError("a side is paired twice")
    return SidePairing(dict(gens), tuple(pairs))


# ------------------------------------------------------------ domains

@dataclass(frozen=True)
class Domains:
    F: HyperPolygon
    F_pairing: SidePairing
    F_K: HyperPolygon
    F_K_pairing: SidePairing
    hexagon: Optional[HyperPolygon]


def build_domains(A: MoebiusMap, B: MoebiusMap, frame: StoppingFrame) -> Domains:
    gens = {"A": A, "B": B}
    if frame.case is CaseTag.DISJOINT:
        fr = frame
        F = ideal_polygon([(fr.L_A, "reflection", "L_A"), (fr.L_B, "reflection", "L_B"),
                           (fr.L_Abar, "reflection", "L_Abar"),
                           (fr.L_Bbar, "reflection", "L_Bbar")], "F")
        F_K = compact_polygon([
            (fr.axis_A, "axis", "Ax_A"), (fr.L_A, "reflection", "L_A"),
            (fr.axis_AinvB, "axis", "Ax_A^-1B"), (fr.L_B, "reflection", "L_B"),
            (fr.axis_B, "axis", "Ax_B"), (fr.L_Bbar, "reflection", "L_Bbar"),
            (fr.axis_ABinv, "axis", "Ax_AB^-1"), (fr.L_Abar, "reflection", "L_Abar")], "F_K")
        hexagon = compact_polygon([
            (fr.L, "reflection", "L"), (fr.axis_B, "axis", "Ax_B"),
            (fr.L_B, "reflection", "L_B"), (fr.axis_AinvB, "axis", "Ax_A^-1B"),
            (fr.L_A, "reflection", "L_A"), (fr.axis_A, "axis", "Ax_A")], "hexagon")
        F_pairs = [((("A", 1),), "L_A", "L_Abar"), ((("B", 1),), "L_B", "L_Bbar")]
        K_pairs = F_pairs
    else:
        fr = frame
        ca = fr.comm_axes
        F = ideal_polygon([(fr.M_A, "reflection", "M_A"), (fr.M_B, "reflection", "M_B"),
                           (fr.M_Abar, "reflection", "M_Abar"),
                           (fr.M_Bbar, "reflection", "M_Bbar")], "F")
        F_K = compact_polygon([
            (fr.M_A, "reflection", "M_A"), (ca["[B^-1,A^-1]"], "axis", "Ax[B^-1,A^-1]"),
            (fr.M_B, "reflection", "M_B"), (ca["[A,B^-1]"], "axis", "Ax[A,B^-1]"),
            (fr.M_Abar, "reflection", "M_Abar"), (ca["[B,A]"], "axis", "Ax[B,A]"),
            (fr.M_Bbar, "reflection", "M_Bbar"), (ca["[A^-1,B]"], "axis", "Ax[A^-1,B]")],
            "F_K")
        hexagon = None
        F_pairs = [((("A", 1),), "M_A", "M_Abar"), ((("B", 1),), "M_B", "M_Bbar")]
        K_pairs = F_pairs
    return Domains(F, pair_sides(F, gens, F_pairs), F_K, pair_sides(F_K, gens, K_pairs),
                   hexagon)


# ------------------------------------------------------------ Poincare cycles

@dataclass(frozen=True)
class VertexCycle:
    vertices: tuple          # vertex indices in walk order
    word: tuple              # cycle transformation as a word in the pairing generators
    transform: MoebiusMap
    angle_sum: float
    interior: bool           # False if the cycle touches a free side or an ideal vertex


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def vertex_classes(poly: HyperPolygon, pairing: SidePairing) -> list:
    n = len(poly)
    uf = _UnionFind(n)
    for p in pairing.pairs:
        uf.union(p.source, (p.target + 1) % n)
        uf.union((p.source + 1) % n, p.target)
    classes: dict = {}
    for v in range(n):
        classes.setdefault(uf.find(v), []).append(v)
    return [classes[k] for k in sorted(classes)]


def _free_sides(poly, pairing) -> set:
    paired = {s for p in pairing.pairs for s in (p.source, p.target)}
    return set(range(len(poly))) - paired


def cycles(poly: HyperPolygon, pairing: SidePairing) -> list:
    """All vertex cycles; interior ones are walked corner by corner."""
    n = len(poly)
    free = _free_sides(poly, pairing)
    out = []
    for cls in vertex_classes(poly, pairing):
        touches_free = any(v in free or (v - 1) % n in free for v in cls)
        ideal = any(poly.is_ideal_vertex(v) for v in cls)
        if touches_free or ideal:
            out.append(VertexCycle(tuple(cls), (), IDENTITY,
                                   sum(poly.angle(v) for v in cls), False))
            continue
        start = cls[0]
        v = start
        T = IDENTITY
        word: tuple = ()
        order = []
        total = 0.0
        for _ in range(4 * n):
            order.append(v)
            total += poly.angle(v)
            g, partner, w = pairing.partner(v)        # outgoing side of vertex v is side v
            T = g @ T
            word = w + word
            v = (partner + 1) % n
            if v == start:
                break
        else:
            raise CycleFailureError(f"cycle at vertex {start} does not close")
        out.append(VertexCycle(tuple(order), word_reduce(word), T, total, True))
    return out


def verify_poincare(poly: HyperPolygon, pairing: SidePairing, tol: float = EPS) -> list:
    cyc = cycles(poly, pairing)
    for c in cyc:
        if not c.interior:
            continue
        if abs(c.angle_sum - 2 * math.pi) > tol:
            raise CycleFailureError(
                f"cycle {c.vertices}: angle sum {c.angle_sum:.12g} differs from 2 pi")
        if not is_identity(c.transform, tol):
            raise CycleFailureError(
                f"cycle {c.vertices}: transformation {word_str(c.word)} is not the identity")
    return cyc


# ------------------------------------------------------------ topology

@dataclass(frozen=True)
class TopologyReport:
    genus: int
    boundary_components: int
    euler_characteristic: int


def quotient_topology(poly: HyperPolygon, pairing: SidePairing) -> TopologyReport:
    n = len(poly)
    classes = vertex_classes(poly, pairing)
    where = {v: k for k, cls in enumerate(classes) for v in cls}
    free = sorted(_free_sides(poly, pairing))
    V = len(classes)
    E = len(pairing.pairs) + len(free)
    chi = V - E + 1
    # boundary circles: components of the graph of free sides on vertex classes
    uf = _UnionFind(V)
    for s in free:
        uf.union(where[s], where[(s + 1) % n])
    b = len({uf.find(where[s]) for s in free})
    two_g = 2 - chi - b
    if two_g < 0 or two_g % 2:
        raise CycleFailureError(f"inconsistent topology: chi={chi}, boundary={b}")
    return TopologyReport(two_g // 2, b, chi)


# ------------------------------------------------------------ locate and tile

def locate(x: complex, poly: HyperPolygon, pairing: SidePairing,
           max_crossings: int = MAX_CROSSINGS, tol: float = 1e-12) -> tuple:
    """(g, g(x)) with g(x) in the closed polygon; g is a product of pairing maps.

    Returns also the word of g as a third element.
    """
    if point_tag(x) != "interior":
        raise FrameMismatchError(f"{x} is not interior")
    g = IDENTITY
    word: tuple = ()
    z = x
    for _ in range(max_crossings):
        moved = False
        for i, s in enumerate(poly.sides):
            if s.carrier is None or s.carrier.signed_distance(z) >= -tol:
                continue
            part = pairing.partner(i)
            if part is None:
                continue
            h, _, w = part
            z = h(z)
            g = h @ g
            word = w + word
            moved = True
            break
        if not moved:
            return g, z, word_reduce(word)
    raise LocateTimeoutError(f"no representative after {max_crossings} crossings")


@dataclass(frozen=True)
class Tile:
    word: tuple          # in the pairing generators' letters
    map: MoebiusMap
    base: HyperPolygon

    @property
    def polygon(self) -> HyperPolygon:
        # deep tiles hug the circle; their carriers may be numerically degenerate
        return self.base.image(self.map)

    def contains(self, z: complex, tol: float = EPS) -> bool:
        """Membership tested by pulling z back into the base polygon."""
        return self.base.contains(self.map.inverse()(z), tol)


def tile(poly: HyperPolygon, pairing: SidePairing, depth: int) -> list:
    """Tiles g(poly) for reduced words g of length <= depth in the pairing maps."""
    names = []
    gens = {}
    for k, p in enumerate(pairing.pairs):
        name = f"g{k}"
        names.append(name)
        gens[name] = p.map
    out = []
    for w in reduced_words(names, depth):
        g = evaluate_word(w, gens)
        if any(projective_eq(g, t.map) for t in out):
            continue
        full: tuple = ()
        for name, e in w:
            pw = pairing.pairs[int(name[1:])].word
            full += pw if e == 1 else word_inverse(pw)
        out.append(Tile(word_reduce(full), g, poly))
    return out
