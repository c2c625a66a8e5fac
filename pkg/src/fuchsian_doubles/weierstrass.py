"""Weierstrass points of the Schottky and Nielsen doubles, the genus-two group Gamma, phi."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .domains import (HyperPolygon, SidePairing, compact_polygon, cycles, pair_sides,
                      quotient_topology, verify_poincare)
from .errors import BadLabelError, FrameMismatchError, HomomorphismFailureError
from .geodesics import BOUNDARY_REFLECTION, half_turn, intersection
from .moebius import (EPS, IDENTITY, MoebiusMap, chordal, evaluate_word, find_word,
                      fixed_points, is_identity, projective_eq, word, word_inverse,
                      word_reduce, word_str, word_table)
from .stopping import CaseTag, StoppingFrame

SEARCH_DEPTH = 4


# ------------------------------------------------------------ the group Gamma

@dataclass
class GroupPresentation:
    gens: dict                      # A, B, A', B'
    fold: MoebiusMap                # reflection doubling F_K into F_Gamma
    fold_label: str                 # side of F_K along which it is doubled
    F_K: HyperPolygon
    domain: HyperPolygon            # F_Gamma
    pairing: SidePairing
    cycles: list
    case: CaseTag = CaseTag.DISJOINT
    notes: list = field(default_factory=list)

    @property
    def relators(self) -> list:
        return [c.word for c in self.cycles if c.interior and c.word]

    @property
    def relator(self) -> tuple:
        """The longest reduced cycle word."""
        rs = self.relators
        return max(rs, key=len) if rs else ()

    @cached_property
    def table(self) -> list:
        return word_table(self.gens, SEARCH_DEPTH)

    def in_copy(self, z: complex) -> bool:
        """Is z (in F_Gamma) in the reflected copy fold(F_K) rather than F_K?"""
        return not self.F_K.contains(z, 1e-12)


def _intersect(g1, g2):
    hit = intersection(g1, g2)
    if hit is None:
        raise FrameMismatchError("expected crossing lines")
    return hit[0]


def _pair_with_alternates(poly, gens, specs, notes):
    """specs: list of lists of candidate words; the first that pairs two sides is used."""
    chosen = []
    for cands in specs:
        err = None
        for k, w in enumerate(cands):
            try:
                pair_sides(poly, gens, [(w, None, None)])
            except FrameMismatchError as e:
                err = e
                continue
            if k > 0:
                notes.append(f"paired by {word_str(w)} instead of {word_str(cands[0])}")
            chosen.append((w, None, None))
            break
        else:
            raise err
    return pair_sides(poly, gens, chosen)


def gamma_group(A: MoebiusMap, B: MoebiusMap, frame: StoppingFrame,
                F_K: HyperPolygon) -> GroupPresentation:
    notes: list = []
    fr = frame
    if frame.case is CaseTag.DISJOINT:
        R = fr.axis_A.reflection()
        A1 = fr.axis_AinvB.reflection() @ R
        B1 = fr.axis_B.reflection() @ R
        gens = {"A": A, "B": B, "A'": A1, "B'": B1}
        img = lambda g: g.image(R)  # noqa: E731
        items = [
            (fr.L_A, "reflection", "L_A"), (fr.axis_AinvB, "axis", "Ax_A^-1B"),
            (fr.L_B, "reflection", "L_B"), (fr.axis_B, "axis", "Ax_B"),
            (fr.L_Bbar, "reflection", "L_Bbar"), (fr.axis_ABinv, "axis", "Ax_AB^-1"),
            (fr.L_Abar, "reflection", "L_Abar"), (img(fr.axis_ABinv), "axis", "R.Ax_AB^-1"),
            (img(fr.L_Bbar), "reflection", "R.L_Bbar"), (img(fr.axis_B), "axis", "R.Ax_B"),
            (img(fr.L_B), "reflection", "R.L_B"), (img(fr.axis_AinvB), "axis", "R.Ax_A^-1B")]
        domain = compact_polygon(items, "F_Gamma")
        specs = [[word("A")], [word("B")], [word("A'")], [word("B'")],
                 [word("B'", "B", "B'^-1"), word("B'^-1", "B", "B'")],
                 [word("A", "A'", "A^-1"), word("A^-1", "A'", "A")]]
        fold_label = "Ax_A"
    else:
        ca = fr.comm_axes
        R = ca["[B^-1,A^-1]"].reflection()
        gens = {"A": A, "B": B, "A'": A.conj_by(R), "B'": B.conj_by(R)}
        img = lambda g: g.image(R)  # noqa: E731
        fold = ca["[B^-1,A^-1]"]
        v_A = _intersect(fr.M_A, fold)
        v_B = _intersect(fr.M_B, fold)
        items = [
            (fr.M_A, "reflection", "M_A"), (img(fr.M_A), "reflection", "M_A'"),
            (img(ca["[A^-1,B]"]), "axis", "R0.Ax[A^-1,B]"),
            (img(fr.M_Bbar), "reflection", "M_Bbar'"),
            (img(ca["[B,A]"]), "axis", "R0.Ax[B,A]"),
            (img(fr.M_Abar), "reflection", "M_Abar'"),
            (img(ca["[A,B^-1]"]), "axis", "R0.Ax[A,B^-1]"),
            (img(fr.M_B), "reflection", "M_B'"), (fr.M_B, "reflection", "M_B"),
            (ca["[A,B^-1]"], "axis", "Ax[A,B^-1]"), (fr.M_Abar, "reflection", "M_Abar"),
            (ca["[B,A]"], "axis", "Ax[B,A]"), (fr.M_Bbar, "reflection", "M_Bbar"),
            (ca["[A^-1,B]"], "axis", "Ax[A^-1,B]")]
        domain = compact_polygon(items, "F_Gamma", splits={1: v_A, 8: v_B})
        specs = [[word("A")], [word("B")], [word("A'")], [word("B'")],
                 [word("B'^-1", "B"), word("B", "B'^-1")],
                 [word("A'^-1", "A"), word("A", "A'^-1")],
                 [word("A'", "B'", "B^-1", "A^-1")]]
        fold_label = "Ax[B^-1,A^-1]"
    pairing = _pair_with_alternates(domain, gens, specs, notes)
    cyc = verify_poincare(domain, pairing)
    return GroupPresentation(gens, R, fold_label, F_K, domain, pairing, cyc, frame.case, notes)


# ------------------------------------------------------------ phi

def phi_images(pres: GroupPresentation, literal: bool = False) -> dict:
    """A, B fixed; A', B' killed in the disjoint case.

    With intersecting axes A' and B' are R_0-conjugates of A and B, and the cycle
    relation identifies [B^-1,A^-1] with [B'^-1,A'^-1], so killing A', B' would
    kill a commutator of G.  There the fold A' -> A, B' -> B is used instead;
    `literal=True` gives the killing map in both cases.
    """
    A, B = pres.gens["A"], pres.gens["B"]
    if pres.case is CaseTag.INTERSECTING and not literal:
        return {"A": A, "B": B, "A'": A, "B'": B}
    return {"A": A, "B": B, "A'": IDENTITY, "B'": IDENTITY}


def phi(w: tuple, pres: GroupPresentation, literal: bool = False) -> MoebiusMap:
    return evaluate_word(w, phi_images(pres, literal))


def _id_residual(m: MoebiusMap) -> float:
    return min(max(abs(m.a - 1), abs(m.b), abs(m.c), abs(m.d - 1)),
               max(abs(m.a + 1), abs(m.b), abs(m.c), abs(m.d + 1)))


def phi_report(pres: GroupPresentation, literal: bool = False) -> list:
    """[(word, residual)] for the relator and every cycle word."""
    words = [pres.relator] + [c.word for c in pres.cycles if c.interior]
    return [(w, _id_residual(phi(w, pres, literal))) for w in words]


def phi_check(pres: GroupPresentation, tol: float = EPS, literal: bool = False) -> list:
    out = phi_report(pres, literal)
    for w, res in out:
        if res >= tol:
            raise HomomorphismFailureError(f"phi({word_str(w)}) is not the identity")
    return out


# ------------------------------------------------------------ Weierstrass sets

@dataclass
class WeierstrassSet:
    kind: str                     # 'schottky' or 'nielsen'
    labels: tuple
    points: tuple
    elliptics: tuple              # one per point
    group: dict                   # generators of the group the points live in
    notes: list = field(default_factory=list)

    def point(self, label: str) -> complex:
        try:
            return self.points[self.labels.index(label)]
        except ValueError:
            raise BadLabelError(label) from None

    def distinct_elliptics(self) -> list:
        out = []
        for E in self.elliptics:
            if not any(projective_eq(E, F) for F in out):
                out.append(E)
        return out


def _schottky_labels(frame: StoppingFrame) -> list:
    """Six endpoint labels in circular order starting at p_L, by adjacency."""
    ends = []
    for name, g in (("L", frame.L), ("L_A", frame.L_A), ("L_B", frame.L_B)):
        for t in (g.theta1, g.theta2):
            ends.append((t % (2 * math.pi), name))
    ends.sort()
    n = len(ends)
    for k in range(n):
        if ends[k][1] != "L":
            continue
        prev, nxt = ends[k - 1], ends[(k + 1) % n]
        if prev[1] == "L_A" and nxt[1] == "L":
            order = [ends[(k + i) % n] for i in range(n)]
            break
        if nxt[1] == "L_A" and prev[1] == "L":
            order = [ends[(k - i) % n] for i in range(n)]
            break
    else:
        raise FrameMismatchError("reflection lines are not in Schottky position")
    names = {"L": ("p_L", "q_L"), "L_A": ("p_L_A", "q_L_A"), "L_B": ("p_L_B", "q_L_B")}
    seen: dict = {}
    out = []
    for t, name in order:
        lab = names[name][seen.get(name, 0)]
        seen[name] = seen.get(name, 0) + 1
        out.append((lab, complex(math.cos(t), math.sin(t))))
    return out


def _reflect_point(z: complex) -> complex:
    return BOUNDARY_REFLECTION(z)


def schottky_weierstrass(A: MoebiusMap, B: MoebiusMap, frame: StoppingFrame) -> WeierstrassSet:
    G = {"A": A, "B": B}
    if frame.case is CaseTag.DISJOINT:
        E = BOUNDARY_REFLECTION @ frame.L.reflection()
        ell = {"L": E, "L_A": E @ A, "L_B": E @ B}
        labs = _schottky_labels(frame)
        return WeierstrassSet("schottky", tuple(l for l, _ in labs), tuple(z for _, z in labs),
                              tuple(ell[l[2:]] for l, _ in labs), G)
    E = half_turn(frame.p)
    pts = [("p", frame.p, E), ("q", _reflect_point(frame.p), E),
           ("p_A", frame.p_A, E @ A), ("q_A", _reflect_point(frame.p_A), E @ A),
           ("p_B", frame.p_B, E @ B), ("q_B", _reflect_point(frame.p_B), E @ B)]
    return WeierstrassSet("schottky", tuple(p[0] for p in pts), tuple(p[1] for p in pts),
                          tuple(p[2] for p in pts), G)


def _fixes(E: MoebiusMap, z: complex, tol: float = EPS) -> bool:
    return chordal(E(z), z) < tol


def nielsen_weierstrass(pres: GroupPresentation, frame: StoppingFrame) -> WeierstrassSet:
    g = pres.gens
    A, B, A1, B1 = g["A"], g["B"], g["A'"], g["B'"]
    notes: list = []
    fr = frame
    if frame.case is CaseTag.DISJOINT:
        RL, RAx = fr.L.reflection(), fr.axis_A.reflection()
        E0 = RL @ RAx
        E1 = RL @ fr.axis_B.reflection()
        E2 = fr.L_A.reflection() @ RAx
        X = fr.axis_AinvB
        p, q = _intersect(fr.L, fr.axis_A), _intersect(fr.L, fr.axis_B)
        q_A = _intersect(fr.L_A, fr.axis_A)
        p_A = _intersect(fr.L_A, X)
        q_B = _intersect(fr.L_B, X)
        p_B = _intersect(fr.L_B, fr.axis_B)
        E3w = A.inverse() @ E0 @ A1.inverse()
        E4w = A.inverse() @ E0 @ A1 @ B.inverse() @ A
        E5w = B1 @ E0 @ B
        for name, Ew, z in (("E_3", E3w, p_A), ("E_4", E4w, q_B), ("E_5", E5w, p_B)):
            if not _fixes(Ew, z):
                notes.append(f"{name} as a word does not fix its hexagon vertex; "
                             f"the half-turn there is used")
        pts = [("p", p, E0), ("q", q, E1), ("p_A", p_A, half_turn(p_A)),
               ("q_A", q_A, E2), ("p_B", p_B, half_turn(p_B)), ("q_B", q_B, half_turn(q_B))]
        for lab, z, E in pts:
            if not _fixes(E, z):
                raise FrameMismatchError(f"elliptic does not fix {lab}")
    else:
        R0 = pres.fold
        Ep = half_turn(fr.p)
        p1 = R0(fr.p)
        Ep1w = Ep @ A @ B @ B1.inverse() @ A1.inverse()
        Ep1 = Ep1w
        if not _fixes(Ep1w, p1):
            notes.append("E_p' as a word does not fix p'; R_0 E_p R_0 is used")
            Ep1 = Ep.conj_by(R0)
        pts = [("p", fr.p, Ep), ("p_A", fr.p_A, Ep @ A), ("p_B", fr.p_B, Ep @ B),
               ("p'", p1, Ep1), ("p_A'", R0(fr.p_A), Ep1 @ A1),
               ("p_B'", R0(fr.p_B), Ep1 @ B1)]
        for lab, z, E in pts:
            if not _fixes(E, z):
                raise FrameMismatchError(f"elliptic does not fix {lab}")
    return WeierstrassSet("nielsen", tuple(p[0] for p in pts), tuple(p[1] for p in pts),
                          tuple(p[2] for p in pts), dict(pres.gens), notes)


# ------------------------------------------------------------ word checks

def conjugation_words(ws: WeierstrassSet, table=None) -> list:
    """For each distinct elliptic E and g in {A, B}: a word w with E g E^-1 = w g^-1 w^-1."""
    table = table if table is not None else word_table(ws.group, SEARCH_DEPTH)
    out = []
    for k, E in enumerate(ws.distinct_elliptics()):
        for name in ("A", "B"):
            gm = ws.group[name]
            target = E @ gm @ E.inverse()
            gi = gm.inverse()
            found = None
            for w, m in table:
                if projective_eq(m @ gi @ m.inverse(), target):
                    found = w
                    break
            out.append((k, name, found))
    return out


def product_words(ws: WeierstrassSet, table=None) -> list:
    """For each pair of distinct elliptics, a word equal to E_i E_k^-1 (None if not found)."""
    table = table if table is not None else word_table(ws.group, SEARCH_DEPTH)
    Es = ws.distinct_elliptics()
    out = []
    for i in range(len(Es)):
        for k in range(i + 1, len(Es)):
            out.append((i, k, find_word(Es[i] @ Es[k].inverse(), table)))
    return out


def separation(ws: WeierstrassSet, table=None) -> tuple:
    """(min pairwise chordal distance, min chordal distance between w(x_i) and x_k, i != k)."""
    table = table if table is not None else word_table(ws.group, SEARCH_DEPTH)
    pts = ws.points
    n = len(pts)
    pair = min(chordal(pts[i], pts[k]) for i in range(n) for k in range(i + 1, n))
    orbit = math.inf
    for _, m in table:
        imgs = [m(z) for z in pts]
        for i in range(n):
            for k in range(n):
                if i != k:
                    orbit = min(orbit, chordal(imgs[i], pts[k]))
    return pair, orbit


def involution_action(tag: str, x: complex, ws: WeierstrassSet) -> complex:
    """Plane-level representatives: j -> E, J -> R_bd, Jhat -> R_bd o E."""
    E = ws.elliptics[0]
    if tag == "j":
        return E(x)
    if tag == "J":
        return BOUNDARY_REFLECTION(x)
    if tag == "Jhat":
        return (BOUNDARY_REFLECTION @ E)(x)
    raise BadLabelError(f"unknown involution {tag}")


__all__ = ["GroupPresentation", "gamma_group", "phi", "phi_images", "phi_check", "phi_report",
           "WeierstrassSet", "schottky_weierstrass", "nielsen_weierstrass",
           "conjugation_words", "product_words", "separation", "involution_action",
           "SEARCH_DEPTH", "word_reduce", "word_inverse", "fixed_points", "is_identity",
           "quotient_topology", "cycles", "Optional"]
