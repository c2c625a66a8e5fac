"""Commutator-trace trichotomy, Nielsen descent to stopping generators, reflection frames."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import (DescentTimeoutError, NotFreeDiscreteError, NotHyperbolicError,
                     StoppingViolatedError)
from .geodesics import (DomainStatus, Geodesic, bounds_domain, common_perpendicular,
                        half_turn, intersection, mirror_of)
from .moebius import EPS, MoebiusMap, classify, commutator, dist, fixed_points, projective_eq

MAX_STEPS = 100_000


class CaseTag(enum.Enum):
    DISJOINT = "disjoint"
    INTERSECTING = "intersecting"


def _raw_trace_commutator(C: MoebiusMap, D: MoebiusMap) -> complex:
    def mul(x, y):
        return ((x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
                (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]))

    def inv(x):
        return ((x[1][1], -x[0][1]), (-x[1][0], x[0][0]))

    c, d = C.matrix, D.matrix
    m = mul(mul(mul(c, d), inv(c)), inv(d))
    return m[0][0] + m[1][1]


def _require_hyperbolic(*gs):
    for g in gs:
        if g.reversing:
            raise NotHyperbolicError("generator is orientation reversing")
        if classify(g).kind != "hyperbolic":
            raise NotHyperbolicError(f"generator is {classify(g).kind}")


def commutator_case(C: MoebiusMap, D: MoebiusMap) -> tuple:
    """(CaseTag, Re tr[C, D]); the trace does not depend on the sign of C or D."""
    _require_hyperbolic(C, D)
    tr = _raw_trace_commutator(C, D).real
    if abs(tr) <= 2.0 + EPS:
        raise NotFreeDiscreteError(f"commutator trace {tr:.12g} lies in [-2, 2]")
    return (CaseTag.DISJOINT if tr > 0 else CaseTag.INTERSECTING), tr


# ------------------------------------------------------------ Nielsen moves

MOVES = ("inv_first", "inv_second", "swap", "mul_second", "div_second", "mul_first")


def apply_move(tag: str, A: MoebiusMap, B: MoebiusMap) -> tuple:
    if tag == "inv_first":
        return A.inverse(), B
    if tag == "inv_second":
        return A, B.inverse()
    if tag == "swap":
        return B, A
    if tag == "mul_second":
        return A, A @ B
    if tag == "div_second":
        return A, A.inverse() @ B
    if tag == "mul_first":
        return A @ B, B
    raise ValueError(f"unknown move {tag}")


def replay(C: MoebiusMap, D: MoebiusMap, moves) -> tuple:
    for t in moves:
        C, D = apply_move(t, C, D)
    return C, D


# candidate descent steps, each a short move sequence; listed in tie-break order
_STEPS = (
    ("mul_second",),                                               # (A, AB)
    ("div_second",),                                               # (A, A^-1 B)
    ("swap", "mul_first", "swap"),                                 # (A, BA)
    ("swap", "inv_second", "mul_first", "inv_second", "swap"),     # (A, BA^-1)
    ("mul_first",),                                                # (AB, B)
    ("inv_second", "mul_first", "inv_second"),                     # (AB^-1, B)
    ("swap", "mul_second", "swap"),                                # (BA, B)
    ("swap", "div_second", "swap"),                                # (B^-1 A, B)
)


def _objective(A, B) -> float:
    return abs(A.trace.real) + abs(B.trace.real)


def _offcentre(A, B) -> float:
    """Sum of hyperbolic distances from the origin to the two axes."""
    return sum(classify(g).axis.distance(0j) for g in (A, B))


# ------------------------------------------------------------ frames

@dataclass(frozen=True)
class StoppingFrame:
    case: CaseTag
    A: MoebiusMap
    B: MoebiusMap
    axis_A: Geodesic
    axis_B: Geodesic
    # disjoint case
    L: Optional[Geodesic] = None
    L_A: Optional[Geodesic] = None
    L_B: Optional[Geodesic] = None
    L_Abar: Optional[Geodesic] = None
    L_Bbar: Optional[Geodesic] = None
    axis_AinvB: Optional[Geodesic] = None
    axis_ABinv: Optional[Geodesic] = None
    # intersecting case
    p: Optional[complex] = None
    p_A: Optional[complex] = None
    p_B: Optional[complex] = None
    p_Abar: Optional[complex] = None
    p_Bbar: Optional[complex] = None
    M_A: Optional[Geodesic] = None
    M_B: Optional[Geodesic] = None
    M_Abar: Optional[Geodesic] = None
    M_Bbar: Optional[Geodesic] = None
    comm_axes: dict = field(default_factory=dict)

    def checks(self) -> list:
        """[(name, value, tol, passed)] for the frame invariants."""
        out = []

        def add(name, value, tol):
            out.append((name, value, tol, value < tol))

        A, B = self.A, self.B
        # factorization residuals grow with the entry size of the generators
        scale = max(1.0, _size(A), _size(B))
        if self.case is CaseTag.DISJOINT:
            RL = self.L.reflection()
            add("A = R_L R_LA", _pdist(A, RL @ self.L_A.reflection()) / scale, EPS)
            add("B = R_L R_LB", _pdist(B, RL @ self.L_B.reflection()) / scale, EPS)
            st = bounds_domain(self.L, self.L_A, self.L_B)
            out.append(("bounds_domain(L, L_A, L_B)", str(st), 0.0, bool(st)))
            add("L_Abar = A(L_A)", _gdist(self.L_Abar, self.L_A.image(A)), EPS)
            add("L_Bbar = B(L_B)", _gdist(self.L_Bbar, self.L_B.image(B)), EPS)
        else:
            Ep = half_turn(self.p)
            add("A = E_p E_pA", _pdist(A, Ep @ half_turn(self.p_A)) / scale, EPS)
            add("B = E_p E_pB", _pdist(B, Ep @ half_turn(self.p_B)) / scale, EPS)
            ok, detail = intersecting_test(self.p, self.p_A, self.p_B)
            out.append(("stopping triangle (p, p_A, p_B)", detail, 0.0, ok))
            add("dist(p_A, M_A)", self.M_A.distance(self.p_A), EPS)
            add("dist(p_B, M_B)", self.M_B.distance(self.p_B), EPS)
            add("M_Abar = A(M_A)", _gdist(self.M_Abar, self.M_A.image(A)), EPS)
            add("M_Bbar = B(M_B)", _gdist(self.M_Bbar, self.M_B.image(B)), EPS)
        return out

    def valid(self) -> bool:
        return all(c[3] for c in self.checks())


def _size(m: MoebiusMap) -> float:
    return max(abs(m.a), abs(m.b), abs(m.c), abs(m.d))


def _pdist(m, n) -> float:
    from .moebius import projective_distance
    return projective_distance(m, n)


def _gdist(g: Geodesic, h: Geodesic) -> float:
    """Endpoint distance between unoriented geodesics."""
    e, f = g.endpoints, h.endpoints
    return min(max(abs(e[0] - f[0]), abs(e[1] - f[1])), max(abs(e[0] - f[1]), abs(e[1] - f[0])))


def _axis(g: MoebiusMap) -> Geodesic:
    return classify(g).axis


def _interior_fixed_point(g: MoebiusMap) -> complex:
    for z in fixed_points(g):
        if abs(z) < 1.0:
            return z
    raise StoppingViolatedError("elliptic has no interior fixed point")


def commutator_axes(A: MoebiusMap, B: MoebiusMap) -> dict:
    Ai, Bi = A.inverse(), B.inverse()
    return {
        "[B^-1,A^-1]": _axis(commutator(Bi, Ai)),
        "[A^-1,B]": _axis(commutator(Ai, B)),
        "[A,B^-1]": _axis(commutator(A, Bi)),
        "[B,A]": _axis(commutator(B, A)),
    }


def build_frame(A: MoebiusMap, B: MoebiusMap, case: CaseTag) -> StoppingFrame:
    """Frame geometry for (A, B) without checking the stopping condition."""
    ax_A, ax_B = _axis(A), _axis(B)
    if case is CaseTag.DISJOINT:
        L = common_perpendicular(ax_A, ax_B)
        RL = L.reflection()
        L_A = mirror_of(RL @ A)
        L_B = mirror_of(RL @ B)
        return StoppingFrame(case, A, B, ax_A, ax_B, L=L, L_A=L_A, L_B=L_B,
                             L_Abar=L_A.image(A), L_Bbar=L_B.image(B),
                             axis_AinvB=_axis(A.inverse() @ B),
                             axis_ABinv=_axis(A @ B.inverse()))
    hit = intersection(ax_A, ax_B)
    if hit is None:
        raise StoppingViolatedError("axes of A and B do not cross")
    p = hit[0]
    Ep = half_turn(p)
    p_A = _interior_fixed_point(Ep @ A)
    p_B = _interior_fixed_point(Ep @ B)
    ca = commutator_axes(A, B)
    M_A = common_perpendicular(ca["[B^-1,A^-1]"], ca["[A^-1,B]"])
    M_B = common_perpendicular(ca["[B^-1,A^-1]"], ca["[A,B^-1]"])
    M_Abar = common_perpendicular(ca["[B,A]"], ca["[A,B^-1]"])
    M_Bbar = common_perpendicular(ca["[B,A]"], ca["[A^-1,B]"])
    return StoppingFrame(case, A, B, ax_A, ax_B, p=p, p_A=p_A, p_B=p_B,
                         p_Abar=A(p_A), p_Bbar=B(p_B), M_A=M_A, M_B=M_B,
                         M_Abar=M_Abar, M_Bbar=M_Bbar, comm_axes=ca)


def intersecting_test(p, p_A, p_B) -> tuple:
    """rho(p,p_A) <= rho(p,p_B) <= rho(p_A,p_B) and no obtuse angle in the triangle."""
    a = dist(p, p_A)
    b = dist(p, p_B)
    c = dist(p_A, p_B)
    ordered = a <= b + EPS and b <= c + EPS
    # hyperbolic law of cosines; an angle is obtuse iff its cosine is negative
    sides = (a, b, c)
    cos_angles = []
    for i in range(3):
        x, y, opp = sides[(i + 1) % 3], sides[(i + 2) % 3], sides[i]
        num = math.cosh(x) * math.cosh(y) - math.cosh(opp)
        cos_angles.append(num / (math.sinh(x) * math.sinh(y)))
    non_obtuse = min(cos_angles) >= -EPS
    detail = f"rho=({a:.12g}, {b:.12g}, {c:.12g}) min cos angle={min(cos_angles):.3g}"
    return ordered and non_obtuse, detail


def is_stopping(A: MoebiusMap, B: MoebiusMap, case: CaseTag) -> bool:
    try:
        fr = build_frame(A, B, case)
    except Exception:
        return False
    if case is CaseTag.DISJOINT:
        return bounds_domain(fr.L, fr.L_A, fr.L_B).status is DomainStatus.BOUNDS_DOMAIN
    return intersecting_test(fr.p, fr.p_A, fr.p_B)[0]


def stopping_frame(A: MoebiusMap, B: MoebiusMap, case: CaseTag) -> StoppingFrame:
    fr = build_frame(A, B, case)
    bad = [c for c in fr.checks() if not c[3]]
    if bad:
        raise StoppingViolatedError("frame invariant failed: " + ", ".join(c[0] for c in bad))
    return fr


# ------------------------------------------------------------ descent

@dataclass(frozen=True)
class StoppingResult:
    generators: tuple
    moves: tuple
    trace_history: tuple
    frame: StoppingFrame
    case: CaseTag
    commutator_trace: float


def _finalize(A, B, case, max_len: int = 3):
    """Shortest move sequence (breadth first, move order) reaching a stopping pair."""
    frontier = [((), A, B)]
    for _ in range(max_len + 1):
        for moves, X, Y in frontier:
            if is_stopping(X, Y, case):
                return moves, X, Y
        frontier = [(moves + (t,),) + apply_move(t, X, Y)
                    for moves, X, Y in frontier for t in MOVES]
    raise StoppingViolatedError("no stopping pair near the trace minimum")


def nielsen_search(C: MoebiusMap, D: MoebiusMap, max_steps: int = MAX_STEPS) -> StoppingResult:
    case, tr = commutator_case(C, D)
    A, B = C, D
    moves: list = []
    history = [(A.trace.real, B.trace.real)]
    if not is_stopping(A, B, case):
        for _ in range(max_steps):
            best = None
            cur = _objective(A, B)
            tol = EPS * max(1.0, cur)
            for step in _STEPS:
                X, Y = replay(A, B, step)
                val = _objective(X, Y)
                if val >= cur - tol:
                    continue
                if min(abs(X.trace.real), abs(Y.trace.real)) <= 2 + tol:
                    # an elliptic or parabolic element in the group
                    raise NotFreeDiscreteError(f"non-hyperbolic element after moves {step}")
                # equal objectives (conjugate pairs) are split by keeping axes near the origin
                if (best is None or val < best[0] - tol
                        or (val <= best[0] + tol and _offcentre(X, Y) < best[1])):
                    best = (val, _offcentre(X, Y), step, X, Y)
            if best is None:
                break
            _, _, step, A, B = best
            moves.extend(step)
            history.append((A.trace.real, B.trace.real))
        else:
            raise DescentTimeoutError(f"no trace minimum after {max_steps} steps")
        extra, A, B = _finalize(A, B, case)
        if extra:
            moves.extend(extra)
            history.append((A.trace.real, B.trace.real))
    frame = stopping_frame(A, B, case)
    return StoppingResult((A, B), tuple(moves), tuple(history), frame, case, tr)
