"""Conformal and anti-conformal Moebius maps of the extended plane, disk metric, words.

Points are plain Python complex numbers; ``INF`` stands for the point at infinity.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DeterminantError, NonDiskMapError, NotInteriorError

EPS = 1e-9          # geometric tolerance
ALG_TOL = 1e-12     # algebraic normalization tolerance
INF = complex(math.inf, 0.0)


def is_inf(z: complex) -> bool:
    return cmath.isinf(z)


def point_tag(z: complex, tol: float = ALG_TOL) -> str:
    """One of 'interior', 'boundary', 'exterior', 'infinity'."""
    if is_inf(z):
        return "infinity"
    r = abs(z)
    if abs(r - 1.0) < tol:
        return "boundary"
    return "interior" if r < 1.0 else "exterior"


def chordal(z: complex, w: complex) -> float:
    """Chordal distance on the Riemann sphere (diameter 2)."""
    if is_inf(z) and is_inf(w):
        return 0.0
    if is_inf(z):
        z, w = w, z
    if is_inf(w):
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def _sign_key(a, b, c, d):
    for x in (a + d, a, b, c, d):
        if abs(x.real) > ALG_TOL:
            return x.real
        if abs(x.imag) > ALG_TOL:
            return x.imag
    return 1.0


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (az+b)/(cz+d), or (a conj(z)+b)/(c conj(z)+d) when ``reversing``.

    The matrix is normalized on construction: det = 1 and Re(a+d) >= 0.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    reversing: bool = False

    def __post_init__(self):
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        if not getattr(self, "_unit", False):
            det = a * d - b * c
            if abs(det) < 1e-300 or not cmath.isfinite(det):
                raise DeterminantError(f"singular or non-finite matrix (det={det})")
            s = cmath.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
        if _sign_key(a, b, c, d) < 0:
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "reversing", bool(self.reversing))

    @classmethod
    def _unit_det(cls, a, b, c, d, reversing=False) -> "MoebiusMap":
        """Build from entries already of determinant one (products, inverses).

        Recomputing ad - bc for large entries cancels catastrophically, so it is skipped.
        """
        m = cls.__new__(cls)
        object.__setattr__(m, "_unit", True)
        for k, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(m, k, v)
        object.__setattr__(m, "reversing", reversing)
        m.__post_init__()
        return m

    @classmethod
    def from_matrix(cls, m, reversing: bool = False) -> "MoebiusMap":
        return cls(m[0][0], m[0][1], m[1][0], m[1][1], reversing)

    @property
    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, z: complex) -> complex:
        a, b, c, d = self.a, self.b, self.c, self.d
        if is_inf(z):
            return a / c if abs(c) > 1e-300 else INF
        if self.reversing:
            z = z.conjugate()
        den = c * z + d
        if den == 0:
            return INF
        return (a * z + b) / den

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        """self o other."""
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        if self.reversing:
            a2, b2, c2, d2 = a2.conjugate(), b2.conjugate(), c2.conjugate(), d2.conjugate()
        a, b, c, d = self.a, self.b, self.c, self.d
        return MoebiusMap._unit_det(a * a2 + b * c2, a * b2 + b * d2,
                                    c * a2 + d * c2, c * b2 + d * d2,
                                    self.reversing != other.reversing)

    def inverse(self) -> "MoebiusMap":
        a, b, c, d = self.d, -self.b, -self.c, self.a
        if self.reversing:
            a, b, c, d = a.conjugate(), b.conjugate(), c.conjugate(), d.conjugate()
        return MoebiusMap._unit_det(a, b, c, d, self.reversing)

    def __pow__(self, n: int) -> "MoebiusMap":
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    def conj_by(self, x: "MoebiusMap") -> "MoebiusMap":
        """x o self o x^-1."""
        return x @ self @ x.inverse()

    def preserves_disk(self, tol: float = EPS) -> bool:
        """True if the map sends the unit disk onto itself."""
        for k in range(3):
            w = self(cmath.exp(2j * math.pi * k / 3))
            if is_inf(w) or abs(abs(w) - 1.0) > tol:
                return False
        w0 = self(0j)
        return not is_inf(w0) and abs(w0) < 1.0


IDENTITY = MoebiusMap(1, 0, 0, 1)
CONJUGATION = MoebiusMap(1, 0, 0, 1, reversing=True)


def disk_map(alpha: complex, beta: complex) -> MoebiusMap:
    """The disk automorphism [[alpha, beta], [conj beta, conj alpha]]."""
    alpha, beta = complex(alpha), complex(beta)
    return MoebiusMap(alpha, beta, beta.conjugate(), alpha.conjugate())


def translate_to_origin(x: complex) -> MoebiusMap:
    """Disk automorphism z -> (z - x)/(1 - conj(x) z)."""
    return MoebiusMap(1, -x, -x.conjugate(), 1)


def projective_eq(m: MoebiusMap, n: MoebiusMap, tol: float = EPS) -> bool:
    if m.reversing != n.reversing:
        return False
    pm = (m.a, m.b, m.c, m.d)
    pn = (n.a, n.b, n.c, n.d)
    minus = max(abs(x - y) for x, y in zip(pm, pn))
    plus = max(abs(x + y) for x, y in zip(pm, pn))
    return min(minus, plus) < tol


def projective_distance(m: MoebiusMap, n: MoebiusMap) -> float:
    if m.reversing != n.reversing:
        return math.inf
    pm = (m.a, m.b, m.c, m.d)
    pn = (n.a, n.b, n.c, n.d)
    return min(max(abs(x - y) for x, y in zip(pm, pn)),
               max(abs(x + y) for x, y in zip(pm, pn)))


def is_identity(m: MoebiusMap, tol: float = EPS) -> bool:
    return projective_eq(m, IDENTITY, tol)


def commutator(x: MoebiusMap, y: MoebiusMap) -> MoebiusMap:
    """[x, y] = x y x^-1 y^-1."""
    return x @ y @ x.inverse() @ y.inverse()


@dataclass(frozen=True)
class IsometryClass:
    kind: str
    trace: complex
    fixed_points: tuple
    axis: Optional[object] = None          # Geodesic when hyperbolic
    translation_length: Optional[float] = None


def fixed_points(m: MoebiusMap) -> tuple:
    """Fixed points of a preserving map; for two fixed points the repelling one comes first."""
    a, b, c, d = m.a, m.b, m.c, m.d
    if abs(c) < 1e-14:
        if abs(d - a) < 1e-14:
            return (INF,)
        z = b / (d - a)
        # infinity attracts iff |a/d| > 1
        return (z, INF) if abs(a) > abs(d) else (INF, z)
    root = cmath.sqrt((a + d) ** 2 - 4)
    z1 = (a - d + root) / (2 * c)
    z2 = (a - d - root) / (2 * c)
    if abs(z1 - z2) < 1e-14:
        return (z1,)
    # attracting fixed point has |cz + d| > 1
    if abs(c * z1 + d) > abs(c * z2 + d):
        z1, z2 = z2, z1
    return (z1, z2)


def classify(m: MoebiusMap) -> IsometryClass:
    from .geodesics import Geodesic

    if m.reversing:
        raise NonDiskMapError("classify expects an orientation-preserving map")
    for k in range(3):
        w = m(cmath.exp(2j * math.pi * k / 3 + 0.3j))
        if is_inf(w) or abs(abs(w) - 1.0) > EPS:
            raise NonDiskMapError("map does not preserve the unit circle")
    tr = m.trace
    if is_identity(m, ALG_TOL):
        return IsometryClass("identity", tr, ())
    fps = fixed_points(m)
    if abs(tr.imag) > EPS:
        return IsometryClass("loxodromic", tr, fps)
    x = abs(tr.real)
    if abs(x - 2.0) < EPS:
        return IsometryClass("parabolic", tr, fps[:1])
    if x < 2.0:
        return IsometryClass("elliptic", tr, fps)
    axis = Geodesic(cmath.phase(fps[0]), cmath.phase(fps[1]))
    return IsometryClass("hyperbolic", tr, fps, axis, 2.0 * math.acosh(x / 2.0))


def axis(m: MoebiusMap):
    """Axis of a hyperbolic disk map, oriented from repelling to attracting fixed point."""
    cls = classify(m)
    if cls.kind != "hyperbolic":
        raise NonDiskMapError(f"map is {cls.kind}, not hyperbolic")
    return cls.axis


def translation_length(m: MoebiusMap) -> float:
    return 2.0 * math.acosh(max(abs(m.trace.real), 2.0) / 2.0)


def dist(z: complex, w: complex) -> float:
    """Hyperbolic distance in the unit disk (curvature -1)."""
    for p in (z, w):
        if point_tag(p) != "interior":
            raise NotInteriorError(f"{p} is not interior to the disk")
    den = math.sqrt((1.0 - abs(z) ** 2) * (1.0 - abs(w) ** 2))
    return 2.0 * math.asinh(abs(z - w) / den)


# ---------------------------------------------------------------- words

# A word is a tuple of (generator name, +1/-1) letters, applied left to right as
# a product: ("A", 1), ("B", -1) means A o B^-1.
Word = tuple


def word(*letters) -> Word:
    """word("A", "B^-1", "A'") -> (("A", 1), ("B", -1), ("A'", 1))."""
    out = []
    for s in letters:
        if s.endswith("^-1"):
            out.append((s[:-3], -1))
        else:
            out.append((s, 1))
    return tuple(out)


def word_inverse(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def word_reduce(w: Word) -> Word:
    out: list = []
    for g, e in w:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def word_str(w: Word) -> str:
    if not w:
        return "id"
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in w)


def evaluate_word(w: Word, gens: Mapping[str, MoebiusMap]) -> MoebiusMap:
    out = IDENTITY
    for g, e in w:
        m = gens[g]
        out = out @ (m if e == 1 else m.inverse())
    return out


def reduced_words(names: Sequence[str], max_length: int) -> Iterable[Word]:
    """All freely reduced words of length <= max_length, shortest first."""
    letters = [(g, e) for g in names for e in (1, -1)]
    frontier: list = [()]
    yield ()
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for g, e in letters:
                if w and w[-1] == (g, -e):
                    continue
                nw = w + ((g, e),)
                nxt.append(nw)
                yield nw
        frontier = nxt


def word_table(gens: Mapping[str, MoebiusMap], max_length: int) -> list:
    """[(word, map)] for all reduced words up to max_length, built incrementally."""
    table = [((), IDENTITY)]
    frontier = [((), IDENTITY)]
    letters = [(g, e) for g in gens for e in (1, -1)]
    mats = {(g, e): (gens[g] if e == 1 else gens[g].inverse()) for g, e in letters}
    for _ in range(max_length):
        nxt = []
        for w, m in frontier:
            for g, e in letters:
                if w and w[-1] == (g, -e):
                    continue
                item = (w + ((g, e),), m @ mats[(g, e)])
                nxt.append(item)
        table.extend(nxt)
        frontier = nxt
    return table


def product_count(rank: int, max_length: int) -> int:
    """Number of reduced words of length <= max_length in a free group of given rank."""
    total, k = 1, 2 * rank
    for n in range(1, max_length + 1):
        total += k * (k - 1) ** (n - 1)
    return total


def find_word(target: MoebiusMap, table, tol: float = EPS) -> Optional[Word]:
    """First word in ``table`` projectively equal to ``target``."""
    for w, m in table:
        if projective_eq(m, target, tol):
            return w
    return None


def all_words_with(table, predicate) -> Iterable[Word]:
    return (w for w, m in table if predicate(m))


