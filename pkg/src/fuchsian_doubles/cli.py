"""Command line front end: JSON in, JSON reports and SVG figures out.

    python -m fuchsian_doubles report --input pair.json
    python -m fuchsian_doubles render --fixture FD --depth 2 --out fd.svg
"""
from __future__ import annotations

import argparse
import cmath
import json
import math
import random
import sys
from functools import cached_property

from . import foliation as fol
from .domains import build_domains, quotient_topology, tile
from .errors import GeometryError, NotHyperbolicError, SchemaError
from .fixtures import FIXTURES
from .geodesics import Geodesic
from .moebius import (EPS, INF, MoebiusMap, classify, is_identity, is_inf, product_count,
                      word_str, word_table)
from .render import Layer, Scene, render_svg
from .stopping import CaseTag, nielsen_search
from .weierstrass import (conjugation_words, gamma_group, nielsen_weierstrass, phi_report,
                          product_words, schottky_weierstrass, separation)

COMMANDS = ("classify", "stop", "domains", "weierstrass", "gamma", "pleat-check", "surface",
            "tile", "render", "report")
CHECK_FAILURE = 5


# ------------------------------------------------------------ input and output

def _cayley(m: MoebiusMap) -> MoebiusMap:
    """Upper half-plane map to the disk via z -> (z - i)/(z + i)."""
    K = MoebiusMap(1, -1j, 1, 1j)
    return m.conj_by(K)


def _entry(x, where):
    if (not isinstance(x, list) or len(x) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)):
        raise SchemaError(f"{where}: expected [re, im]")
    return complex(x[0], x[1])


def parse_input(data) -> tuple:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise SchemaError(f"input is not UTF-8: {e}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON: {e}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    model = doc.get("model", "disk")
    if model not in ("disk", "halfplane"):
        raise SchemaError(f"unknown model {model!r}")
    gens = doc.get("generators")
    if not isinstance(gens, list) or len(gens) != 2:
        raise SchemaError("expected exactly two generators")
    out = []
    for k, g in enumerate(gens):
        if not isinstance(g, dict) or set(g) != {"a", "b", "c", "d"}:
            raise SchemaError(f"generator {k}: expected keys a, b, c, d")
        m = MoebiusMap(*(_entry(g[key], f"generator {k}.{key}") for key in "abcd"))
        if model == "halfplane":
            m = _cayley(m)
        kind = classify(m).kind
        if kind != "hyperbolic":
            raise NotHyperbolicError(f"generator {k} is {kind}")
        out.append(m)
    return tuple(out)


def _num(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    if x == int(x) and abs(x) < 1e15:
        x = float(x)
    return format(x, ".17g")


def dumps(obj, indent: int = 2, level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad, inner = " " * (indent * level), " " * (indent * (level + 1))
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, complex):
        return dumps(_pt(obj), indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [inner + dumps(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _pt(z: complex):
    return "inf" if is_inf(z) else [float(z.real), float(z.imag)]


def _mat(m: MoebiusMap) -> dict:
    return {k: _pt(complex(getattr(m, k))) for k in "abcd"}


def serialize(pair, model: str = "disk") -> str:
    return dumps({"model": model, "generators": [_mat(m) for m in pair]})


def _geo(g: Geodesic) -> dict:
    return {"endpoints_deg": [math.degrees(g.theta1) % 360, math.degrees(g.theta2) % 360]}


def check(name: str, value, tol: float, passed=None) -> dict:
    if passed is None:
        passed = value < tol
    return {"name": name, "value": value, "tol": tol, "pass": bool(passed)}


# ------------------------------------------------------------ pipeline

class Pipeline:
    def __init__(self, C: MoebiusMap, D: MoebiusMap, tol: float = EPS, seed: int = 0):
        self.C, self.D, self.tol, self.seed = C, D, tol, seed

    @cached_property
    def stop(self):
        return nielsen_search(self.C, self.D)

    @property
    def frame(self):
        return self.stop.frame

    @property
    def gens(self):
        return self.stop.generators

    @cached_property
    def domains(self):
        A, B = self.gens
        return build_domains(A, B, self.frame)

    @cached_property
    def pres(self):
        A, B = self.gens
        return gamma_group(A, B, self.frame, self.domains.F_K)

    @cached_property
    def schottky(self):
        A, B = self.gens
        return schottky_weierstrass(A, B, self.frame)

    @cached_property
    def nielsen(self):
        return nielsen_weierstrass(self.pres, self.frame)

    @cached_property
    def g_table(self):
        A, B = self.gens
        return word_table({"A": A, "B": B}, 4)

    @property
    def disjoint(self) -> bool:
        return self.stop.case is CaseTag.DISJOINT

    # -------------------------------------------------------- commands

    def classify(self) -> dict:
        from .stopping import commutator_case
        case, tr = commutator_case(self.C, self.D)
        gens = []
        for m in (self.C, self.D):
            c = classify(m)
            gens.append({"kind": c.kind, "trace": float(c.trace.real),
                         "translation_length": c.translation_length})
        return {"case": case.value, "commutator_trace": float(tr), "generators": gens}

    def stop_report(self) -> dict:
        r, fr = self.stop, self.frame
        frame = {"axis_A": _geo(fr.axis_A), "axis_B": _geo(fr.axis_B)}
        if self.disjoint:
            for k in ("L", "L_A", "L_B", "L_Abar", "L_Bbar", "axis_AinvB", "axis_ABinv"):
                frame[k] = _geo(getattr(fr, k))
        else:
            for k in ("p", "p_A", "p_B", "p_Abar", "p_Bbar"):
                frame[k] = getattr(fr, k)
            for k in ("M_A", "M_B", "M_Abar", "M_Bbar"):
                frame[k] = _geo(getattr(fr, k))
            frame["commutator_axes"] = {k: _geo(v) for k, v in fr.comm_axes.items()}
        checks = [check(n, v, t, ok) for n, v, t, ok in fr.checks()]
        return {"case": r.case.value, "commutator_trace": float(r.commutator_trace),
                "moves": list(r.moves), "trace_history": [list(h) for h in r.trace_history],
                "generators": [_mat(m) for m in r.generators], "frame": frame, "checks": checks}

    def domains_report(self) -> dict:
        d = self.domains
        expect = (0, 3) if self.disjoint else (1, 1)
        out = {}
        checks = []
        for name, poly, pairing in (("F", d.F, d.F_pairing), ("F_K", d.F_K, d.F_K_pairing)):
            top = quotient_topology(poly, pairing)
            out[name] = {"vertices": list(poly.vertices), "sides": [s.label for s in poly.sides],
                         "angles": poly.angles(), "area": poly.area(),
                         "pairings": [[poly.sides[p.source].label, poly.sides[p.target].label,
                                       word_str(p.word)] for p in pairing.pairs],
                         "genus": top.genus, "boundary_components": top.boundary_components}
            checks.append(check(f"{name} topology (genus, holes) = {expect}",
                                [top.genus, top.boundary_components], 0,
                                (top.genus, top.boundary_components) == expect))
        if d.hexagon is not None:
            err = max(abs(a - math.pi / 2) for a in d.hexagon.angles())
            out["hexagon"] = {"vertices": list(d.hexagon.vertices), "angles": d.hexagon.angles()}
            checks.append(check("hexagon angles = pi/2", err, self.tol))
        out["checks"] = checks
        return out

    def _wset(self, ws, table) -> tuple:
        pts = []
        for lab, z, E in zip(ws.labels, ws.points, ws.elliptics):
            entry = {"label": lab, "point": z}
            if not is_inf(z) and abs(abs(z) - 1) < 1e-9:
                entry["angle_deg"] = math.degrees(cmath.phase(z)) % 360
            pts.append(entry)
        checks = []
        fix = max(0.0 if is_inf(z) and is_inf(E(z)) else
                  (abs(E(z) - z) if not is_inf(E(z)) else math.inf)
                  for z, E in zip(ws.points, ws.elliptics))
        checks.append(check(f"{ws.kind}: each point fixed by its elliptic", fix, self.tol))
        invol = all(is_identity(E @ E, self.tol) for E in ws.elliptics)
        checks.append(check(f"{ws.kind}: elliptics are involutions", invol, 0, invol))
        conj = conjugation_words(ws, table)
        missing = [f"E{k}/{g}" for k, g, w in conj if w is None]
        checks.append(check(f"{ws.kind}: E g E^-1 = w g^-1 w^-1 with |w| <= 4", len(missing), 1))
        prods = product_words(ws, table)
        missing = [(i, k) for i, k, w in prods if w is None]
        checks.append(check(f"{ws.kind}: E_i E_k^-1 is a word of length <= 4", len(missing), 1))
        pair, orbit = separation(ws, table)
        checks.append(check(f"{ws.kind}: pairwise chordal separation", pair, self.tol, pair > self.tol))
        checks.append(check(f"{ws.kind}: inequivalent under words of length <= 4", orbit,
                            self.tol, orbit > self.tol))
        doc = {"points": pts, "notes": list(ws.notes),
               "conjugation_words": [[k, g, word_str(w) if w is not None else None]
                                     for k, g, w in conj],
               "product_words": [[i, k, word_str(w) if w is not None else None]
                                 for i, k, w in prods]}
        return doc, checks

    def weierstrass_report(self) -> dict:
        s_doc, s_checks = self._wset(self.schottky, self.g_table)
        n_doc, n_checks = self._wset(self.nielsen, self.pres.table)
        return {"schottky": s_doc, "nielsen": n_doc, "checks": s_checks + n_checks}

    def gamma_report(self) -> dict:
        p = self.pres
        top = quotient_topology(p.domain, p.pairing)
        cyc = [{"vertices": list(c.vertices), "angle_sum": c.angle_sum, "word": word_str(c.word),
                "angles": [p.domain.angle(v) for v in c.vertices]} for c in p.cycles]
        checks = [check("genus 2, no boundary", [top.genus, top.boundary_components], 0,
                        (top.genus, top.boundary_components) == (2, 0))]
        worst = max(abs(c.angle_sum - 2 * math.pi) for c in p.cycles)
        checks.append(check("cycle angle sums = 2 pi", worst, self.tol))
        ident = all(is_identity(c.transform, self.tol) for c in p.cycles)
        checks.append(check("cycle transformations are the identity", ident, 0, ident))
        ratio = abs(p.domain.area() - 2 * p.F_K.area())
        checks.append(check("area(F_Gamma) = 2 area(F_K)", ratio, 1e-6))
        phi = phi_report(p)
        checks.append(check("phi(relator and cycle words) = id", max(r for _, r in phi), self.tol))
        info = {}
        if p.case is CaseTag.INTERSECTING:
            lit = phi_report(p, literal=True)
            info["phi_killing_A'_B'_residual"] = max(r for _, r in lit)
        return {"generators": {k: _mat(m) for k, m in p.gens.items()},
                "vertices": len(p.domain.vertices), "sides": [s.label for s in p.domain.sides],
                "pairings": [[p.domain.sides[q.source].label, p.domain.sides[q.target].label,
                              word_str(q.word)] for q in p.pairing.pairs],
                "cycles": cyc, "relator": word_str(p.relator),
                "genus": top.genus, "boundary_components": top.boundary_components,
                "notes": list(p.notes), "info": info, "checks": checks}

    def pleat_report(self, n: int = 200) -> dict:
        p = self.pres
        rng = random.Random(self.seed)
        words = [w for w, _ in p.table if len(w) <= 2]
        err = 0.0
        for _ in range(n):
            w = rng.choice(words)
            g = dict(p.table)[w]
            copy = rng.random() < 0.5
            zs = [p.F_K.interior_point([rng.random() + 0.05 for _ in p.F_K.vertices])
                  for _ in range(2)]
            if copy:
                zs = [p.fold(z) for z in zs]
            x, y = (g(z) for z in zs)
            Px, Py = fol.pleat(x, p).image, fol.pleat(y, p).image
            err = max(err, abs(fol.dist(x, y) - fol.fermi_dist(Px, Py)))
        on, off = True, True
        for i, s in enumerate(p.domain.sides):
            if s.kind != "axis":
                continue
            a, b = p.domain.side_ends(i)
            for t in (0.25, 0.5, 0.75):
                z = s.carrier.point((1 - t) * s.carrier.parameter(a) + t * s.carrier.parameter(b))
                on &= fol.pleat(z, p).on_locus
                inward = fol.offset(s.carrier, z, 1e-6)
                off &= not fol.pleat(inward, p).on_locus
        eqv = 0.0
        hom = fol.phi_images(p)
        for _ in range(20):
            z = p.F_K.interior_point([rng.random() + 0.05 for _ in p.F_K.vertices])
            base = fol.pleat(z, p).image.base
            for k, gm in p.gens.items():
                eqv = max(eqv, abs(fol.pleat(gm(z), p).image.base - hom[k](base)))
        checks = [check("in-face isometry |rho - fermi_dist|", err, 1e-6),
                  check("locus flag on axis sides", on, 0, on),
                  check("no locus flag 1e-6 off axis sides", off, 0, off),
                  check("equivariance pleat(g x) = phi(g) pleat(x)", eqv, self.tol)]
        return {"pairs": n, "max_error": err, "checks": checks}

    def surface_report(self, s: float = 1.0, n: int = 200) -> dict:
        fr, rng = self.frame, random.Random(self.seed)
        W = fol.generalized_weierstrass_points(s, fr)
        fix = max(fol.orbit_distance(P, fol.surface_involution("j", P, fr), self.g_table)
                  for P in W.values())
        moved = math.inf
        F_K = self.domains.F_K
        for k in range(n):
            x = F_K.interior_point([rng.random() + 0.05 for _ in F_K.vertices])
            P = fol.FermiPoint(x, s if k % 2 else -s)
            moved = min(moved, fol.orbit_distance(P, fol.surface_involution("j", P, fr),
                                                  self.g_table))
        heights = 0.0
        samples = fol.equidistant_sample(s, "coreBoundary", 8, fr, self.pres).samples
        elements = ["A", "B", "A^-1B"] if self.disjoint else ["[B,A]"]
        central = 0.0
        swap = 0.0
        for e in elements:
            fb = fol.equidistant_sample(s, "funnelBoundary", 16, fr, self.pres, e).samples
            samples += fb
            half = len(fb) // 2
            for P, Q in zip(fb[:half], fb[half:]):
                swap = max(swap, fol.fermi_dist(fol.surface_involution("J", P, fr), Q))
            for P in fol.equidistant_sample(s, "centralCurve", 16, fr, self.pres, e).samples:
                central = max(central, fol.fermi_dist(fol.surface_involution("J", P, fr), P))
        for P in samples:
            heights = max(heights, abs(fol.fermi_dist(P, fol.FermiPoint(P.base, 0.0)) - s))
        checks = [check("lifted samples at distance s from P", heights, self.tol),
                  check("j fixes the six generalized Weierstrass points", fix, self.tol),
                  check("j moves other sampled points of S(s)", moved, 1e-6, moved > 1e-6),
                  check("J fixes central curves", central, self.tol),
                  check("J swaps the +-s funnel boundaries", swap, self.tol)]
        if not self.disjoint:
            pq = max(fol.fermi_dist(fol.surface_involution("J", W[a], fr), W[b])
                     for a, b in (("p", "q"), ("p_A", "q_A"), ("p_B", "q_B")))
            checks.append(check("J swaps p(s) and q(s)", pq, self.tol))
        pts = [{"label": k, "base": P.base, "height": P.height} for k, P in W.items()]
        return {"s": s, "weierstrass_points": pts, "checks": checks}

    def tile_report(self, depth: int = 4) -> dict:
        d = self.domains
        tiles = tile(d.F, d.F_pairing, depth)
        expected = product_count(2, depth)
        c = d.F.interior_point()
        witnesses = [t.map(c) for t in tiles]
        clash = 0
        for i, z in enumerate(witnesses):
            for j, t in enumerate(tiles):
                if i != j and t.contains(z, -1e-9):
                    clash += 1
        checks = [check("tile count = reduced word count", len(tiles), 0, len(tiles) == expected),
                  check("tile interiors disjoint on witnesses", clash, 1)]
        return {"depth": depth, "tiles": len(tiles), "expected": expected, "checks": checks}

    def scene(self, depth: int = 0) -> Scene:
        fr, d = self.frame, self.domains
        layers = []
        if depth > 0:
            polys = []
            for t in tile(d.F, d.F_pairing, depth):
                polys.append(([t.map(v) for v in d.F.vertices], d.F.sides))
            layers.append(Layer("tiling", polygons=polys))
        layers.append(Layer("domainFill", polygons=[(d.F_K.vertices, d.F_K.sides)]))
        if self.disjoint:
            lines = [fr.L, fr.L_A, fr.L_B, fr.L_Abar, fr.L_Bbar]
            axes = [fr.axis_A, fr.axis_B, fr.axis_AinvB, fr.axis_ABinv]
        else:
            lines = [fr.M_A, fr.M_B, fr.M_Abar, fr.M_Bbar]
            axes = [fr.axis_A, fr.axis_B] + list(fr.comm_axes.values())
        layers.append(Layer("reflectionLine", geodesics=lines))
        layers.append(Layer("axis", geodesics=axes))
        pts = [z for z in self.schottky.points + self.nielsen.points if not is_inf(z)]
        layers.append(Layer("weierstrass", points=pts))
        return Scene(layers, f"{self.stop.case.value} pair")

    def report(self, depth: int = 4, s: float = 1.0) -> dict:
        parts = {"classify": self.classify(), "stop": self.stop_report(),
                 "domains": self.domains_report(), "weierstrass": self.weierstrass_report(),
                 "gamma": self.gamma_report(), "pleat-check": self.pleat_report(),
                 "surface": self.surface_report(s), "tile": self.tile_report(depth)}
        ok = all(c["pass"] for part in parts.values() for c in part.get("checks", []))
        parts["pass"] = ok
        return parts


# ------------------------------------------------------------ dispatch

def run_command(cmd: str, C: MoebiusMap, D: MoebiusMap, depth: int = 4, s: float = 1.0,
                tol: float = EPS, seed: int = 0):
    """The report for ``cmd``; ``render`` returns SVG bytes."""
    P = Pipeline(C, D, tol, seed)
    if cmd == "classify":
        doc = P.classify()
    elif cmd == "stop":
        doc = P.stop_report()
    elif cmd == "domains":
        doc = P.domains_report()
    elif cmd == "weierstrass":
        doc = P.weierstrass_report()
    elif cmd == "gamma":
        doc = P.gamma_report()
    elif cmd == "pleat-check":
        doc = P.pleat_report()
    elif cmd == "surface":
        doc = P.surface_report(s)
    elif cmd == "tile":
        doc = P.tile_report(depth)
    elif cmd == "render":
        return render_svg(P.scene(depth))
    elif cmd == "report":
        doc = P.report(depth, s)
    else:
        raise SchemaError(f"unknown command {cmd!r}")
    return {"command": cmd, **doc}


def _passed(doc: dict) -> bool:
    if "pass" in doc:
        return doc["pass"]
    return all(c["pass"] for c in doc.get("checks", []))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="fuchsian_doubles",
                                 description="Two-generator Fuchsian groups, their doubles "
                                             "and Weierstrass points.")
    ap.add_argument("command", choices=COMMANDS)
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--input", help="JSON generator pair (default: stdin)")
    src.add_argument("--fixture", choices=sorted(FIXTURES), help="use a built-in pair")
    ap.add_argument("--out", help="write the report or SVG here instead of stdout")
    ap.add_argument("--depth", type=int, default=None, help="tiling depth")
    ap.add_argument("--s", type=float, default=1.0, help="equidistance parameter")
    ap.add_argument("--tol", type=float, default=EPS, help="check tolerance")
    ap.add_argument("--seed", type=int, default=0, help="sampling seed")
    args = ap.parse_args(argv)
    depth = args.depth if args.depth is not None else (0 if args.command == "render" else 4)
    try:
        if args.fixture:
            C, D = FIXTURES[args.fixture]()
        elif args.input:
            with open(args.input, "rb") as fh:
                C, D = parse_input(fh.read())
        else:
            C, D = parse_input(sys.stdin.buffer.read())
        out = run_command(args.command, C, D, depth, args.s, args.tol, args.seed)
    except GeometryError as e:
        sys.stdout.write(dumps({"command": args.command, "error": e.code, "message": str(e)}) + "\n")
        return e.exit_status
    except OSError as e:
        sys.stderr.write(f"{e}\n")
        return 2
    data = out if isinstance(out, bytes) else (dumps(out) + "\n").encode("utf-8")
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
    if isinstance(out, dict) and not _passed(out):
        return CHECK_FAILURE
    return 0


__all__ = ["parse_input", "serialize", "dumps", "run_command", "main", "Pipeline", "COMMANDS",
           "INF"]
