import dataclasses
import math
import random

import pytest

import oracles as o
from fuchsian_doubles.domains import (SidePairing, locate, quotient_topology, tile, verify_poincare)
from fuchsian_doubles.errors import CycleFailureError
from fuchsian_doubles.moebius import MoebiusMap, evaluate_word, is_identity, projective_eq


def carrier_circle(g):
    th1, th2 = g.theta1, g.theta2
    return o.orthogonal_circle(th1, th2)


def oracle_angle(g1, g2):
    """Crossing angle of two geodesics as Euclidean circles; diameters handled as big circles."""
    def circle(g):
        if abs(abs((g.theta1 - g.theta2) % (2 * math.pi)) - math.pi) < 1e-12:
            return None
        return carrier_circle(g)
    c1, c2 = circle(g1), circle(g2)
    if c1 is None or c2 is None:
        # a diameter through the origin meets the circle at the angle of its direction to the radius
        c, r = c1 or c2
        d = g2 if c1 else g1
        u = complex(math.cos(d.theta1), math.sin(d.theta1))
        # distance from the centre to the line through 0 along u
        h = abs((c.conjugate() * u).imag)
        return math.acos(min(1.0, h / r))
    return o.angle_between_circles(*c1, *c2)


# ---------------------------------------------------------------- polygons

def test_F_has_four_geodesic_sides(both):
    F = both.domains.F
    geo = [s for s in F.sides if s.carrier is not None]
    assert len(geo) == 4
    assert all(s.kind in ("reflection", "ideal") for s in F.sides)


def test_F_K_shape(both):
    K = both.domains.F_K
    assert len(K) == 8
    assert [s.kind for s in K.sides].count("axis") == 4
    n = len(K)
    for i in range(n):
        v = K.vertices[i]
        assert abs(v) < 1
        # vertex i is the start of side i and the end of side i-1
        assert K.sides[i].carrier.distance(v) < 1e-9
        assert K.sides[i - 1].carrier.distance(v) < 1e-9


def test_F_K_right_angles(both):
    K = both.domains.F_K
    for i in range(len(K)):
        want = oracle_angle(K.sides[i - 1].carrier, K.sides[i].carrier)
        assert abs(want - math.pi / 2) < 1e-9
        assert abs(K.angle(i) - math.pi / 2) < 1e-9


def test_F_K_area(both):
    # a compact right-angled octagon: (8 - 2) pi - 8 pi/2
    assert abs(both.domains.F_K.area() - 2 * math.pi) < 1e-9


def test_hexagon(fd):
    H = fd.domains.hexagon
    assert len(H) == 6
    for i in range(6):
        assert abs(oracle_angle(H.sides[i - 1].carrier, H.sides[i].carrier) - math.pi / 2) < 1e-9
        assert abs(H.angle(i) - math.pi / 2) < 1e-9
    assert abs(H.area() - math.pi) < 1e-9


def test_no_hexagon_when_intersecting(fx):
    assert fx.domains.hexagon is None


def test_F_K_inside_F(both):
    d = both.domains
    for z in d.F_K.boundary_samples(8):
        assert d.F.contains(z, 1e-9)


# ---------------------------------------------------------------- pairings

def test_pairing_maps_sides(both):
    d = both.domains
    for poly, pairing in ((d.F, d.F_pairing), (d.F_K, d.F_K_pairing)):
        assert len(pairing.pairs) == 2
        for p in pairing.pairs:
            assert projective_eq(p.map, evaluate_word(p.word, pairing.gens))
            if poly.sides[p.source].carrier is None:
                continue
            assert p.map.reversing is False
            assert poly.sides[p.source].carrier.image(p.map).same_line(poly.sides[p.target].carrier)


def test_topology(fd, fx):
    fd_top = quotient_topology(fd.domains.F_K, fd.domains.F_K_pairing)
    fx_top = quotient_topology(fx.domains.F_K, fx.domains.F_K_pairing)
    assert (fd_top.genus, fd_top.boundary_components) == (0, 3)
    assert (fx_top.genus, fx_top.boundary_components) == (1, 1)
    assert fd_top.euler_characteristic == fx_top.euler_characteristic == -1


def test_poincare_on_F_K(both):
    d = both.domains
    cyc = verify_poincare(d.F_K, d.F_K_pairing)
    # every vertex of F_K touches an axis side, which is free
    assert not any(c.interior for c in cyc)
    assert sum(len(c.vertices) for c in cyc) == 8


def test_perturbed_pairing_raises(fx):
    pres = fx.pres
    poly, pairing = pres.domain, pres.pairing
    verify_poincare(poly, pairing)
    nudge = MoebiusMap(math.cosh(1e-4), math.sinh(1e-4), math.sinh(1e-4), math.cosh(1e-4))
    p0 = pairing.pairs[0]
    bad = SidePairing(pairing.gens, (dataclasses.replace(p0, map=nudge @ p0.map),) + pairing.pairs[1:])
    with pytest.raises(CycleFailureError):
        verify_poincare(poly, bad)


# ---------------------------------------------------------------- locate

def test_locate_inside(both):
    d = both.domains
    x = d.F_K.interior_point()
    g, rep, w = locate(x, d.F_K, d.F_K_pairing)
    assert is_identity(g) and w == () and rep == x


def test_locate_one_step(both):
    d = both.domains
    A = d.F_K_pairing.gens["A"]
    x = d.F_K.interior_point()
    g, rep, w = locate(A(x), d.F_K, d.F_K_pairing)
    assert abs(rep - x) < 1e-12
    assert w == (("A", -1),)


def test_locate_replay(both):
    d = both.domains
    gens = d.F_K_pairing.gens
    og = {k: o.entries(v) for k, v in gens.items()}
    rng = random.Random(8)
    # the FD generators translate by about 6.3, so five letters leave the
    # representable disk; two letters already reach 1 - |y| ~ 1e-6 there
    n = 2 if both.disjoint else 5
    words_n = [w for w in o.words(["A", "B"], n) if len(w) == n]
    x = d.F_K.interior_point()
    for w in rng.sample(words_n, 10):
        y = o.mobius(o.evaluate(w, og), x)
        g, rep, found = locate(y, d.F_K, d.F_K_pairing)
        assert abs(g(y) - rep) < 1e-9
        assert abs(rep - x) < 1e-8
        assert o.proj_close(o.entries(g), o.inv(o.evaluate(w, og)), 1e-7)
        assert projective_eq(evaluate_word(found, gens), g, 1e-7)


# ---------------------------------------------------------------- tiles

@pytest.mark.parametrize("depth,count", [(0, 1), (1, 5), (2, 17), (4, 161)])
def test_tile_counts(fd, depth, count):
    d = fd.domains
    assert len(tile(d.F_K, d.F_K_pairing, depth)) == count


def test_tiles_disjoint(both):
    d = both.domains
    tiles = tile(d.F_K, d.F_K_pairing, 2)
    witness = d.F_K.interior_point()
    for i, t in enumerate(tiles):
        z = t.map(witness)
        assert t.contains(z)
        for j, s in enumerate(tiles):
            if j != i:
                assert not s.contains(z)


def test_tile_polygon_is_image(fd):
    d = fd.domains
    t = tile(d.F_K, d.F_K_pairing, 1)[1]
    P = t.polygon
    for v, w in zip(d.F_K.vertices, P.vertices):
        assert abs(t.map(v) - w) < 1e-12
