import cmath
import math

import pytest

import oracles as o
from fuchsian_doubles.domains import quotient_topology
from fuchsian_doubles.errors import BadLabelError, HomomorphismFailureError
from fuchsian_doubles.moebius import is_identity, projective_eq, word
from fuchsian_doubles.stopping import CaseTag
from fuchsian_doubles.weierstrass import (conjugation_words, involution_action, phi, phi_check,
                                          phi_report, product_words, separation)


def oracle_gens(pres, names=("A", "B", "A'", "B'")):
    return {k: o.entries(pres.gens[k]) for k in names}


def deg(z):
    return math.degrees(cmath.phase(z)) % 360


# ---------------------------------------------------------------- Gamma

def test_gamma_sides(fd, fx):
    assert len(fd.pres.domain) == 12
    assert len(fx.pres.domain) == 14
    assert all(s.carrier is not None for s in fd.pres.domain.sides)


def test_gamma_cycles_fd(fd):
    cyc = fd.pres.cycles
    assert sorted(len(c.vertices) for c in cyc) == [4, 4, 4]
    for c in cyc:
        assert c.interior
        assert abs(c.angle_sum - 2 * math.pi) < 1e-9
        assert is_identity(c.transform, 1e-9)


def test_gamma_cycles_fx(fx):
    p = fx.pres
    cyc = p.cycles
    assert sorted(len(c.vertices) for c in cyc) == [3, 3, 4, 4]
    for c in cyc:
        assert abs(c.angle_sum - 2 * math.pi) < 1e-9
        assert is_identity(c.transform, 1e-9)
        angles = sorted(p.domain.angle(v) for v in c.vertices)
        if len(c.vertices) == 3:
            # a split vertex in the middle of a side together with two right angles
            assert all(abs(a - b) < 1e-9 for a, b in zip(angles, (math.pi / 2, math.pi / 2, math.pi)))
        else:
            assert all(abs(a - math.pi / 2) < 1e-9 for a in angles)


def test_gamma_genus(both):
    top = quotient_topology(both.pres.domain, both.pres.pairing)
    assert (top.genus, top.boundary_components) == (2, 0)


def test_gamma_area(both):
    p = both.pres
    assert abs(p.domain.area() / p.F_K.area() - 2) < 1e-9
    # Gauss-Bonnet for a closed genus 2 surface
    assert abs(p.domain.area() - 4 * math.pi) < 1e-9


def test_gamma_pairings_against_oracle(both):
    p = both.pres
    og = oracle_gens(p)
    for q in p.pairing.pairs:
        want = o.evaluate(q.word, og)
        assert o.proj_close(o.entries(q.map), want, 1e-9)
        # the map carries the source side's endpoints onto the target's (reversed)
        a, b = p.domain.side_ends(q.source)
        c, d = p.domain.side_ends(q.target)
        assert abs(o.mobius(want, a) - d) < 1e-8 and abs(o.mobius(want, b) - c) < 1e-8


def test_relator_is_identity(both):
    p = both.pres
    og = oracle_gens(p)
    assert p.relator
    assert o.proj_close(o.evaluate(p.relator, og), o.mat(1, 0, 0, 1), 1e-8)


def test_fold_doubles(both):
    p = both.pres
    R = p.fold
    assert R.reversing and is_identity(R @ R, 1e-12)
    z = p.F_K.interior_point()
    assert not p.in_copy(z)
    assert p.in_copy(R(z))


def test_fd_prime_generators(fd):
    p = fd.pres
    fr = fd.frame
    R = fr.axis_A.reflection()
    assert projective_eq(p.gens["A'"], fr.axis_AinvB.reflection() @ R)
    assert projective_eq(p.gens["B'"], fr.axis_B.reflection() @ R)


def test_fx_prime_generators(fx):
    p = fx.pres
    R0 = p.fold
    assert projective_eq(p.gens["A'"], R0 @ p.gens["A"] @ R0)
    assert projective_eq(p.gens["B'"], R0 @ p.gens["B"] @ R0)


# ---------------------------------------------------------------- phi

def test_phi_fd_kills_primes(fd):
    p = fd.pres
    assert is_identity(phi(word("A'"), p)) and is_identity(phi(word("B'"), p))
    assert projective_eq(phi(word("A", "A'"), p), p.gens["A"])
    phi_check(p)


def test_phi_fx_fold(fx):
    p = fx.pres
    assert projective_eq(phi(word("A'"), p), p.gens["A"])
    assert projective_eq(phi(word("A", "A'"), p), p.gens["A"] @ p.gens["A"])
    res = phi_check(p)
    assert max(r for _, r in res) < 1e-9


def test_phi_literal_fails_on_fx(fx):
    # killing A' and B' sends the cycle relation to a nontrivial commutator of G
    p = fx.pres
    worst = max(r for _, r in phi_report(p, literal=True))
    assert worst > 1
    with pytest.raises(HomomorphismFailureError):
        phi_check(p, literal=True)


def test_phi_is_homomorphism_on_words(both):
    p = both.pres
    for w, m in p.table[:60]:
        for v, n in p.table[:10]:
            assert projective_eq(phi(w + v, p), phi(w, p) @ phi(v, p), 1e-7)


# ---------------------------------------------------------------- Schottky sets

def test_fd_schottky_angles(fd):
    ws = fd.schottky
    want = {"p_L": 160, "q_L": 200, "p_L_B": 280, "q_L_B": 320, "p_L_A": 40, "q_L_A": 80}
    for lab, d in want.items():
        assert abs(deg(ws.point(lab)) - d) < 1e-9
    assert ws.labels[0] == "p_L"


def test_fx_schottky_points(fx):
    ws = fx.schottky
    th, cth = math.tanh(0.5), 1 / math.tanh(0.5)
    assert abs(ws.point("p")) < 1e-12
    assert ws.point("q") == complex("inf") or abs(ws.point("q")) > 1e12
    assert abs(ws.point("p_A") + th) < 1e-12
    assert abs(ws.point("q_A") + cth) < 1e-12
    assert abs(ws.point("p_B") + 1j * th) < 1e-12
    assert abs(ws.point("q_B") + 1j * cth) < 1e-12


def test_bad_label(fd):
    with pytest.raises(BadLabelError):
        fd.schottky.point("nope")


def test_schottky_elliptics_fix_points(both):
    ws = both.schottky
    for z, E in zip(ws.points, ws.elliptics):
        assert is_identity(E @ E, 1e-9)
        if abs(z) < 1e6:
            assert abs(o.mobius(o.entries(E), z) - z) < 1e-9


def test_fd_schottky_elliptic_oracle(fd):
    # the involution R_bd o R_L built from circle inversions
    L = fd.frame.L
    RL = o.reflection_line(L.theta1, L.theta2)
    E = fd.schottky.elliptics[0]
    for z in (0.1 + 0.2j, -0.3j, 0.5):
        w = RL(z)
        assert abs(E(z) - 1 / w.conjugate()) < 1e-12
        assert abs(E(z)) > 1


def test_words(both):
    for ws, table in ((both.schottky, both.g_table), (both.nielsen, both.pres.table)):
        og = {k: o.entries(v) for k, v in ws.group.items()}
        Es = ws.distinct_elliptics()
        for k, name, w in conjugation_words(ws, table):
            assert w is not None
            E, g = o.entries(Es[k]), og[name]
            lhs = o.mul(o.mul(E, g), o.inv(E))
            W = o.evaluate(w, og)
            rhs = o.mul(o.mul(W, o.inv(g)), o.inv(W))
            assert o.proj_close(lhs, rhs, 1e-7)
        for i, k, w in product_words(ws, table):
            assert w is not None
            want = o.mul(o.entries(Es[i]), o.inv(o.entries(Es[k])))
            assert o.proj_close(o.evaluate(w, og), want, 1e-7)


def test_separation(both):
    for ws, table in ((both.schottky, both.g_table), (both.nielsen, both.pres.table)):
        pair, orbit = separation(ws, table)
        assert pair > 1e-6 and orbit > 1e-6


# ---------------------------------------------------------------- Nielsen sets

def test_fd_nielsen_E0(fd):
    ws = fd.nielsen
    p = ws.point("p")
    assert fd.frame.L.distance(p) < 1e-9 and fd.frame.axis_A.distance(p) < 1e-9
    E0 = ws.elliptics[0]
    assert abs(E0(p) - p) < 1e-9
    assert is_identity(E0 @ E0, 1e-9)


def test_fd_nielsen_notes(fd):
    assert any(n.startswith("E_4") for n in fd.nielsen.notes)


def test_fx_nielsen_p_prime(fx):
    ws = fx.nielsen
    A, B = o.entries(fx.pres.gens["A"]), o.entries(fx.pres.gens["B"])
    # axis of [B^-1, A^-1] from the oracle's fixed points, then reflect 0 in it
    C = o.mul(o.mul(o.inv(B), o.inv(A)), o.mul(B, A))
    e1, e2 = o.boundary_fixed_points(C)
    R0 = o.reflection_line(cmath.phase(e1), cmath.phase(e2))
    want = R0(0j)
    assert abs(ws.point("p'") - want) < 1e-12
    assert abs(want + 0.6565 * (1 + 1j)) < 1e-3
    assert ws.notes == []


def test_nielsen_elliptics(both):
    ws = both.nielsen
    assert len(ws.points) == 6
    for z, E in zip(ws.points, ws.elliptics):
        assert abs(z) < 1
        assert abs(E(z) - z) < 1e-9
        assert is_identity(E @ E, 1e-9)
        assert not is_identity(E, 1e-6)


# ---------------------------------------------------------------- involutions

def test_J_fixes_boundary(both):
    ws = both.schottky
    for t in range(12):
        u = cmath.exp(1j * t * math.pi / 6)
        assert abs(involution_action("J", u, ws) - u) < 1e-12


def test_Jhat_is_J_after_j(both):
    ws = both.schottky
    for z in (0.1 + 0.2j, -0.4 + 0.1j):
        want = involution_action("J", involution_action("j", z, ws), ws)
        assert abs(involution_action("Jhat", z, ws) - want) < 1e-12


def test_j_on_boundary_fd(fd):
    # on the circle j acts as the reflection in L: it fixes p_L and q_L and
    # swaps the two arcs between them
    ws = fd.schottky
    for lab in ("p_L", "q_L"):
        z = ws.point(lab)
        assert abs(involution_action("j", z, ws) - z) < 1e-12
    u = ws.point("p_L_A")
    v = involution_action("j", u, ws)
    assert abs(abs(v) - 1) < 1e-12
    L = fd.frame.L
    assert L.side(u * 0.999) == -L.side(v * 0.999)


def test_unknown_involution(fd):
    with pytest.raises(BadLabelError):
        involution_action("k", 0.1, fd.schottky)


def test_case_tags(fd, fx):
    assert fd.pres.case is CaseTag.DISJOINT and fx.pres.case is CaseTag.INTERSECTING
