import itertools

import pytest

from orbicc import surface as sf
from orbicc.surface import Arc, Triangulation


def test_arc_encoding_roundtrip():
    for n in (2, 3, 5):
        for arc in sf.all_arcs(n):
            assert Arc.decode(arc.encode()) == arc


def test_arc_census_counts():
    assert len(sf.all_arcs(3)) == 12
    assert len(sf.all_arcs(2)) == 6
    arcs5 = sf.all_arcs(5)
    assert len(arcs5) == 30
    assert Arc.plain(2, 5, "+") in arcs5
    assert Arc.plain(2, 4, "-") in arcs5


def test_boundary_parallel_arcs_excluded():
    with pytest.raises(sf.SurfaceError):
        sf._validate(Arc.plain(0, 1, "+"), 3)
    with pytest.raises(sf.SurfaceError):
        sf._validate(Arc.plain(0, 3, "+"), 3)
    arcs = sf.all_arcs(3)
    assert Arc.plain(0, 1, "-") in arcs
    assert Arc.plain(0, 3, "-") in arcs


def test_census_matches_exhaustive_enumeration():
    # independent count: orbits of covering chords that avoid their rotates
    for n in (2, 3, 4):
        big = sf.cover_size(n)
        orbits = set()
        for a in range(big):
            for b in range(a + 2, big):
                if (a, b) == (0, big - 1):
                    continue
                d = (a, b)
                if sf.chords_cross(d, sf.theta_diag(d, n), n):
                    continue
                e = sf.theta_diag(d, n)
                if sf.chords_cross(d, sf.theta_diag(e, n), n):
                    continue
                orbits.add(sf.diag_orbit(d, n))
        assert len(orbits) == n * (n + 1) == len(sf.all_arcs(n))


def test_lift_pending_and_roundtrip():
    assert sf.lift(Arc.pending(0), 3) == frozenset({(0, 4), (4, 8), (0, 8)})
    for n in (2, 3, 4):
        for arc in sf.all_arcs(n):
            diags = sf.lift(arc, n)
            assert len(diags) == 3
            for d in diags:
                assert sf.project_diag(d, n) == arc
                assert sf.theta_diag(d, n) in diags


def test_crossing_profiles():
    tau0 = sf.special_triangulation(5)
    j2 = Arc.plain(2, 4, "-")
    assert tuple(sf.crossing(i, j2, 5) for i in tau0.arcs) == (0, 1, 1, 2, 2)
    j1 = Arc.plain(2, 5, "+")
    assert tuple(sf.crossing(i, j1, 5) for i in tau0.arcs) == (0, 1, 1, 0, 0)
    for a in sf.all_arcs(3):
        assert sf.crossing(a, a, 3) == 0


def test_crossing_symmetric():
    for n in (2, 3):
        for i in sf.all_arcs(n):
            for j in sf.all_arcs(n):
                assert sf.crossing(i, j, n) == sf.crossing(j, i, n)


def test_compatibility_examples():
    assert sf.compatible(Arc.pending(0), Arc.plain(0, 2, "-"), 3)
    for a in sf.all_arcs(4):
        assert sf.compatible(a, a, 4)
    for k, m in itertools.combinations(range(4), 2):
        assert not sf.compatible(Arc.pending(k), Arc.pending(m), 3)


def test_special_triangulation():
    tau0 = sf.special_triangulation(3)
    assert tau0.key() == ("A:0:2:-", "A:0:3:-", "P:0")
    for a, b in itertools.combinations(tau0.arcs, 2):
        assert sf.compatible(a, b, 3)
    # its lift is the rotation-invariant fan of the covering 12-gon
    assert tau0.lifted() == frozenset(
        {(0, 2), (0, 3), (0, 4), (4, 6), (4, 7), (4, 8), (8, 10), (8, 11), (0, 8)}
    )


def test_flip_involution_and_fixed_point_free():
    for n in (2, 3):
        for tau in sf.enumerate_triangulations(n):
            for arc in tau.arcs:
                tau2, new = sf.flip(tau, arc)
                assert new != arc
                assert new not in tau.arcs
                back, old = sf.flip(tau2, new)
                assert back == tau and old == arc


def test_flip_of_long_fan_arc():
    tau0 = sf.special_triangulation(3)
    tau, new = sf.flip(tau0, Arc.plain(0, 3, "-"))
    assert new == Arc.plain(0, 2, "+")
    assert tau.key() == ("A:0:2:-", "A:0:2:+", "P:0")


def test_flip_pending_gives_pending():
    for n in (2, 3, 4):
        tau0 = sf.special_triangulation(n)
        _, new = sf.flip(tau0, Arc.pending(0))
        assert new.kind == "P"


def test_flip_requires_membership():
    tau0 = sf.special_triangulation(3)
    with pytest.raises(sf.SurfaceError):
        sf.flip(tau0, Arc.plain(1, 3, "+"))


def test_rotate_bijection():
    for n in (2, 3, 4):
        arcs = sf.all_arcs(n)
        plus = {sf.rotate(a, n, "+") for a in arcs}
        assert plus == set(arcs)
        for a in arcs:
            assert sf.rotate(sf.rotate(a, n, "+"), n, "-") == a


def test_rotate_commutes_with_lift():
    for n in (3, 4):
        for a in sf.all_arcs(n):
            lifted = {sf.shift_diag(d, 1, n) for d in sf.lift(a, n)}
            assert lifted == sf.lift(sf.rotate(a, n, "+"), n)
    assert sf.rotate(Arc.plain(0, 1, "-"), 3, "+") == Arc.plain(1, 2, "-")


def test_enumerate_triangulations_counts():
    # (n+1) choices of invariant triangle times Catalan(n) fundamental domains
    for n, want in ((2, 6), (3, 20), (4, 70)):
        taus = sf.enumerate_triangulations(n)
        assert len(taus) == want
        for tau in taus:
            assert len(tau.arcs) == n
            assert sum(a.kind == "P" for a in tau.arcs) == 1
            tau.assert_maximal()
    with pytest.raises(sf.SurfaceError):
        sf.enumerate_triangulations(7)


def test_enumeration_agrees_with_subset_search():
    for n in (2, 3):
        arcs = sf.all_arcs(n)
        combos = {
            tuple(sorted(c, key=Arc.sort_key))
            for c in itertools.combinations(arcs, n)
            if all(sf.crossing(a, b, n) == 0 for a, b in itertools.combinations(c, 2))
        }
        bfs = {t.arcs for t in sf.enumerate_triangulations(n)}
        assert combos == bfs


def test_triangles():
    tau0 = sf.special_triangulation(3)
    tris = sf.triangles(tau0)
    assert len(tris) == 3
    assert sum(t.orbifold for t in tris) == 1
    orb = next(t for t in tris if t.orbifold)
    assert any(isinstance(s, Arc) and s.kind == "P" for s in orb.sides)
    # covering face count is 3n+1 for every triangulation
    for n in (2, 3):
        for tau in sf.enumerate_triangulations(n):
            assert len(sf.cover_faces(tau.lifted(), n)) == 3 * n + 1
            tris = sf.triangles(tau)
            assert len(tris) == n
            assert sum(t.orbifold for t in tris) == 1


def test_triangles_of_flipped_tau():
    tau0 = sf.special_triangulation(3)
    tau, _ = sf.flip(tau0, Arc.plain(0, 3, "-"))
    tris = sf.triangles(tau)
    internal = [t for t in tris if all(isinstance(s, Arc) for s in t.sides)]
    assert len(internal) == 1  # the three-arc triangle carrying the 3-cycle


def test_triangulation_validation():
    with pytest.raises(sf.SurfaceError):
        Triangulation([Arc.plain(0, 2, "-"), Arc.plain(1, 3, "-")], 3)  # crossing pair
    with pytest.raises(sf.SurfaceError):
        Triangulation([Arc.plain(0, 2, "-")], 3)  # wrong size
    with pytest.raises(sf.SurfaceError):
        Triangulation(
            [Arc.plain(0, 2, "-"), Arc.plain(0, 3, "-"), Arc.plain(0, 2, "+")], 3
        )  # no pending arc


def test_triangulation_json_roundtrip():
    tau0 = sf.special_triangulation(4)
    assert Triangulation.from_json(tau0.to_json(), 4) == tau0
