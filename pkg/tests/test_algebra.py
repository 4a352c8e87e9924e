import itertools
import random
from fractions import Fraction

import pytest

from orbicc import algebra as ag
from orbicc import strings as st
from orbicc import surface as sf
from orbicc.covering import orbit_map


def fan_algebra(n):
    return orbit_map(sf.special_triangulation(n)).base_alg


def flipped_tau():
    tau0 = sf.special_triangulation(3)
    tau, _ = sf.flip(tau0, sf.Arc.plain(0, 3, "-"))
    return tau


def jordan_block_module(alg, v):
    dims = tuple(2 if i == v else 0 for i in range(alg.num_vertices))
    rep = ag.Rep.zero_maps(alg, dims)
    rep.mats[alg.arrow_by_name["eps"].idx] = [
        [Fraction(0), Fraction(1)],
        [Fraction(0), Fraction(0)],
    ]
    return rep


def test_fan_algebra_shape():
    alg = fan_algebra(3)
    assert [(a.name, a.tail, a.head) for a in alg.arrows] == [
        ("a1", 0, 1),
        ("a2", 1, 2),
        ("eps", 2, 2),
    ]
    eps = alg.arrow_by_name["eps"].idx
    assert alg.relations == frozenset({(eps, eps)})
    assert alg.dim() == 9
    assert alg.pending_vertex == 2


def test_flipped_algebra_relations():
    alg = ag.algebra_of_triangulation(flipped_tau())
    pairs = sorted((a.tail, a.head) for a in alg.arrows)
    assert pairs == [(0, 2), (1, 0), (2, 1), (2, 2)]
    b = alg.arrow_between(0, 2)
    a = alg.arrow_between(1, 0)
    c = alg.arrow_between(2, 1)
    eps = alg.arrow_by_name["eps"]
    # the three 3-cycle compositions plus the loop squared
    assert alg.relations == frozenset(
        {(b.idx, c.idx), (c.idx, a.idx), (a.idx, b.idx), (eps.idx, eps.idx)}
    )


def test_gentleness_for_all_small_triangulations():
    for n in (2, 3):
        for tau in sf.enumerate_triangulations(n):
            alg = ag.algebra_of_triangulation(tau)
            alg.check_gentle()  # raises on failure
            assert alg.dim() < 80  # finite-dimensionality made concrete


def test_covering_algebra_shape():
    tau0 = sf.special_triangulation(3)
    cov = ag.covering_algebra(tau0.lifted(), 3)
    assert cov.num_vertices == 9
    assert len(cov.arrows) == 9
    assert all(a.tail != a.head for a in cov.arrows)  # never a loop
    assert cov.dim() == 3 * fan_algebra(3).dim()
    with pytest.raises(ag.AlgebraError):
        bad = set(tau0.lifted()) - {(0, 2)}
        ag.covering_algebra(frozenset(bad | {(1, 3)}), 3)


def test_covering_path_basis_projects_onto_base():
    tau = flipped_tau()
    om = orbit_map(tau)
    base, cov = om.base_alg, om.cov_alg
    assert cov.dim() == 3 * base.dim()
    # arrows fold three-to-one
    from collections import Counter

    counts = Counter(om.arrow_orbit)
    assert set(counts.values()) == {3}
    # projected basis paths are basis paths, surjectively
    base_paths = set(base.path_basis)
    projected = set()
    for start, body in cov.path_basis:
        image = (om.vertex_orbit[start], tuple(om.arrow_orbit[x] for x in body))
        assert image in base_paths
        projected.add(image)
    assert projected == base_paths


def test_b_matrix_fan():
    b, d = ag.b_matrix(sf.special_triangulation(3))
    assert b == [[0, -1, 0], [1, 0, -2], [0, 1, 0]]
    assert d == (1, 1, 2)
    b2, d2 = ag.b_matrix(sf.special_triangulation(2))
    assert b2 == [[0, -2], [1, 0]]
    assert d2 == (1, 2)


def test_b_matrix_properties_everywhere():
    for n in (2, 3):
        for tau in sf.enumerate_triangulations(n):
            b, d = ag.b_matrix(tau)
            for i in range(n):
                for j in range(n):
                    assert d[i] * b[i][j] == -d[j] * b[j][i]
                    assert b[i][j] % d[j] == 0
            c = ag.c_matrix(ag.algebra_of_triangulation(tau))
            for i in range(n):
                for j in range(n):
                    assert c[i][j] == -c[j][i]


def test_hom_dim_examples():
    alg = fan_algebra(3)
    for i in range(3):
        s = alg.simple(i)
        assert ag.hom_dim(alg, s, s) == 1
    flip_alg = ag.algebra_of_triangulation(flipped_tau())
    m = jordan_block_module(flip_alg, 2)
    m.check(flip_alg)
    assert ag.hom_dim(flip_alg, m, m) == 2


def test_socle_matches_hom_from_simples():
    # the kernel computation and the general intertwiner solver must agree
    for n in (2, 3):
        tau0 = sf.special_triangulation(n)
        alg = orbit_map(tau0).base_alg
        mods = [alg.projective(i) for i in range(n)] + [alg.injective(i) for i in range(n)]
        mods += [st.string_module(alg, w) for w in st.all_strings(alg)]
        for m in mods:
            soc = ag.socle_vector(alg, m)
            for i in range(n):
                assert soc[i] == ag.hom_dim(alg, alg.simple(i), m)


def test_projectives_and_injectives():
    alg = fan_algebra(3)
    assert alg.projective(2).total_dim() == 2  # basis: the idempotent and the loop
    assert alg.injective(2).dims == (2, 2, 2)
    for i in range(3):
        p = alg.projective(i)
        assert ag.top_vector(alg, p) == tuple(1 if v == i else 0 for v in range(3))
        assert ag.is_projective(alg, p)
        assert ag.is_injective(alg, alg.injective(i))
    # the big injective is the string module through the loop and back
    a1 = alg.arrow_by_name["a1"].idx
    a2 = alg.arrow_by_name["a2"].idx
    eps = alg.arrow_by_name["eps"].idx
    w = st.StringWord(((a1, 1), (a2, 1), (eps, 1), (a2, -1), (a1, -1)), None)
    assert ag.is_isomorphic(alg, alg.injective(2), st.string_module(alg, w))


def test_relations_annihilate_everything():
    for n in (2, 3):
        for tau in sf.enumerate_triangulations(n):
            alg = ag.algebra_of_triangulation(tau)
            for i in range(n):
                alg.projective(i).check(alg)
                alg.injective(i).check(alg)
            for w in st.all_strings(alg):
                st.string_module(alg, w).check(alg)


def test_radical_of_projective():
    alg = fan_algebra(3)
    rad = ag.radical(alg, alg.projective(0))
    assert rad.dims == (0, 1, 2)
    assert ag.top_vector(alg, alg.projective(0)) == (1, 0, 0)


def test_g_vector_negative_simples():
    alg = fan_algebra(3)
    for i in range(3):
        dm = ag.DecRep.negative_simple(alg, i)
        e_i = tuple(1 if v == i else 0 for v in range(3))
        assert ag.g_vector(alg, dm) == e_i
        assert ag.g_vector_inj(alg, dm) == e_i


def test_g_vector_pending_and_crossing_examples():
    alg = fan_algebra(3)
    m = jordan_block_module(alg, 2)  # the pending arc at the last vertex
    assert ag.g_vector(alg, ag.DecRep.of_module(m)) == (0, 2, -1)
    tau5 = sf.special_triangulation(5)
    alg5 = orbit_map(tau5).base_alg
    dm = st.arc_rep(tau5, sf.Arc.plain(2, 4, "-")).dec_rep(alg5)
    assert ag.g_vector(alg5, dm) == (1, 0, 1, 0, -1)


def test_g_vector_two_routes_agree():
    for n in (2, 3):
        for tau in sf.enumerate_triangulations(n):
            alg = ag.algebra_of_triangulation(tau)
            for w in st.all_strings(alg):
                dm = st.sdr_of_word(alg, w).dec_rep(alg)
                assert ag.g_vector(alg, dm) == ag.g_vector_inj(alg, dm)


def test_g_vector_additive():
    alg = fan_algebra(3)
    rng = random.Random(5)
    words = st.all_strings(alg)
    for _ in range(30):
        w1, w2 = rng.choice(words), rng.choice(words)
        m1 = st.sdr_of_word(alg, w1).dec_rep(alg)
        m2 = st.sdr_of_word(alg, w2).dec_rep(alg)
        both = ag.dec_direct_sum(alg, m1, m2)
        assert ag.g_vector(alg, both) == tuple(
            a + b for a, b in zip(ag.g_vector(alg, m1), ag.g_vector(alg, m2))
        )
        assert ag.g_vector_inj(alg, both) == ag.g_vector(alg, both)


def test_injective_dimension_of_fan_arc_modules():
    # cokernel of the envelope embedding is injective for every non-fan arc
    for n in (3, 4):
        tau0 = sf.special_triangulation(n)
        alg = orbit_map(tau0).base_alg
        for j in sf.all_arcs(n):
            if j in tau0.arcs:
                continue
            m = st.arc_rep(tau0, j).rep(alg)
            i0, f, _ = ag.injective_embedding(alg, m)
            coker = ag.cokernel(alg, i0, f, m.dims)
            assert ag.is_injective(alg, coker), j.encode()


def test_e_invariant_vanishes_on_arc_modules():
    for n in (2, 3):
        for tau in sf.enumerate_triangulations(n):
            alg = orbit_map(tau).base_alg
            for j in sf.all_arcs(n):
                dm = st.arc_rep(tau, j).dec_rep(alg)
                assert ag.e_invariant(alg, dm, dm) == 0, (tau.key(), j.encode())
    tau4 = sf.special_triangulation(4)
    alg4 = orbit_map(tau4).base_alg
    for j in sf.all_arcs(4):
        dm = st.arc_rep(tau4, j).dec_rep(alg4)
        assert ag.e_invariant(alg4, dm, dm) == 0


def test_e_invariant_compatible_pairs():
    for n in (2, 3):
        for tau in sf.enumerate_triangulations(n)[:8]:
            alg = orbit_map(tau).base_alg
            for j1, j2 in itertools.combinations(tau.arcs, 2):
                d1 = st.arc_rep(tau, j1).dec_rep(alg)
                d2 = st.arc_rep(tau, j2).dec_rep(alg)
                assert ag.e_invariant(alg, d1, d2) == 0
                assert ag.e_invariant(alg, d2, d1) == 0
    # and for pairs inside any common triangulation, across all of them
    n = 3
    for tau in sf.enumerate_triangulations(n):
        base = sf.special_triangulation(n)
        alg = orbit_map(base).base_alg
        for j1, j2 in itertools.combinations(tau.arcs, 2):
            d1 = st.arc_rep(base, j1).dec_rep(alg)
            d2 = st.arc_rep(base, j2).dec_rep(alg)
            assert ag.e_invariant(alg, d1, d2) == 0
            assert ag.e_invariant(alg, d2, d1) == 0


def test_e_invariant_positive_on_nonarc_module():
    alg = ag.algebra_of_triangulation(flipped_tau())
    b = alg.arrow_between(0, 2)
    dm = st.sdr_of_word(alg, st.StringWord(((b.idx, 1),), None)).dec_rep(alg)
    assert ag.e_invariant(alg, dm, dm) > 0


def test_truncation_formula_cross_check():
    # E(M, N) equals hom of the inverse translate of N into M for arc modules
    for n in (3, 4):
        tau0 = sf.special_triangulation(n)
        alg = orbit_map(tau0).base_alg
        outside = [j for j in sf.all_arcs(n) if j not in tau0.arcs]
        for j2 in outside:
            m2 = st.arc_rep(tau0, j2).rep(alg)
            if ag.is_injective(alg, m2):
                continue
            t2 = st.ar_translate_arc(tau0, j2, "-").rep(alg)
            for j1 in outside:
                m1 = st.arc_rep(tau0, j1).rep(alg)
                e = ag.e_invariant(
                    alg, ag.DecRep.of_module(m1), ag.DecRep.of_module(m2)
                )
                assert e == ag.hom_dim(alg, t2, m1), (j1.encode(), j2.encode())


def test_ar_translate_against_independent_oracle():
    from ar_oracle import nakayama_inverse_translate

    cases = [sf.special_triangulation(3), flipped_tau(), sf.special_triangulation(5)]
    for tau in cases:
        n = tau.n
        alg = orbit_map(tau).base_alg
        for j in sf.all_arcs(n):
            if j in tau.arcs:
                continue
            m = st.arc_rep(tau, j).rep(alg)
            if not ag.is_injective(alg, m):
                got = st.ar_translate_arc(tau, j, "-").rep(alg)
                want = nakayama_inverse_translate(alg, m)
                assert ag.is_isomorphic(alg, got, want), (tau.key(), j.encode())
            if not ag.is_projective(alg, m):
                up = st.ar_translate_arc(tau, j, "+").rep(alg)
                # certify the forward translate through the inverse one
                assert not ag.is_injective(alg, up)
                back = nakayama_inverse_translate(alg, up)
                assert ag.is_isomorphic(alg, back, m), (tau.key(), j.encode())


def test_ar_translate_preconditions():
    tau0 = sf.special_triangulation(3)
    alg = orbit_map(tau0).base_alg
    pending_last = sf.Arc.pending(3)  # its module is the projective at the loop
    m = st.arc_rep(tau0, pending_last).rep(alg)
    assert ag.is_projective(alg, m)
    with pytest.raises(st.StringError):
        st.ar_translate_arc(tau0, pending_last, "+")
    inj_arc = sf.Arc.pending(1)  # the big injective
    assert ag.is_injective(alg, st.arc_rep(tau0, inj_arc).rep(alg))
    with pytest.raises(st.StringError):
        st.ar_translate_arc(tau0, inj_arc, "-")
    with pytest.raises(st.StringError):
        st.ar_translate_arc(tau0, sf.Arc.plain(0, 2, "-"), "-")


def test_rep_json_dump():
    alg = fan_algebra(3)
    rep = alg.injective(2)
    data = rep.to_json_dict(alg)
    assert data["dims"] == [2, 2, 2]
    assert set(data["mats"]) == {"a1", "a2", "eps"}
    assert all(isinstance(x, str) for row in data["mats"]["a1"] for x in row)


def test_algebra_json_dump():
    alg = fan_algebra(2)
    data = alg.to_json_dict()
    assert data["vertices"] == ["A:0:2:-", "P:0"]
    assert ["a1", 1, 2] in data["arrows"]
    assert ["eps", "eps"] in data["relations"]
    assert sorted(data["path_basis"]) == data["path_basis"]
