"""Cluster characters of decorated string modules and their algebra structure.

The character of a decorated module M (with decoration V) over the algebra
of a triangulation is the Laurent polynomial

    x^{g(M)} * sum_e chi(Grass_e(M)) x^{C e}

in one variable per arc of the triangulation (canonical arc order), where g
is the g-vector, chi counts arrow-closed basis subsets, and C is the
antisymmetrized arrow-count matrix of the quiver.  The denominator is a
monomial by construction, so every character is an honest Laurent
polynomial with integer coefficients.

``cc_table`` evaluates the character of every arc of the surface (negative
simples for the arcs of the triangulation itself) plus every string whose
module is not rigid; ``classify_e_rigid`` certifies that the rigid
indecomposables are exactly the arc modules; ``verify_generation`` finds,
for each non-rigid string, an exact two-term expression of its character in
terms of characters of arc modules (products of at most two, coefficient
one), the algebraic shadow of the quadrilateral exchange relations on the
covering polygon.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra as ag
from . import strings as st
from . import surface as sf
from .laurent import LaurentPoly


class CCError(ValueError):
    pass


def cc_function(alg: ag.GentleAlgebra, sdr: st.StringDecRep, c: list[list[int]] | None = None) -> LaurentPoly:
    """The cluster character of a decorated sum of string modules."""
    if c is None:
        c = ag.c_matrix(alg)
    n = alg.num_vertices
    g = ag.g_vector(alg, sdr.dec_rep(alg))
    table = st.grassmann_table(alg, sdr.words)
    terms: dict[tuple[int, ...], int] = {}
    for e, chi in table.items():
        exps = tuple(
            g[i] + sum(c[i][j] * e[j] for j in range(n)) for i in range(n)
        )
        terms[exps] = terms.get(exps, 0) + chi
    return LaurentPoly(n, terms)


@dataclass
class CCTable:
    """Characters of all arcs and all non-rigid strings of one triangulation."""

    tau: sf.Triangulation
    alg: ag.GentleAlgebra
    arc_entries: dict[str, LaurentPoly]  # key: arc encoding
    string_entries: dict[str, LaurentPoly]  # key: string text, non-rigid strings only

    def entry(self, key: str) -> LaurentPoly:
        if key in self.arc_entries:
            return self.arc_entries[key]
        return self.string_entries[key]

    def to_json_dict(self) -> dict:
        return {
            "triangulation": self.tau.to_json(),
            "entries": {
                **{k: v.to_json_dict() for k, v in sorted(self.arc_entries.items())},
                **{k: v.to_json_dict() for k, v in sorted(self.string_entries.items())},
            },
        }


def arc_cc(tau: sf.Triangulation, j: sf.Arc) -> LaurentPoly:
    from .covering import orbit_map

    om = orbit_map(tau)
    return cc_function(om.base_alg, st.arc_rep(tau, j))


def cc_table(tau: sf.Triangulation) -> CCTable:
    from .covering import orbit_map

    om = orbit_map(tau)
    alg = om.base_alg
    c = ag.c_matrix(alg)
    arc_entries = {}
    for j in sf.all_arcs(tau.n):
        arc_entries[j.encode()] = cc_function(alg, st.arc_rep(tau, j), c)
    for j in tau.arcs:
        want = LaurentPoly.variable(tau.n, tau.index_of(j))
        if arc_entries[j.encode()] != want:
            raise CCError("negative simple character is not its variable; bug")
    string_entries = {}
    cls = classify_e_rigid(tau)
    for w in cls.nonrigid_strings:
        string_entries[st.serialize(alg, w)] = cc_function(alg, st.sdr_of_word(alg, w), c)
    return CCTable(tau, alg, arc_entries, string_entries)


# ---------------------------------------------------------------------------
# rigidity


@dataclass
class RigidityCensus:
    rigid_strings: tuple[st.StringWord, ...]
    nonrigid_strings: tuple[st.StringWord, ...]
    negative_simples: tuple[int, ...]  # vertex indices; always rigid


def classify_e_rigid(tau: sf.Triangulation) -> RigidityCensus:
    """Partition the indecomposables by vanishing self-E-invariant.

    Also certifies that the rigid ones are exactly the arc modules: the
    arcs outside the triangulation give the rigid strings (up to
    inversion), the arcs inside give the negative simples.
    """
    from .covering import orbit_map

    om = orbit_map(tau)
    alg = om.base_alg
    rigid, nonrigid = [], []
    for w in st.all_strings(alg):
        e = ag.e_selfinvariant(alg, st.sdr_of_word(alg, w).dec_rep(alg))
        (rigid if e == 0 else nonrigid).append(w)
    arc_words = {
        st.serialize(alg, st.arc_string(tau, j))
        for j in sf.all_arcs(tau.n)
        if j not in tau.arcs
    }
    rigid_words = {st.serialize(alg, w) for w in rigid}
    if arc_words != rigid_words:
        raise CCError(
            f"rigid strings {sorted(rigid_words)} differ from arc strings {sorted(arc_words)}"
        )
    return RigidityCensus(tuple(rigid), tuple(nonrigid), tuple(range(alg.num_vertices)))


# ---------------------------------------------------------------------------
# generation of the character algebra


@dataclass
class GenerationRelation:
    """CC(target) = sum over terms; each term is a product of arc characters.

    A term is a tuple of arc encodings (empty tuple = the constant 1).
    """

    target: str
    terms: tuple[tuple[str, ...], ...]


def verify_generation(tau: sf.Triangulation) -> list[GenerationRelation]:
    """Express every non-rigid character by rigid ones, with proof by arithmetic.

    Searches two-term identities whose terms are 1, an arc character, a
    previously expressed non-rigid character, or a product of two arc
    characters, and verifies each candidate exactly.  Raises if some
    non-rigid string admits no such identity.
    """
    from .covering import orbit_map

    om = orbit_map(tau)
    alg = om.base_alg
    c = ag.c_matrix(alg)
    arcs = sf.all_arcs(tau.n)
    arc_polys = [(j.encode(), cc_function(alg, st.arc_rep(tau, j), c)) for j in arcs]

    candidates: dict[LaurentPoly, tuple[str, ...]] = {}

    def learn(poly: LaurentPoly, label: tuple[str, ...]) -> None:
        candidates.setdefault(poly, label)

    learn(LaurentPoly.one(tau.n), ())
    for key, poly in arc_polys:
        learn(poly, (key,))
    for i, (k1, p1) in enumerate(arc_polys):
        for k2, p2 in arc_polys[i:]:
            learn(p1 * p2, (k1, k2))

    census = classify_e_rigid(tau)
    ordered = sorted(
        census.nonrigid_strings, key=lambda w: (len(w.letters), st.serialize(alg, w))
    )
    out: list[GenerationRelation] = []
    for w in ordered:
        target = cc_function(alg, st.sdr_of_word(alg, w), c)
        found = None
        for poly, label in candidates.items():
            rest = target - poly
            if rest in candidates:
                found = GenerationRelation(st.serialize(alg, w), (label, candidates[rest]))
                break
        if found is None:
            raise CCError(f"no generation identity for {st.serialize(alg, w)}")
        out.append(found)
        learn(target, (f"str:{st.serialize(alg, w)}",))
    return out


def cc_linear_rank(polys: list[LaurentPoly]) -> int:
    """Exact rank of the coefficient matrix of a family of Laurent polynomials."""
    monomials = sorted({e for p in polys for e in p.terms})
    index = {e: i for i, e in enumerate(monomials)}
    from fractions import Fraction

    rows = []
    for p in polys:
        row = [Fraction(0)] * len(monomials)
        for e, coef in p.terms.items():
            row[index[e]] = Fraction(coef)
        rows.append(row)
    from . import linalg as la

    return la.rank(rows)
