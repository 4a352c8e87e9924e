"""The degree-3 covering bridge: folding modules and Laurent polynomials.

For a triangulation of the orbifold surface, ``orbit_map`` packages the
covering-polygon algebra, the folded algebra downstairs, and the full
rotation bookkeeping (vertex and arrow orbits, fiber positions, sections
and arrow lifts).  On top of it live:

* ``push_down``: a covering module becomes a module downstairs whose space
  at an orbit is the sum over the fiber, with arrows acting by the block
  matrices of the fiber components;
* ``theta_rep``: the rotation action on covering modules;
* ``lift_word`` / ``cov_arc_string``: strings upstairs from strings or
  diagonals downstairs;
* the mechanical checks that the Grassmannian Euler characteristics and the
  cluster characters are compatible with folding (``euler_sum_check``,
  ``verify_morphip``) and that rigidity transfers (``e_rigidity_transfer``).

Fiber positions are assigned per orbit: the lexicographically smallest
diagonal of an orbit has fiber 0 and applying the rotation increments the
fiber.  Covering variables are indexed by the sorted diagonals, and the
variable projection sends each diagonal's variable to its orbit's variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import algebra as ag
from . import strings as st
from . import surface as sf
from .laurent import LaurentPoly, lp_project


class CoveringError(ValueError):
    pass


@dataclass
class OrbitMap:
    tau: sf.Triangulation
    cov_alg: ag.GentleAlgebra
    base_alg: ag.GentleAlgebra
    diags: tuple[sf.Diagonal, ...]  # covering vertex order
    cov_index: dict[sf.Diagonal, int]
    vertex_orbit: tuple[int, ...]  # covering vertex -> base vertex
    vertex_fiber: tuple[int, ...]  # covering vertex -> 0, 1, 2
    theta_vertex: tuple[int, ...]  # rotation on covering vertices
    section: dict[tuple[int, int], int] = field(default_factory=dict)  # (base v, fiber) -> cov v
    arrow_orbit: tuple[int, ...] = ()  # covering arrow -> base arrow
    theta_arrow: tuple[int, ...] = ()
    lift_arrow_by_tail: dict[tuple[int, int], int] = field(default_factory=dict)
    lift_arrow_by_head: dict[tuple[int, int], int] = field(default_factory=dict)
    diag_orbit_vertex: dict[sf.Diagonal, int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.tau.n


_ORBIT_CACHE: dict[tuple[int, tuple[str, ...]], OrbitMap] = {}


def orbit_map(tau: sf.Triangulation) -> OrbitMap:
    """Build (and cache) the folding data of a triangulation."""
    key = (tau.n, tau.key())
    if key in _ORBIT_CACHE:
        return _ORBIT_CACHE[key]
    n = tau.n
    diags = tuple(sorted(tau.lifted()))
    cov_index = {d: i for i, d in enumerate(diags)}
    base_alg = ag.algebra_of_triangulation(tau)
    cov_alg = ag.covering_algebra(tau.lifted(), n)

    vertex_orbit = tuple(tau.index_of(sf.project_diag(d, n)) for d in diags)
    theta_vertex = tuple(cov_index[sf.theta_diag(d, n)] for d in diags)
    fiber = [0] * len(diags)
    section: dict[tuple[int, int], int] = {}
    for i, d in enumerate(diags):
        orbit = sorted(sf.diag_orbit(d, n))
        rep = orbit[0]
        f, cur = 0, rep
        while cur != d:
            cur = sf.theta_diag(cur, n)
            f += 1
        fiber[i] = f
        section[(vertex_orbit[i], f)] = i

    # arrow orbits via the generating covering arrows recorded downstairs
    base_pairs = {}
    for bidx, (t, h) in enumerate(base_alg.cov_arrow_source):
        base_pairs[(t, h)] = bidx
    cov_pair_to_idx = {}
    for a in cov_alg.arrows:
        pair = (diags[a.tail], diags[a.head])
        if pair in cov_pair_to_idx:
            raise CoveringError("duplicate covering arrow between a diagonal pair")
        cov_pair_to_idx[pair] = a.idx
    arrow_orbit = [None] * len(cov_alg.arrows)
    theta_arrow = [None] * len(cov_alg.arrows)
    for a in cov_alg.arrows:
        t, h = diags[a.tail], diags[a.head]
        theta_arrow[a.idx] = cov_pair_to_idx[(sf.theta_diag(t, n), sf.theta_diag(h, n))]
        for _ in range(3):
            if (t, h) in base_pairs:
                arrow_orbit[a.idx] = base_pairs[(t, h)]
                break
            t, h = sf.theta_diag(t, n), sf.theta_diag(h, n)
        if arrow_orbit[a.idx] is None:
            raise CoveringError("covering arrow has no folded image; bug")

    lift_by_tail = {}
    lift_by_head = {}
    for a in cov_alg.arrows:
        lift_by_tail[(arrow_orbit[a.idx], a.tail)] = a.idx
        lift_by_head[(arrow_orbit[a.idx], a.head)] = a.idx
    if len(lift_by_tail) != len(cov_alg.arrows) or len(lift_by_head) != len(cov_alg.arrows):
        raise CoveringError("arrow fibers are not free; bug")

    om = OrbitMap(
        tau=tau,
        cov_alg=cov_alg,
        base_alg=base_alg,
        diags=diags,
        cov_index=cov_index,
        vertex_orbit=vertex_orbit,
        vertex_fiber=tuple(fiber),
        theta_vertex=theta_vertex,
        section=section,
        arrow_orbit=tuple(arrow_orbit),
        theta_arrow=tuple(theta_arrow),
        lift_arrow_by_tail=lift_by_tail,
        lift_arrow_by_head=lift_by_head,
        diag_orbit_vertex={d: vertex_orbit[i] for i, d in enumerate(diags)},
    )
    _ORBIT_CACHE[key] = om
    return om


# ---------------------------------------------------------------------------
# module transport


def push_down(om: OrbitMap, m: ag.Rep) -> ag.Rep:
    """Fold a covering module: spaces add up over fibers, arrows act blockwise."""
    base, cov = om.base_alg, om.cov_alg
    offsets: dict[int, int] = {}
    dims = [0] * base.num_vertices
    for v in range(base.num_vertices):
        for f in range(3):
            cv = om.section[(v, f)]
            offsets[cv] = dims[v]
            dims[v] += m.dims[cv]
    out = ag.Rep.zero_maps(base, tuple(dims))
    for a in cov.arrows:
        b = om.arrow_orbit[a.idx]
        bt, bh = base.arrows[b].tail, base.arrows[b].head
        block = out.mats[b]
        mat = m.mats[a.idx]
        for i in range(m.dims[a.head]):
            for j in range(m.dims[a.tail]):
                if mat[i][j]:
                    block[offsets[a.head] + i][offsets[a.tail] + j] = mat[i][j]
        assert om.vertex_orbit[a.tail] == bt and om.vertex_orbit[a.head] == bh
    out.check(base)
    return out


def project_dim_vector(om: OrbitMap, f: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * om.base_alg.num_vertices
    for i, x in enumerate(f):
        out[om.vertex_orbit[i]] += x
    return tuple(out)


def theta_rep(om: OrbitMap, m: ag.Rep) -> ag.Rep:
    """The rotation acting on covering modules: spaces and maps pull back."""
    inv_v = [0] * len(om.theta_vertex)
    for i, j in enumerate(om.theta_vertex):
        inv_v[j] = i
    inv_a = [0] * len(om.theta_arrow)
    for i, j in enumerate(om.theta_arrow):
        inv_a[j] = i
    dims = tuple(m.dims[inv_v[i]] for i in range(len(inv_v)))
    mats = {a.idx: [row[:] for row in m.mats[inv_a[a.idx]]] for a in om.cov_alg.arrows}
    return ag.Rep(dims, mats)


def lift_word(om: OrbitMap, w: st.StringWord, start_fiber: int = 0) -> st.StringWord:
    """Lift a string downstairs to a covering string through a chosen fiber."""
    if w.is_zero():
        return w
    if w.is_trivial():
        return st.trivial_string(om.section[(w.vertex, start_fiber)])
    at = om.section[(st.letter_tail(om.base_alg, w.letters[0]), start_fiber)]
    letters = []
    for b, d in w.letters:
        if d > 0:
            aidx = om.lift_arrow_by_tail[(b, at)]
            letters.append((aidx, +1))
            at = om.cov_alg.arrows[aidx].head
        else:
            aidx = om.lift_arrow_by_head[(b, at)]
            letters.append((aidx, -1))
            at = om.cov_alg.arrows[aidx].tail
    lifted = st.StringWord(tuple(letters), None)
    if not st.is_valid_word(om.cov_alg, lifted):
        raise CoveringError("lifted word is not a string; bug")
    return lifted


def project_word(om: OrbitMap, w: st.StringWord) -> st.StringWord:
    if w.is_zero():
        return w
    if w.is_trivial():
        return st.trivial_string(om.vertex_orbit[w.vertex])
    return st.StringWord(tuple((om.arrow_orbit[a], d) for a, d in w.letters), None)


def cov_arc_string(om: OrbitMap, d: sf.Diagonal) -> st.StringWord:
    """The crossing word of a covering diagonal against the lifted triangulation."""
    n = om.n
    d = sf.diag_norm(d[0], d[1], n)
    if d in om.cov_index:
        raise CoveringError(f"{d} belongs to the lifted triangulation")
    start = d[0]
    crossed = [e for e in om.diags if sf.chords_cross(d, e, n)]
    crossed.sort(key=lambda e: st._side_size(e, start, n))
    if not crossed:
        raise CoveringError(f"{d} crosses nothing; bug")
    if len(crossed) == 1:
        return st.trivial_string(om.cov_index[crossed[0]])
    letters = []
    for d1, d2 in zip(crossed, crossed[1:]):
        i1, i2 = om.cov_index[d1], om.cov_index[d2]
        arrow = [a for a in om.cov_alg.arrows if {a.tail, a.head} == {i1, i2}]
        if len(arrow) != 1:
            raise CoveringError("no unique covering arrow between crossed diagonals")
        a = arrow[0]
        letters.append((a.idx, +1 if a.tail == i1 else -1))
    w = st.StringWord(tuple(letters), None)
    if not st.is_valid_word(om.cov_alg, w):
        raise CoveringError("covering crossing word is invalid; bug")
    return st.normal_form(om.cov_alg, w)


# ---------------------------------------------------------------------------
# mechanical identity checks


def euler_sum_check(tau: sf.Triangulation, w: st.StringWord) -> bool:
    """Grassmannian Euler characteristics add up over the fibers of folding."""
    om = orbit_map(tau)
    lifted = lift_word(om, w)
    table_cov = st.grassmann_table(om.cov_alg, (lifted,))
    table_base = st.grassmann_table(om.base_alg, (w,))
    summed: dict[tuple[int, ...], int] = {}
    for f, chi in table_cov.items():
        e = project_dim_vector(om, f)
        summed[e] = summed.get(e, 0) + chi
    return summed == table_base


def covering_c_matrix(om: OrbitMap) -> list[list[int]]:
    return ag.c_matrix(om.cov_alg)


def verify_morphip_word(om: OrbitMap, w: st.StringWord) -> bool:
    """Folding the covering cluster character recovers the one downstairs."""
    from .ccfun import cc_function  # deferred: ccfun imports strings

    base, cov = om.base_alg, om.cov_alg
    lifted = lift_word(om, w)
    cc_cov = cc_function(cov, st.sdr_of_word(cov, lifted))
    cc_base = cc_function(base, st.sdr_of_word(base, w))
    projected = lp_project(cc_cov, om.vertex_orbit, base.num_vertices)
    g_cov = ag.g_vector(cov, st.sdr_of_word(cov, lifted).dec_rep(cov))
    g_base = ag.g_vector(base, st.sdr_of_word(base, w).dec_rep(base))
    if project_dim_vector(om, g_cov) != g_base:
        return False
    return projected == cc_base


def verify_morphip(tau: sf.Triangulation) -> bool:
    om = orbit_map(tau)
    for w in st.all_strings(om.base_alg):
        if not verify_morphip_word(om, w):
            return False
        if not euler_sum_check(tau, w):
            return False
    return True


def e_rigidity_transfer(om: OrbitMap, d: sf.Diagonal) -> bool:
    """Folded module is rigid iff the lift has no self-extensions over the fiber.

    For any covering diagonal d outside the lifted triangulation, E of the
    push-down vanishes exactly when E(M, g.M) vanishes for all rotations g.
    """
    cov, base = om.cov_alg, om.base_alg
    w = cov_arc_string(om, d)
    m = st.string_module(cov, w)
    down = push_down(om, m)
    e_down = ag.e_selfinvariant(base, ag.DecRep.of_module(down))
    e_up = 0
    g = m
    for _ in range(3):
        e_up += ag.e_invariant(cov, ag.DecRep.of_module(m), ag.DecRep.of_module(g))
        g = theta_rep(om, g)
    return (e_down == 0) == (e_up == 0)
