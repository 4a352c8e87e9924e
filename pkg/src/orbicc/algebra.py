"""Gentle algebras of triangulations and exact linear algebra on their modules.

A quiver is a list of arrows between 0-based vertices; loops are allowed.
A gentle algebra adds a set of forbidden length-2 compositions ("apply a,
then b") and carries the resulting finite path basis.  Representations are
per-vertex dimensions plus one exact rational matrix per arrow, and all
homological quantities (Hom spaces, Ext^1 against simples, g-vectors, the
E-invariant) reduce to rank computations over Q.

Two constructors produce the algebras of interest:

* ``algebra_of_triangulation(tau)``: vertices are the arcs of ``tau`` in
  canonical order, arrows come from the triangles (one arrow from each side
  to its clockwise successor), there is a loop at the pending arc, and the
  relations are the compositions around internal-triangle 3-cycles plus the
  square of the loop.

* ``covering_algebra(diags, n)``: the same construction for a rotation
  invariant triangulation of the covering polygon: no loop ever appears and
  relations come from the all-diagonal faces (the invariant face included).

Both are built from the covering faces, so the arrow conventions downstairs
and upstairs agree by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg as la
from . import surface as sf
from .linalg import Matrix

MAX_PATH_LENGTH = 200  # safety cap; exceeded only if an ideal is not admissible


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class ArrowData:
    idx: int
    name: str
    tail: int
    head: int


Path = tuple[int, tuple[int, ...]]  # (start vertex, arrow indices in order of application)


class GentleAlgebra:
    """A gentle quiver algebra with its finite path basis."""

    def __init__(
        self,
        num_vertices: int,
        arrows: list[tuple[str, int, int]],
        relations: set[tuple[int, int]],
        vertex_labels: tuple[str, ...] | None = None,
        pending_vertex: int | None = None,
    ):
        self.num_vertices = num_vertices
        self.arrows = tuple(
            ArrowData(i, name, tail, head) for i, (name, tail, head) in enumerate(arrows)
        )
        for a in self.arrows:
            if not (0 <= a.tail < num_vertices and 0 <= a.head < num_vertices):
                raise AlgebraError(f"arrow {a} out of range")
        self.relations = frozenset(relations)  # (a, b): composing b after a is zero
        self.vertex_labels = vertex_labels or tuple(str(i + 1) for i in range(num_vertices))
        self.pending_vertex = pending_vertex
        self.out_arrows = [[] for _ in range(num_vertices)]
        self.in_arrows = [[] for _ in range(num_vertices)]
        for a in self.arrows:
            self.out_arrows[a.tail].append(a)
            self.in_arrows[a.head].append(a)
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self.path_basis: tuple[Path, ...] = tuple(self._enumerate_paths())
        self._proj: dict[int, Rep] = {}
        self._inj: dict[int, Rep] = {}
        self._rad_proj: dict[int, Rep] = {}

    # -- structure -----------------------------------------------------------

    def arrow(self, idx: int) -> ArrowData:
        return self.arrows[idx]

    def arrow_between(self, tail: int, head: int) -> ArrowData:
        found = [a for a in self.arrows if (a.tail, a.head) == (tail, head)]
        if len(found) != 1:
            raise AlgebraError(f"{len(found)} arrows from {tail} to {head}")
        return found[0]

    def path_head(self, p: Path) -> int:
        return self.arrows[p[1][-1]].head if p[1] else p[0]

    def _enumerate_paths(self):
        paths: list[Path] = [(v, ()) for v in range(self.num_vertices)]
        frontier = list(paths)
        while frontier:
            nxt = []
            for start, body in frontier:
                at = self.path_head((start, body))
                for a in self.out_arrows[at]:
                    if body and (body[-1], a.idx) in self.relations:
                        continue
                    p = (start, body + (a.idx,))
                    if len(p[1]) > MAX_PATH_LENGTH:
                        raise AlgebraError("path basis does not terminate; ideal not admissible")
                    paths.append(p)
                    nxt.append(p)
            frontier = nxt
        return sorted(paths)

    def dim(self) -> int:
        return len(self.path_basis)

    def check_gentle(self) -> None:
        """Raise unless the string-algebra and gentleness conditions hold."""
        for v in range(self.num_vertices):
            if len(self.out_arrows[v]) > 2 or len(self.in_arrows[v]) > 2:
                raise AlgebraError(f"vertex {v} violates the two-arrow bound")
        for a in self.arrows:
            succ_ok = [b for b in self.out_arrows[a.head] if (a.idx, b.idx) not in self.relations]
            succ_bad = [b for b in self.out_arrows[a.head] if (a.idx, b.idx) in self.relations]
            pred_ok = [b for b in self.in_arrows[a.tail] if (b.idx, a.idx) not in self.relations]
            pred_bad = [b for b in self.in_arrows[a.tail] if (b.idx, a.idx) in self.relations]
            if len(succ_ok) > 1 or len(pred_ok) > 1:
                raise AlgebraError(f"arrow {a.name} violates the string condition")
            if len(succ_bad) > 1 or len(pred_bad) > 1:
                raise AlgebraError(f"arrow {a.name} violates gentleness")

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertex_labels),
            "arrows": [[a.name, a.tail + 1, a.head + 1] for a in self.arrows],
            "relations": sorted(
                [self.arrows[a].name, self.arrows[b].name] for a, b in self.relations
            ),
            "path_basis": sorted(
                "*".join(self.arrows[i].name for i in reversed(body)) or f"e{start + 1}"
                for start, body in self.path_basis
            ),
        }

    # -- canonical modules ----------------------------------------------------

    def simple(self, i: int) -> "Rep":
        dims = tuple(1 if v == i else 0 for v in range(self.num_vertices))
        return Rep.zero_maps(self, dims)

    def projective(self, i: int) -> "Rep":
        """P_i on the basis of paths starting at i; arrows act by composition."""
        if i not in self._proj:
            basis = [p for p in self.path_basis if p[0] == i]
            self._proj[i] = self._path_module(basis, extend_at_head=True)
        return self._proj[i]

    def injective(self, i: int) -> "Rep":
        """I_i on dual basis of paths ending at i; arrows strip the first step."""
        if i not in self._inj:
            basis = [p for p in self.path_basis if self.path_head(p) == i]
            self._inj[i] = self._copath_module(basis)
        return self._inj[i]

    def rad_projective(self, i: int) -> "Rep":
        if i not in self._rad_proj:
            self._rad_proj[i] = radical(self, self.projective(i))
        return self._rad_proj[i]

    def _path_module(self, basis: list[Path], extend_at_head: bool) -> "Rep":
        slot = {p: k for k, p in enumerate(sorted(basis))}
        by_vertex: dict[int, list[Path]] = {v: [] for v in range(self.num_vertices)}
        for p in sorted(basis):
            by_vertex[self.path_head(p)].append(p)
        pos = {p: j for v in by_vertex for j, p in enumerate(by_vertex[v])}
        dims = tuple(len(by_vertex[v]) for v in range(self.num_vertices))
        mats = {}
        for a in self.arrows:
            m = la.zeros(dims[a.head], dims[a.tail])
            for p in by_vertex[a.tail]:
                q = (p[0], p[1] + (a.idx,))
                if q in slot:
                    m[pos[q]][pos[p]] = Fraction(1)
            mats[a.idx] = m
        del slot
        return Rep(dims, mats)

    def _copath_module(self, basis: list[Path]) -> "Rep":
        by_vertex: dict[int, list[Path]] = {v: [] for v in range(self.num_vertices)}
        for p in sorted(basis):
            by_vertex[p[0]].append(p)  # the dual of a path sits at its start vertex
        pos = {p: j for v in by_vertex for j, p in enumerate(by_vertex[v])}
        dims = tuple(len(by_vertex[v]) for v in range(self.num_vertices))
        mats = {}
        pset = set(basis)
        for a in self.arrows:
            m = la.zeros(dims[a.head], dims[a.tail])
            for p in by_vertex[a.tail]:
                if p[1] and p[1][0] == a.idx:
                    q = (a.head, p[1][1:])
                    if q in pset:
                        m[pos[q]][pos[p]] = Fraction(1)
            mats[a.idx] = m
        return Rep(dims, mats)


# ---------------------------------------------------------------------------
# representations


@dataclass
class Rep:
    """A representation: per-vertex dimensions and one matrix per arrow."""

    dims: tuple[int, ...]
    mats: dict[int, Matrix]

    @staticmethod
    def zero_maps(alg: GentleAlgebra, dims: tuple[int, ...]) -> "Rep":
        return Rep(tuple(dims), {a.idx: la.zeros(dims[a.head], dims[a.tail]) for a in alg.arrows})

    def total_dim(self) -> int:
        return sum(self.dims)

    def check(self, alg: GentleAlgebra) -> None:
        """Verify shapes, the relations, and nilpotency."""
        for a in alg.arrows:
            r, c = la.shape(self.mats[a.idx])
            if r != self.dims[a.head] or (r and c != self.dims[a.tail]):
                raise AlgebraError(f"matrix for {a.name} has shape {(r, c)}")
        for first, second in alg.relations:
            prod = la.matmul(self.mats[second], self.mats[first])
            if not la.is_zero_matrix(prod):
                raise AlgebraError("relation not annihilated")
        cur = self
        for _ in range(self.total_dim() + 1):
            if cur.total_dim() == 0:
                return
            cur = radical(alg, cur)
        raise AlgebraError("representation is not nilpotent")

    def to_json_dict(self, alg: GentleAlgebra) -> dict:
        return {
            "dims": list(self.dims),
            "mats": {
                alg.arrows[i].name: [[str(x) for x in row] for row in m]
                for i, m in sorted(self.mats.items())
            },
        }


@dataclass
class DecRep:
    """A decorated representation (module plus per-vertex decoration)."""

    rep: Rep
    dec: tuple[int, ...]

    @staticmethod
    def negative_simple(alg: GentleAlgebra, i: int) -> "DecRep":
        dec = tuple(1 if v == i else 0 for v in range(alg.num_vertices))
        return DecRep(Rep.zero_maps(alg, (0,) * alg.num_vertices), dec)

    @staticmethod
    def of_module(rep: Rep) -> "DecRep":
        return DecRep(rep, (0,) * len(rep.dims))


def direct_sum(alg: GentleAlgebra, m: Rep, n: Rep) -> Rep:
    dims = tuple(a + b for a, b in zip(m.dims, n.dims))
    mats = {}
    for a in alg.arrows:
        block = la.zeros(dims[a.head], dims[a.tail])
        mm, nn = m.mats[a.idx], n.mats[a.idx]
        for i in range(m.dims[a.head]):
            for j in range(m.dims[a.tail]):
                block[i][j] = mm[i][j]
        for i in range(n.dims[a.head]):
            for j in range(n.dims[a.tail]):
                block[m.dims[a.head] + i][m.dims[a.tail] + j] = nn[i][j]
        mats[a.idx] = block
    return Rep(dims, mats)


def dec_direct_sum(alg: GentleAlgebra, m: DecRep, n: DecRep) -> DecRep:
    return DecRep(direct_sum(alg, m.rep, n.rep), tuple(a + b for a, b in zip(m.dec, n.dec)))


# ---------------------------------------------------------------------------
# hom, radical, socle


def hom_dim(alg: GentleAlgebra, m: Rep, n: Rep) -> int:
    """dim Hom(M, N): nullity of the intertwiner system f_h M_a = N_a f_t."""
    offsets = []
    total = 0
    for v in range(alg.num_vertices):
        offsets.append(total)
        total += m.dims[v] * n.dims[v]
    if total == 0:
        return 0
    rows: list[list[Fraction]] = []
    for a in alg.arrows:
        t, h = a.tail, a.head
        ma, na = m.mats[a.idx], n.mats[a.idx]
        for i in range(n.dims[h]):
            for j in range(m.dims[t]):
                row = [Fraction(0)] * total
                # (f_h M_a)_{ij} = sum_k f_h[i][k] ma[k][j]
                for k in range(m.dims[h]):
                    if ma[k][j]:
                        row[offsets[h] + i * m.dims[h] + k] += ma[k][j]
                # (N_a f_t)_{ij} = sum_k na[i][k] f_t[k][j]
                for k in range(n.dims[t]):
                    if na[i][k]:
                        row[offsets[t] + k * m.dims[t] + j] -= na[i][k]
                if any(row):
                    rows.append(row)
    if not rows:
        return total
    return total - la.rank(rows)


def hom_basis(alg: GentleAlgebra, m: Rep, n: Rep) -> list[dict[int, Matrix]]:
    """A basis of Hom(M, N) as per-vertex matrices."""
    offsets = []
    total = 0
    for v in range(alg.num_vertices):
        offsets.append(total)
        total += m.dims[v] * n.dims[v]
    rows: list[list[Fraction]] = []
    for a in alg.arrows:
        t, h = a.tail, a.head
        ma, na = m.mats[a.idx], n.mats[a.idx]
        for i in range(n.dims[h]):
            for j in range(m.dims[t]):
                row = [Fraction(0)] * total
                for k in range(m.dims[h]):
                    if ma[k][j]:
                        row[offsets[h] + i * m.dims[h] + k] += ma[k][j]
                for k in range(n.dims[t]):
                    if na[i][k]:
                        row[offsets[t] + k * m.dims[t] + j] -= na[i][k]
                rows.append(row)
    vecs = la.nullspace(rows) if rows else la.nullspace([[Fraction(0)] * total])
    out = []
    for vec in vecs:
        f = {}
        for v in range(alg.num_vertices):
            block = la.zeros(n.dims[v], m.dims[v])
            for i in range(n.dims[v]):
                for k in range(m.dims[v]):
                    block[i][k] = vec[offsets[v] + i * m.dims[v] + k]
            f[v] = block
        out.append(f)
    return out


def radical(alg: GentleAlgebra, m: Rep) -> Rep:
    """The subrepresentation generated by all arrow images."""
    bases = []
    for v in range(alg.num_vertices):
        basis = la.SubspaceBasis(m.dims[v])
        for a in alg.in_arrows[v]:
            mat = m.mats[a.idx]
            for j in range(m.dims[a.tail]):
                basis.add([mat[i][j] for i in range(m.dims[v])])
        bases.append(basis)
    dims = tuple(len(b) for b in bases)
    mats = {}
    for a in alg.arrows:
        t, h = a.tail, a.head
        block = la.zeros(dims[h], dims[t])
        for j, u in enumerate(bases[t].vectors):
            w = la.mat_vec(m.mats[a.idx], u)
            coords = bases[h].coords(w)
            if coords is None:
                raise AlgebraError("radical is not arrow-closed; bug")
            for i, x in enumerate(coords):
                block[i][j] = x
        mats[a.idx] = block
    return Rep(dims, mats)


def socle_vector(alg: GentleAlgebra, m: Rep) -> tuple[int, ...]:
    """Per-vertex dimension of the joint kernel of all outgoing arrows."""
    out = []
    for v in range(alg.num_vertices):
        if m.dims[v] == 0:
            out.append(0)
            continue
        stacked: list[list[Fraction]] = []
        for a in alg.out_arrows[v]:
            stacked.extend(m.mats[a.idx])
        if not stacked:
            out.append(m.dims[v])
        else:
            out.append(la.nullity(stacked))
    return tuple(out)


def top_vector(alg: GentleAlgebra, m: Rep) -> tuple[int, ...]:
    rad = radical(alg, m)
    return tuple(d - r for d, r in zip(m.dims, rad.dims))


def is_projective(alg: GentleAlgebra, m: Rep) -> bool:
    """Projectivity test by comparing against the cover of the top.

    The projective cover of M has multiplicities given by the top, so M is
    projective iff its dimension vector matches that cover's.
    """
    top = top_vector(alg, m)
    want = [0] * alg.num_vertices
    for i, mult in enumerate(top):
        if mult:
            p = alg.projective(i)
            for v in range(alg.num_vertices):
                want[v] += mult * p.dims[v]
    return tuple(want) == m.dims


def is_injective(alg: GentleAlgebra, m: Rep) -> bool:
    soc = socle_vector(alg, m)
    want = [0] * alg.num_vertices
    for i, mult in enumerate(soc):
        if mult:
            inj = alg.injective(i)
            for v in range(alg.num_vertices):
                want[v] += mult * inj.dims[v]
    return tuple(want) == m.dims


# ---------------------------------------------------------------------------
# injective presentations, g-vectors, E-invariant


def ext1_simple(alg: GentleAlgebra, i: int, m: Rep) -> int:
    """dim Ext^1(S_i, M) from the projective presentation of S_i.

    Applying Hom(-, M) to 0 -> rad P_i -> P_i -> S_i -> 0 gives
    ext^1(S_i, M) = hom(rad P_i, M) - dim M_i + hom(S_i, M).
    """
    val = hom_dim(alg, alg.rad_projective(i), m) - m.dims[i] + socle_vector(alg, m)[i]
    if val < 0:
        raise AlgebraError("negative Ext dimension; bug")
    return val


def g_vector(alg: GentleAlgebra, dm: DecRep) -> tuple[int, ...]:
    """g_i = -dim Hom(S_i, M) + dim Ext^1(S_i, M) + dim V_i."""
    m = dm.rep
    soc = socle_vector(alg, m)
    return tuple(
        -soc[i] + ext1_simple(alg, i, m) + dm.dec[i] for i in range(alg.num_vertices)
    )


def injective_embedding(alg: GentleAlgebra, m: Rep) -> tuple[Rep, dict[int, Matrix], tuple[int, ...]]:
    """A monomorphism of M into its injective envelope.

    Returns (I0, f, soc) with I0 the direct sum of soc_i(M) copies of each
    I_i and f an explicit embedding.  The map into the copy of I_i attached
    to a socle functional phi sends m to sum_p phi(M_p m) p*, over basis
    paths p ending at i; any embedding into the envelope is essential, so
    the cokernel is well defined up to isomorphism.
    """
    soc = socle_vector(alg, m)
    blocks: list[tuple[int, list[Fraction]]] = []  # (socle vertex, functional row)
    for v in range(alg.num_vertices):
        if soc[v] == 0:
            continue
        stacked: list[list[Fraction]] = []
        for a in alg.out_arrows[v]:
            stacked.extend(m.mats[a.idx])
        if not stacked:
            kernel = [[Fraction(i == j) for j in range(m.dims[v])] for i in range(m.dims[v])]
        else:
            kernel = la.nullspace(stacked)
        full = la.extend_to_basis(kernel, m.dims[v])
        t_inv = la.inverse([[full[k][i] for k in range(m.dims[v])] for i in range(m.dims[v])])
        for j in range(len(kernel)):
            blocks.append((v, t_inv[j]))

    # assemble I0 and the per-vertex matrices of f
    i0 = None
    for v, _ in blocks:
        inj = alg.injective(v)
        i0 = inj if i0 is None else direct_sum(alg, i0, inj)
    if i0 is None:
        i0 = Rep.zero_maps(alg, (0,) * alg.num_vertices)

    paths_to = {
        v: sorted(p for p in alg.path_basis if alg.path_head(p) == v)
        for v in range(alg.num_vertices)
    }
    fmats = {w: la.zeros(i0.dims[w], m.dims[w]) for w in range(alg.num_vertices)}
    row_offset = {w: 0 for w in range(alg.num_vertices)}
    for v, phi in blocks:
        by_vertex: dict[int, list[Path]] = {w: [] for w in range(alg.num_vertices)}
        for p in paths_to[v]:
            by_vertex[p[0]].append(p)
        for w in range(alg.num_vertices):
            if m.dims[w] == 0:
                row_offset[w] += len(by_vertex[w])
                continue
            for local, p in enumerate(by_vertex[w]):
                mp = la.identity(m.dims[w])  # M_p = M_{a_k} ... M_{a_1}
                for aidx in p[1]:
                    mp = la.matmul(m.mats[aidx], mp)
                row = la.matmul([list(phi)], mp)[0]
                for col in range(m.dims[w]):
                    fmats[w][row_offset[w] + local][col] = row[col]
            row_offset[w] += len(by_vertex[w])

    for w in range(alg.num_vertices):
        if m.dims[w] and la.rank([[fmats[w][i][j] for j in range(m.dims[w])] for i in range(i0.dims[w])]) != m.dims[w]:
            raise AlgebraError("envelope embedding failed to be injective; bug")
    for a in alg.arrows:
        rhs = la.matmul(i0.mats[a.idx], fmats[a.tail])
        if m.dims[a.head] == 0:
            ok = la.is_zero_matrix(rhs)
        else:
            ok = la.matmul(fmats[a.head], m.mats[a.idx]) == rhs
        if not ok:
            raise AlgebraError("envelope embedding is not a module map; bug")
    return i0, fmats, soc


def quotient_by_image(alg: GentleAlgebra, big: Rep, image_cols: list[list[la.Vector]]) -> tuple[Rep, dict[int, Matrix]]:
    """Quotient of ``big`` by the subrepresentation spanned by given columns.

    ``image_cols[v]`` spans the vertex-v component of an arrow-stable
    subspace.  Returns the quotient and the per-vertex projection matrices.
    """
    bases: list[la.SubspaceBasis] = []
    comps: list[list[la.Vector]] = []
    changes: list[Matrix] = []
    for v in range(alg.num_vertices):
        basis = la.SubspaceBasis(big.dims[v])
        for col in image_cols[v]:
            basis.add(col)
        bases.append(basis)
        full = la.extend_to_basis(list(basis.vectors), big.dims[v]) if big.dims[v] else []
        comps.append(full)
        if big.dims[v]:
            c = [[full[k][i] for k in range(big.dims[v])] for i in range(big.dims[v])]
            changes.append(la.inverse(c))
        else:
            changes.append([])
    ranks = [len(b) for b in bases]
    dims = tuple(big.dims[v] - ranks[v] for v in range(alg.num_vertices))
    mats = {}
    for a in alg.arrows:
        t, h = a.tail, a.head
        block = la.zeros(dims[h], dims[t])
        for j in range(dims[t]):
            u = comps[t][ranks[t] + j]
            w = la.mat_vec(big.mats[a.idx], u)
            coords = la.mat_vec(changes[h], w) if big.dims[h] else []
            for i in range(dims[h]):
                block[i][j] = coords[ranks[h] + i]
        mats[a.idx] = block
    proj = {}
    for v in range(alg.num_vertices):
        p = la.zeros(dims[v], big.dims[v])
        for i in range(dims[v]):
            for j in range(big.dims[v]):
                p[i][j] = changes[v][ranks[v] + i][j]
        proj[v] = p
    return Rep(dims, mats), proj


def cokernel(alg: GentleAlgebra, big: Rep, fmats: dict[int, Matrix], small_dims: tuple[int, ...]) -> Rep:
    """The quotient of ``big`` by the image of an injective module map."""
    cols = [
        [[fmats[v][i][j] for i in range(big.dims[v])] for j in range(small_dims[v])]
        for v in range(alg.num_vertices)
    ]
    return quotient_by_image(alg, big, cols)[0]


def g_vector_inj(alg: GentleAlgebra, dm: DecRep) -> tuple[int, ...]:
    """g-vector from a minimal injective presentation 0 -> M -> I0 -> I1.

    With I0 = sum I_i^{a_i} and I1 = sum I_i^{b_i} the coefficients are
    a = soc(M) and b = soc(coker), and g_i = -a_i + b_i + dim V_i.
    """
    m = dm.rep
    if m.total_dim() == 0:
        return dm.dec
    i0, fmats, soc = injective_embedding(alg, m)
    coker = cokernel(alg, i0, fmats, m.dims)
    b = socle_vector(alg, coker)
    return tuple(-soc[i] + b[i] + dm.dec[i] for i in range(alg.num_vertices))


def e_invariant(alg: GentleAlgebra, dm: DecRep, dn: DecRep) -> int:
    """E(M, N) = dim Hom(M, N) + sum_i dim M_i * g_i(N)."""
    g = g_vector(alg, dn)
    return hom_dim(alg, dm.rep, dn.rep) + sum(d * gi for d, gi in zip(dm.rep.dims, g))


def e_selfinvariant(alg: GentleAlgebra, dm: DecRep) -> int:
    return e_invariant(alg, dm, dm)


def is_isomorphic(alg: GentleAlgebra, m: Rep, n: Rep, attempts: int = 24) -> bool:
    """Search Hom(M, N) for an invertible element.

    Sound when it returns True (an exact rational isomorphism has been
    found); for the modules compared in this package (string modules and
    finite direct sums of them) a generic combination of a Hom basis is
    invertible whenever the modules are isomorphic, so the deterministic
    weight sweep below is also reliable in the negative direction.
    """
    if m.dims != n.dims:
        return False
    if m.total_dim() == 0:
        return True
    basis = hom_basis(alg, m, n)
    if not basis:
        return False

    def invertible(f: dict[int, Matrix]) -> bool:
        return all(
            m.dims[v] == 0 or la.rank(f[v]) == m.dims[v] for v in range(alg.num_vertices)
        )

    for f in basis:
        if invertible(f):
            return True
    for t in range(2, attempts + 2):
        f = {
            v: la.zeros(n.dims[v], m.dims[v]) for v in range(alg.num_vertices)
        }
        weight = 1
        for g in basis:
            for v in range(alg.num_vertices):
                for i in range(n.dims[v]):
                    for j in range(m.dims[v]):
                        f[v][i][j] += weight * g[v][i][j]
            weight *= t
        if invertible(f):
            return True
    return False


# ---------------------------------------------------------------------------
# exchange matrices


def c_matrix(alg: GentleAlgebra) -> list[list[int]]:
    """The antisymmetrized arrow-count matrix; loops contribute zero."""
    n = alg.num_vertices
    c = [[0] * n for _ in range(n)]
    for a in alg.arrows:
        if a.tail != a.head:
            c[a.head][a.tail] += 1
            c[a.tail][a.head] -= 1
    return c


def weights_of(tau: sf.Triangulation) -> tuple[int, ...]:
    return tuple(2 if a.kind == "P" else 1 for a in tau.arcs)


def b_matrix(tau: sf.Triangulation) -> tuple[list[list[int]], tuple[int, ...]]:
    """The skew-symmetrizable exchange matrix of a triangulation.

    b_ij = d_j c_ij / gcd(d_i, d_j) on the loop-free weighted quiver; the
    left skew-symmetrizer D has a 2 at the pending arc's index.
    """
    alg = algebra_of_triangulation(tau)
    c = c_matrix(alg)
    d = weights_of(tau)
    n = tau.n
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            num = d[j] * c[i][j]
            den = gcd(d[i], d[j])
            if num % den:
                raise AlgebraError("exchange matrix entry is not integral")
            b[i][j] = num // den
    for i in range(n):
        for j in range(n):
            if d[i] * b[i][j] != -d[j] * b[j][i]:
                raise AlgebraError("D*B is not skew-symmetric")
            if b[i][j] % d[j]:
                raise AlgebraError("b_ij / d_j is not integral")
    return b, d


# ---------------------------------------------------------------------------
# algebras from triangulations


def _quiver_from_faces(faces, diag_index):
    """Arrows and 3-cycle relations from counterclockwise face data.

    ``faces`` yields (face, sides) where sides are diagonal keys or None for
    boundary segments, counterclockwise.  Arrows go from position p to
    position p-1; faces with three diagonal sides contribute the three
    consecutive compositions of their arrow cycle as relations.
    """
    arrows: list[tuple[int, int]] = []
    relations: set[tuple[int, int]] = set()
    for face, sides in faces:
        local = {}
        for p in range(3):
            src, dst = sides[p], sides[(p - 1) % 3]
            if src is None or dst is None:
                continue
            local[p] = len(arrows)
            arrows.append((diag_index[src], diag_index[dst]))
        if len(local) == 3:
            for p in range(3):
                relations.add((local[p], local[(p - 1) % 3]))
    return arrows, relations


def covering_algebra(diags: frozenset, n: int) -> GentleAlgebra:
    """The path algebra with relations of an invariant covering triangulation."""
    for d in diags:
        if sf.theta_diag(d, n) not in diags:
            raise AlgebraError("covering triangulation is not rotation invariant")
    ordered = sorted(diags)
    index = {d: i for i, d in enumerate(ordered)}
    bnd = sf.boundary_edges(n)
    face_data = []
    for face in sf.cover_faces(diags, n):
        sides = [
            None if d in bnd else d for d in sf.face_sides(face, n)
        ]
        face_data.append((face, sides))
    arrows, relations = _quiver_from_faces(face_data, index)
    named = _name_arrows(arrows)
    labels = tuple(f"{a}-{b}" for a, b in ordered)
    alg = GentleAlgebra(len(ordered), named, relations, vertex_labels=labels)
    alg.check_gentle()
    return alg


def _name_arrows(arrows: list[tuple[int, int]]) -> list[tuple[str, int, int]]:
    """Deterministic arrow names: loops become eps, the rest a1, a2, ...

    Ordering is by (tail, head), which on the fan triangulation reproduces
    the usual a_1, ..., a_{n-1} chain with the loop at the last vertex.
    """
    order = sorted(range(len(arrows)), key=lambda k: arrows[k])
    names: dict[int, str] = {}
    count = 0
    loops = 0
    for k in order:
        t, h = arrows[k]
        if t == h:
            loops += 1
            names[k] = "eps" if loops == 1 else f"eps{loops}"
        else:
            count += 1
            names[k] = f"a{count}"
    return [(names[k], arrows[k][0], arrows[k][1]) for k in range(len(arrows))]


def algebra_of_triangulation(tau: sf.Triangulation) -> GentleAlgebra:
    """The gentle algebra of a triangulation of the orbifold surface.

    Built by folding the covering: arrows are rotation orbits of covering
    arrows (one loop at the pending arc), relations are the projected
    3-cycle compositions plus the loop squared.
    """
    n = tau.n
    diags = tau.lifted()
    bnd = sf.boundary_edges(n)
    arc_index = {a: i for i, a in enumerate(tau.arcs)}

    # orbit representatives of the faces; the invariant face contributes the loop
    faces = sf.cover_faces(diags, n)
    seen: set[tuple[int, int, int]] = set()
    arrows: list[tuple[int, int]] = []
    sources: list[tuple] = []  # one generating covering arrow (tail diag, head diag) each
    relations: set[tuple[int, int]] = set()
    for face in sorted(faces):
        orbit = {face, sf.theta_face(face, n), sf.theta_face(sf.theta_face(face, n), n)}
        if seen & orbit:
            continue
        seen |= orbit
        sides = sf.face_sides(face, n)
        if len(orbit) == 1:
            # invariant triangle: its three sides are the lifts of the pending
            # arc and its three arrows fold to one loop with square zero
            p = arc_index[tau.pending]
            loop_id = len(arrows)
            arrows.append((p, p))
            sources.append((sides[0], sides[2]))
            relations.add((loop_id, loop_id))
            continue
        local = {}
        keys = [None if d in bnd else arc_index[sf.project_diag(d, n)] for d in sides]
        for p in range(3):
            src, dst = keys[p], keys[(p - 1) % 3]
            if src is None or dst is None:
                continue
            local[p] = len(arrows)
            arrows.append((src, dst))
            sources.append((sides[p], sides[(p - 1) % 3]))
        if len(local) == 3:
            for p in range(3):
                relations.add((local[p], local[(p - 1) % 3]))
    named = _name_arrows(arrows)
    labels = tuple(a.encode() for a in tau.arcs)
    alg = GentleAlgebra(
        n, named, relations, vertex_labels=labels, pending_vertex=arc_index[tau.pending]
    )
    alg.cov_arrow_source = tuple(sources)  # used to fold the covering algebra
    alg.check_gentle()
    return alg
