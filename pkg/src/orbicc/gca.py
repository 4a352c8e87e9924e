"""Generalized cluster mutation with non-binomial exchange polynomials.

A seed holds a skew-symmetrizable integer matrix B (left skew-symmetrizer
D, with D B skew-symmetric and b_ik/d_k integral), together with a cluster
of Laurent polynomials in the fixed initial variables.  Mutation at k
replaces

    B  ->  mu_k(B),     x_k  ->  theta_k(v_k^+, v_k^-) / x_k,

where theta_k(u, v) = sum_{l=0}^{d_k} u^l v^{d_k-l} and v_k^± are the
monomials prod_{b_lk >< 0} x_l^{±b_lk/d_k} evaluated on the current cluster
entries.  The division is exact Laurent division; if it ever fails the
mutation raises ``LaurentPhenomenonViolation``, which would signal a
convention or implementation bug rather than a mathematical possibility.

The exchange relation realized is x_k * x_k' = theta_k(v_k^+, v_k^-), the
normalization under which the degree-2 exchange at the weight-2 index takes
the trinomial form u^2 + u v + v^2.

``mutation_closure`` explores the seed graph from the fan triangulation's
seed, keeping the flip graph of triangulations in lockstep so that the k-th
cluster entry of a seed can be compared with the character of the k-th arc
of the matching triangulation.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra as ag
from . import surface as sf
from .laurent import LaurentPoly, lp_exact_div


class GCAError(ValueError):
    pass


class LaurentPhenomenonViolation(GCAError):
    pass


def mutate_matrix(b: list[list[int]], k: int) -> list[list[int]]:
    """Matrix mutation in direction k (0-based)."""
    n = len(b)
    if not 0 <= k < n:
        raise GCAError(f"mutation index {k} out of range")
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                num = abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])
                if num % 2:
                    raise GCAError("non-integral matrix mutation; bug")
                out[i][j] = b[i][j] + num // 2
    return out


@dataclass(frozen=True)
class Seed:
    b: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    cluster: tuple[LaurentPoly, ...]
    history: tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.b)
        if len(self.d) != n or len(self.cluster) != n:
            raise GCAError("seed components have mismatched sizes")
        for i in range(n):
            for j in range(n):
                if self.d[i] * self.b[i][j] != -self.d[j] * self.b[j][i]:
                    raise GCAError("D*B is not skew-symmetric")
                if self.b[i][j] % self.d[j]:
                    raise GCAError("b_ij / d_j is not integral")

    @property
    def rank(self) -> int:
        return len(self.b)

    def to_json_dict(self) -> dict:
        return {
            "B": [list(row) for row in self.b],
            "D": list(self.d),
            "cluster": [x.to_json_dict() for x in self.cluster],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Seed":
        return Seed(
            tuple(tuple(int(x) for x in row) for row in data["B"]),
            tuple(int(x) for x in data["D"]),
            tuple(LaurentPoly.from_json_dict(x) for x in data["cluster"]),
        )

    def canonical_key(self) -> tuple:
        """Seed identity up to simultaneous reordering of cluster positions."""
        order = sorted(range(self.rank), key=lambda i: self.cluster[i].key())
        b = tuple(tuple(self.b[i][j] for j in order) for i in order)
        return (b, tuple(self.cluster[i].key() for i in order))


def initial_seed(tau: sf.Triangulation) -> Seed:
    """Seed of a triangulation: its exchange matrix and one variable per arc."""
    b, d = ag.b_matrix(tau)
    n = tau.n
    cluster = tuple(LaurentPoly.variable(n, i) for i in range(n))
    return Seed(tuple(tuple(row) for row in b), d, cluster)


def b_matrix_for_order(arcs: tuple[sf.Arc, ...], n: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Exchange matrix of a triangulation with rows/columns in a given arc order."""
    tau = sf.Triangulation(arcs, n)
    b, d = ag.b_matrix(tau)
    perm = [tau.index_of(a) for a in arcs]
    return (
        tuple(tuple(b[perm[i]][perm[j]] for j in range(n)) for i in range(n)),
        tuple(d[perm[i]] for i in range(n)),
    )


def exchange_monomials(seed: Seed, k: int) -> tuple[LaurentPoly, LaurentPoly]:
    """v_k^+ and v_k^- evaluated on the current cluster entries."""
    n = seed.rank
    num_vars = seed.cluster[0].num_vars
    vplus = LaurentPoly.one(num_vars)
    vminus = LaurentPoly.one(num_vars)
    for l in range(n):
        e = seed.b[l][k]
        if e > 0:
            vplus = vplus * seed.cluster[l] ** (e // seed.d[k])
        elif e < 0:
            vminus = vminus * seed.cluster[l] ** (-e // seed.d[k])
    return vplus, vminus


def theta(seed: Seed, k: int) -> LaurentPoly:
    """The exchange polynomial theta_k(v_k^+, v_k^-) at the current cluster."""
    if not 0 <= k < seed.rank:
        raise GCAError(f"index {k} out of range")
    vplus, vminus = exchange_monomials(seed, k)
    num_vars = seed.cluster[0].num_vars
    out = LaurentPoly.zero(num_vars)
    for l in range(seed.d[k] + 1):
        out = out + vplus ** l * vminus ** (seed.d[k] - l)
    return out


def mutate(seed: Seed, k: int) -> Seed:
    """Mutate the seed at position k (0-based)."""
    th = theta(seed, k)
    new_entry = lp_exact_div(th, seed.cluster[k])
    if new_entry is None:
        raise LaurentPhenomenonViolation(
            f"exchange polynomial at {k} is not divisible by the cluster entry"
        )
    cluster = list(seed.cluster)
    cluster[k] = new_entry
    return Seed(
        tuple(tuple(row) for row in mutate_matrix([list(r) for r in seed.b], k)),
        seed.d,
        tuple(cluster),
        seed.history + (k,),
    )


# ---------------------------------------------------------------------------
# exploration


@dataclass
class MutationClosure:
    seeds: dict[tuple, Seed]  # canonical key -> representative seed
    variables: list[LaurentPoly]  # all cluster entries seen, sorted
    pairs: dict[tuple[str, ...], tuple]  # triangulation key -> seed canonical key
    arc_lists: dict[tuple[str, ...], tuple[sf.Arc, ...]]  # positions matching clusters
    closed: bool


def mutation_closure(n: int, max_depth: int | None = None) -> MutationClosure:
    """Breadth-first search of the seed graph from the fan triangulation.

    The triangulation flip graph is explored in lockstep: mutating position
    k corresponds to flipping the arc currently stored at position k.  Seeds
    are deduplicated up to simultaneous permutation of cluster and matrix.
    """
    tau0 = sf.special_triangulation(n)
    seed0 = initial_seed(tau0)
    state0 = (seed0, tuple(tau0.arcs))
    seeds = {seed0.canonical_key(): seed0}
    pairs = {tau0.key(): seed0.canonical_key()}
    arc_lists = {tau0.key(): tuple(tau0.arcs)}
    variables = set(seed0.cluster)
    frontier = [state0]
    depth = 0
    closed = True
    while frontier:
        if max_depth is not None and depth >= max_depth:
            closed = False
            break
        depth += 1
        nxt = []
        for seed, arcs in frontier:
            for k in range(n):
                new_seed = mutate(seed, k)
                tau = sf.Triangulation(arcs, n)
                _, new_arc = sf.flip(tau, arcs[k])
                new_arcs = arcs[:k] + (new_arc,) + arcs[k + 1:]
                new_tau = sf.Triangulation(new_arcs, n)
                b_flip, d_flip = b_matrix_for_order(new_arcs, n)
                if b_flip != new_seed.b or d_flip != new_seed.d:
                    raise GCAError("matrix mutation disagrees with the flip; bug")
                variables.update(new_seed.cluster)
                key = new_seed.canonical_key()
                tkey = new_tau.key()
                if tkey in pairs:
                    if pairs[tkey] != key:
                        raise GCAError("seed/triangulation correspondence broke; bug")
                    continue
                pairs[tkey] = key
                arc_lists[tkey] = new_arcs
                seeds[key] = new_seed
                nxt.append((new_seed, new_arcs))
        frontier = nxt
    return MutationClosure(
        seeds=seeds,
        variables=sorted(variables, key=LaurentPoly.key),
        pairs=pairs,
        arc_lists=arc_lists,
        closed=closed,
    )


def all_cluster_variables(n: int, max_depth: int | None = None) -> list[LaurentPoly]:
    """All cluster variables reachable from the fan triangulation's seed."""
    closure = mutation_closure(n, max_depth)
    if not closure.closed:
        raise GCAError(f"seed graph not closed within depth {max_depth}")
    return closure.variables
