"""Combinatorics of the (n+1)-gon with one interior orbifold point of order 3.

Everything is decided on the degree-3 covering polygon: the surface with
vertices v_0..v_n (counterclockwise) is the quotient of a regular
(3n+3)-gon with vertices u_0..u_{3n+2} by the rotation
theta: u_i -> u_{i+n+1}.  An arc downstairs is encoded by the theta-orbit of
a covering diagonal, and a diagonal orbit projects to an honest arc exactly
when a representative does not cross its own theta-translates.  That leaves:

* the pending arc at v_k  <->  orbit of the chord (k, k+n+1); the three
  translates form the unique theta-invariant triangle through u_k;
* for 0 <= r < l <= n two candidate orbits, of (r, l) and of (l, r+n+1);
  the third fiber orbit always self-crosses.

Text encoding: ``P:k`` for the pending arc at v_k, ``A:r:l:+`` / ``A:r:l:-``
for the two plain arcs between v_r and v_l.  The sign convention is pinned
by the fan triangulation tau_0 = { [v_0,v_{k+1}]^- } + pending at v_0: for
r >= 1 the minus arc is the one crossing the pending arc of tau_0, while for
r = 0 the minus arcs are the members of tau_0 themselves.  For cyclically
adjacent endpoints only the minus arc exists (the other candidate is a
boundary segment).

No floating point appears anywhere; two covering chords cross iff their
endpoint pairs strictly interleave around the polygon.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Diagonal = tuple[int, int]  # normalized: 0 <= a < b < 3n+3

MAX_N = 6  # default enumeration bound; large n only makes listings long


class SurfaceError(ValueError):
    pass


# ---------------------------------------------------------------------------
# arcs


@dataclass(frozen=True, order=False)
class Arc:
    """A pending arc (kind 'P') or a plain arc (kind 'A') of the surface."""

    kind: str  # 'P' or 'A'
    r: int  # pending: base vertex; plain: smaller endpoint
    l: int = 0  # plain: larger endpoint
    sign: str = ""  # plain: '+' or '-'

    @staticmethod
    def pending(k: int) -> "Arc":
        return Arc("P", k)

    @staticmethod
    def plain(r: int, l: int, sign: str) -> "Arc":
        if sign not in "+-":
            raise SurfaceError(f"bad sign {sign!r}")
        if r >= l:
            raise SurfaceError("plain arc needs r < l")
        return Arc("A", r, l, sign)

    def encode(self) -> str:
        if self.kind == "P":
            return f"P:{self.r}"
        return f"A:{self.r}:{self.l}:{self.sign}"

    @staticmethod
    def decode(text: str) -> "Arc":
        parts = text.split(":")
        if parts[0] == "P" and len(parts) == 2:
            return Arc.pending(int(parts[1]))
        if parts[0] == "A" and len(parts) == 4:
            return Arc.plain(int(parts[1]), int(parts[2]), parts[3])
        raise SurfaceError(f"cannot parse arc {text!r}")

    def sort_key(self) -> tuple:
        # minus sorts before plus so variable numbering matches the fan
        # triangulation and its one-flip neighbours.
        if self.kind == "P":
            return (1, self.r, 0, 0)
        return (0, self.r, self.l, 0 if self.sign == "-" else 1)

    def __lt__(self, other: "Arc") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Arc({self.encode()})"


def _check_n(n: int) -> None:
    if n < 2:
        raise SurfaceError("the surface needs n >= 2")


def _validate(arc: Arc, n: int) -> None:
    if arc.kind == "P":
        if not 0 <= arc.r <= n:
            raise SurfaceError(f"pending vertex {arc.r} out of range")
        return
    if not (0 <= arc.r < arc.l <= n):
        raise SurfaceError(f"plain arc endpoints {arc.r},{arc.l} out of range")
    adjacent = (arc.l == arc.r + 1) or (arc.r, arc.l) == (0, n)
    if adjacent and arc.sign == "+":
        raise SurfaceError(f"{arc.encode()} would be a boundary segment")


def all_arcs(n: int) -> list[Arc]:
    """Every arc of the surface, canonically sorted; there are n(n+1)."""
    _check_n(n)
    out = [Arc.pending(k) for k in range(n + 1)]
    for r in range(n + 1):
        for l in range(r + 1, n + 1):
            out.append(Arc.plain(r, l, "-"))
            if not (l == r + 1 or (r, l) == (0, n)):
                out.append(Arc.plain(r, l, "+"))
    out.sort(key=Arc.sort_key)
    assert len(out) == n * (n + 1)
    return out


# ---------------------------------------------------------------------------
# the covering polygon


def cover_size(n: int) -> int:
    return 3 * n + 3


def diag_norm(a: int, b: int, n: int) -> Diagonal:
    big = cover_size(n)
    a %= big
    b %= big
    if a == b:
        raise SurfaceError("degenerate chord")
    return (a, b) if a < b else (b, a)


def shift_diag(d: Diagonal, s: int, n: int) -> Diagonal:
    return diag_norm(d[0] + s, d[1] + s, n)


def theta_diag(d: Diagonal, n: int) -> Diagonal:
    return shift_diag(d, n + 1, n)


def diag_orbit(d: Diagonal, n: int) -> frozenset[Diagonal]:
    e = theta_diag(d, n)
    return frozenset({d, e, theta_diag(e, n)})


def chords_cross(d: Diagonal, e: Diagonal, n: int) -> bool:
    """Two covering chords cross iff their endpoints strictly interleave.

    Chords sharing an endpoint never cross in the interior.
    """
    if set(d) & set(e):
        return False
    a, b = d

    def inside(x: int) -> bool:
        return a < x < b

    return inside(e[0]) != inside(e[1])


def _plain_sign_of_orbits(r: int, l: int, n: int) -> dict[str, Diagonal]:
    """Map sign -> orbit representative for the plain arcs between v_r, v_l.

    Candidate orbits are those of (r, l) and of (l, r+n+1); the chord (r, l)
    is a boundary segment when l == r+1, the other when (r, l) == (0, n).
    For non-adjacent pairs the labels follow the fan-triangulation
    convention: with r >= 1 the minus arc is the one meeting the pending
    arc of the fan, which is the (l, r+n+1) orbit; with r == 0 the (r, l)
    orbit is the fan arc itself, labelled minus.
    """
    chord_a = (r, l)
    chord_c = diag_norm(l, r + n + 1, n)
    if l == r + 1:
        return {"-": chord_c}
    if (r, l) == (0, n):
        return {"-": chord_a}
    if r == 0:
        return {"-": chord_a, "+": chord_c}
    return {"+": chord_a, "-": chord_c}


def lift(arc: Arc, n: int) -> frozenset[Diagonal]:
    """The three covering diagonals forming the theta-orbit of ``arc``."""
    _validate(arc, n)
    if arc.kind == "P":
        return diag_orbit(diag_norm(arc.r, arc.r + n + 1, n), n)
    return diag_orbit(_plain_sign_of_orbits(arc.r, arc.l, n)[arc.sign], n)


def project_diag(d: Diagonal, n: int) -> Arc:
    """The arc whose lift contains ``d``; raises if the orbit self-crosses."""
    a, b = diag_norm(d[0], d[1], n)
    gap = b - a
    if gap in (n + 1, 2 * n + 2):
        return Arc.pending(a % (n + 1))
    va, vb = a % (n + 1), b % (n + 1)
    if va == vb:
        raise SurfaceError(f"chord {d} projects to a self-crossing curve")
    r, l = min(va, vb), max(va, vb)
    orbit = diag_orbit((a, b), n)
    for sign, rep in _plain_sign_of_orbits(r, l, n).items():
        if orbit == diag_orbit(rep, n):
            return Arc.plain(r, l, sign)
    raise SurfaceError(f"chord {d} projects to a self-crossing curve")


def crossing(i: Arc, j: Arc, n: int) -> int:
    """Interior intersection number of two arcs.

    Counted as crossings of one fixed lift of j against all three lifts of
    i; theta-invariance makes this symmetric in i and j.
    """
    _validate(i, n)
    _validate(j, n)
    if i == j:
        return 0
    d = min(lift(j, n))
    return sum(chords_cross(d, e, n) for e in lift(i, n))


def compatible(i: Arc, j: Arc, n: int) -> bool:
    return i == j or crossing(i, j, n) == 0


def rotate(arc: Arc, n: int, direction: str) -> Arc:
    """Rotate by one boundary step; '+' is counterclockwise (v_i -> v_{i+1}).

    On the covering this is the index shift by +1 ('+') or -1 ('-'), so the
    rotation commutes with lifting by construction.
    """
    if direction not in "+-":
        raise SurfaceError(f"bad rotation direction {direction!r}")
    d = min(lift(arc, n))
    return project_diag(shift_diag(d, 1 if direction == "+" else -1, n), n)


# ---------------------------------------------------------------------------
# triangulations


@dataclass(frozen=True)
class Triangle:
    """A triangle of a triangulation; ``sides`` in counterclockwise order.

    Each side is either an Arc or a boundary segment ('B', i, j).  Arrows of
    the associated quiver run from each side to its clockwise successor,
    i.e. from position p to position p-1 mod 3 of ``sides``.
    """

    sides: tuple
    orbifold: bool


class Triangulation:
    """A maximal set of pairwise compatible arcs (n of them, one pending)."""

    def __init__(self, arcs, n: int):
        _check_n(n)
        arcs = sorted(set(arcs), key=Arc.sort_key)
        for a in arcs:
            _validate(a, n)
        if len(arcs) != n:
            raise SurfaceError(f"a triangulation of this surface has {n} arcs, got {len(arcs)}")
        for idx, a in enumerate(arcs):
            for b in arcs[idx + 1:]:
                if crossing(a, b, n):
                    raise SurfaceError(f"{a.encode()} and {b.encode()} cross")
        pendings = [a for a in arcs if a.kind == "P"]
        if len(pendings) != 1:
            raise SurfaceError("a triangulation has exactly one pending arc")
        self.n = n
        self.arcs: tuple[Arc, ...] = tuple(arcs)
        self.pending: Arc = pendings[0]
        self._lift: frozenset[Diagonal] | None = None

    # maximality is automatic at size n, but keep the check available
    def assert_maximal(self) -> None:
        for cand in all_arcs(self.n):
            if cand in self.arcs:
                continue
            if all(compatible(cand, a, self.n) for a in self.arcs):
                raise SurfaceError(f"not maximal: {cand.encode()} is compatible")

    def key(self) -> tuple[str, ...]:
        return tuple(a.encode() for a in self.arcs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Triangulation) and (self.n, self.key()) == (other.n, other.key())

    def __hash__(self) -> int:
        return hash((self.n, self.key()))

    def __repr__(self) -> str:
        return f"Triangulation({list(self.key())})"

    def index_of(self, arc: Arc) -> int:
        return self.arcs.index(arc)

    def lifted(self) -> frozenset[Diagonal]:
        """The corresponding theta-invariant triangulation of the covering."""
        if self._lift is None:
            diags: set[Diagonal] = set()
            for a in self.arcs:
                diags |= lift(a, self.n)
            assert len(diags) == 3 * self.n
            pairs = sorted(diags)
            for idx, d in enumerate(pairs):
                for e in pairs[idx + 1:]:
                    assert not chords_cross(d, e, self.n)
            self._lift = frozenset(diags)
        return self._lift

    def to_json(self) -> list[str]:
        return list(self.key())

    @staticmethod
    def from_json(data, n: int) -> "Triangulation":
        return Triangulation([Arc.decode(t) for t in data], n)


def special_triangulation(n: int) -> Triangulation:
    """The fan triangulation: arcs v_0 -> v_{k+1} plus the pending at v_0."""
    _check_n(n)
    arcs = [Arc.plain(0, k + 1, "-") for k in range(1, n)] + [Arc.pending(0)]
    return Triangulation(arcs, n)


def flip(tau: Triangulation, j: Arc) -> tuple[Triangulation, Arc]:
    """Replace j by the unique other arc completing tau minus j."""
    if j not in tau.arcs:
        raise SurfaceError(f"{j.encode()} is not in the triangulation")
    rest = [a for a in tau.arcs if a != j]
    candidates = [
        cand
        for cand in all_arcs(tau.n)
        if cand not in tau.arcs and all(compatible(cand, a, tau.n) for a in rest)
    ]
    if len(candidates) != 1:
        raise SurfaceError(
            f"flip of {j.encode()} has {len(candidates)} candidates; invariant violated"
        )
    new = candidates[0]
    return Triangulation(rest + [new], tau.n), new


def enumerate_triangulations(n: int, bound: int = MAX_N) -> list[Triangulation]:
    """All triangulations, by breadth-first search over the flip graph."""
    _check_n(n)
    if n > bound:
        raise SurfaceError(f"n={n} exceeds the enumeration bound {bound}")
    start = special_triangulation(n)
    seen = {start.key(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for tau in frontier:
            for arc in tau.arcs:
                tau2, _ = flip(tau, arc)
                if tau2.key() not in seen:
                    seen[tau2.key()] = tau2
                    nxt.append(tau2)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------------------
# faces of the covering and triangles downstairs


def boundary_edges(n: int) -> set[Diagonal]:
    big = cover_size(n)
    return {diag_norm(i, i + 1, n) for i in range(big)}


def cover_faces(diags: frozenset[Diagonal], n: int) -> list[tuple[int, int, int]]:
    """Vertex triples (ascending = counterclockwise) of the covering faces.

    In a convex polygon a vertex triple bounds a face of the triangulation
    iff all three connecting chords are edges (diagonals or boundary).
    """
    big = cover_size(n)
    edges = set(diags) | boundary_edges(n)

    def is_edge(a: int, b: int) -> bool:
        return diag_norm(a, b, n) in edges

    faces = []
    for a in range(big):
        for b in range(a + 1, big):
            if not is_edge(a, b):
                continue
            for c in range(b + 1, big):
                if is_edge(b, c) and is_edge(a, c):
                    faces.append((a, b, c))
    assert len(faces) == big - 2
    return faces


def face_sides(face: tuple[int, int, int], n: int) -> list[Diagonal]:
    a, b, c = face
    return [diag_norm(a, b, n), diag_norm(b, c, n), diag_norm(c, a, n)]


def theta_face(face: tuple[int, int, int], n: int) -> tuple[int, int, int]:
    big = cover_size(n)
    return tuple(sorted((v + n + 1) % big for v in face))  # type: ignore[return-value]


def triangles(tau: Triangulation) -> list[Triangle]:
    """Orbit representatives of the non-invariant covering faces.

    The unique theta-invariant face is the monogon cut out by the pending
    arc; it is not listed.  The face whose sides include the pending arc is
    flagged as the orbifold triangle.  Sides are reported counterclockwise,
    projected to arcs (or boundary markers ('B', v_i, v_j)).
    """
    n = tau.n
    faces = cover_faces(tau.lifted(), n)
    bnd = boundary_edges(n)
    seen: set[tuple[int, int, int]] = set()
    out: list[Triangle] = []
    for face in sorted(faces):
        if theta_face(face, n) == face:
            continue  # the invariant triangle: three lifts of the pending arc
        orbit = {face, theta_face(face, n), theta_face(theta_face(face, n), n)}
        if seen & orbit:
            continue
        seen |= orbit
        sides = []
        orbifold = False
        for d in face_sides(face, n):
            if d in bnd:
                sides.append(("B", d[0] % (n + 1), d[1] % (n + 1)))
            else:
                arc = project_diag(d, n)
                sides.append(arc)
                if arc.kind == "P":
                    orbifold = True
        out.append(Triangle(tuple(sides), orbifold))
    assert len(out) == n
    assert sum(t.orbifold for t in out) == 1
    return out
