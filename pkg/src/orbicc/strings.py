"""Strings over a gentle algebra, string modules, and arc strings.

A string word is a sequence of letters (arrow, direction) in order of
application, where direction +1 traverses the arrow and -1 traverses it
backwards.  Valid words have composable consecutive letters, avoid the
patterns l l^{-1}, and avoid the relations both as direct subwords and as
direct subwords of the inverse.  Length-0 strings carry just a vertex; the
zero string (a formal substring of everything) has no vertex at all.

The string module N(W) of a length-r word lives on basis z_0..z_r placed at
the walk vertices, with each letter acting as the identity forwards or
backwards along the walk.  Submodules spanned by subsets of the basis are
exactly the subsets closed under the letter actions, and counting such
subsets of a fixed dimension vector computes the Euler characteristic of
the corresponding quiver Grassmannian (the subsets are the fixed points of
a torus action with finite fixed-point set).

``arc_string`` reads the string of an arc off the covering polygon: walk a
lift across the lifted triangulation and record, for each consecutive pair
of crossed diagonals, the folded quiver arrow between them, inverted when
it is crossed head first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import algebra as ag
from . import linalg as la
from . import surface as sf

MAX_STRING_LENGTH = 64


class StringError(ValueError):
    pass


class BandError(StringError):
    """A band was found; the completeness of the string list would fail."""


@dataclass(frozen=True)
class StringWord:
    """Letters in application order; a bare vertex for length-0 strings."""

    letters: tuple[tuple[int, int], ...]
    vertex: int | None = None

    def is_zero(self) -> bool:
        return not self.letters and self.vertex is None

    def is_trivial(self) -> bool:
        return not self.letters and self.vertex is not None

    def inverse(self) -> "StringWord":
        if not self.letters:
            return self
        return StringWord(tuple((a, -d) for a, d in reversed(self.letters)), None)

    def __len__(self) -> int:
        return len(self.letters)


ZERO_STRING = StringWord((), None)


def trivial_string(vertex: int) -> StringWord:
    return StringWord((), vertex)


def letter_tail(alg: ag.GentleAlgebra, letter: tuple[int, int]) -> int:
    a = alg.arrows[letter[0]]
    return a.tail if letter[1] > 0 else a.head


def letter_head(alg: ag.GentleAlgebra, letter: tuple[int, int]) -> int:
    a = alg.arrows[letter[0]]
    return a.head if letter[1] > 0 else a.tail


def _pair_ok(alg: ag.GentleAlgebra, first: tuple[int, int], second: tuple[int, int]) -> bool:
    if letter_tail(alg, second) != letter_head(alg, first):
        return False
    if first[0] == second[0] and first[1] == -second[1]:
        return False
    if first[1] > 0 and second[1] > 0 and (first[0], second[0]) in alg.relations:
        return False
    if first[1] < 0 and second[1] < 0 and (second[0], first[0]) in alg.relations:
        return False
    return True


def is_valid_word(alg: ag.GentleAlgebra, w: StringWord) -> bool:
    if not w.letters:
        return w.vertex is None or 0 <= w.vertex < alg.num_vertices
    return all(_pair_ok(alg, w.letters[k], w.letters[k + 1]) for k in range(len(w) - 1))


def walk_vertices(alg: ag.GentleAlgebra, w: StringWord) -> list[int]:
    """Vertices p_0..p_r visited by the walk of a nonzero word."""
    if w.is_zero():
        raise StringError("the zero string has no walk")
    if w.is_trivial():
        return [w.vertex]
    verts = [letter_tail(alg, w.letters[0])]
    for letter in w.letters:
        verts.append(letter_head(alg, letter))
    return verts


def serialize(alg: ag.GentleAlgebra, w: StringWord) -> str:
    """Text form, last letter first: e.g. ``a2~.eps.a2.a1``; 0 for the zero string."""
    if w.is_zero():
        return "0"
    if w.is_trivial():
        return f"1@({w.vertex + 1},+)"
    return ".".join(
        alg.arrows[a].name + ("" if d > 0 else "~") for a, d in reversed(w.letters)
    )


def normal_form(alg: ag.GentleAlgebra, w: StringWord) -> StringWord:
    """The representative of {W, W^{-1}} with smaller text form."""
    inv = w.inverse()
    return w if serialize(alg, w) <= serialize(alg, inv) else inv


def string_module(alg: ag.GentleAlgebra, w: StringWord) -> ag.Rep:
    """N(W): basis z_0..z_r, letters act as identities along the walk."""
    if w.is_zero():
        return ag.Rep.zero_maps(alg, (0,) * alg.num_vertices)
    if not is_valid_word(alg, w):
        raise StringError(f"invalid string {serialize(alg, w)}")
    verts = walk_vertices(alg, w)
    by_vertex: dict[int, list[int]] = {v: [] for v in range(alg.num_vertices)}
    for k, v in enumerate(verts):
        by_vertex[v].append(k)
    pos = {}
    for v, ks in by_vertex.items():
        for j, k in enumerate(ks):
            pos[k] = j
    dims = tuple(len(by_vertex[v]) for v in range(alg.num_vertices))
    rep = ag.Rep.zero_maps(alg, dims)
    for k, (aidx, d) in enumerate(w.letters):
        src, dst = (k, k + 1) if d > 0 else (k + 1, k)
        rep.mats[aidx][pos[dst]][pos[src]] = Fraction(1)
    return rep


# ---------------------------------------------------------------------------
# modules presented by collections of strings


@dataclass(frozen=True)
class StringDecRep:
    """A decorated module presented as a direct sum of string modules."""

    words: tuple[StringWord, ...]
    dec: tuple[int, ...]

    def rep(self, alg: ag.GentleAlgebra) -> ag.Rep:
        out = ag.Rep.zero_maps(alg, (0,) * alg.num_vertices)
        for w in self.words:
            out = ag.direct_sum(alg, out, string_module(alg, w))
        return out

    def dec_rep(self, alg: ag.GentleAlgebra) -> ag.DecRep:
        return ag.DecRep(self.rep(alg), self.dec)


def sdr_of_word(alg: ag.GentleAlgebra, w: StringWord) -> StringDecRep:
    return StringDecRep((w,), (0,) * alg.num_vertices)


def sdr_negative_simple(alg: ag.GentleAlgebra, i: int) -> StringDecRep:
    return StringDecRep((), tuple(1 if v == i else 0 for v in range(alg.num_vertices)))


def sdr_sum(a: StringDecRep, b: StringDecRep) -> StringDecRep:
    return StringDecRep(a.words + b.words, tuple(x + y for x, y in zip(a.dec, b.dec)))


# ---------------------------------------------------------------------------
# substrings and Euler characteristics


def _positioned_substrings(alg, w: StringWord):
    """(start, end, word) for factor-closed substrings; vertices span z_start..z_end."""
    out = []
    if w.is_zero():
        return out
    if w.is_trivial():
        return [(0, 0, w)]
    verts = walk_vertices(alg, w)
    r = len(w.letters)

    def pred_ok(i: int) -> bool:  # letter entering from the left must be direct
        return i == 0 or w.letters[i - 1][1] > 0

    def succ_ok(j: int) -> bool:  # letter leaving to the right must be inverse
        return j == r or w.letters[j][1] < 0

    for k in range(r + 1):
        if pred_ok(k) and succ_ok(k):
            out.append((k, k, trivial_string(verts[k])))
    for i in range(r):
        for j in range(i + 1, r + 1):
            if pred_ok(i) and succ_ok(j):
                out.append((i, j, StringWord(w.letters[i:j], None)))
    return out


def substrings(alg: ag.GentleAlgebra, w: StringWord) -> list[StringWord]:
    """All substrings of W plus the zero string, in canonical text order.

    Distinct positions contribute distinct entries even when the underlying
    words coincide, so the length of the result equals the total number of
    basis-spanned submodules of N(W).
    """
    if w.is_zero():
        return [ZERO_STRING]
    items = [normal_form(alg, v) for _, _, v in _positioned_substrings(alg, w)]
    items.sort(key=lambda v: serialize(alg, v))
    return [ZERO_STRING] + items


def substring_dim_census(alg: ag.GentleAlgebra, w: StringWord) -> dict[tuple[int, ...], int]:
    """Count collections of disjoint non-adjacent substrings, by dimension vector.

    A basis subset closed under the letter actions decomposes uniquely into
    maximal runs, and those runs are exactly the positioned substrings;
    conversely, any collection of substrings separated by at least one basis
    position unions to a closed subset.  Counting such collections is an
    independent combinatorial route to the Grassmannian Euler
    characteristics (the empty collection stands for the zero string).
    """
    zero = (0,) * alg.num_vertices
    census: dict[tuple[int, ...], int] = {zero: 1}
    if w.is_zero():
        return census
    verts = walk_vertices(alg, w)
    spans = []  # (first basis index, last basis index, dimension vector)
    for i, j, _ in _positioned_substrings(alg, w):
        e = [0] * alg.num_vertices
        for k in range(i, j + 1):
            e[verts[k]] += 1
        spans.append((i, j, tuple(e)))
    spans.sort()

    def extend(min_start: int, acc: tuple[int, ...]) -> None:
        for i, j, e in spans:
            if i < min_start:
                continue
            total = tuple(a + b for a, b in zip(acc, e))
            census[total] = census.get(total, 0) + 1
            extend(j + 2, total)

    extend(0, zero)
    return census


def grassmann_table(alg: ag.GentleAlgebra, words: tuple[StringWord, ...]) -> dict[tuple[int, ...], int]:
    """Euler characteristics of all quiver Grassmannians of a sum of strings.

    Counts subsets of the standard basis closed under every letter action,
    bucketed by dimension vector.  Such subsets are the fixed points of the
    scaling torus acting on the Grassmannian, so each bucket's count is the
    Euler characteristic at that dimension vector.
    """
    basis_vertex: list[int] = []
    implications: list[tuple[int, int]] = []  # member src forces member dst
    for w in words:
        if w.is_zero():
            continue
        if not is_valid_word(alg, w):
            raise StringError(f"invalid string {serialize(alg, w)}")
        offset = len(basis_vertex)
        verts = walk_vertices(alg, w)
        basis_vertex.extend(verts)
        for k, (_, d) in enumerate(w.letters):
            src, dst = (k, k + 1) if d > 0 else (k + 1, k)
            implications.append((offset + src, offset + dst))
    m = len(basis_vertex)
    if m > 22:
        raise StringError("module too large for subset enumeration")
    pairs = [(1 << s, 1 << t) for s, t in implications]
    table: dict[tuple[int, ...], int] = {}
    for mask in range(1 << m):
        if any(mask & s and not mask & t for s, t in pairs):
            continue
        e = [0] * alg.num_vertices
        rem = mask
        while rem:
            low = rem & -rem
            e[basis_vertex[low.bit_length() - 1]] += 1
            rem ^= low
        key = tuple(e)
        table[key] = table.get(key, 0) + 1
    return table


def grassmannian_euler(alg: ag.GentleAlgebra, w: StringWord, e: tuple[int, ...]) -> int:
    """chi of the Grassmannian of submodules of N(W) with dimension vector e."""
    dims = string_module(alg, w).dims
    if any(x < 0 or x > d for x, d in zip(e, dims)):
        raise StringError(f"dimension vector {e} out of range for dims {dims}")
    return grassmann_table(alg, (w,)).get(tuple(e), 0)


def closed_subsets_are_submodules(alg: ag.GentleAlgebra, w: StringWord) -> bool:
    """Re-verify with the matrices that every counted subset is a submodule."""
    rep = string_module(alg, w)
    verts = walk_vertices(alg, w) if not w.is_zero() else []
    by_vertex: dict[int, list[int]] = {v: [] for v in range(alg.num_vertices)}
    for k, v in enumerate(verts):
        by_vertex[v].append(k)
    pos = {k: j for v in by_vertex for j, k in enumerate(by_vertex[v])}
    m = len(verts)
    pairs = []
    for k, (_, d) in enumerate(w.letters):
        src, dst = (k, k + 1) if d > 0 else (k + 1, k)
        pairs.append((1 << src, 1 << dst))
    for mask in range(1 << m):
        if any(mask & s and not mask & t for s, t in pairs):
            continue
        members = [k for k in range(m) if mask & (1 << k)]
        for a in alg.arrows:
            cols = [pos[k] for k in members if verts[k] == a.tail]
            if not cols:
                continue
            space = la.SubspaceBasis(rep.dims[a.head])
            for k in members:
                if verts[k] == a.head:
                    vec = [Fraction(0)] * rep.dims[a.head]
                    vec[pos[k]] = Fraction(1)
                    space.add(vec)
            for c in cols:
                image = [rep.mats[a.idx][i][c] for i in range(rep.dims[a.head])]
                if any(image) and space.coords(image) is None:
                    return False
    return True


# ---------------------------------------------------------------------------
# complete string lists


def all_strings(alg: ag.GentleAlgebra, max_len: int = MAX_STRING_LENGTH) -> list[StringWord]:
    """All strings up to inversion; raises BandError if a band shows up."""
    found: dict[str, StringWord] = {}
    for v in range(alg.num_vertices):
        w = trivial_string(v)
        found[serialize(alg, w)] = w
    stack: list[tuple[tuple[int, int], ...]] = [
        ((a.idx, d),) for a in alg.arrows for d in (+1, -1)
    ]
    while stack:
        letters = stack.pop()
        if len(letters) > max_len:
            raise BandError("string growth exceeds the cap; band suspected")
        w = StringWord(letters, None)
        nf = normal_form(alg, w)
        found.setdefault(serialize(alg, nf), nf)
        at = letter_head(alg, letters[-1])
        for a in alg.out_arrows[at]:
            cand = letters + ((a.idx, +1),)
            if _pair_ok(alg, letters[-1], cand[-1]):
                stack.append(cand)
        for a in alg.in_arrows[at]:
            cand = letters + ((a.idx, -1),)
            if _pair_ok(alg, letters[-1], cand[-1]):
                stack.append(cand)
    words = sorted(found.values(), key=lambda w: (len(w.letters), serialize(alg, w)))
    for w in words:
        if w.letters and letter_tail(alg, w.letters[0]) == letter_head(alg, w.letters[-1]):
            doubled = StringWord(w.letters + w.letters, None)
            if is_valid_word(alg, doubled):
                raise BandError(f"band found: {serialize(alg, w)}")
    return words


# ---------------------------------------------------------------------------
# arc strings over a triangulation


def _side_size(chord: sf.Diagonal, vertex: int, n: int) -> int:
    """Number of covering vertices strictly on ``vertex``'s side of ``chord``."""
    a, b = chord
    if a < vertex < b:
        return b - a - 1
    return sf.cover_size(n) - (b - a) - 1


def arc_string(tau: sf.Triangulation, j: sf.Arc) -> StringWord:
    """The crossing word of an arc not in the triangulation, normalized."""
    if j in tau.arcs:
        raise StringError(f"{j.encode()} belongs to the triangulation")
    from .covering import orbit_map  # deferred: covering imports this module

    om = orbit_map(tau)
    n = tau.n
    endpoints = sorted((min(d), max(d)) for d in sf.lift(j, n))
    start, end = endpoints[0]
    chord = (start, end)
    crossed = [d for d in tau.lifted() if sf.chords_cross(chord, d, n)]
    crossed.sort(key=lambda d: _side_size(d, start, n))
    sizes = [_side_size(d, start, n) for d in crossed]
    assert len(set(sizes)) == len(sizes), "crossing order is ambiguous; bug"
    if not crossed:
        raise StringError("arc crosses nothing; it should be in the triangulation")
    if len(crossed) == 1:
        base_vertex = om.diag_orbit_vertex[crossed[0]]
        return trivial_string(base_vertex)
    letters = []
    for d1, d2 in zip(crossed, crossed[1:]):
        i1, i2 = om.cov_index[d1], om.cov_index[d2]
        arrow = [a for a in om.cov_alg.arrows if {a.tail, a.head} == {i1, i2}]
        if len(arrow) != 1:
            raise StringError("no unique covering arrow between crossed diagonals; bug")
        a = arrow[0]
        letters.append((om.arrow_orbit[a.idx], +1 if a.tail == i1 else -1))
    w = StringWord(tuple(letters), None)
    base = om.base_alg
    if not is_valid_word(base, w):
        raise StringError(f"crossing word {serialize(base, w)} is not a string; bug")
    return normal_form(base, w)


def arc_rep(tau: sf.Triangulation, j: sf.Arc) -> StringDecRep:
    """The arc representation: negative simple inside tau, string module outside."""
    from .covering import orbit_map

    om = orbit_map(tau)
    alg = om.base_alg
    if j in tau.arcs:
        return sdr_negative_simple(alg, tau.index_of(j))
    w = arc_string(tau, j)
    rep = string_module(alg, w)
    profile = tuple(sf.crossing(i, j, tau.n) for i in tau.arcs)
    if rep.dims != profile:
        raise StringError(
            f"dims {rep.dims} of {serialize(alg, w)} disagree with crossings {profile}"
        )
    return sdr_of_word(alg, w)


def ar_translate_arc(tau: sf.Triangulation, j: sf.Arc, direction: str) -> StringDecRep:
    """Auslander-Reiten translate of an arc module, realized by rotation.

    direction '+' is the translate (needs a non-projective module),
    direction '-' the inverse translate (needs a non-injective one).
    """
    from .covering import orbit_map

    if j in tau.arcs:
        raise StringError("negative simples have no translate")
    om = orbit_map(tau)
    rep = arc_rep(tau, j).rep(om.base_alg)
    if direction == "+" and ag.is_projective(om.base_alg, rep):
        raise StringError(f"{j.encode()} gives a projective module; translate undefined")
    if direction == "-" and ag.is_injective(om.base_alg, rep):
        raise StringError(f"{j.encode()} gives an injective module; inverse undefined")
    rotated = sf.rotate(j, tau.n, direction)
    if rotated in tau.arcs:
        raise StringError("rotation landed in the triangulation; bug")
    return arc_rep(tau, rotated)
