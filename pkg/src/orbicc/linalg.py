"""Small exact linear-algebra kit over the rationals.

Matrices are lists of lists of ``Fraction``; vectors are lists of
``Fraction``.  Everything here is dense Gaussian elimination, which is all
the representation-theoretic computations in this package need: the modules
involved have total dimension a few dozen at most.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def mat(rows) -> Matrix:
    return [[fr(x) for x in row] for row in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    # zero-row matrices are stored as [] and lose their column count, so the
    # degenerate cases are resolved by content rather than by shape
    if not a:
        return []
    ra, ca = shape(a)
    if ca == 0:
        if b:
            raise ValueError("shape mismatch: empty-width times nonempty")
        return [[] for _ in range(ra)]
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch: {ra}x{ca} times {rb}x{cb}")
    out = zeros(ra, cb)
    for i in range(ra):
        arow = a[i]
        orow = out[i]
        for k in range(ca):
            x = arow[k]
            if x:
                brow = b[k]
                for j in range(cb):
                    if brow[j]:
                        orow[j] += x * brow[j]
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    if not a:
        return []
    r, c = shape(a)
    if c != len(v):
        raise ValueError("shape mismatch in mat_vec")
    return [sum((a[i][j] * v[j] for j in range(c) if v[j]), Fraction(0)) for i in range(r)]


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def maps_agree(a: Matrix, b: Matrix) -> bool:
    """Entry-wise equality, treating matrices with a zero side as zero maps."""
    if a == b:
        return True
    return is_zero_matrix(a) and is_zero_matrix(b)


def _row_echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [row[:] for row in a]
    rows, cols = shape(m)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(_row_echelon(a)[1])


def nullity(a: Matrix) -> int:
    r, c = shape(a)
    return c - rank(a)


def nullspace(a: Matrix) -> list[Vector]:
    """A basis of the right null space of ``a``."""
    r, c = shape(a)
    if c == 0:
        return []
    if r == 0:
        return [[Fraction(i == j) for j in range(c)] for i in range(c)]
    echelon, pivots = _row_echelon(a)
    free = [j for j in range(c) if j not in pivots]
    basis: list[Vector] = []
    for f in free:
        v = [Fraction(0)] * c
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -echelon[i][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Vector) -> Vector | None:
    """One solution of a x = b, or None if inconsistent."""
    r, c = shape(a)
    aug = [a[i][:] + [fr(b[i])] for i in range(r)]
    echelon, pivots = _row_echelon(aug)
    if c in pivots:
        return None
    x = [Fraction(0)] * c
    for i, p in enumerate(pivots):
        x[p] = echelon[i][c]
    return x


def inverse(a: Matrix) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise ValueError("inverse of non-square matrix")
    aug = [a[i][:] + identity(n)[i] for i in range(n)]
    echelon, pivots = _row_echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in echelon]


class SubspaceBasis:
    """Incremental echelonized basis of a subspace of Q^dim.

    Supports membership-with-coordinates queries against the vectors that
    were actually added (in insertion order), which is what the quotient and
    radical constructions need.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.vectors: list[Vector] = []  # original insertion order
        self._echelon: list[Vector] = []
        self._pivots: list[int] = []

    def add(self, v: Vector) -> bool:
        """Add v if independent from the span so far; return True if added."""
        w = [fr(x) for x in v]
        for piv, e in zip(self._pivots, self._echelon):
            if w[piv]:
                factor = w[piv]
                w = [x - factor * y for x, y in zip(w, e)]
        pivot = next((i for i in range(self.dim) if w[i]), None)
        if pivot is None:
            return False
        inv = 1 / w[pivot]
        self._echelon.append([x * inv for x in w])
        self._pivots.append(pivot)
        self.vectors.append([fr(x) for x in v])
        return True

    def __len__(self) -> int:
        return len(self.vectors)

    def coords(self, v: Vector) -> Vector | None:
        """Coordinates of v in terms of the *inserted* vectors, or None."""
        if not self.vectors:
            return [] if all(not x for x in v) else None
        a = [[self.vectors[k][i] for k in range(len(self.vectors))] for i in range(self.dim)]
        return solve(a, [fr(x) for x in v])


def extend_to_basis(vectors: list[Vector], dim: int) -> list[Vector]:
    """Extend independent ``vectors`` to a basis of Q^dim with standard vectors."""
    basis = SubspaceBasis(dim)
    for v in vectors:
        if not basis.add(v):
            raise ValueError("input vectors are dependent")
    for i in range(dim):
        e = [Fraction(j == i) for j in range(dim)]
        basis.add(e)
        if len(basis) == dim:
            break
    return basis.vectors
