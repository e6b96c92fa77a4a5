"""Exact integer-lattice machinery.

Lattices are free Z-modules of finite rank with a fixed basis; points are
integer coordinate tuples in that basis.  All linear algebra is exact over Z
(Smith normal form, integer kernels, integer linear solves).  Everything here
is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


class NotSurjective(Exception):
    """The map has an elementary divisor different from 1."""


class IncompatibleAction(Exception):
    """A group generator does not commute with the given lattice map."""


Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix dimensions do not match")
    bt = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Vector) -> Vector:
    if a and len(a[0]) != len(v):
        raise ValueError("matrix/vector dimensions do not match")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def mat_det_unimodular_sign(a: Matrix) -> int:
    """Determinant of a square integer matrix (fraction-free Gaussian/Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(mat) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D diagonal
    with d_i | d_{i+1} and d_i >= 0."""
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [list(row) for row in identity_matrix(m)]
    v = [list(row) for row in identity_matrix(n)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_addmul(i, j, c):
        # row_i += c * row_j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def col_addmul(i, j, c):
        for row in a:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # locate smallest nonzero entry in the trailing block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if a[t][t] < 0:
            row_negate(t)
        dirty = False
        for i in range(t + 1, m):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                row_addmul(i, t, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                col_addmul(j, t, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    row_addmul(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1

    return as_matrix(u), as_matrix(a), as_matrix(v)


def elementary_divisors(mat) -> list[int]:
    _, d, _ = smith_normal_form(mat)
    k = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(k) if d[i][i] != 0]


def kernel_basis(mat) -> list[Vector]:
    """Basis of the integer kernel {x : M x = 0} (always saturated)."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    u, d, v = smith_normal_form(mat)
    rank = sum(1 for i in range(min(m, n)) if d[i][i] != 0)
    cols = transpose(v)
    return [tuple(cols[j]) for j in range(rank, n)]


def solve_integer(mat, b: Vector) -> Vector | None:
    """One integer solution x of M x = b, or None if none exists."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    u, d, v = smith_normal_form(mat)
    y = mat_vec(u, b)
    x = [0] * n
    for i in range(m):
        di = d[i][i] if i < min(m, n) else 0
        if di == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % di != 0:
                return None
            x[i] = y[i] // di
    return mat_vec(v, tuple(x))


@dataclass(frozen=True)
class Lattice:
    """A free Z-module with a fixed ordered basis."""

    rank: int
    basis_labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        labels = self.basis_labels or tuple(f"e{i}" for i in range(self.rank))
        object.__setattr__(self, "basis_labels", tuple(labels))
        if self.rank < 0 or len(self.basis_labels) != self.rank:
            raise ValueError("rank must match the number of basis labels")

    def zero(self) -> Vector:
        return (0,) * self.rank

    def basis_vector(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def contains(self, v: Sequence[int]) -> bool:
        return len(v) == self.rank and all(isinstance(x, int) for x in v)


@dataclass(frozen=True)
class LatticeMap:
    """A homomorphism of lattices, stored as a target.rank x source.rank matrix."""

    source: Lattice
    target: Lattice
    matrix: Matrix

    def __post_init__(self):
        mat = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", mat)
        if len(mat) != self.target.rank:
            raise ValueError("matrix row count must equal target rank")
        if any(len(row) != self.source.rank for row in mat):
            raise ValueError("matrix column count must equal source rank")

    def __call__(self, v: Sequence[int]) -> Vector:
        return mat_vec(self.matrix, tuple(v))

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        if other.target is not self.source and other.target != self.source:
            raise ValueError("maps are not composable")
        return LatticeMap(other.source, self.target, mat_mul(self.matrix, other.matrix))

    def is_surjective(self) -> bool:
        divisors = elementary_divisors(self.matrix)
        return len(divisors) == self.target.rank and all(d == 1 for d in divisors)


def split_surjection(q: LatticeMap) -> LatticeMap:
    """A section s of a surjective lattice map q, with q o s = identity.

    The section is the one read off from the Smith normal form of q, so it is
    deterministic for a given map.
    """
    m = q.target.rank
    n = q.source.rank
    u, d, v = smith_normal_form(q.matrix)
    divisors = [d[i][i] for i in range(min(m, n))]
    if len(divisors) < m or any(di != 1 for di in divisors):
        raise NotSurjective(f"elementary divisors {divisors} are not all 1")
    # q = U^-1 D V^-1, so  s := V [I;0] U  satisfies q s = I.
    embed = tuple(
        tuple(1 if i == j else 0 for j in range(m)) for i in range(n)
    )
    s = mat_mul(mat_mul(v, embed), u)
    section = LatticeMap(q.target, q.source, s)
    check = mat_mul(q.matrix, s)
    assert check == identity_matrix(m)
    return section


def equivariant_section_exists(
    q: LatticeMap, generators: Sequence[tuple[Matrix, Matrix]]
) -> bool:
    """Decide whether q admits a section commuting with every generator.

    Each generator is a pair (g_source, g_target) of integer matrices acting on
    q's source and target, with q o g_source = g_target o q.  Existence of an
    equivariant section is an integer linear system in the entries of the
    section matrix, decided via Smith normal form.
    """
    m = q.target.rank
    n = q.source.rank
    gens = [(as_matrix(gs), as_matrix(gt)) for gs, gt in generators]
    for gs, gt in gens:
        if mat_mul(q.matrix, gs) != mat_mul(gt, q.matrix):
            raise IncompatibleAction("generator does not commute with the map")
    if not q.is_surjective():
        raise NotSurjective("map has an elementary divisor different from 1")

    # Unknowns: entries s[j][b] of the n x m section matrix, flattened.
    def idx(j, b):
        return j * m + b

    rows: list[list[int]] = []
    rhs: list[int] = []
    # q s = I
    for a in range(m):
        for b in range(m):
            row = [0] * (n * m)
            for j in range(n):
                row[idx(j, b)] = q.matrix[a][j]
            rows.append(row)
            rhs.append(1 if a == b else 0)
    # g_source s = s g_target, for each generator
    for gs, gt in gens:
        for i in range(n):
            for b in range(m):
                row = [0] * (n * m)
                for j in range(n):
                    row[idx(j, b)] += gs[i][j]
                for a in range(m):
                    row[idx(i, a)] -= gt[a][b]
                rows.append(row)
                rhs.append(0)
    return solve_integer(as_matrix(rows), tuple(rhs)) is not None
