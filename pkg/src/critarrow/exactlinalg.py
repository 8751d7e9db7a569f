"""Exact rational linear algebra on tuples of ``Fraction``.

Vectors are tuples of :class:`fractions.Fraction`, matrices are tuples of
row tuples.  Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix, ZeroVector

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...], row-major


def vec(entries: Iterable) -> Vector:
    return tuple(Fraction(x) for x in entries)


def mat(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return transpose(mat(cols))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def identity(d: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    return sum((Fraction(x) * y for x, y in zip(u, v)), Fraction(0))


def matvec(a: Matrix, x: Sequence) -> Vector:
    return tuple(dot(row, x) for row in a)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return tuple(Fraction(x) + y for x, y in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return tuple(Fraction(x) - y for x, y in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * x for x in u)


def norm2(u: Sequence) -> Fraction:
    return dot(u, u)


def is_integral(u: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in u)


def common_denominator(entries: Iterable) -> int:
    out = 1
    for x in entries:
        out = lcm(out, Fraction(x).denominator)
    return out


def to_ints(u: Iterable) -> tuple[int, ...]:
    out = []
    for x in u:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"{x} is not an integer")
        out.append(x.numerator)
    return tuple(out)


def _row_reduce(a: Matrix) -> tuple[list[list[Fraction]], list[int], int]:
    """Gaussian elimination; returns (echelon rows, pivot columns, row swaps)."""
    rows = [list(r) for r in a]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            swaps += 1
        piv = rows[r][c]
        for k in range(r + 1, len(rows)):
            f = rows[k][c]
            if f:
                f /= piv
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots, swaps


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return len(_row_reduce(mat(vectors))[1])


def det(a: Matrix) -> Fraction:
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    rows, pivots, swaps = _row_reduce(mat(a))
    if len(pivots) < n:
        return Fraction(0)
    out = Fraction(-1 if swaps % 2 else 1)
    for i in range(n):
        out *= rows[i][i]
    return out


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ``SingularMatrix``."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(mat(a))]
    for c in range(n):
        p = next((k for k in range(c, n) if aug[k][c] != 0), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for k in range(n):
            if k != c and aug[k][c]:
                f = aug[k][c]
                aug[k] = [x - f * y for x, y in zip(aug[k], aug[c])]
    return tuple(tuple(r[n:]) for r in aug)


def solve(a: Matrix, b: Sequence) -> Vector:
    """Return the unique ``x`` with ``a @ x == b``.

    Raises:
        DimensionMismatch: ``a`` is not square or ``b`` has the wrong length.
        SingularMatrix: ``det(a) == 0``.
    """
    a = mat(a)
    n = len(a)
    if any(len(r) != n for r in a) or len(b) != n:
        raise DimensionMismatch("solve needs a square system")
    aug = [list(r) + [Fraction(y)] for r, y in zip(a, b)]
    for c in range(n):
        p = next((k for k in range(c, n) if aug[k][c] != 0), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        for k in range(c + 1, n):
            f = aug[k][c]
            if f:
                f /= aug[c][c]
                aug[k] = [x - f * y for x, y in zip(aug[k], aug[c])]
    x = [Fraction(0)] * n
    for c in reversed(range(n)):
        s = aug[c][n] - sum((aug[c][j] * x[j] for j in range(c + 1, n)), Fraction(0))
        x[c] = s / aug[c][c]
    return tuple(x)


def span_dims(u: Sequence[Sequence], w: Sequence[Sequence]) -> tuple[int, int, int]:
    """Ranks of span(U), span(W) and of their intersection."""
    dims = {len(x) for x in list(u) + list(w)}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed ambient dimensions {sorted(dims)}")
    du, dw = rank(u), rank(w)
    return du, dw, du + dw - rank(list(u) + list(w))


def primitive(v: Sequence) -> Vector:
    """Divide an integral vector by the gcd of its entries."""
    ints = to_ints(v)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("primitive() of the zero vector")
    return tuple(Fraction(x // g) for x in ints)


def primitive_multiple(v: Sequence) -> Vector:
    """The primitive integral vector on the ray through a rational ``v``."""
    m = common_denominator(v)
    return primitive(scale(m, v))


def hermite_columns(gens: Sequence[Sequence[int]], d: int) -> list[list[int]]:
    """Lower-triangular column Hermite form of the lattice spanned by ``gens``.

    ``gens`` are integer vectors of length ``d`` spanning a full-rank lattice.
    Returns ``H`` (row-major, ``d x d``) whose columns are a basis with
    ``H[k][k] > 0`` and ``0 <= H[k][j] < H[k][k]`` for ``j < k``.
    """
    cols = [list(map(int, g)) for g in gens if any(g)]
    basis: list[list[int]] = []
    for k in range(d):
        # Euclid on coordinate k across all remaining columns.
        active = [c for c in cols if c[k] != 0]
        rest = [c for c in cols if c[k] == 0]
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[k]))
            piv = active[0]
            nxt = [piv]
            for c in active[1:]:
                q = c[k] // piv[k]
                c = [x - q * y for x, y in zip(c, piv)]
                (nxt if c[k] != 0 else rest).append(c)
            active = nxt
        if not active:
            raise SingularMatrix("generators do not span a full-rank lattice")
        piv = active[0]
        if piv[k] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        cols = [c for c in rest if any(c)]
    # Reduce entries below the diagonal, row by row.
    for k in range(d):
        for j in range(k):
            q = basis[j][k] // basis[k][k]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[k])]
    return [[basis[j][i] for j in range(d)] for i in range(d)]


def lattice_basis_from_generators(vectors: Sequence[Sequence], d: int | None = None) -> Matrix:
    """Basis of ``Z^d + sum Z v`` as columns of a canonical lower-triangular matrix."""
    vectors = [vec(v) for v in vectors]
    if d is None:
        if not vectors:
            raise DimensionMismatch("need d when no generators are given")
        d = len(vectors[0])
    if any(len(v) != d for v in vectors):
        raise DimensionMismatch("generators of different lengths")
    scale_l = common_denominator(x for v in vectors for x in v)
    gens = [[scale_l * int(i == j) for i in range(d)] for j in range(d)]
    gens += [list(to_ints(scale(scale_l, v))) for v in vectors]
    h = hermite_columns(gens, d)
    return tuple(tuple(Fraction(x, scale_l) for x in row) for row in h)
