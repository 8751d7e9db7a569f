"""Simplicial cones over the standard lattice.

A cone is stored by its primitive integral generators; every derived object
(dual basis, parallelepiped, Hilbert basis) is computed exactly.  Generator
indices are 0-based throughout the library.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from . import exactlinalg as xl
from .config import limits
from .errors import (
    DimensionMismatch,
    NotInCone,
    ResourceLimit,
    SingularMatrix,
    UnboundedRegion,
    ZeroVector,
)

SMOOTH = "smooth"
TERMINAL = "terminal"
CANONICAL = "canonical"
LOG_TERMINAL = "log-terminal-only"


def int_vec(v: Sequence) -> tuple[int, ...]:
    return tuple(int(x) for x in xl.to_ints(v))


@dataclass(frozen=True)
class SimplicialCone:
    """Cone spanned by ``d`` linearly independent primitive vectors of ``Z^d``."""

    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(int_vec(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        d = len(gens)
        if d == 0 or any(len(g) != d for g in gens):
            raise DimensionMismatch("need d generators in Z^d")
        for g in gens:
            if xl.primitive(g) != g:
                raise ValueError(f"generator {g} is not primitive")
        if self.det == 0:
            raise SingularMatrix("generators are linearly dependent")

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence]) -> "SimplicialCone":
        """Build from arbitrary nonzero integral vectors, primitivizing each."""
        return cls(tuple(int_vec(xl.primitive(v)) for v in vectors))

    @property
    def d(self) -> int:
        return len(self.generators)

    @cached_property
    def matrix(self) -> xl.Matrix:
        """Generators as columns."""
        return xl.from_columns(self.generators)

    @cached_property
    def det(self) -> int:
        return int(xl.det(self.matrix))

    @cached_property
    def inverse(self) -> xl.Matrix:
        return xl.inverse(self.matrix)

    @cached_property
    def index(self) -> int:
        """|det|, the number of lattice points in the half-open parallelepiped."""
        return abs(self.det)

    def barycentric(self, w: Sequence) -> xl.Vector:
        if len(w) != self.d:
            raise DimensionMismatch(f"expected a vector of length {self.d}")
        return xl.matvec(self.inverse, w)

    def contains(self, w: Sequence) -> bool:
        return all(x >= 0 for x in self.barycentric(w))

    def in_dual(self, u: Sequence) -> bool:
        return all(xl.dot(u, g) >= 0 for g in self.generators)

    def __str__(self):
        return ";".join(",".join(map(str, g)) for g in self.generators)


class FaceSelector(NamedTuple):
    indices: tuple[int, ...]
    coords: tuple[Fraction, ...]


def dual_basis(cone: SimplicialCone) -> list[xl.Vector]:
    """Rational vectors ``v_i*`` with ``(v_i*, v_j) = delta_ij``."""
    return [tuple(row) for row in cone.inverse]


def dual_generators(cone: SimplicialCone) -> list[tuple[int, ...]]:
    """Primitive integral ray generators of the dual cone, in generator order."""
    return [int_vec(xl.primitive_multiple(v)) for v in dual_basis(cone)]


def dual_cone(cone: SimplicialCone) -> SimplicialCone:
    return SimplicialCone(tuple(dual_generators(cone)))


def minimal_face(cone: SimplicialCone, w: Sequence) -> FaceSelector:
    if not any(w):
        raise ZeroVector("w must be nonzero")
    lam = cone.barycentric(w)
    if any(x < 0 for x in lam):
        raise NotInCone(f"{tuple(w)} is not in the cone")
    return FaceSelector(tuple(i for i, x in enumerate(lam) if x > 0), lam)


def is_interior(cone: SimplicialCone, w: Sequence) -> bool:
    return len(minimal_face(cone, w).indices) == cone.d


# -- half-open parallelepiped -------------------------------------------------


def _signed_adjugate(cone: SimplicialCone) -> np.ndarray:
    """Integer matrix ``adj`` with ``adj @ A = |det| * I``."""
    n = cone.index
    return np.array([[int(x * n) for x in row] for row in cone.inverse], dtype=object)


def parallelepiped_points(cone: SimplicialCone, backend: str | None = None):
    """Lattice points of ``{sum lam_i v_i : 0 <= lam_i < 1}``.

    Returns ``(points, scaled)`` as int64 arrays, ``scaled = |det| * lam``;
    the first row is the origin.
    """
    n = cone.index
    cap = limits().max_parallelepiped
    if n > cap:
        raise ResourceLimit(f"parallelepiped has {n} points, cap is {cap}")
    h = xl.hermite_columns(cone.generators, cone.d)
    diag = [h[k][k] for k in range(cone.d)]
    assert prod(diag) == n
    a = np.array(xl.to_ints(x for row in cone.matrix for x in row), dtype=object)
    return _kernels.parallelepiped(
        a.reshape(cone.d, cone.d).astype(np.int64),
        _signed_adjugate(cone).astype(np.int64),
        n,
        diag,
        backend=backend,
    )


def _candidates(cone: SimplicialCone, backend: str | None = None):
    """Generators followed by the nonzero parallelepiped points."""
    pts, scaled = parallelepiped_points(cone, backend=backend)
    gens = np.array(cone.generators, dtype=np.int64)
    gscaled = np.eye(cone.d, dtype=np.int64) * cone.index
    return np.vstack([gens, pts[1:]]), np.vstack([gscaled, scaled[1:]])


def hilbert_basis(cone: SimplicialCone, backend: str | None = None) -> tuple[tuple[int, ...], ...]:
    """Minimal generating set of the monoid of lattice points of ``cone``.

    Candidates are the generators and the nonzero points of the half-open
    parallelepiped; a candidate is dropped if another candidate is below it in
    the cone order.  Sorted lexicographically.
    """
    pts, scaled = _candidates(cone, backend)
    red = _kernels.dominated(scaled, backend=backend)
    return tuple(sorted(tuple(int(x) for x in p) for p in pts[~red]))


def is_hilbert_element(cone: SimplicialCone, w: Sequence) -> bool:
    """Membership of an integral ``w`` in the Hilbert basis, without building it."""
    lam = minimal_face(cone, w).coords
    if any(x >= 1 for x in lam):
        return tuple(int_vec(w)) in cone.generators
    pts, scaled = _candidates(cone)
    target = np.array([int(x * cone.index) for x in lam], dtype=np.int64)
    hit = np.nonzero(np.all(scaled == target, axis=1))[0]
    return not bool(_kernels.dominated(scaled, hit)[0])


def essential_candidates(cone: SimplicialCone) -> list[tuple[int, ...]]:
    """Hilbert-basis elements that are not generators of the cone."""
    gens = set(cone.generators)
    return [h for h in hilbert_basis(cone) if h not in gens]


def discrepancy(cone: SimplicialCone, w: Sequence) -> Fraction:
    """``a(w) = sum(lam) - 1`` for ``w = sum lam_i v_i``."""
    return sum(minimal_face(cone, w).coords, Fraction(0)) - 1


def classify_singularity(cone: SimplicialCone) -> str:
    pts, scaled = parallelepiped_points(cone)
    if pts.shape[0] == 1:
        return SMOOTH
    sums = scaled[1:].sum(axis=1)
    n = cone.index
    if np.all(sums > n):
        return TERMINAL
    if np.all(sums >= n):
        return CANONICAL
    return LOG_TERMINAL


# -- level-one lattice points -------------------------------------------------


def level_one_box(cone: SimplicialCone, w: Sequence) -> tuple[list[int], list[int]]:
    """Integer bounding box of ``{u in dual cone : (u, w) = 1}`` for interior ``w``."""
    lam = minimal_face(cone, w).coords
    verts = [xl.scale(1 / x, v) for x, v in zip(lam, dual_basis(cone))]
    lo = [min(v[k] for v in verts).__floor__() for k in range(cone.d)]
    hi = [max(v[k] for v in verts).__ceil__() for k in range(cone.d)]
    return lo, hi


def _check_box(lo, hi):
    size = prod(max(0, h - l + 1) for l, h in zip(lo, hi))
    cap = limits().max_box
    if size > cap:
        raise ResourceLimit(f"box sweep of {size} points exceeds cap {cap}")


def level_one_lattice_points(
    cone: SimplicialCone, w: Sequence, box_bound: int | None = None
) -> list[tuple[int, ...]]:
    """Integral ``u`` in the dual cone with ``(u, w) = 1``.

    Complete when ``w`` is interior.  Otherwise the search is truncated to
    ``[-box_bound, box_bound]^d`` and an empty answer means "not found".
    """
    w = int_vec(w)
    if is_interior(cone, w):
        lo, hi = level_one_box(cone, w)
    elif box_bound is None:
        raise UnboundedRegion("w is not interior; pass box_bound")
    else:
        lo, hi = [-box_bound] * cone.d, [box_bound] * cone.d
    _check_box(lo, hi)
    pts = _kernels.box_filter(lo, hi, ineq=cone.generators, eq=[w], eq_rhs=[1])
    return [tuple(int(x) for x in p) for p in pts]
