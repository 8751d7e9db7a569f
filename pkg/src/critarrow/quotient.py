"""Abelian quotient singularities ``A^d / G`` as simplicial cones.

``G`` is given by diagonal generators ``1/r (a_1, ..., a_d)``.  The lattice
``N = Z^d + sum Z g`` is put in Hermite form and used as the new standard
lattice, so the positive orthant becomes an ordinary simplicial cone in
``Z^d`` and every routine of :mod:`critarrow.conecore` applies unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from math import gcd
from typing import Sequence

from . import exactlinalg as xl
from .conecore import SimplicialCone, int_vec
from .errors import BadParameters, NotALatticePoint

CASES = ("case1", "case2", "case3", "case4", "case5")
NOT_CANONICAL = "not-canonical"


def parse_cyclic(spec: str) -> list[tuple[int, tuple[int, ...]]]:
    """Parse ``"r:a1,...,ad"``; several generators may be joined with ``+``."""
    out = []
    for part in spec.split("+"):
        try:
            r_s, w_s = part.split(":")
            r = int(r_s)
            weights = tuple(int(x) for x in w_s.split(","))
        except ValueError as exc:
            raise BadParameters(f"bad group generator {part!r}; expected r:a1,...,ad") from exc
        if r <= 0:
            raise BadParameters(f"order must be positive in {part!r}")
        out.append((r, weights))
    if len({len(w) for _, w in out}) != 1:
        raise BadParameters("generators of different dimensions")
    return out


@dataclass(frozen=True)
class QuotientDatum:
    generators: tuple[tuple[int, tuple[int, ...]], ...]
    basis_change: xl.Matrix
    group_order: int
    normalized_cone: SimplicialCone

    @property
    def d(self) -> int:
        return len(self.basis_change)

    @cached_property
    def _inv(self) -> xl.Matrix:
        return xl.inverse(self.basis_change)

    def to_lattice(self, x: Sequence) -> tuple[int, ...]:
        """Original coordinates -> N-coordinates; raises if ``x`` is not in N."""
        y = xl.matvec(self._inv, xl.vec(x))
        if not xl.is_integral(y):
            raise NotALatticePoint(f"{tuple(map(str, x))} is not a lattice point")
        return int_vec(y)

    def from_lattice(self, y: Sequence) -> xl.Vector:
        return xl.matvec(self.basis_change, xl.vec(y))


def build_quotient(generators: Sequence[tuple[int, Sequence[int]]], d: int | None = None) -> QuotientDatum:
    gens = tuple((int(r), tuple(int(a) % int(r) for a in w)) for r, w in generators)
    if d is None:
        if not gens:
            raise BadParameters("need d for the trivial group")
        d = len(gens[0][1])
    if any(len(w) != d for _, w in gens):
        raise BadParameters("generator weights do not match the dimension")
    vectors = [tuple(Fraction(a, r) for a in w) for r, w in gens]
    basis = xl.lattice_basis_from_generators(vectors, d)
    order = 1 / abs(xl.det(basis))
    assert order.denominator == 1
    inv = xl.inverse(basis)
    cols = xl.transpose(inv)
    cone = SimplicialCone.from_vectors([int_vec(c) for c in cols])
    return QuotientDatum(tuple(sorted(gens)), basis, int(order), cone)


def cyclic_hilbert_points(r: int, weights: Sequence[int]) -> list[tuple[Fraction, ...]]:
    """Points ``(1/r)(l a mod r)`` for ``1 <= l < r`` (original coordinates)."""
    return [tuple(Fraction((l * a) % r, r) for a in weights) for l in range(1, r)]


def _matches(r: int, x: int, y: int, z: int) -> str | None:
    if (x + y + z) % r == 0:
        return "case1"
    if x == 1 % r and y != 0 and (y + z) % r == 0 and gcd(y, r) == 1:
        return "case2"
    if x == 1 % r and y == (r - 1) % r and gcd(z, r) > 1:
        return "case3"
    if r % 4 == 0 and r >= 8:
        k = r // 4
        if (x, y, z) == (1, 2 * k + 1, 4 * k - 2):
            return "case4"
    if (r, x, y, z) in ((9, 1, 4, 7), (14, 1, 9, 11)):
        return "case5"
    return None


def classify_cyclic_3d(r: int, a: int, b: int, c: int) -> str:
    """Canonical-type label of ``1/r(a,b,c)``, or ``"not-canonical"``.

    Cases are tried in order; each is tested on every coordinate permutation
    of every generator ``k (a,b,c)`` of the same cyclic group.  The case list
    describes small groups (no element fixing a hyperplane); for other groups
    use :func:`critarrow.conecore.classify_singularity` on the built cone.
    """
    if r <= 0:
        raise BadParameters("r must be positive")
    forms = []
    for k in range(1, r + 1):
        if gcd(k, r) != 1:
            continue
        base = tuple((k * t) % r for t in (a, b, c))
        forms.extend(permutations(base))
    for case in CASES:
        for x, y, z in forms:
            if _matches(r, x, y, z) == case:
                return case
    return NOT_CANONICAL


def terminal_hilbert_basis(p: int, q: int) -> tuple[tuple[int, int, int], ...]:
    """Hilbert basis of ``<(1,0,0), (0,1,0), (1,p,q)>`` from the closed formula."""
    if not (1 <= p < q) or gcd(p, q) != 1:
        raise BadParameters(f"need 1 <= p < q coprime, got p={p}, q={q}")
    out = {(1, 0, 0), (0, 1, 0), (1, p, q)}
    for k in range(1, q):
        m = k * p // q + 1  # least l > 0 with l q > k p
        out.add((1, m, k))
    return tuple(sorted(out))
