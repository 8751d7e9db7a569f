"""Critical arrows and the dimension of the minimal fan cone containing ``w``.

For a simplicial cone ``sigma`` and a lattice point ``w`` the procedure is:

1. dual basis of the generators and the diameter bound ``D'``;
2. for each generator ``v_i`` of the minimal face of ``w``: the cone
   ``delta_i`` (``v_i`` replaced by ``-w``), its dual, the threshold
   ``c_i = min (u, -v_i)`` over dual lattice points off ``w``-perp, and the
   lattice points of the dual of norm ``<= D'`` strictly below the threshold;
3. ``dim tau = dim mu - (dim V - dim(mu-perp  cap V))`` where ``V`` is the
   span of all those vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_DOWN, Decimal, localcontext
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from . import exactlinalg as xl
from .conecore import (
    SimplicialCone,
    _candidates,
    _check_box,
    discrepancy,
    dual_basis,
    dual_generators,
    int_vec,
    is_hilbert_element,
    level_one_box,
    level_one_lattice_points,
    minimal_face,
)
from .errors import (
    IndexNotInMinimalFace,
    InternalInconsistency,
    NonInteriorW,
    NotACritVector,
    UnboundedRegion,
)

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class DeltaCone:
    base: SimplicialCone
    index: int
    w: tuple[int, ...]

    @property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        neg_w = tuple(-x for x in self.w)
        return tuple(neg_w if j == self.index else g for j, g in enumerate(self.base.generators))

    @property
    def v_i(self) -> tuple[int, ...]:
        return self.base.generators[self.index]


@dataclass(frozen=True)
class CritProfile:
    index: int
    c_min: Fraction
    vectors: tuple[tuple[int, ...], ...]
    d_prime: int


@dataclass(frozen=True)
class ArrowRecord:
    head: xl.Vector
    tail: xl.Vector
    vector: tuple[int, ...]
    level: Fraction
    tail_ray_index: int


class VolumeResult(NamedTuple):
    vol: Fraction
    H: str
    guarantee: bool


@dataclass
class AnalysisReport:
    generators: tuple[tuple[int, ...], ...]
    w: tuple[int, ...]
    mu_indices: tuple[int, ...]
    dim_mu: int
    d_prime: int
    profiles: list[CritProfile]
    dim_Vw: int
    dim_mu_perp_cap_Vw: int
    dim_tau: int
    center_dim: int
    discrepancy: Fraction
    is_essential_candidate: bool
    level_one_found: str
    polytope_witnesses: dict[int, tuple[int, ...] | None] = field(default_factory=dict)
    volume: VolumeResult | None = None

    @property
    def crit_vectors(self) -> list[tuple[int, ...]]:
        return sorted({u for p in self.profiles for u in p.vectors})

    @property
    def crit_nonempty(self) -> bool:
        return any(p.vectors for p in self.profiles)

    def to_dict(self) -> dict:
        """JSON-ready view: 1-based indices, rationals as strings."""
        out = {
            "generators": [list(g) for g in self.generators],
            "w": list(self.w),
            "mu_indices": [i + 1 for i in self.mu_indices],
            "dim_mu": self.dim_mu,
            "d_prime": self.d_prime,
            "c_min": {str(p.index + 1): str(p.c_min) for p in self.profiles},
            "crit": {str(p.index + 1): [list(u) for u in p.vectors] for p in self.profiles
                     if p.vectors},
            "dim_Vw": self.dim_Vw,
            "dim_mu_perp_cap_Vw": self.dim_mu_perp_cap_Vw,
            "dim_tau": self.dim_tau,
            "center_dim": self.center_dim,
            "discrepancy": str(self.discrepancy),
            "is_essential_candidate": self.is_essential_candidate,
            "level_one_found": self.level_one_found,
            "polytope_witnesses": {
                str(i + 1): (list(u) if u is not None else None)
                for i, u in sorted(self.polytope_witnesses.items())
            },
        }
        if self.volume is not None:
            out["volume"] = {
                "vol": str(self.volume.vol),
                "H": self.volume.H,
                "guarantee": self.volume.guarantee,
            }
        return out


# -- delta cones --------------------------------------------------------------


def delta_cone(cone: SimplicialCone, w: Sequence, i: int) -> DeltaCone:
    w = int_vec(w)
    face = minimal_face(cone, w)
    if i not in face.indices:
        raise IndexNotInMinimalFace(f"generator {i} is not in the minimal face of {w}")
    dc = DeltaCone(cone, i, w)
    if xl.det(xl.from_columns(dc.generators)) == 0:
        raise InternalInconsistency("delta cone is degenerate")
    return dc


def rescaled_dual_basis(dc: DeltaCone) -> list[xl.Vector]:
    """``u_j``: dual basis vectors scaled to ``(u_j, w) = 1`` unless orthogonal to ``w``."""
    out = []
    for v in dual_basis(dc.base):
        t = xl.dot(v, dc.w)
        out.append(xl.scale(1 / t, v) if t != 0 else v)
    return out


def _closed_form_delta_dual(dc: DeltaCone) -> list[xl.Vector]:
    u = rescaled_dual_basis(dc)
    i = dc.index
    out = []
    for j, uj in enumerate(u):
        if j == i:
            out.append(xl.scale(-1, uj))
        elif xl.dot(uj, dc.w) == 0:
            out.append(uj)
        else:
            out.append(xl.sub(uj, u[i]))
    return out


def delta_dual_generators(dc: DeltaCone, check: bool = True) -> list[tuple[int, ...]]:
    """Primitive ray generators of the dual of ``delta_i``, sorted.

    Computed from the rescaled dual basis; with ``check`` the result is
    compared against a direct matrix inversion.
    """
    closed = sorted(int_vec(xl.primitive_multiple(v)) for v in _closed_form_delta_dual(dc))
    if check:
        inv = xl.inverse(xl.from_columns(dc.generators))
        generic = sorted(int_vec(xl.primitive_multiple(row)) for row in inv)
        if closed != generic:
            raise InternalInconsistency(f"delta dual mismatch: {closed} vs {generic}")
    return closed


# -- thresholds and critical vectors -------------------------------------------


def diameter_bound(cone: SimplicialCone) -> int:
    """Ceiling of the diameter of the parallelotope of primitive dual generators."""
    gens = dual_generators(cone)
    best = 0
    for signs in product((-1, 0, 1), repeat=cone.d):
        v = [sum(s * g[k] for s, g in zip(signs, gens)) for k in range(cone.d)]
        best = max(best, sum(x * x for x in v))
    r = math.isqrt(best)
    return r if r * r == best else r + 1


def c_min(dc: DeltaCone) -> Fraction:
    """Minimum of ``(u, -v_i)`` over dual lattice points with ``(u, w) != 0``.

    The minimum is taken over the Hilbert-basis candidates of the dual cone
    (generators and parallelepiped points), and one minimiser is certified
    irreducible, i.e. a genuine Hilbert-basis element.
    """
    dual = SimplicialCone(tuple(delta_dual_generators(dc)))
    pts, scaled = _candidates(dual)
    vals = pts @ (-np.asarray(dc.v_i, dtype=np.int64))
    off = (pts @ np.asarray(dc.w, dtype=np.int64)) != 0
    best = int(vals[off].min())
    ties = np.nonzero(off & (vals == best))[0]
    if _kernels.dominated(scaled, ties).all():
        raise InternalInconsistency("no irreducible minimiser for the threshold")
    if best <= 0:
        raise InternalInconsistency(f"non-positive threshold {best}")
    return Fraction(best)


def _crit_box(dc: DeltaCone, d_prime: int, c: Fraction) -> tuple[list[int], list[int]]:
    """Sweep box for the critical vectors of ``dc``.

    Starts from ``[-d_prime, d_prime]^d``.  When ``-v_i`` is interior to the
    delta cone, ``{u in dual : (u, -v_i) <= c}`` is a simplex with vertices
    ``0`` and ``c / beta_k * r_k``, and the box is cut down to its hull.
    """
    d = dc.base.d
    lo, hi = [-d_prime] * d, [d_prime] * d
    rows = xl.inverse(xl.from_columns(dc.generators))
    beta = [xl.dot(r, [-x for x in dc.v_i]) for r in rows]
    if all(b > 0 for b in beta):
        verts = [xl.scale(c / b, r) for b, r in zip(beta, rows)]
        for k in range(d):
            lo[k] = max(lo[k], math.floor(min(0, *(v[k] for v in verts))))
            hi[k] = min(hi[k], math.ceil(max(0, *(v[k] for v in verts))))
    return lo, hi


def crit_vectors(dc: DeltaCone, d_prime: int, threshold: Fraction | None = None,
                 backend: str | None = None) -> CritProfile:
    """Lattice points of the dual of ``delta_i`` with norm ``<= d_prime`` below the threshold."""
    c = c_min(dc) if threshold is None else Fraction(threshold)
    lo, hi = _crit_box(dc, d_prime, c)
    _check_box(lo, hi)
    strict = [c.denominator * -x for x in dc.v_i]
    pts = _kernels.box_filter(
        lo, hi,
        ineq=dc.generators,
        strict=[strict], strict_rhs=[c.numerator],
        norm2_max=d_prime * d_prime,
        exclude_zero=True,
        backend=backend,
    )
    vectors = tuple(tuple(int(x) for x in p) for p in pts)
    return CritProfile(dc.index, c, vectors, d_prime)


# -- arrows -------------------------------------------------------------------


def reconstruct_arrow(dc: DeltaCone, u: Sequence) -> ArrowRecord:
    """The arrow ``(u + c u_i, c u_i)`` with ``c = (u, -v_i) / (u_i, v_i)``."""
    u = int_vec(u)
    if not any(u) or xl.dot(u, dc.w) != 0:
        raise NotACritVector(f"{u} is zero or not orthogonal to w")
    if any(xl.dot(u, g) < 0 for g in dc.generators):
        raise NotACritVector(f"{u} is not in the dual of the delta cone")
    ui = rescaled_dual_basis(dc)[dc.index]
    level = xl.dot(u, [-x for x in dc.v_i]) / xl.dot(ui, dc.v_i)
    tail = xl.scale(level, ui)
    head = xl.add(u, tail)
    rec = ArrowRecord(head, tail, u, level, dc.index)
    base = dc.base
    ok = (
        level > 0
        and base.in_dual(head)
        and base.in_dual(tail)
        and xl.dot(head, dc.w) == level
        and xl.dot(tail, dc.w) == level
    )
    if not ok:
        raise NotACritVector(f"{u} does not give an arrow on a common positive level")
    return rec


def validate_arrow(cone: SimplicialCone, w: Sequence, arrow: ArrowRecord) -> bool:
    """Check that ``arrow`` lies on one level with no tail-integral point below it."""
    w = int_vec(w)
    if len(minimal_face(cone, w).indices) != cone.d:
        raise NonInteriorW("validate_arrow needs w in the interior")
    head, tail, level = arrow.head, arrow.tail, Fraction(arrow.level)
    vec = xl.sub(head, tail)
    if not any(vec) or not xl.is_integral(vec) or tuple(vec) != tuple(arrow.vector):
        return False
    if level <= 0 or xl.dot(head, w) != level or xl.dot(tail, w) != level:
        return False
    if not (cone.in_dual(head) and cone.in_dual(tail)):
        return False
    # integer shifts m with tail + m in the dual cone and (m, w) < 0
    lam = minimal_face(cone, w).coords
    verts = [xl.scale(level / x, v) for x, v in zip(lam, dual_basis(cone))]
    verts.append(tuple(Fraction(0) for _ in range(cone.d)))
    lo = [math.ceil(min(v[k] for v in verts) - tail[k]) for k in range(cone.d)]
    hi = [math.floor(max(v[k] for v in verts) - tail[k]) for k in range(cone.d)]
    q = xl.common_denominator(tail)
    qtail = xl.to_ints(xl.scale(q, tail))
    rows = [[q * x for x in g] for g in cone.generators]
    rhs = [-sum(a * b for a, b in zip(qtail, g)) for g in cone.generators]
    _check_box(lo, hi)
    below = _kernels.box_filter(lo, hi, ineq=rows, ineq_rhs=rhs, strict=[w], strict_rhs=[0])
    return below.shape[0] == 0


# -- sufficient conditions ----------------------------------------------------


def polytope_condition(cone: SimplicialCone, w: Sequence, i: int,
                       box_bound: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically smallest ``u`` with ``(u,w)=1``, ``(u,v_i)>0``, ``(u,v_j)>=0``.

    Complete for interior ``w``; otherwise truncated to ``box_bound``.
    """
    w = int_vec(w)
    face = minimal_face(cone, w)
    if i not in face.indices:
        raise IndexNotInMinimalFace(f"generator {i} is not in the minimal face of {w}")
    if len(face.indices) == cone.d:
        lo, hi = level_one_box(cone, w)
    elif box_bound is None:
        raise UnboundedRegion("w is not interior; pass box_bound")
    else:
        lo, hi = [-box_bound] * cone.d, [box_bound] * cone.d
    _check_box(lo, hi)
    vi = cone.generators[i]
    pts = _kernels.box_filter(lo, hi, ineq=cone.generators, eq=[w], eq_rhs=[1],
                              strict=[[-x for x in vi]], strict_rhs=[0])
    return tuple(int(x) for x in pts[0]) if pts.shape[0] else None


def H_value(d: int, group_order: int) -> str:
    """``d / (|G| (d-1)!)^(1/d)`` truncated to six decimals (display only)."""
    with localcontext() as ctx:
        ctx.prec = 50
        base = Decimal(group_order * math.factorial(d - 1))
        h = Decimal(d) / (base.ln() / d).exp()
        return str(h.quantize(Decimal("0.000001"), rounding=ROUND_DOWN))


def volume_criterion(l: int, a: Sequence[int], group_order: int) -> VolumeResult:
    """Normalised volume of the level-one simplex for ``w = (1/l)(a_1..a_d)``."""
    d = len(a)
    vol = Fraction(l**d, math.factorial(d - 1) * math.prod(a) * group_order)
    return VolumeResult(vol, H_value(d, group_order), vol > 1)


# -- the analysis -------------------------------------------------------------


def dim_tau(cone: SimplicialCone, w: Sequence, d_prime: int | None = None,
            level_one_bound: int | None = None,
            volume: VolumeResult | None = None,
            backend: str | None = None) -> AnalysisReport:
    """Full per-``w`` analysis; ``dim_tau`` is the headline number."""
    w = int_vec(w)
    face = minimal_face(cone, w)
    mu = face.indices
    interior = len(mu) == cone.d
    if d_prime is None:
        d_prime = diameter_bound(cone)

    profiles = []
    for i in mu:
        dc = delta_cone(cone, w, i)
        profiles.append(crit_vectors(dc, d_prime, backend=backend))
    vw = sorted({u for p in profiles for u in p.vectors})
    basis = dual_basis(cone)
    mu_perp = [basis[j] for j in range(cone.d) if j not in mu]
    dim_vw, _, inter = xl.span_dims(vw, mu_perp)
    dt = len(mu) - (dim_vw - inter)

    bound = level_one_bound if level_one_bound is not None else d_prime
    level_one = level_one_lattice_points(cone, w, None if interior else bound)
    if level_one:
        found = YES
    else:
        found = NO if interior else UNKNOWN
    witnesses = {i: polytope_condition(cone, w, i, None if interior else bound) for i in mu}

    return AnalysisReport(
        generators=cone.generators,
        w=w,
        mu_indices=mu,
        dim_mu=len(mu),
        d_prime=d_prime,
        profiles=profiles,
        dim_Vw=dim_vw,
        dim_mu_perp_cap_Vw=inter,
        dim_tau=dt,
        center_dim=cone.d - dt,
        discrepancy=discrepancy(cone, w),
        is_essential_candidate=(w not in cone.generators) and is_hilbert_element(cone, w),
        level_one_found=found,
        polytope_witnesses=witnesses,
        volume=volume,
    )
