"""Brute-force reference computations used only by the tests.

Everything here avoids the library's own linear algebra and kernels: cone
membership goes through sympy's rational inverse and enumeration is plain
numpy over bounding boxes.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import sympy


def _inv_rows(gens):
    """Rows of the inverse of the matrix whose columns are ``gens``."""
    m = sympy.Matrix([list(g) for g in gens]).T
    inv = m.inv()
    return [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(m.rows)]


def dual_rays(gens):
    """Primitive integral dual rays via sympy (independent of the library)."""
    out = []
    for row in _inv_rows(gens):
        den = 1
        for x in row:
            den = den * x.denominator // np.gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for x in ints:
            g = int(np.gcd(g, x))
        out.append(tuple(x // g for x in ints))
    return out


def closed_parallelepiped_box(gens):
    d = len(gens)
    lo = [sum(min(0, g[k]) for g in gens) for k in range(d)]
    hi = [sum(max(0, g[k]) for g in gens) for k in range(d)]
    return lo, hi


def grid(lo, hi):
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(lo))


def naive_hilbert(gens):
    """Irreducible nonzero lattice points of the cone, by exhaustive decomposition."""
    d = len(gens)
    normals = np.array(dual_rays(gens), dtype=np.int64)
    lo, hi = closed_parallelepiped_box(gens)
    pts = grid(lo, hi)
    pts = pts[np.all(pts @ normals.T >= 0, axis=1) & np.any(pts != 0, axis=1)]
    # keep points of the closed parallelepiped: lam_i <= 1
    m = sympy.Matrix([list(g) for g in gens]).T
    det = int(m.det())
    adj = np.array((m.adjugate() * (1 if det > 0 else -1)).tolist(), dtype=np.int64)
    pts = pts[np.all(pts @ adj.T <= abs(det), axis=1)]
    members = {tuple(int(x) for x in p) for p in pts}
    out = []
    for p in sorted(members):
        reducible = any(
            tuple(a - b for a, b in zip(p, q)) in members for q in members if q != p
        )
        if not reducible:
            out.append(p)
    return tuple(out)


def delta_gens(gens, w, i):
    return [tuple(-x for x in w) if j == i else tuple(g) for j, g in enumerate(gens)]


def naive_c_min(gens, w, i):
    """Minimise ``(u, -v_i)`` over box lattice points of the delta dual off ``w``-perp."""
    dg = delta_gens(gens, w, i)
    rays = dual_rays(dg)
    lo, hi = closed_parallelepiped_box(rays)
    pts = grid(lo, hi)
    ok = np.all(pts @ np.array(dg, dtype=np.int64).T >= 0, axis=1)
    ok &= (pts @ np.array(w, dtype=np.int64)) != 0
    vals = pts[ok] @ (-np.array(gens[i], dtype=np.int64))
    return Fraction(int(vals.min()))


def naive_crit(gens, w, i, d_prime, c):
    dg = delta_gens(gens, w, i)
    out = []
    for u in itertools.product(range(-d_prime, d_prime + 1), repeat=len(gens)):
        if not any(u) or sum(x * x for x in u) > d_prime**2:
            continue
        if any(sum(a * b for a, b in zip(u, g)) < 0 for g in dg):
            continue
        if sum(-a * b for a, b in zip(u, gens[i])) < c:
            out.append(u)
    return out


def naive_level_one(gens, w, bound):
    out = []
    for u in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        if sum(a * b for a, b in zip(u, w)) != 1:
            continue
        if all(sum(a * b for a, b in zip(u, g)) >= 0 for g in gens):
            out.append(u)
    return out


def rank(vectors):
    if not vectors:
        return 0
    return sympy.Matrix([list(v) for v in vectors]).rank()
