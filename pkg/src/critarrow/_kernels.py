"""Integer enumeration kernels.

Two interchangeable implementations of every kernel live here: a numba
``@njit`` version and a vectorised numpy version.  The public names
(:func:`box_filter`, :func:`parallelepiped`, :func:`dominated`) dispatch to
numba unless ``CRITARROW_NO_NUMBA`` is set to a non-empty value other than
``0`` or numba cannot be imported.  Both paths return identical arrays
(lexicographic order), which the test-suite checks.

All arithmetic is int64.  Callers guard magnitudes with :func:`check_int64`.
"""
from __future__ import annotations

import itertools
import os

import numpy as np

_INT64_SAFE = 2**62


def _numba_requested() -> bool:
    flag = os.environ.get("CRITARROW_NO_NUMBA", "")
    return flag in ("", "0")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by CRITARROW_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAVE_NUMBA else "numpy"


def check_int64(*bounds: int) -> None:
    """Raise OverflowError unless every bound fits comfortably in int64."""
    for b in bounds:
        if abs(int(b)) >= _INT64_SAFE:
            raise OverflowError(f"intermediate bound {b} exceeds int64 headroom")


def _as_i64(a, shape) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int64)
    return arr.reshape(shape)


# --------------------------------------------------------------------------
# box_filter: integer points u in a box satisfying
#     ineq @ u >= ineq_rhs,  eq @ u == eq_rhs,  strict @ u < strict_rhs,
#     |u|^2 <= norm2_max (if norm2_max >= 0),  u != 0 (if exclude_zero)
# --------------------------------------------------------------------------


@njit(cache=True)
def _box_filter_nb(lo, hi, ineq, ineq_rhs, eq, eq_rhs, strict, strict_rhs,
                   norm2_max, exclude_zero):
    d = lo.shape[0]
    cap = 64
    out = np.empty((cap, d), dtype=np.int64)
    n = 0
    for k in range(d):
        if lo[k] > hi[k]:
            return out[:0]
    u = lo.copy()
    while True:
        ok = True
        if exclude_zero:
            nz = False
            for k in range(d):
                if u[k] != 0:
                    nz = True
                    break
            ok = nz
        if ok and norm2_max >= 0:
            s = 0
            for k in range(d):
                s += u[k] * u[k]
            ok = s <= norm2_max
        if ok:
            for r in range(eq.shape[0]):
                s = 0
                for k in range(d):
                    s += eq[r, k] * u[k]
                if s != eq_rhs[r]:
                    ok = False
                    break
        if ok:
            for r in range(ineq.shape[0]):
                s = 0
                for k in range(d):
                    s += ineq[r, k] * u[k]
                if s < ineq_rhs[r]:
                    ok = False
                    break
        if ok:
            for r in range(strict.shape[0]):
                s = 0
                for k in range(d):
                    s += strict[r, k] * u[k]
                if s >= strict_rhs[r]:
                    ok = False
                    break
        if ok:
            if n == cap:
                cap *= 2
                grown = np.empty((cap, d), dtype=np.int64)
                grown[:n] = out[:n]
                out = grown
            out[n] = u
            n += 1
        # odometer, last coordinate fastest (lexicographic order)
        k = d - 1
        while k >= 0:
            if u[k] < hi[k]:
                u[k] += 1
                break
            u[k] = lo[k]
            k -= 1
        if k < 0:
            break
    return out[:n].copy()


_CHUNK = 1 << 18


def _box_filter_np(lo, hi, ineq, ineq_rhs, eq, eq_rhs, strict, strict_rhs,
                   norm2_max, exclude_zero):
    d = lo.shape[0]
    if np.any(lo > hi):
        return np.empty((0, d), dtype=np.int64)
    sizes = (hi - lo + 1).astype(np.int64)
    # split into an outer python loop over leading coordinates and a
    # vectorised block over the trailing ones
    split = d
    block = 1
    while split > 0 and block * int(sizes[split - 1]) <= _CHUNK:
        split -= 1
        block *= int(sizes[split])
    if split == d:
        split, block = d - 1, int(sizes[d - 1])
    tail_axes = [np.arange(lo[k], hi[k] + 1, dtype=np.int64) for k in range(split, d)]
    tail = np.stack(np.meshgrid(*tail_axes, indexing="ij"), axis=-1).reshape(-1, d - split)
    heads = itertools.product(*[range(int(lo[k]), int(hi[k]) + 1) for k in range(split)])
    found = []
    for head in heads:
        pts = np.empty((tail.shape[0], d), dtype=np.int64)
        pts[:, :split] = np.asarray(head, dtype=np.int64)
        pts[:, split:] = tail
        mask = np.ones(pts.shape[0], dtype=bool)
        if exclude_zero:
            mask &= np.any(pts != 0, axis=1)
        if norm2_max >= 0:
            mask &= np.einsum("ij,ij->i", pts, pts) <= norm2_max
        if eq.shape[0]:
            mask &= np.all(pts @ eq.T == eq_rhs, axis=1)
        if ineq.shape[0]:
            mask &= np.all(pts @ ineq.T >= ineq_rhs, axis=1)
        if strict.shape[0]:
            mask &= np.all(pts @ strict.T < strict_rhs, axis=1)
        if mask.any():
            found.append(pts[mask])
    if not found:
        return np.empty((0, d), dtype=np.int64)
    return np.concatenate(found)


def box_filter(lo, hi, ineq=None, ineq_rhs=None, eq=None, eq_rhs=None,
               strict=None, strict_rhs=None, norm2_max=-1, exclude_zero=False,
               backend: str | None = None) -> np.ndarray:
    """All integer points of the box ``[lo, hi]`` passing the linear filters.

    Rows are returned in lexicographic order.  Omitted constraint groups are
    empty; omitted right-hand sides default to zero.
    """
    lo = np.asarray(lo, dtype=np.int64).ravel()
    hi = np.asarray(hi, dtype=np.int64).ravel()
    d = lo.shape[0]

    def rows(m, rhs):
        m = np.zeros((0, d), dtype=np.int64) if m is None or len(m) == 0 else _as_i64(m, (-1, d))
        r = np.zeros(m.shape[0], dtype=np.int64) if rhs is None else _as_i64(rhs, (m.shape[0],))
        return np.ascontiguousarray(m), np.ascontiguousarray(r)

    ineq, ineq_rhs = rows(ineq, ineq_rhs)
    eq, eq_rhs = rows(eq, eq_rhs)
    strict, strict_rhs = rows(strict, strict_rhs)
    reach = int(max(np.abs(lo).max(initial=0), np.abs(hi).max(initial=0)))
    coef = max([int(np.abs(m).max(initial=0)) for m in (ineq, eq, strict)] + [1])
    check_int64(reach * coef * d, reach * reach * d, norm2_max)
    fn = _pick(backend, _box_filter_nb, _box_filter_np)
    return fn(lo, hi, ineq, ineq_rhs, eq, eq_rhs, strict, strict_rhs,
              np.int64(norm2_max), bool(exclude_zero))


# --------------------------------------------------------------------------
# parallelepiped: lattice points of {A @ lam : 0 <= lam < 1}
# --------------------------------------------------------------------------


@njit(cache=True)
def _parallelepiped_nb(a, adj, det, diag):
    d = a.shape[0]
    out_p = np.empty((det, d), dtype=np.int64)
    out_f = np.empty((det, d), dtype=np.int64)
    x = np.zeros(d, dtype=np.int64)
    f = np.zeros(d, dtype=np.int64)
    for n in range(det):
        for r in range(d):
            s = 0
            for k in range(d):
                s += adj[r, k] * x[k]
            s %= det
            f[r] = s
            out_f[n, r] = s
        for r in range(d):
            s = 0
            for k in range(d):
                s += a[r, k] * f[k]
            out_p[n, r] = s // det
        k = d - 1
        while k >= 0:
            if x[k] + 1 < diag[k]:
                x[k] += 1
                break
            x[k] = 0
            k -= 1
    return out_p, out_f


def _parallelepiped_np(a, adj, det, diag):
    axes = [np.arange(int(h), dtype=np.int64) for h in diag]
    reps = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, a.shape[0])
    f = (reps @ adj.T) % det
    p = (f @ a.T) // det
    return p, f


def parallelepiped(a, adj, det, diag, backend: str | None = None):
    """Enumerate the half-open parallelepiped of the columns of ``a``.

    ``adj`` must satisfy ``adj @ a == det * I`` with ``det > 0``; ``diag`` is
    the diagonal of a triangular basis of the column lattice so the box
    ``prod [0, diag_k)`` is a transversal of ``Z^d / a Z^d``.

    Returns ``(points, scaled)`` where ``scaled = det * lam`` is integral.
    """
    a = np.ascontiguousarray(_as_i64(a, (len(diag), len(diag))))
    adj = np.ascontiguousarray(_as_i64(adj, a.shape))
    diag = np.asarray(diag, dtype=np.int64)
    d = a.shape[0]
    check_int64(int(np.abs(adj).max()) * int(diag.max()) * d,
                int(np.abs(a).max()) * int(det) * d)
    fn = _pick(backend, _parallelepiped_nb, _parallelepiped_np)
    return fn(a, adj, np.int64(det), diag)


# --------------------------------------------------------------------------
# dominated: rows j for which another distinct row k has f[k] <= f[j]
# --------------------------------------------------------------------------


@njit(cache=True)
def _dominated_nb(f, targets):
    n, d = f.shape
    res = np.zeros(targets.shape[0], dtype=np.bool_)
    for t in range(targets.shape[0]):
        j = targets[t]
        for k in range(n):
            if k == j:
                continue
            le = True
            eq = True
            for c in range(d):
                if f[k, c] > f[j, c]:
                    le = False
                    break
                if f[k, c] != f[j, c]:
                    eq = False
            if le and not eq:
                res[t] = True
                break
    return res


def _dominated_np(f, targets):
    res = np.zeros(targets.shape[0], dtype=bool)
    for t, j in enumerate(targets):
        le = np.all(f <= f[j], axis=1)
        ne = np.any(f != f[j], axis=1)
        res[t] = bool(np.any(le & ne))
    return res


def dominated(f, targets=None, backend: str | None = None) -> np.ndarray:
    """For each target row ``j``: is some other row componentwise ``<=`` it?"""
    f = np.ascontiguousarray(np.asarray(f, dtype=np.int64))
    if targets is None:
        targets = np.arange(f.shape[0], dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    fn = _pick(backend, _dominated_nb, _dominated_np)
    return fn(f, targets)


def _pick(backend, nb_fn, np_fn):
    if backend is None:
        backend = BACKEND
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return nb_fn
    if backend == "numpy":
        return np_fn
    raise ValueError(f"unknown backend {backend!r}")
