"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.  Every
check is exact except the wall-clock budgets, which are stated per test.
"""
import itertools
import json
import random
import time
from collections import Counter
from fractions import Fraction as F
from importlib import resources
from math import gcd

import pytest

import oracles
from conftest import apply, random_cone, random_unimodular
from critarrow import exactlinalg as xl
from critarrow.cli import ScanSpec, dumps, plan_tasks, run_scan, summarize
from critarrow.conecore import (
    SimplicialCone,
    classify_singularity,
    discrepancy,
    dual_generators,
    essential_candidates,
    hilbert_basis,
    is_interior,
    minimal_face,
)
from critarrow.critarrows import (
    NO,
    YES,
    H_value,
    c_min,
    crit_vectors,
    delta_cone,
    delta_dual_generators,
    diameter_bound,
    dim_tau,
    volume_criterion,
)
from critarrow.quotient import build_quotient, classify_cyclic_3d, terminal_hilbert_basis

TERMINAL = ((1, 0, 0), (0, 1, 0), (1, 1, 2))
HALF = F(1, 2)


def verdict(n, ok, detail, elapsed, budget):
    within = elapsed <= budget
    status = "PASS" if ok and within else "FAIL"
    print(f"\n[acceptance] criterion {n}: {status} ({elapsed:.2f}s / {budget:g}s) {detail}")
    assert ok, detail
    assert within, f"over budget: {elapsed:.1f}s > {budget}s"


def test_criterion_1_worked_example():
    t0 = time.perf_counter()
    c = SimplicialCone(TERMINAL)
    checks = {
        "dual": dual_generators(c) == [(2, 0, -1), (0, 2, -1), (0, 0, 1)],
        "d_prime": diameter_bound(c) == 5,
    }
    r = dim_tau(c, (1, 1, 1))
    got = {p.index: sorted(p.vectors) for p in r.profiles}
    checks["crit_111"] = got == {
        0: [(-1, 0, 1), (-1, 1, 0)],
        1: [(0, -1, 1), (1, -1, 0)],
        2: [(0, 1, -1), (1, 0, -1)],
    }
    checks["dims_111"] = (r.dim_Vw, r.dim_tau) == (2, 1)
    r = dim_tau(c, (1, 2, 2))
    got = {p.index: sorted(p.vectors) for p in r.profiles}
    checks["crit_122"] = got == {1: [(2, 0, -1), (4, 0, -2)], 2: [(2, 0, -1), (4, 0, -2)]}
    checks["dims_122"] = r.dim_tau == 2
    bad = [k for k, v in checks.items() if not v]
    verdict(1, not bad, f"failed: {bad}" if bad else "all exact", time.perf_counter() - t0, 1)


def test_criterion_2_four_dim_table():
    t0 = time.perf_counter()
    rows = resources.files("critarrow.data").joinpath("dim4_table.jsonl").read_text().splitlines()
    expected = ["5/4", "5/4", "9/5", "19/11", "21/18", "10/7", "6/7", "3/4"]
    bad = []
    for line, want in zip(rows, expected):
        obj = json.loads(line)
        c = SimplicialCone(tuple(map(tuple, obj["generators"])))
        r = dim_tau(c, tuple(obj["w"]))
        if r.dim_tau != 2 or r.discrepancy != F(want):
            bad.append((obj["generators"], r.dim_tau, str(r.discrepancy)))
    ok = not bad and len(rows) == 8
    verdict(2, ok, f"8 cones, mismatches {bad}", time.perf_counter() - t0, 600)


def test_criterion_3_terminal_forms():
    t0 = time.perf_counter()
    bad, n = [], 0
    for q in range(2, 13):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            cone = SimplicialCone(((1, 0, 0), (0, 1, 0), (1, p, q)))
            hb = terminal_hilbert_basis(p, q)
            if hb != hilbert_basis(cone):
                bad.append(("basis", p, q))
            for w in hb:
                if w in cone.generators:
                    continue
                n += 1
                if dim_tau(cone, w).dim_tau != 1:
                    bad.append(("dim", p, q, w))
    verdict(3, not bad, f"{n} elements checked, failures {bad}", time.perf_counter() - t0, 300)


def _case_reps(r_max=12):
    reps = {}
    for r in range(2, r_max + 1):
        for a, b, c in itertools.combinations_with_replacement(range(1, r), 3):
            if any(gcd(gcd(x, y), r) != 1 for x, y in ((a, b), (a, c), (b, c))):
                continue
            label = classify_cyclic_3d(r, a, b, c)
            if label in ("case2", "case3", "case4"):
                reps.setdefault((label, r), (a, b, c))
    return reps


def test_criterion_4_canonical_threefolds():
    t0 = time.perf_counter()
    qd = build_quotient([(14, (1, 9, 11))])
    w = qd.to_lattice((HALF, HALF, HALF))
    r = dim_tau(qd.normalized_cone, w)
    ok14 = r.level_one_found == NO and r.dim_Vw >= 2 and r.dim_tau == 1
    groups = [(9, (1, 4, 7))] + [(rr, abc) for (_, rr), abc in sorted(_case_reps().items())]
    labels = sorted({lab for lab, _ in _case_reps()})
    bad, n = [], 0
    for rr, abc in groups:
        datum = build_quotient([(rr, abc)])
        cone = datum.normalized_cone
        for w in essential_candidates(cone):
            n += 1
            rep = dim_tau(cone, w)
            if not (rep.level_one_found == YES or rep.crit_nonempty):
                bad.append((rr, abc, w))
    ok = ok14 and not bad and labels == ["case2", "case3", "case4"]
    detail = (f"1/14(1,9,11): level_one={r.level_one_found} dim_Vw={r.dim_Vw} "
              f"dim_tau={r.dim_tau}; {len(groups)} groups {labels}+case5, {n} w, failures {bad}")
    verdict(4, ok, detail, time.perf_counter() - t0, 300)


def test_criterion_5_constants():
    t0 = time.perf_counter()
    h = {k: H_value(*k) for k in ((3, 13), (4, 42), (5, 130))}
    vol = volume_criterion(14, (7, 7, 7), 14).vol
    ok = (h[(3, 13)].startswith("1.0126") and h[(4, 42)].startswith("1.00394")
          and h[(5, 130)].startswith("1.00032") and vol == F(2, 7))
    verdict(5, ok, f"H={h} vol(1/14(7,7,7))={vol}", time.perf_counter() - t0, 1)


def _random_quotients(rnd, n):
    out = []
    while len(out) < n:
        d = rnd.choice((3, 4))
        r = rnd.randint(2, 20)
        weights = tuple(rnd.randrange(r) for _ in range(d))
        datum = build_quotient([(r, weights)])
        if datum.group_order == 1:
            continue
        cone = datum.normalized_cone
        inner = [w for w in essential_candidates(cone) if is_interior(cone, w)]
        if inner:
            out.append((datum, rnd.choice(inner)))
    return out


def _sole_witness_on_tail_ray(cone, w, i):
    """True when the only witness at ``i`` is ``v_i* / lam_i`` (it pairs to 0 with other generators)."""
    from critarrow._kernels import box_filter
    from critarrow.conecore import dual_basis, level_one_box

    lo, hi = level_one_box(cone, w)
    vi = cone.generators[i]
    pts = box_filter(lo, hi, ineq=cone.generators, eq=[w], eq_rhs=[1],
                     strict=[[-x for x in vi]], strict_rhs=[0])
    lam = minimal_face(cone, w).coords[i]
    ray = tuple(x / lam for x in dual_basis(cone)[i])
    return all(tuple(p) == ray for p in pts)


def test_criterion_6_sufficient_conditions():
    t0 = time.perf_counter()
    rnd = random.Random(20240601)
    cases = _random_quotients(rnd, 200)
    viol, stats = [], {"vol>1": 0, "level_one": 0, "witness": 0}
    for datum, w in cases:
        x = datum.from_lattice(w)
        l = xl.common_denominator(x)
        vol = volume_criterion(l, [int(t * l) for t in x], datum.group_order)
        r = dim_tau(datum.normalized_cone, w, volume=vol)
        tag = (datum.generators, w)
        if vol.guarantee:
            stats["vol>1"] += 1
            if not r.crit_nonempty:
                viol.append(("vol", tag))
        if r.level_one_found == YES:
            stats["level_one"] += 1
            if not r.crit_nonempty:
                viol.append(("level_one", tag))
        for i, wit in r.polytope_witnesses.items():
            if wit is not None:
                stats["witness"] += 1
                if not next(p for p in r.profiles if p.index == i).vectors:
                    sole = _sole_witness_on_tail_ray(datum.normalized_cone, w, i)
                    viol.append(("witness", i, "sole witness on tail ray" if sole else "other", tag))
    kinds = dict(Counter(v[0] if v[0] != "witness" else f"witness/{v[2]}" for v in viol))
    verdict(6, not viol and len(cases) >= 200,
            f"{len(cases)} quotients, premises hit {stats}, violations {len(viol)} {kinds}; "
            f"first {viol[:2]}",
            time.perf_counter() - t0, 900)


def test_criterion_7_oracles():
    t0 = time.perf_counter()
    rnd = random.Random(77)
    triples = 0
    bad = []
    while triples < 500:
        d = rnd.choice((2, 3, 3))
        c = random_cone(rnd, d, max_det=20)
        pool = hilbert_basis(c)
        w = rnd.choice(pool)
        for i in minimal_face(c, w).indices:
            dc = delta_cone(c, w, i)
            closed = delta_dual_generators(dc, check=False)
            if set(closed) != set(oracles.dual_rays(dc.generators)):
                bad.append(("dual", c.generators, w, i))
            if c_min(dc) != oracles.naive_c_min(c.generators, w, i):
                bad.append(("c_min", c.generators, w, i))
            triples += 1
    cones = 0
    for d in (2, 3):
        for _ in range(40):
            c = random_cone(rnd, d, entry=5 if d == 2 else 3, max_det=50)
            cones += 1
            if set(hilbert_basis(c)) != set(oracles.naive_hilbert(c.generators)):
                bad.append(("hilbert", c.generators))
    verdict(7, not bad, f"{triples} (cone,w,i) triples, {cones} Hilbert bases, failures {bad[:5]}",
            time.perf_counter() - t0, 600)


def _invariance_cones():
    qd14 = build_quotient([(14, (1, 9, 11))])
    qd9 = build_quotient([(9, (1, 4, 7))])
    out = [
        (SimplicialCone(TERMINAL), (1, 1, 1)),
        (SimplicialCone(TERMINAL), (1, 2, 2)),
        (SimplicialCone(((1, 0, 0), (0, 1, 0), (1, 2, 5))), (1, 1, 2)),
        (qd14.normalized_cone, qd14.to_lattice((HALF,) * 3)),
    ]
    for w in essential_candidates(qd9.normalized_cone)[:2]:
        out.append((qd9.normalized_cone, w))
    return out


def test_criterion_8_invariance():
    t0 = time.perf_counter()
    rnd = random.Random(8)
    bad, runs = [], 0
    for cone, w in _invariance_cones():
        base = dim_tau(cone, w)
        kind = classify_singularity(cone)
        doubled = dim_tau(cone, w, d_prime=2 * base.d_prime)
        if doubled.dim_Vw != base.dim_Vw:
            bad.append(("double", cone.generators, w))
        for _ in range(50):
            m = random_unimodular(rnd, cone.d)
            c2 = SimplicialCone(tuple(apply(m, g) for g in cone.generators))
            w2 = apply(m, w)
            r2 = dim_tau(c2, w2)
            runs += 1
            if (r2.dim_tau, r2.discrepancy) != (base.dim_tau, base.discrepancy) \
                    or classify_singularity(c2) != kind:
                bad.append(("unimodular", cone.generators, w, m))
    tasks, counts = plan_tasks(ScanSpec(lo=0, hi=2))
    one = "".join(dumps(x) + "\n" for x in run_scan(tasks, jobs=1))
    four = "".join(dumps(x) + "\n" for x in run_scan(tasks, jobs=4))
    if one != four:
        bad.append(("jobs", None))
    verdict(8, not bad, f"{runs} transformed analyses, jobs 1 vs 4 identical={one == four}, "
            f"failures {bad[:5]}", time.perf_counter() - t0, 600)


def test_criterion_9_reduced_scan():
    t0 = time.perf_counter()
    tasks, counts = plan_tasks(ScanSpec(lo=0, hi=2))
    records = run_scan(tasks, jobs=1)
    s = summarize(records, counts)
    ok = s["errors"] == 0 and s["records"] > 0 and s["dim_tau_counts"] == {"1": s["records"]}
    verdict(9, ok, json.dumps(s, sort_keys=True), time.perf_counter() - t0, 600)


@pytest.mark.slow
def test_full_range_scan():
    """The wider 0..3 family; not a gating criterion but cheap here."""
    t0 = time.perf_counter()
    tasks, counts = plan_tasks(ScanSpec(lo=0, hi=3))
    s = summarize(run_scan(tasks, jobs=1), counts)
    ok = s["errors"] == 0 and s["dim_tau_counts"] == {"1": s["records"]}
    print(f"\n[acceptance] optional 0..3 scan: {'PASS' if ok else 'FAIL'} "
          f"({time.perf_counter() - t0:.2f}s) {json.dumps(s, sort_keys=True)}")
    assert ok
