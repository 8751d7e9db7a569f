"""Command-line front end.

    critarrow analyze --cone "1,0,0;0,1,0;1,1,2" --w "1,1,1"
    critarrow quotient 14:1,9,11 --w "7/14,7/14,7/14"
    critarrow scan --lo 0 --hi 2 --jobs 4 --output records.jsonl

Exit codes: 0 success, 2 domain or parse error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Sequence

from . import exactlinalg as xl
from .conecore import (
    SimplicialCone,
    classify_singularity,
    essential_candidates,
    int_vec,
)
from .critarrows import AnalysisReport, dim_tau, volume_criterion
from .errors import CritArrowError, ResourceLimit
from .quotient import build_quotient, classify_cyclic_3d, parse_cyclic

log = logging.getLogger("critarrow")

EXIT_OK, EXIT_DOMAIN, EXIT_RESOURCE = 0, 2, 3


class UsageError(CritArrowError):
    pass


# -- parsing --------------------------------------------------------------------


def parse_vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse vector {text!r}") from exc


def parse_int_vector(text: str) -> tuple[int, ...]:
    v = parse_vector(text)
    if not xl.is_integral(v):
        raise UsageError(f"vector {text!r} must be integral")
    return int_vec(v)


def parse_cone(text: str) -> SimplicialCone:
    rows = [parse_int_vector(r) for r in text.split(";") if r.strip()]
    try:
        return SimplicialCone(tuple(rows))
    except ValueError as exc:
        raise UsageError(f"bad cone {text!r}: {exc}") from exc


# -- rendering ------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2)
    return _text(doc)


def _text(doc: dict, indent: str = "") -> str:
    width = max((len(k) for k in doc), default=0)
    lines = []
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict) and val and all(isinstance(v, (list, dict)) or v is None for v in val.values()) \
                and key not in ("volume",):
            lines.append(f"{indent}{key}:")
            for k in sorted(val, key=lambda s: (len(s), s)):
                lines.append(f"{indent}  {k:>3}  {dumps(val[k])}")
        elif isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_text(val, indent + "  "))
        else:
            shown = val if isinstance(val, str) else dumps(val)
            lines.append(f"{indent}{key:<{width}}  {shown}")
    return "\n".join(lines)


# -- analyze / quotient ---------------------------------------------------------


def cmd_analyze(args) -> dict:
    cone = parse_cone(args.cone)
    w = parse_int_vector(args.w)
    report = dim_tau(cone, w, d_prime=args.d_prime)
    return report.to_dict()


def quotient_document(spec: str, w_text: str | None = None, d_prime: int | None = None) -> dict:
    gens = parse_cyclic(spec)
    datum = build_quotient(gens)
    cone = datum.normalized_cone
    doc = {
        "group": [{"r": r, "weights": list(w)} for r, w in datum.generators],
        "group_order": datum.group_order,
        "basis_change": [[str(x) for x in row] for row in datum.basis_change],
        "normalized_cone": [list(g) for g in cone.generators],
        "singularity": classify_singularity(cone),
    }
    if datum.d == 3 and len(datum.generators) == 1:
        r, (a, b, c) = datum.generators[0]
        doc["classification"] = classify_cyclic_3d(r, a, b, c)
        doc["classification_note"] = "cases matched up to permutation and choice of group generator"
    if w_text is not None:
        x = parse_vector(w_text)
        if len(x) != datum.d:
            raise UsageError("w has the wrong dimension")
        y = datum.to_lattice(x)
        vol = None
        if all(t > 0 for t in x):
            l = xl.common_denominator(x)
            vol = volume_criterion(l, [int(t * l) for t in x], datum.group_order)
        doc["w_original"] = [str(t) for t in x]
        doc["w_lattice"] = list(y)
        doc["analysis"] = dim_tau(cone, y, d_prime=d_prime, volume=vol).to_dict()
    return doc


def cmd_quotient(args) -> dict:
    return quotient_document(args.spec, args.w, args.d_prime)


# -- scan -----------------------------------------------------------------------


@dataclass
class ScanSpec:
    """Cones ``fixed + free`` with free generators ranging over ``[lo, hi]^3``."""

    fixed: tuple[tuple[int, ...], ...] = ((1, 0, 0),)
    n_free: int = 2
    lo: int = 0
    hi: int = 2
    yz_filter: bool = True
    jobs: int = 1
    extra: list = field(default_factory=list)

    def free_vectors(self) -> list[tuple[int, ...]]:
        d = len(self.fixed[0])
        out = []
        for v in itertools.product(range(self.lo, self.hi + 1), repeat=d):
            if not any(v):
                continue
            if self.yz_filter and d >= 3 and v[1] > v[2]:
                continue
            out.append(v)
        return out

    def tuples(self) -> list[tuple[tuple[int, ...], ...]]:
        return [self.fixed + c for c in itertools.combinations(self.free_vectors(), self.n_free)]


def _cone_key(gens: Iterable[Sequence[int]]):
    try:
        return tuple(sorted(int_vec(xl.primitive(g)) for g in gens))
    except CritArrowError:
        return None


def _analyze_cone(task) -> list[dict]:
    gens, ws = task
    try:
        cone = SimplicialCone.from_vectors(gens)
        targets = ws if ws is not None else essential_candidates(cone)
    except (CritArrowError, ResourceLimit, OverflowError) as exc:
        return [{"generators": [list(g) for g in gens], "error": f"{type(exc).__name__}: {exc}"}]
    records = []
    for w in targets:
        rec = {"generators": [list(g) for g in cone.generators], "w": list(w)}
        try:
            r: AnalysisReport = dim_tau(cone, w)
            rec.update(
                dim_tau=r.dim_tau,
                dim_mu=r.dim_mu,
                dim_Vw=r.dim_Vw,
                discrepancy=str(r.discrepancy),
                is_essential_candidate=r.is_essential_candidate,
                level_one_found=r.level_one_found,
                crit_nonempty=r.crit_nonempty,
                polytope_witness=any(u is not None for u in r.polytope_witnesses.values()),
            )
        except (CritArrowError, ResourceLimit, OverflowError) as exc:
            rec["error"] = f"{type(exc).__name__}: {exc}"
        records.append(rec)
    return records


def _run_chunk(chunk):
    return [rec for task in chunk for rec in _analyze_cone(task)]


def run_scan(tasks: list, jobs: int = 1) -> list[dict]:
    """Analyse ``(generators, ws)`` tasks; output order never depends on ``jobs``."""
    jobs = max(1, int(jobs))
    if jobs == 1 or len(tasks) <= 1:
        records = _run_chunk(tasks)
    else:
        size = -(-len(tasks) // jobs)
        chunks = [tasks[k:k + size] for k in range(0, len(tasks), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = [rec for part in pool.map(_run_chunk, chunks) for rec in part]
    records.sort(key=lambda r: (r["generators"], r.get("w", [])))
    return records


def plan_tasks(spec: ScanSpec) -> tuple[list, dict]:
    counts = {"total_tuples": 0, "skipped_degenerate": 0, "duplicates": 0}
    seen = set()
    tasks = []
    for gens in spec.tuples():
        counts["total_tuples"] += 1
        key = _cone_key(gens)
        if key is None or xl.det(xl.from_columns(key)) == 0:
            counts["skipped_degenerate"] += 1
            continue
        if key in seen:
            counts["duplicates"] += 1
            continue
        seen.add(key)
        tasks.append((key, None))
    return tasks, counts


def load_cone_list(lines: Iterable[str]) -> list:
    tasks = []
    for n, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            obj = json.loads(line)
            gens = tuple(tuple(int(x) for x in g) for g in obj["generators"])
            ws = [tuple(int(x) for x in obj["w"])] if "w" in obj else None
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"line {n}: {exc}") from exc
        tasks.append((gens, ws))
    return tasks


def summarize(records: list[dict], counts: dict) -> dict:
    by_dim: dict[str, int] = {}
    for r in records:
        if "dim_tau" in r:
            by_dim[str(r["dim_tau"])] = by_dim.get(str(r["dim_tau"]), 0) + 1
    dims = [r["dim_tau"] for r in records if "dim_tau" in r]
    return {
        **counts,
        "cones": len({dumps(r["generators"]) for r in records}),
        "records": len(records),
        "errors": sum(1 for r in records if "error" in r),
        "dim_tau_counts": by_dim,
        "max_dim_tau": max(dims) if dims else None,
    }


def cmd_scan(args) -> dict:
    jobs = args.jobs if args.jobs is not None else int(os.environ.get("CRITARROW_JOBS", "1"))
    if args.preset:
        text = resources.files("critarrow.data").joinpath(f"{args.preset}.jsonl").read_text()
        tasks, counts = load_cone_list(text.splitlines()), {}
    elif args.cones:
        with open(args.cones) as fh:
            tasks, counts = load_cone_list(fh), {}
    else:
        if args.lo > args.hi:
            raise UsageError("empty range")
        spec = ScanSpec(lo=args.lo, hi=args.hi, yz_filter=not args.no_yz_filter, jobs=jobs)
        tasks, counts = plan_tasks(spec)
    log.info("scanning %d cones with %d job(s)", len(tasks), jobs)
    records = run_scan(tasks, jobs)
    body = "".join(dumps(r) + "\n" for r in records)
    if args.output in (None, "-"):
        sys.stdout.write(body)
    else:
        with open(args.output, "w") as fh:
            fh.write(body)
    return summarize(records, counts)


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="critarrow", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="dimension of the minimal cone containing w")
    a.add_argument("--cone", required=True, help='generators, e.g. "1,0,0;0,1,0;1,1,2"')
    a.add_argument("--w", required=True, help='lattice point, e.g. "1,1,1"')
    a.add_argument("--d-prime", type=int, default=None, help="override the norm bound")
    a.add_argument("--format", choices=("json", "text"), default="json")
    a.set_defaults(func=cmd_analyze)

    q = sub.add_parser("quotient", help="analyse A^d/G for a diagonal abelian G")
    q.add_argument("spec", help='"r:a1,...,ad", several joined with "+"')
    q.add_argument("--w", default=None, help='point in original coordinates, e.g. "7/14,7/14,7/14"')
    q.add_argument("--d-prime", type=int, default=None)
    q.add_argument("--format", choices=("json", "text"), default="json")
    q.set_defaults(func=cmd_quotient)

    s = sub.add_parser("scan", help="scan a family of 3-dim cones; JSONL records")
    s.add_argument("--lo", type=int, default=0)
    s.add_argument("--hi", type=int, default=2)
    s.add_argument("--no-yz-filter", action="store_true", help="drop the y <= z restriction")
    s.add_argument("--cones", default=None, help="JSONL file of {generators, w?} instead of a range")
    s.add_argument("--preset", choices=("dim4_table",), default=None)
    s.add_argument("--jobs", type=int, default=None, help="workers (default $CRITARROW_JOBS or 1)")
    s.add_argument("--output", default=None, help="records file (default stdout)")
    s.set_defaults(func=cmd_scan, format="json-line")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        doc = args.func(args)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OverflowError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CritArrowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "json-line":
        print(dumps(doc))
    else:
        print(render(doc, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
