"""Command line front end: ``rtype check|type|oracle|corpus``."""

from __future__ import annotations

import argparse
import fnmatch
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .discs import INF
from .domainfile import DomainFile, read_domain
from .engine import (
    DEFAULT_MAX_ORDER,
    InconsistencyError,
    OracleConfig,
    TypeValue,
    line_type,
    regular_type,
    variety_type,
)
from .exact import format_complex
from .geometry import boundary_point, check_axis_monotone, check_log_convex
from .germ import GermError
from .invariants import multitype, q_types
from .oracle import LATTICES, jet_oracle

EXIT_OK, EXIT_USAGE, EXIT_NOT_PSEUDOCONVEX, EXIT_INCONSISTENT, EXIT_MISMATCH = 0, 1, 2, 3, 4
INVARIANTS = ("check", "line", "regular", "variety", "qtypes", "multitype", "oracle")
ORDER = {name: i for i, name in enumerate(INVARIANTS)}


@dataclass
class JobSpec:
    path: str
    invariants: Tuple[str, ...]
    max_order: int = DEFAULT_MAX_ORDER
    max_deg: int = 3
    lattice: str = "default"
    budget: int = 20000
    seed: Optional[int] = None
    timings: bool = True
    oracle_check: Optional[OracleConfig] = field(default_factory=OracleConfig)

    def __post_init__(self):
        if not self.invariants:
            raise ValueError("no invariant requested")
        bad = [i for i in self.invariants if i not in INVARIANTS]
        if bad:
            raise ValueError(f"unknown invariant {bad[0]!r}; choose from {', '.join(INVARIANTS)}")
        if self.lattice not in LATTICES:
            raise ValueError(f"unknown lattice preset {self.lattice!r}")


@dataclass
class Report:
    data: dict
    text: str
    exit_code: int


# --- JSON helpers --------------------------------------------------------------


def jnum(x):
    """Exact number for JSON: ints stay ints, other rationals become ``"p/q"``."""
    if x is None:
        return None
    if x == INF:
        return "inf"
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _witness(phi):
    return None if phi is None else phi.coefficient_lists()


def tv_json(tv: TypeValue) -> dict:
    out = {"kind": tv.kind, "method": tv.method, "witness": _witness(tv.witness)}
    if tv.kind == "exact":
        out["value"] = jnum(tv.value)
    elif tv.kind == "infinite":
        out["value"] = "inf"
    else:
        out["bounds"] = [jnum(tv.lo), jnum(tv.hi) if tv.hi is not None else "inf"]
    return out


def tv_plain(tv: TypeValue):
    """Comparable form: exact rational, ``"inf"`` or a bounds marker."""
    if tv.kind == "exact":
        return tv.value
    if tv.kind == "infinite":
        return "inf"
    return f"bounds[{tv.lo}, {'inf' if tv.hi is None else tv.hi}]"


def _show(x) -> str:
    if isinstance(x, tuple):
        return "(" + ", ".join(_show(v) for v in x) + ")"
    if isinstance(x, Fraction):
        return str(jnum(x))
    return str(x)


# --- invariants ----------------------------------------------------------------


def _seed(df: DomainFile, job: JobSpec) -> int:
    env = os.environ.get("RTYPE_SEED")
    if env is not None and env.strip():
        return int(env)
    return job.seed if job.seed is not None else df.seed


def _check(df: DomainFile, seed: int):
    d = df.domain()
    conv = check_log_convex(d, samples=200, seed=seed)
    out = {"convexity": conv.status}
    ok = conv.convex
    if not conv.convex:
        out["witness"] = [jnum(x) for x in conv.witness]
        out["minor"] = {"indices": list(conv.minor_indices), "value": jnum(conv.minor_value)}
    if df.model == "MOD":
        axes = []
        for j in range(df.n):
            ax = check_axis_monotone(d, j, seed=seed)
            axes.append(ax.status)
            if ax.status != "monotone":
                ok = False
                out.setdefault("axis_witness", {})[f"z{j + 1}"] = [jnum(x) for x in ax.witness]
        out["axes"] = axes
    out["value"] = "pseudoconvex" if ok else "not_pseudoconvex"
    return out, out["value"]


def compute(df: DomainFile, name: str, job: JobSpec, seed: int):
    """One invariant: ``(json_fragment, comparable_value)``."""
    g, p = df.germ, df.point
    if name == "check":
        return _check(df, seed)
    if name == "line":
        tv = line_type(g, p, job.max_order)
        return tv_json(tv), tv_plain(tv)
    if name == "regular":
        tv = regular_type(g, p, job.max_order)
        return tv_json(tv), tv_plain(tv)
    if name == "variety":
        tv = variety_type(g, p, job.max_order, job.oracle_check)
        return tv_json(tv), tv_plain(tv)
    if name == "qtypes":
        qt = q_types(g, p, job.max_order, seed, job.oracle_check)
        vals = tuple(tv_plain(v) for v in qt.values)
        frag = {
            "value": [jnum(v) if not isinstance(v, str) else v for v in vals],
            "witness": [_witness(v.witness) for v in qt.values],
            "method": "generic_slices",
        }
        return frag, vals
    if name == "multitype":
        mt = multitype(g, p)
        vals = tuple("inf" if x == INF else x for x in mt.entries)
        return {"value": [jnum(x) if x != "inf" else "inf" for x in vals], "method": "weight_lp"}, vals
    if name == "oracle":
        res = jet_oracle(g, p, job.max_deg, LATTICES[job.lattice], job.budget)
        frag = tv_json(res.value)
        frag.update(truncated=res.truncated, explored=res.explored, lattice=job.lattice, max_deg=job.max_deg)
        return frag, tv_plain(res.value)
    raise ValueError(name)


def _header(df: DomainFile) -> dict:
    return {
        "domain": {"n": df.n, "model": "modulus" if df.model == "MOD" else "log", "rho": df.rho_text},
        "point": [format_complex(x) for x in df.point],
    }


def run_job(job: JobSpec) -> Report:
    try:
        df = read_domain(job.path)
    except (OSError, GermError) as exc:
        line = getattr(exc, "line", None)
        loc = f"{job.path}:{line}: " if line else f"{job.path}: "
        return Report({}, f"error: {loc}{exc}", EXIT_USAGE)
    seed = _seed(df, job)
    data = _header(df)
    data["results"] = {}
    data["version"] = __version__
    lines = [f"{Path(job.path).name}: rho = {df.rho_text} at p = ({', '.join(data['point'])})"]
    code = EXIT_OK
    try:
        boundary_point(df.germ, df.point)
    except GermError as exc:
        return Report(data, f"error: {job.path}: {exc}", EXIT_USAGE)
    for name in sorted(set(job.invariants), key=ORDER.get):
        t0 = time.perf_counter()
        try:
            frag, plain = compute(df, name, job, seed)
        except InconsistencyError as exc:
            frag = {
                "error": str(exc),
                "computed": tv_json(exc.computed),
                "search": tv_json(exc.oracle.value),
            }
            plain = "inconsistent"
            code = EXIT_INCONSISTENT
        except GermError as exc:
            return Report(data, f"error: {job.path}: {name}: {exc}", EXIT_USAGE)
        frag["seed"] = seed
        if job.timings:
            frag["millis"] = int((time.perf_counter() - t0) * 1000)
        data["results"][name] = frag
        method = frag.get("method", "")
        wit = frag.get("witness")
        lines.append(f"  {name:<10} {_show(plain):<14} {method}" + (f"  witness {wit}" if wit and name != "qtypes" else ""))
        if name == "check" and plain != "pseudoconvex" and code == EXIT_OK:
            code = EXIT_NOT_PSEUDOCONVEX
    return Report(data, "\n".join(lines), code)


# --- corpus ------------------------------------------------------------------------


def _same(expected, actual) -> bool:
    if isinstance(expected, tuple):
        return isinstance(actual, tuple) and len(expected) == len(actual) and all(
            _same(e, a) for e, a in zip(expected, actual)
        )
    if expected in ("inf", "infinite"):
        return actual == "inf"
    return expected == actual


def run_corpus(directory, pattern: Optional[str] = None, out=None, job_kw=None) -> Tuple[dict, int]:
    """Check every annotated ``*.dom`` file in ``directory``; returns (report, exit code)."""
    out = sys.stdout if out is None else out
    files = sorted(Path(directory).glob("*.dom"))
    if pattern:
        files = [f for f in files if fnmatch.fnmatch(f.stem, pattern) or fnmatch.fnmatch(f.name, pattern)]
    cases = {}
    code = EXIT_OK
    rows: List[Tuple[str, str, str, str, str]] = []
    for f in files:
        try:
            df = read_domain(f)
        except GermError as exc:
            rows.append((f.stem, "-", "-", "-", f"ERROR {exc}"))
            code = code or EXIT_USAGE
            continue
        if not df.expect:
            print(f"warning: {f.name} has no [expect] section; skipped", file=sys.stderr)
            continue
        job = JobSpec(str(f), tuple(df.expect), timings=False, **(job_kw or {}))
        seed = _seed(df, job)
        results = {}
        status = "pass"
        for name in sorted(df.expect, key=ORDER.get):
            try:
                frag, plain = compute(df, name, job, seed)
            except InconsistencyError as exc:
                frag, plain = {"error": str(exc)}, "inconsistent"
            except GermError as exc:
                frag, plain = {"error": str(exc)}, f"error: {exc}"
            ok = _same(df.expect[name], plain)
            frag["seed"] = seed
            frag["expected"] = _show(df.expect[name])
            frag["pass"] = ok
            results[name] = frag
            rows.append((f.stem, name, _show(df.expect[name]), _show(plain), "PASS" if ok else "FAIL"))
            if not ok:
                status = "fail"
        if status == "fail":
            code = EXIT_MISMATCH
        case = _header(df)
        case["results"] = results
        case["status"] = status
        cases[f.stem] = case
    widths = [max([len(r[i]) for r in rows] + [len(h)]) for i, h in enumerate(("case", "invariant", "expected", "computed", "status"))]
    header = ("case", "invariant", "expected", "computed", "status")
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)), file=out)
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)), file=out)
    npass = sum(1 for c in cases.values() if c["status"] == "pass")
    print(f"{npass}/{len(cases)} cases pass", file=out)
    return {"cases": cases, "version": __version__}, code


# --- argparse -------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rtype", description="Types of boundary points of Reinhardt domains.")
    ap.add_argument("--version", action="version", version=f"rtype {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="pseudoconvexity and boundary-point checks")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.add_argument("--seed", type=int)

    t = sub.add_parser("type", help="compute invariants")
    t.add_argument("file")
    t.add_argument(
        "--invariant",
        action="append",
        required=True,
        help="one of " + ", ".join(INVARIANTS[1:-1]) + " (repeatable or comma separated)",
    )
    t.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    t.add_argument("--json", action="store_true")
    t.add_argument("--no-timings", action="store_true", help="omit millis for reproducible output")
    t.add_argument("--seed", type=int)

    o = sub.add_parser("oracle", help="brute-force disc search")
    o.add_argument("file")
    o.add_argument("--max-deg", type=int, default=3)
    o.add_argument("--lattice", choices=sorted(LATTICES), default="default")
    o.add_argument("--budget", type=int, default=20000)
    o.add_argument("--json", action="store_true")

    k = sub.add_parser("corpus", help="run annotated domain files")
    k.add_argument("dir", nargs="?", default=str(Path(__file__).parent / "corpus"))
    k.add_argument("--filter")
    k.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "corpus":
        if not Path(args.dir).is_dir():
            print(f"error: {args.dir} is not a directory", file=sys.stderr)
            return EXIT_USAGE
        table_out = sys.stderr if args.json == "-" else sys.stdout
        data, code = run_corpus(args.dir, args.filter, out=table_out)
        if args.json == "-":
            sys.stdout.write(dumps(data))
        elif args.json:
            Path(args.json).write_text(dumps(data), encoding="utf-8")
        return code
    try:
        if args.command == "check":
            job = JobSpec(args.file, ("check",), seed=args.seed)
        elif args.command == "type":
            invs = tuple(x.strip() for item in args.invariant for x in item.split(",") if x.strip())
            job = JobSpec(args.file, invs, max_order=args.max_order, seed=args.seed, timings=not args.no_timings)
        else:
            job = JobSpec(args.file, ("oracle",), max_deg=args.max_deg, lattice=args.lattice, budget=args.budget)
    except ValueError as exc:
        ap.error(str(exc))
    report = run_job(job)
    if report.exit_code == EXIT_USAGE and not report.data.get("results"):
        print(report.text, file=sys.stderr)
        return report.exit_code
    if args.json:
        sys.stdout.write(dumps(report.data))
    else:
        print(report.text)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
