"""Command-line verification harness.

    falsetheta verify --suite hikami --m 2..3 --N 1..3 --format text
    falsetheta schema

Exit codes: 0 when no record is a mismatch, 1 on any mismatch, 2 on a
usage or grid error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, lcm

from .bailey import finite_transform_identity, lemma31_identity, pair_ex1, pair_ex2, pair_ex3, pair_prop41, verify_pair_definition
from .characters import finite_evaluation, get_family, prefactor, radial_limit
from .cyclotomic import complex_approximation
from .errors import DomainError
from .nested import evaluate_at_root, quantum_identity, series_identity_check
from .radial import default_path, extrapolate_limit
from .report import FORMATS, VerificationRecord, record_sort_key, render_report, report_schema, serialize_value, write_report

__all__ = ["VerificationTask", "UsageError", "parse_range", "build_points", "run", "main"]

SUITES = ("hikami", "example1", "example2", "example3", "quantum", "bailey", "series", "radial")
DEFAULT_ORDER = {"series": 60, "bailey": 40}


class UsageError(Exception):
    """Malformed task or grid (exit code 2)."""


def parse_range(text: str | None) -> list[int] | None:
    """'3', '1..5', '1,3,5' or 'all' (None)."""
    if text is None or text == "all":
        return None
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None
    return sorted(set(out))


@dataclass
class VerificationTask:
    suite: str
    m: list[int] = field(default_factory=lambda: [2, 3])
    a: list[int] | None = None          # None: every admissible a
    N: list[int] = field(default_factory=lambda: [1, 2, 3])
    M: list[int] | None = None          # None: every residue coprime to N
    order: int | None = None
    nmax: int = 6
    tolerance: float = 1e-6
    jobs: int = 1

    def __post_init__(self):
        if self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if not self.m or min(self.m) < 1:
            raise UsageError("m values must be positive")
        if not self.N or min(self.N) < 1:
            raise UsageError("N values must be positive")
        if self.order is None:
            self.order = DEFAULT_ORDER.get(self.suite, 40)
        if self.order < 1 or self.nmax < 0 or self.jobs < 1 or self.tolerance <= 0:
            raise UsageError("order, nmax, jobs and tolerance must be positive")


# -- grid construction -------------------------------------------------------

def _a_values(task: VerificationTask, m: int, lo: int, hi: int, uses_a: bool) -> list[int]:
    """Admissible a in [lo, hi]; an explicit out-of-range a is a usage error."""
    if not uses_a:
        if task.a not in (None, [0]):
            raise UsageError(f"suite {task.suite} has no parameter a")
        return [0]
    if task.a is None:
        return list(range(lo, hi + 1))
    bad = [a for a in task.a if not lo <= a <= hi]
    if bad:
        raise UsageError(f"a={bad[0]} outside {lo}..{hi} for m={m}")
    return list(task.a)


def _m_values(task: VerificationTask, lo: int) -> list[int]:
    bad = [m for m in task.m if m < lo]
    if bad:
        raise UsageError(f"suite {task.suite} needs m >= {lo}, got m={bad[0]}")
    return task.m


def _roots(task: VerificationTask, N: int) -> list[int]:
    if task.M is None:
        return [M for M in range(1, N + 1) if gcd(M, N) == 1]
    return list(task.M)


def build_points(task: VerificationTask) -> list[dict]:
    """Every grid point of the task as a parameter dict, in sorted order."""
    s = task.suite
    pts: list[dict] = []
    if s in ("hikami", "example1", "example2", "example3", "radial"):
        families = ["hikami", "example1", "example2", "example3"] if s == "radial" else [s]
        for fam_name in families:
            fam = get_family(fam_name)
            for m in _m_values(task, 2):
                for a in _a_values(task, m, 0, m - 2, fam.uses_a):
                    for N in task.N:
                        for M in _roots(task, N):
                            for ident in (("limit",) if s == "radial" else ("theorem", "finite")):
                                p = {"family": fam_name} if s == "radial" else {}
                                p.update(m=m, a=a, N=N, M=M)
                                if s != "radial":
                                    p["identity"] = ident
                                pts.append(p)
    elif s == "quantum":
        for m in _m_values(task, 2):
            for kind in ("U", "V"):
                for a in (_a_values(task, m, 0, m - 2, True) if kind == "V" else [0]):
                    for N in task.N:
                        for M in _roots(task, N):
                            pts.append({"kind": kind, "m": m, "a": a, "N": N, "M": M})
    elif s == "series":
        for fam_name in ("hikami", "example1", "example2", "example3"):
            fam = get_family(fam_name)
            for m in _m_values(task, 2):
                for a in _a_values(task, m, 0, m - 2, fam.uses_a):
                    pts.append({"family": fam_name, "m": m, "a": a, "K": task.order})
    elif s == "bailey":
        for pair in ("prop41", "ex1", "ex2", "ex3"):
            uses_a = pair in ("prop41", "ex3")
            for m in _m_values(task, 1):
                for a in _a_values(task, m, 0, m - 1, uses_a):
                    checks = ["definition"] + [f"transform{n}" for n in range(task.nmax + 1)] + ["lemma31"]
                    for check in checks:
                        pts.append({"pair": pair, "m": m, "a": a, "check": check,
                                    "K": task.order, "nmax": task.nmax})
    return pts


# -- per-point evaluation ----------------------------------------------------

def _exact_record(suite, params, lhs, rhs, note="") -> VerificationRecord:
    return VerificationRecord(suite, params, "equal" if lhs == rhs else "mismatch",
                              serialize_value(lhs), serialize_value(rhs),
                              lcm(lhs.order, rhs.order), note=note)


def _theorem_point(suite: str, p: dict) -> VerificationRecord:
    m, a, N, M = p["m"], p["a"], p["N"], p["M"]
    Y = evaluate_at_root(suite, m, a, N, M)
    note = ""
    if suite in ("hikami", "example3"):
        printed = evaluate_at_root(suite, m, a, N, M, support="printed")
        if printed != Y:
            note = "printed-range sum differs from natural-support sum here"
    if p["identity"] == "theorem":
        return _exact_record(suite, p, prefactor(suite, m, a, N, M) * Y, radial_limit(suite, m, a, N, M), note)
    return _exact_record(suite, p, Y, finite_evaluation(suite, m, a, N, M), note)


_PAIRS = {
    "prop41": lambda m, a: pair_prop41(m, a),
    "ex1": lambda m, a: pair_ex1(m),
    "ex2": lambda m, a: pair_ex2(m),
    "ex3": lambda m, a: pair_ex3(m, a),
}


def _bailey_point(p: dict, tol: float) -> VerificationRecord:
    pair = _PAIRS[p["pair"]](p["m"], p["a"])
    check, K = p["check"], p["K"]
    if check == "definition":
        res = verify_pair_definition(pair, p["nmax"], K)
        note = "" if res.ok else f"first failure (n, exponent) = {res.first_failure}"
        return VerificationRecord("bailey", p, "equal" if res.ok else "mismatch", note=note)
    if check == "lemma31":
        res = lemma31_identity(pair, K)
    else:
        res = finite_transform_identity(pair, int(check[len("transform"):]), K)
    note = "" if res.ok else f"first discrepancy at exponent {res.first_discrepancy}"
    return VerificationRecord("bailey", p, "equal" if res.ok else "mismatch",
                              serialize_value(res.lhs), serialize_value(res.rhs), note=note)


def _radial_point(p: dict, tol: float) -> VerificationRecord:
    fam, m, a, N, M = p["family"], p["m"], p["a"], p["N"], p["M"]
    exact = radial_limit(fam, m, a, N, M)
    path = default_path(fam, m, a, N, M)
    est = extrapolate_limit(fam, m, a, path)
    err = float(abs(est.value - complex_approximation(exact, path.precision)))
    status = "equal" if err < tol else "mismatch"
    return VerificationRecord("radial", p, status, serialize_value(est.value), serialize_value(exact),
                              exact.order, note=f"abs error {err:.3e}, fit estimate {est.error:.3e}")


def evaluate_point(suite: str, p: dict, tol: float = 1e-6) -> VerificationRecord:
    """One record; hypothesis violations at this point become 'skipped'."""
    start = time.perf_counter()
    try:
        if suite in ("hikami", "example1", "example2", "example3"):
            rec = _theorem_point(suite, p)
        elif suite == "quantum":
            lhs, rhs = quantum_identity(p["kind"], p["m"], p["a"], p["N"], p["M"])
            rec = _exact_record(suite, p, lhs, rhs)
        elif suite == "series":
            res = series_identity_check(p["family"], p["m"], p["a"], p["K"])
            note = "" if res.ok else f"first discrepancy at exponent {res.first_discrepancy}"
            rec = VerificationRecord(suite, p, "equal" if res.ok else "mismatch",
                                     serialize_value(res.lhs), serialize_value(res.rhs), note=note)
        elif suite == "bailey":
            rec = _bailey_point(p, tol)
        elif suite == "radial":
            rec = _radial_point(p, tol)
        else:
            raise UsageError(f"unknown suite {suite!r}")
    except DomainError as exc:
        rec = VerificationRecord(suite, p, "skipped", note=str(exc))
    rec.wall_time = round(time.perf_counter() - start, 6)
    return rec


def _evaluate_star(args):
    return evaluate_point(*args)


def run(task: VerificationTask) -> tuple[int, list[VerificationRecord]]:
    """Evaluate the grid; returns (exit code, records sorted by parameters)."""
    points = build_points(task)
    args = [(task.suite, p, task.tolerance) for p in points]
    if task.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=task.jobs) as pool:
            records = list(pool.map(_evaluate_star, args, chunksize=max(1, len(args) // (4 * task.jobs))))
    else:
        records = [_evaluate_star(x) for x in args]
    records.sort(key=record_sort_key)
    code = 1 if any(r.status == "mismatch" for r in records) else 0
    return code, records


# -- argument parsing --------------------------------------------------------

def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("FALSETHETA_JOBS", "1")))
    except ValueError:
        return 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="falsetheta", description="Exact verification of false theta identities.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite over a parameter grid")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--m", default="2..3", help="range such as 2..5 or 2,4 (default 2..3)")
    v.add_argument("--a", default="all", help="range or 'all' (default: every admissible a)")
    v.add_argument("--N", default="1..3", help="range (default 1..3)")
    v.add_argument("--M", default="all", help="range or 'all' (default: residues coprime to N)")
    v.add_argument("--order", type=int, default=None, help="truncation order K (series 60, bailey 40)")
    v.add_argument("--nmax", type=int, default=6, help="largest n for the Bailey suite")
    v.add_argument("--out", default=None, help="report path (default: stdout)")
    v.add_argument("--format", default="json", choices=FORMATS)
    v.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes (env FALSETHETA_JOBS)")
    v.add_argument("--tolerance", type=float, default=1e-6, help="radial suite only")
    sub.add_parser("schema", help="print the JSON schema of a report record")
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
        if args.command == "schema":
            sys.stdout.write(json.dumps(report_schema(), indent=1, sort_keys=True) + "\n")
            return 0
        task = VerificationTask(
            suite=args.suite, m=parse_range(args.m), a=parse_range(args.a), N=parse_range(args.N),
            M=parse_range(args.M), order=args.order, nmax=args.nmax, tolerance=args.tolerance,
            jobs=args.jobs,
        )
        code, records = run(task)
    except UsageError as exc:
        print(f"falsetheta: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        write_report(records, args.out, args.format)
    else:
        sys.stdout.write(render_report(records, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
