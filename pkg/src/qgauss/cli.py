"""``qgauss`` command-line front end.

Subcommands: ``table-ck``, ``check-identity``, ``check-conjecture``, ``wz``
and ``selftest``.  Exit codes: 0 all checks passed, 1 a mathematical
failure was found, 2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from . import identities as ids
from . import verify
from .polyalg import IntPoly, format_sparse
from .report import ERROR, FAIL, CheckReport, exit_code

EXIT_USAGE = 2
EXIT_INTERNAL = 3
MAX_N_CAP = 10_000
MAX_I_CAP = 64


class UsageError(Exception):
    pass


class UnknownIdentity(UsageError):
    pass


# Range expressions -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|([+-]))")


def eval_bound(expr: str, env: Dict[str, int]) -> int:
    """Evaluate ``int | name`` terms joined by ``+``/``-``."""
    pos, total, sign, expect_term = 0, 0, 1, True
    expr = expr.strip()
    if not expr:
        raise UsageError("empty bound")
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m or m.end() == pos:
            raise UsageError(f"bad range expression {expr!r}")
        num, name, op = m.groups()
        pos = m.end()
        if expect_term:
            if op:
                if op == "-":
                    sign = -sign
                continue
            if name is not None:
                if name not in env:
                    raise UsageError(f"unbound name {name!r} in {expr!r}")
                val = env[name]
            else:
                val = int(num)
            total += sign * val
            sign, expect_term = 1, False
        else:
            if not op:
                raise UsageError(f"bad range expression {expr!r}")
            sign, expect_term = (1 if op == "+" else -1), True
    if expect_term:
        raise UsageError(f"dangling operator in {expr!r}")
    return total


@dataclass(frozen=True)
class RangeSpec:
    lo: str
    hi: str

    @classmethod
    def parse(cls, text: str) -> "RangeSpec":
        if ".." in text:
            lo, hi = text.split("..", 1)
            return cls(lo, hi)
        return cls(text, text)

    def values(self, env: Dict[str, int]) -> range:
        return range(eval_bound(self.lo, env), eval_bound(self.hi, env) + 1)

    def __str__(self):
        return self.lo if self.lo == self.hi else f"{self.lo}..{self.hi}"


def iterate(names: Sequence[str], ranges: Dict[str, RangeSpec], env=None) -> Iterator[Dict[str, int]]:
    """Nested loops in ``names`` order; later bounds may refer to earlier names."""
    env = dict(env or {})
    if not names:
        yield dict(env)
        return
    head, rest = names[0], names[1:]
    for v in ranges[head].values(env):
        env[head] = v
        yield from iterate(rest, ranges, env)


# Check registry ----------------------------------------------------------

class _AsReport:
    """Picklable adapter: call ``fn`` and convert its result with ``.report()``."""

    def __init__(self, fn, *args):
        self.fn = fn
        self.args = args
        self.__name__ = fn.__name__

    def __call__(self, **params):
        return self.fn(**params).report(*self.args)


def _remark1(a, b, c, d):
    first, second = ids.remark1_expansion(a, b, c, d)
    r1, r2 = first.report(), second.report()
    r = r1 if not r1.passed else r2
    r.check = "remark1"
    return r


def _ck(i, k):
    ck = ids.ck_coefficient(i, k)
    if ck.value >= 0:
        return CheckReport("ck", {"i": i, "k": k}, "pass")
    return CheckReport("ck", {"i": i, "k": k}, FAIL, witness=IntPoly([ck.value]), failing_index=0)


@dataclass(frozen=True)
class IdentitySpec:
    params: Tuple[str, ...]
    defaults: Dict[str, str]
    run: Callable[..., CheckReport]


IDENTITIES: Dict[str, IdentitySpec] = {
    "vandermonde-j": IdentitySpec(("X", "Y", "Z"), {"X": "0..8", "Y": "0..8", "Z": "0..X+Y"},
                                  _AsReport(ids.vandermonde_form_j)),
    "vandermonde-k": IdentitySpec(("X", "Y", "Z"), {"X": "0..8", "Y": "0..8", "Z": "0..X+Y"},
                                  _AsReport(ids.vandermonde_form_k)),
    "remark1": IdentitySpec(("a", "b", "c", "d"), {"a": "1..4", "b": "a..6", "c": "b+1..8", "d": "c..12"},
                            _remark1),
    "ck": IdentitySpec(("i", "k"), {"i": "1..12", "k": "1..i"}, _ck),
    "i1-special": IdentitySpec(("a",), {"a": "1..20"}, _AsReport(ids.i1_special_case)),
    "lemma1": IdentitySpec(("a", "i"), {"a": "1..10", "i": "1..10"}, _AsReport(ids.lemma1_check)),
    "lemma2": IdentitySpec(("a", "i"), {"a": "1..10", "i": "1..10"}, _AsReport(ids.lemma2_check)),
    "theorem2": IdentitySpec(("a", "i"), {"a": "1..10", "i": "1..10"}, _AsReport(ids.theorem2_check)),
    "lemma3": IdentitySpec(("i", "k"), {"i": "1..12", "k": "1..i"}, _AsReport(ids.lemma3_telescope)),
    "lemma4": IdentitySpec(("a", "i"), {"a": "1..8", "i": "1..8"}, _AsReport(ids.lemma4_check)),
    "lemma5": IdentitySpec(("a", "i"), {"a": "1..8", "i": "1..8"}, _AsReport(ids.lemma5_check)),
    "lemma6": IdentitySpec(("i", "k"), {"i": "1..12", "k": "1..i"}, _AsReport(ids.lemma6_check)),
    "lemma7": IdentitySpec(("i", "k"), {"i": "1..12", "k": "0..i"}, ids.lemma7_check),
    "theorem3-bracket": IdentitySpec(("a", "i", "k"), {"a": "1..8", "i": "1..8", "k": "1..i"},
                                     ids.theorem3_bracket),
    "theorem3": IdentitySpec(("a", "i"), {"a": "1..8", "i": "1..8"}, ids.theorem3_check),
    "lemma8": IdentitySpec(("a", "b", "k"), {"a": "1..6", "b": "a+1..8", "k": "0..a"},
                           _AsReport(ids.lemma8_check)),
    "lemma9": IdentitySpec(("n", "k"), {"n": "2..30", "k": "1..n"}, ids.lemma9_check),
}


def _lemma9_admissible(p):
    return 2 * p["k"] <= p["n"]


ADMISSIBLE: Dict[str, Callable[[Dict[str, int]], bool]] = {
    "lemma9": _lemma9_admissible,
    "remark1": lambda p: p["a"] * p["d"] == p["b"] * p["c"] and p["a"] <= p["b"],
}


# Workers -----------------------------------------------------------------

def _timed(job):
    fn, params = job
    t0 = time.perf_counter()
    try:
        rep = fn(**params)
    except ids.FormMismatch as exc:
        # formulas that should agree did not: a falsification, not a crash
        vals = [int(v) for v in exc.values]
        rep = CheckReport(getattr(fn, "__name__", "check"), dict(params), FAIL,
                          witness=IntPoly([v - vals[0] for v in vals]), detail=str(exc))
    except Exception as exc:  # reported, not raised: one bad instance must not end a scan
        rep = CheckReport(getattr(fn, "__name__", "check"), dict(params), ERROR,
                          detail=f"{type(exc).__name__}: {exc}")
    rep.wall_time = round(time.perf_counter() - t0, 6)
    return rep


def run_jobs(jobs: List[Tuple[Callable, Dict[str, int]]], workers: int) -> List[CheckReport]:
    """Run every job; results come back in submission order."""
    if workers <= 1 or len(jobs) < 2:
        return [_timed(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_timed, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


# Conjecture scans --------------------------------------------------------

def _c1(a, b, c, d):
    return verify.check_c1_c2(a, b, c, d, "C1").report("abcd")


def _c2(a, b, c, d):
    return verify.check_c1_c2(a, b, c, d, "C2").report("abcd")


def _c3(a, b, beta):
    return verify.check_c3(a, b, beta).report(("a", "b", "beta"))


def _c4(a, b, k):
    return verify.check_c4(a, b, k).report(("a", "b", "k"))


def conjecture_slices(which: int, args) -> Tuple[str, Iterator[Tuple[int, List[Tuple[Callable, Dict[str, int]]]]]]:
    """``(slice variable, iterator of (slice key, jobs))`` for a conjecture scan."""
    if which in (1, 2):
        fn = _c1 if which == 1 else _c2

        def gen():
            current, jobs = None, []
            for quad in verify.enumerate_quadruples(args.max_n):
                n = quad[0] * quad[3]
                if current is not None and n != current:
                    yield current, jobs
                    jobs = []
                current = n
                jobs.append((fn, dict(zip("abcd", quad))))
            if jobs:
                yield current, jobs
        return "n", gen()

    if which == 3:
        ranges = {"a": args.a or RangeSpec("1", "8"), "b": args.b or RangeSpec("a+1", "9"),
                  "beta": args.beta or RangeSpec("2", "3")}
        fn, names = _c3, ("a", "b", "beta")
    else:
        ranges = {"a": args.a or RangeSpec("0", "9"), "b": args.b or RangeSpec("a+1", "10"),
                  "k": args.k or RangeSpec("0", "a")}
        fn, names = _c4, ("a", "b", "k")

    def gen():
        for a in ranges["a"].values({}):
            jobs = [(fn, p) for p in iterate(names[1:], ranges, {"a": a})]
            yield a, jobs
    return "a", gen()


def _range_record(args) -> Dict[str, str]:
    out = {}
    for key in ("max_n", "a", "b", "k", "beta"):
        v = getattr(args, key, None)
        if v is not None:
            out[key] = str(v)
    return out


def load_checkpoint(path: str) -> Optional[dict]:
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        return json.load(fh)


def write_checkpoint(path: str, data: dict) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh, sort_keys=True)
    os.replace(tmp, path)


# Output ------------------------------------------------------------------

CSV_FIELDS = ("check", "params", "status", "failing_index", "witness", "wall_time", "detail")


class Emitter:
    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out
        self.writer = None
        if fmt == "csv":
            self.writer = csv.writer(out, lineterminator="\n")
            self.writer.writerow(CSV_FIELDS)

    def emit(self, rep: CheckReport):
        if self.fmt == "json":
            self.out.write(rep.to_json() + "\n")
        elif self.fmt == "csv":
            self.writer.writerow([
                rep.check, ";".join(f"{k}={v}" for k, v in rep.params.items()), rep.status,
                "" if rep.failing_index is None else rep.failing_index,
                "" if rep.witness is None else " ".join(rep.witness.to_json()),
                rep.wall_time, rep.detail or "",
            ])
        else:
            params = " ".join(f"{k}={v}" for k, v in rep.params.items())
            line = f"{rep.status.upper():5} {rep.check} {params}"
            if rep.failing_index is not None:
                line += f" index={rep.failing_index}"
            if rep.detail:
                line += f" ({rep.detail})"
            if rep.witness is not None and not rep.passed:
                line += f"\n      witness: {format_sparse(rep.witness)}"
            self.out.write(line + "\n")
        self.out.flush()

    def summary(self, reports: List[CheckReport]):
        if self.fmt != "text":
            return
        counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "error")}
        self.out.write(f"# {len(reports)} checks: {counts['pass']} pass, {counts['fail']} fail, "
                       f"{counts['error']} error\n")


# Commands ----------------------------------------------------------------

def cmd_table_ck(args, out) -> int:
    if not 1 <= args.max_i <= MAX_I_CAP:
        raise UsageError(f"--max-i must lie in 1..{MAX_I_CAP}")
    table = ids.ck_table(args.max_i)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        for row in table:
            w.writerow(row)
    elif args.format == "json":
        out.write(json.dumps({"max_i": args.max_i, "rows": [[str(x) for x in r] for r in table]},
                             separators=(",", ":")) + "\n")
    else:
        width = max(len(str(x)) for r in table for x in r)
        for row in table:
            out.write(" ".join(str(x).rjust(width) for x in row) + "\n")
    return 0


def cmd_check_identity(args, out) -> int:
    spec = IDENTITIES.get(args.name)
    if spec is None:
        raise UnknownIdentity(f"unknown identity {args.name!r}; known: {', '.join(sorted(IDENTITIES))}")
    ranges = {p: getattr(args, p) or RangeSpec.parse(spec.defaults[p]) for p in spec.params}
    keep = ADMISSIBLE.get(args.name, lambda p: True)
    jobs = [(spec.run, p) for p in iterate(spec.params, ranges) if keep(p)]
    if not jobs:
        raise UsageError("the requested ranges are empty")
    reports = run_jobs(jobs, args.workers)
    em = Emitter(args.format, out)
    for r in reports:
        r.check = args.name
        em.emit(r)
    em.summary(reports)
    return exit_code(reports)


def cmd_check_conjecture(args, out) -> int:
    which = args.which
    if which in (1, 2) and not 1 <= args.max_n <= MAX_N_CAP:
        raise UsageError(f"--max-n must lie in 1..{MAX_N_CAP}")
    slice_var, slices = conjecture_slices(which, args)
    record = {"command": f"check-conjecture {which}", "ranges": _range_record(args)}
    done = None
    ck = load_checkpoint(args.checkpoint)
    if ck is not None:
        if ck.get("command") != record["command"] or ck.get("ranges") != record["ranges"]:
            raise UsageError("checkpoint belongs to a different scan")
        done = ck.get("last_completed")
    em = Emitter(args.format, out)
    reports: List[CheckReport] = []
    for key, jobs in slices:
        if done is not None and key <= done:
            continue
        batch = run_jobs(jobs, args.workers)
        for r in batch:
            r.check = f"conjecture{which}"
            em.emit(r)
        reports.extend(batch)
        if args.checkpoint:
            write_checkpoint(args.checkpoint, {**record, "slice_var": slice_var, "last_completed": key})
        if args.stop_after is not None and key >= args.stop_after:
            break
    em.summary(reports)
    return exit_code(reports)


def _wz_q1(a, i):
    return verify.wz_check_q1(a, i).report()


def _wz_q(a, i):
    return verify.wz_check_q(a, i).report()


def cmd_wz(args, out) -> int:
    ranges = {"a": args.a or RangeSpec("1", "6"), "i": args.i or RangeSpec("1", "6")}
    points = list(iterate(("a", "i"), ranges))
    if not points:
        raise UsageError("the requested ranges are empty")
    if any(p["a"] < 1 or p["i"] < 1 for p in points):
        raise UsageError("wz needs a >= 1 and i >= 1")
    fn = _wz_q1 if args.variant == "q1" else _wz_q
    reports = run_jobs([(fn, p) for p in points], args.workers)
    em = Emitter(args.format, out)
    for r in reports:
        r.check = f"wz-{args.variant}"
        em.emit(r)
    em.summary(reports)
    return exit_code(reports)


def cmd_selftest(args, out) -> int:
    from .acceptance import run_all
    results = run_all(out)
    return 0 if all(r.ok for r in results) else 1


# Argument parsing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _range_arg(text):
    spec = RangeSpec.parse(text)
    eval_bound(spec.lo, _Anything())
    eval_bound(spec.hi, _Anything())
    return spec


class _Anything(dict):
    # syntax check only: every name is bound
    def __contains__(self, key):
        return True

    def __getitem__(self, key):
        return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    p = _Parser(prog="qgauss", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table-ck", parents=[common], help="print the c_k(i) triangle")
    t.add_argument("--max-i", type=int, default=8)

    ci = sub.add_parser("check-identity", parents=[common], help="verify an identity over a range")
    ci.add_argument("name")
    for name in ("a", "b", "c", "d", "i", "k", "n", "X", "Y", "Z"):
        ci.add_argument(f"--{name}", type=_range_arg, default=None)

    cc = sub.add_parser("check-conjecture", parents=[common], help="scan a conjecture for counterexamples")
    cc.add_argument("which", type=int, choices=(1, 2, 3, 4))
    cc.add_argument("--max-n", type=int, default=64)
    cc.add_argument("--beta", type=_range_arg, default=None)
    for name in ("a", "b", "k"):
        cc.add_argument(f"--{name}", type=_range_arg, default=None)
    cc.add_argument("--checkpoint", default=None)
    cc.add_argument("--stop-after", type=int, default=None, help=argparse.SUPPRESS)

    w = sub.add_parser("wz", parents=[common], help="verify the WZ certificates")
    w.add_argument("variant", choices=("q1", "q"))
    w.add_argument("--a", type=_range_arg, default=None)
    w.add_argument("--i", type=_range_arg, default=None)

    sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    return p


COMMANDS = {
    "table-ck": cmd_table_ck,
    "check-identity": cmd_check_identity,
    "check-conjecture": cmd_check_conjecture,
    "wz": cmd_wz,
    "selftest": cmd_selftest,
}


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be >= 1")
        if args.out:
            with open(args.out, "w", newline="") as fh:
                return COMMANDS[args.command](args, fh)
        return COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        sys.stderr.write(f"qgauss: error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:
        sys.stderr.write(f"qgauss: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())
