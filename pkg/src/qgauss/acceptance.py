"""Exit criteria for the package, runnable as ``qgauss selftest``.

Each criterion returns ``(ok, detail)``; :func:`run_all` times them against
their limits and prints one line per criterion.
"""

from __future__ import annotations

import io
import sys
import time
from dataclasses import dataclass
from typing import Callable, List, Tuple

from . import identities as ids
from . import verify
from .polyalg import ONE, IntPoly, RatFun, eval_at_one, is_nonneg, rat_equal
from .qkernel import brute_force_qbinomial, q_binomial, q_binomial_at_one, q_binomial_via_factorials

# c_k(i) for 1 <= k <= i <= 8, row i lists k = 1..i
REFERENCE_CK_TABLE = [
    [1],
    [3, 1],
    [6, 6, 1],
    [10, 19, 9, 1],
    [15, 45, 39, 12, 1],
    [21, 90, 120, 66, 15, 1],
    [28, 161, 301, 250, 100, 18, 1],
    [36, 266, 658, 755, 450, 141, 21, 1],
]


def _first_bad(items):
    for params, ok in items:
        if not ok:
            return params
    return None


def _result(bad, n):
    return (bad is None, f"{n} instances" if bad is None else f"first failure at {bad}")


def criterion_table() -> Tuple[bool, str]:
    from .cli import main
    if ids.ck_table(8) != REFERENCE_CK_TABLE:
        return False, "ck_table(8) differs from the reference triangle"
    buf = io.StringIO()
    code = main(["table-ck", "--max-i", "8", "--format", "csv"], stdout=buf)
    rows = [[int(x) for x in line.split(",")] for line in buf.getvalue().splitlines()]
    if code != 0 or rows != REFERENCE_CK_TABLE:
        return False, "table-ck CSV differs from the reference triangle"
    return True, f"{sum(map(len, REFERENCE_CK_TABLE))} cells"


def criterion_kernel() -> Tuple[bool, str]:
    checks = []
    for n in range(11):
        for k in range(n + 1):
            qb = q_binomial(n, k)
            checks.append(((n, k, "inversion"), qb == brute_force_qbinomial(n, k, "inversion")))
            checks.append(((n, k, "area"), qb == brute_force_qbinomial(n, k, "area")))
    for n in range(31):
        for k in range(n + 1):
            checks.append(((n, k, "factorial"), q_binomial(n, k) == q_binomial_via_factorials(n, k)))
    return _result(_first_bad(checks), len(checks))


def criterion_vandermonde() -> Tuple[bool, str]:
    checks = []
    for X in range(9):
        for Y in range(9):
            for Z in range(X + Y + 1):
                checks.append(((X, Y, Z, "j"), ids.vandermonde_form_j(X, Y, Z).equal))
                checks.append(((X, Y, Z, "k"), ids.vandermonde_form_k(X, Y, Z).equal))
    return _result(_first_bad(checks), len(checks))


def criterion_q1_suite() -> Tuple[bool, str]:
    checks = [(("i1", a), ids.i1_special_case(a).equal) for a in range(1, 21)]
    for a in range(1, 11):
        for i in range(1, 11):
            checks.append((("lemma1", a, i), ids.lemma1_check(a, i).equal))
            checks.append((("lemma2", a, i), ids.lemma2_check(a, i).equal))
            checks.append((("theorem2", a, i), ids.theorem2_check(a, i).equal))
    for i in range(1, 13):
        for k in range(1, i + 1):
            forms = ids.ck_forms(i, k)
            checks.append((("ck", i, k), len(set(forms)) == 1 and forms[0] >= 0))
    return _result(_first_bad(checks), len(checks))


def criterion_q_suite() -> Tuple[bool, str]:
    checks = []
    for i in range(1, 9):
        for k in range(0, i + 1):
            checks.append((("lemma7", i, k), ids.lemma7_check(i, k).passed))
        for k in range(1, i + 1):
            checks.append((("lemma6", i, k),
                           ids.lemma6_check(i, k).equal and bool(is_nonneg(ids.lemma6_sum(i, k)))))
    for a in range(1, 9):
        for i in range(1, 9):
            checks.append((("lemma4", a, i), ids.lemma4_check(a, i).equal))
            checks.append((("lemma5", a, i), ids.lemma5_check(a, i).equal))
            for k in range(1, i + 1):
                checks.append((("bracket", a, i, k), ids.theorem3_bracket(a, i, k).passed))
            P = ids.theorem3_P(a, i)
            checks.append((("theorem3", a, i), bool(is_nonneg(P)) and P == ids.theorem3_expansion(a, i)))
    return _result(_first_bad(checks), len(checks))


def criterion_c1_c2() -> Tuple[bool, str]:
    checks = []
    for quad in verify.enumerate_quadruples(64):
        inst = verify.check_c1_c2(*quad, which="C2")
        checks.append((quad, inst.symmetric and inst.nonneg.ok and inst.unimodal.ok))
    return _result(_first_bad(checks), len(checks))


def criterion_c3() -> Tuple[bool, str]:
    checks = []
    for a in range(1, 9):
        for b in range(a + 1, 10):
            checks.append(((a, b, 1), not verify.check_c3(a, b, 1).diff))
            for beta in (2, 3):
                checks.append(((a, b, beta), verify.check_c3(a, b, beta).nonneg.ok))
    return _result(_first_bad(checks), len(checks))


def criterion_c4() -> Tuple[bool, str]:
    checks = []
    for a in range(0, 10):
        for b in range(a + 1, 11):
            for k in range(0, a + 1):
                inst = verify.check_c4(a, b, k)
                checks.append(((a, b, k), inst.nonneg.ok and bool(inst.equivalent)))
    return _result(_first_bad(checks), len(checks))


def criterion_wz() -> Tuple[bool, str]:
    checks = []
    for a in range(1, 9):
        for i in range(1, 9):
            checks.append((("q1", a, i), verify.wz_check_q1(a, i).ok))
    for a in range(1, 6):
        for i in range(1, 6):
            checks.append((("q", a, i), verify.wz_check_q(a, i).ok))
    return _result(_first_bad(checks), len(checks))


def _one_minus(e):
    return ONE - IntPoly.monomial(e)


def _display_term(shift, num_exps, den_exps) -> RatFun:
    num = IntPoly.monomial(shift)
    for e in num_exps:
        num = num * _one_minus(e)
    den = ONE
    for e in den_exps:
        den = den * _one_minus(e)
    return RatFun(num, den)


def lemma8_example_terms(a: int, b: int, k: int) -> List[RatFun]:
    """The summands exactly as displayed in the worked examples for k = 1, 2, 3."""
    if k == 1:
        return [_display_term(a + 1, [1, b - a], [a + 1, b + 1])]
    if k == 2:
        return [
            _display_term(a + 1, [1, 2, b - a], [a + 1, a + 2, b + 1]),
            _display_term(a + 2, [1, 2, b - a], [a + 2, b + 1, b + 2]),
        ]
    if k == 3:
        return [
            _display_term(a + 1, [1, 2, 3, b - a], [a + 1, a + 2, a + 3, b + 1]),
            _display_term(a + 2, [1, 2, 3, b - a], [a + 2, a + 3, b + 1, b + 2]),
            _display_term(a + 3, [1, 2, 3, b - a], [a + 3, b + 1, b + 2, b + 3]),
        ]
    raise ValueError("examples exist for k = 1, 2, 3 only")


def criterion_lemma8() -> Tuple[bool, str]:
    checks = []
    for b in range(2, 9):
        for a in range(1, b):
            for k in range(1, a + 1):
                checks.append(((a, b, k), ids.lemma8_check(a, b, k).equal))
                if k <= 3:
                    shown = lemma8_example_terms(a, b, k)
                    termwise = all(rat_equal(t, ids.lemma8_term(a, b, k, i))
                                   for i, t in enumerate(shown, start=1))
                    total = RatFun(IntPoly())
                    for t in shown:
                        total = total + t
                    checks.append(((a, b, k, "example"),
                                   termwise and rat_equal(total, ids.lemma8_lhs(a, b, k))))
    return _result(_first_bad(checks), len(checks))


def criterion_lemma9() -> Tuple[bool, str]:
    checks = []
    for n in range(2, 31):
        for k in range(1, n // 2 + 1):
            checks.append(((n, k), ids.lemma9_check(n, k).passed))
    return _result(_first_bad(checks), len(checks))


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    limit: float
    run: Callable[[], Tuple[bool, str]]


CRITERIA = [
    Criterion(1, "c_k(i) table reproduction", 1.0, criterion_table),
    Criterion(2, "kernel oracle equivalence", 10.0, criterion_kernel),
    Criterion(3, "q-Vandermonde-Chu, both forms", 30.0, criterion_vandermonde),
    Criterion(4, "q = 1 suite", 10.0, criterion_q1_suite),
    Criterion(5, "q-analogue suite, beta = 2", 120.0, criterion_q_suite),
    Criterion(6, "Conjectures 1 and 2 scan, ad = bc <= 64", 300.0, criterion_c1_c2),
    Criterion(7, "Conjecture 3 scan, beta in {1, 2, 3}", 120.0, criterion_c3),
    Criterion(8, "Conjecture 4 scan, b <= 10", 300.0, criterion_c4),
    Criterion(9, "WZ certificates", 120.0, criterion_wz),
    Criterion(10, "partial fractions and worked examples", 60.0, criterion_lemma8),
    Criterion(11, "unimodal block decomposition", 60.0, criterion_lemma9),
]


@dataclass
class CriterionResult:
    criterion: Criterion
    passed: bool
    elapsed: float
    detail: str

    @property
    def ok(self) -> bool:
        return self.passed and self.elapsed < self.criterion.limit

    def line(self) -> str:
        c = self.criterion
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} [{c.number:2}] {c.title}: {self.detail} ({self.elapsed:.3f}s, limit {c.limit:g}s)"


def run_criterion(c: Criterion) -> CriterionResult:
    t0 = time.perf_counter()
    passed, detail = c.run()
    return CriterionResult(c, passed, time.perf_counter() - t0, detail)


def run_all(out=None) -> List[CriterionResult]:
    out = out or sys.stdout
    results = []
    for c in CRITERIA:
        r = run_criterion(c)
        out.write(r.line() + "\n")
        out.flush()
        results.append(r)
    return results
