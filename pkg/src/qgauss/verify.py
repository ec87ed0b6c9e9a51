"""Conjecture instances and Wilf-Zeilberger certificate checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .identities import BadQuadruple, lemma5_bracket
from .polyalg import (
    ONE, ZERO, IntPoly, RatFun, Verdict, is_nonneg, is_symmetric, is_unimodal, rat_equal,
)
from .qkernel import q_binomial as qb
from .qkernel import q_binomial_at_one as C
from .report import FAIL, PASS, CheckReport


class BadParams(ValueError):
    pass


@dataclass
class ConjectureInstance:
    which: str
    params: Tuple[int, ...]
    diff: IntPoly
    ambient_degree: int
    nonneg: Verdict
    symmetric: bool
    unimodal: Verdict
    degenerate: bool = False
    equivalent: Optional[bool] = None

    @property
    def passed(self) -> bool:
        if self.which == "C1":
            return self.nonneg.ok and self.symmetric
        if self.which == "C2":
            return self.nonneg.ok and self.symmetric and self.unimodal.ok
        if self.which == "C3":
            return self.nonneg.ok
        return self.nonneg.ok and bool(self.equivalent)

    def report(self, names: Iterable[str]) -> CheckReport:
        params = dict(zip(names, self.params))
        check = {"C1": "conjecture1", "C2": "conjecture2", "C3": "conjecture3", "C4": "conjecture4"}[self.which]
        detail = "degenerate" if self.degenerate else None
        if self.passed:
            return CheckReport(check, params, PASS, detail=detail)
        if not self.nonneg:
            idx, why = self.nonneg.index, "negative coefficient"
        elif not self.symmetric:
            idx, why = None, "not symmetric"
        elif self.which == "C4":
            idx, why = None, "displayed forms disagree"
        else:
            idx, why = self.unimodal.index, "not unimodal"
        return CheckReport(check, params, FAIL, witness=self.diff, failing_index=idx, detail=why)


def _instance(which, params, diff, degree, **kw) -> ConjectureInstance:
    return ConjectureInstance(
        which=which, params=params, diff=diff, ambient_degree=degree,
        nonneg=is_nonneg(diff), symmetric=is_symmetric(diff, degree),
        unimodal=is_unimodal(diff), **kw,
    )


# Conjectures 1 and 2 -----------------------------------------------------

def _check_quadruple(a, b, c, d):
    if not (0 < a <= b < c <= d) or a * d != b * c:
        raise BadQuadruple(f"need 0 < a <= b < c <= d and ad = bc, got {(a, b, c, d)}")


def bergeron_diff(a: int, b: int, c: int, d: int) -> IntPoly:
    _check_quadruple(a, b, c, d)
    return qb(b + c, b) - qb(a + d, a)


def check_c1_c2(a: int, b: int, c: int, d: int, which: str = "C2") -> ConjectureInstance:
    if which not in ("C1", "C2"):
        raise ValueError("which must be C1 or C2")
    diff = bergeron_diff(a, b, c, d)
    return _instance(which, (a, b, c, d), diff, a * d, degenerate=(a == b))


def enumerate_quadruples(max_n: int) -> Iterator[Tuple[int, int, int, int]]:
    """All ``0 < a <= b < c <= d`` with ``ad = bc <= max_n``, by ``n`` then lexicographically."""
    for n in range(1, max_n + 1):
        divs = [x for x in range(1, n + 1) if n % x == 0]
        for a in divs:
            for b in divs:
                if b < a:
                    continue
                c, d = n // b, n // a
                if b < c:
                    yield (a, b, c, d)


# Conjecture 3 -------------------------------------------------------------

def check_c3(a: int, b: int, beta: int) -> ConjectureInstance:
    if not (0 < a < b) or beta < 1:
        raise BadParams(f"need 0 < a < b and beta >= 1, got {(a, b, beta)}")
    diff = qb(b + beta * a, b) - qb(a + beta * b, a)
    return _instance("C3", (a, b, beta), diff, beta * a * b)


def c3_quadruple(a: int, b: int, beta: int) -> Optional[Tuple[int, int, int, int]]:
    """The Bergeron quadruple with the same two binomials, when one exists."""
    if b < beta * a:
        return (a, b, beta * a, beta * b)
    if beta * a < b:
        return (a, beta * a, b, beta * b)
    return None


# Conjecture 4 -------------------------------------------------------------

def c4_sides(a: int, b: int, k: int) -> Tuple[IntPoly, IntPoly]:
    return qb(a, k) * qb(a + b, b - k), qb(b, k) * qb(a + b, a - k)


def c4_second_form(a: int, b: int, k: int) -> RatFun:
    prefactor = RatFun(qb(a, k) * qb(b, k) * qb(b + a, b))
    return prefactor * (RatFun(ONE, qb(a + k, k)) - RatFun(ONE, qb(b + k, k)))


def check_c4(a: int, b: int, k: int) -> ConjectureInstance:
    if not 0 <= k <= a < b:
        raise BadParams(f"need 0 <= k <= a < b, got {(a, b, k)}")
    lhs, rhs = c4_sides(a, b, k)
    diff = lhs - rhs
    degree = max(p.degree for p in (lhs, rhs))
    equivalent = rat_equal(RatFun(diff), c4_second_form(a, b, k))
    return _instance("C4", (a, b, k), diff, degree, equivalent=equivalent)


# Wilf-Zeilberger certificates -------------------------------------------

@dataclass
class WZCheck:
    variant: str
    params: Tuple[int, int]
    k_range: Tuple[int, int]
    relation_ok: bool
    telescope_ok: bool
    anchor_ok: bool
    certificate_ok: bool = True
    closed_forms_ok: bool = True
    rewrite_ok: bool = True
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.relation_ok and self.telescope_ok and self.anchor_ok and self.certificate_ok
                and self.closed_forms_ok and self.rewrite_ok)

    def report(self) -> CheckReport:
        a, i = self.params
        name = "wz-" + ("q1" if self.variant == "q1_lemma2" else "q")
        params = {"a": a, "i": i}
        if self.ok:
            return CheckReport(name, params, PASS)
        return CheckReport(name, params, FAIL, witness=ZERO, detail="; ".join(self.failures))


def default_k_range(a: int, i: int) -> Tuple[int, int]:
    return (-1, min(a, i) + 2)


def wz_F1(a: int, i: int, k: int) -> Fraction:
    top = (i + 3 * k) * C(i + k, 2 * k) * C(3 * a + i, a - k)
    if not top:
        return Fraction(0)
    return Fraction(top, (i + k) * C(3 * a + i, a + i))


def wz_G1(a: int, i: int, k: int) -> Fraction:
    return Fraction(-C(i + k - 1, 2 * k - 2) * C(3 * a + i, a - k), C(3 * a + i, a + i))


def wz_check_q1(a: int, i: int, k_range: Optional[Tuple[int, int]] = None) -> WZCheck:
    if a < 1 or i < 1:
        raise BadParams("wz needs a, i >= 1")
    lo, hi = k_range or default_k_range(a, i)
    failures = []
    relation_ok = True
    for k in range(lo, hi + 1):
        if wz_F1(a, i + 1, k) - wz_F1(a, i, k) != wz_G1(a, i, k + 1) - wz_G1(a, i, k):
            relation_ok = False
            failures.append(f"pair relation at k={k}")
    support = range(0, min(a, i) + 1)
    telescope_ok = sum(wz_F1(a, i, k) for k in support) == 1
    if not telescope_ok:
        failures.append("sum_k F(i,k) != 1")
    f0, f1 = wz_F1(a, 1, 0), wz_F1(a, 1, 1)
    anchor_ok = (f0 == Fraction(C(3 * a + 1, a), C(3 * a + 1, a + 1)) == Fraction(a + 1, 2 * a + 1)
                 and f1 == Fraction(2 * C(3 * a + 1, a - 1), C(3 * a + 1, a + 1)) == Fraction(a, 2 * a + 1)
                 and f0 + f1 == 1)
    if not anchor_ok:
        failures.append("i=1 anchor")
    return WZCheck("q1_lemma2", (a, i), (lo, hi), relation_ok, telescope_ok, anchor_ok, failures=failures)


def qpow(e: int) -> RatFun:
    """``q**e`` for any integer ``e``."""
    if e >= 0:
        return RatFun(IntPoly.monomial(e))
    return RatFun(ONE, IntPoly.monomial(-e))


def one_minus(e: int) -> RatFun:
    return RatFun(ONE) - qpow(e)


def _laurent(*terms: Tuple[int, int]) -> RatFun:
    """Sum of ``c * q**e`` over ``(e, c)`` pairs; negative exponents go to the denominator."""
    exps = [e for e, _ in terms]
    low = min(min(exps), 0)
    coeffs = [0] * (max(exps) - low + 1)
    for e, c in terms:
        coeffs[e - low] += c
    return RatFun(IntPoly(coeffs), IntPoly.monomial(-low))


def wz_F(a: int, i: int, k: int) -> RatFun:
    bracket = lemma5_bracket(a, i, k)
    tail = qb(3 * a + i, a - k)
    den = qb(3 * a + i, a + i)
    if not bracket or not tail:
        return RatFun(ZERO, den)
    return RatFun((bracket * tail).shift((a - k) * (i - k)), den)


def wz_G(a: int, i: int, k: int) -> RatFun:
    body = qb(i + k - 1, 2 * k - 2) * qb(3 * a + i, a - k)
    den = qb(3 * a + i, a + i)
    if not body:
        return RatFun(ZERO, den)
    return RatFun(-body.shift((a - k + 1) * (i - k + 1)), den)


def wz_A_closed(a: int, i: int, k: int) -> RatFun:
    num = (qpow(a - k) * one_minus(i + k) * one_minus(a + i + 1)
           * _laurent((0, 1), (i + k + 1, -1), (a + i + 1, 1), (a + i + 2 * k + 1, -1)))
    den = (one_minus(i - k + 1) * one_minus(2 * a + i + k + 1)
           * _laurent((0, 1), (i + k, -1), (a + i, 1), (a + i + 2 * k, -1)))
    return num / den - RatFun(ONE)


def wz_B_closed(a: int, i: int, k: int) -> RatFun:
    first = -(one_minus(a - k) / one_minus(2 * a + i + k + 1))
    second = (qpow(a + i - 2 * k + 1) * one_minus(2 * k) * one_minus(2 * k - 1)
              / (one_minus(i + k) * one_minus(i - k + 1)))
    return (first + second) * (one_minus(i + k) / _laurent((0, 1), (i + k, -1), (a + i, 1), (a + i + 2 * k, -1)))


def _rat_sum(terms: Iterable[RatFun]) -> RatFun:
    """Sum, adding numerators directly over structurally identical denominators."""
    groups: Dict[IntPoly, IntPoly] = {}
    for t in terms:
        groups[t.den] = groups.get(t.den, ZERO) + t.num
    out = RatFun(ZERO)
    for den, num in groups.items():
        out = out + RatFun(num, den)
    return out


def wz_check_q(a: int, i: int, k_range: Optional[Tuple[int, int]] = None) -> WZCheck:
    if a < 1 or i < 1:
        raise BadParams("wz needs a, i >= 1")
    lo, hi = k_range or default_k_range(a, i)
    failures = []

    relation_ok = True
    for k in range(lo, hi + 1):
        lhs = wz_F(a, i + 1, k) - wz_F(a, i, k)
        rhs = wz_G(a, i, k + 1) - wz_G(a, i, k)
        if not rat_equal(lhs, rhs):
            relation_ok = False
            failures.append(f"pair relation at k={k}")

    certificate_ok = closed_forms_ok = rewrite_ok = True
    for k in range(0, min(a, i) + 1):
        F = wz_F(a, i, k)
        if F.is_zero():
            continue
        A, B = wz_A_closed(a, i, k), wz_B_closed(a, i, k)
        if not rat_equal(A, B):
            certificate_ok = False
            failures.append(f"A != B at k={k}")
        if not (rat_equal(A, wz_F(a, i + 1, k) / F - RatFun(ONE))
                and rat_equal(B, (wz_G(a, i, k + 1) - wz_G(a, i, k)) / F)):
            closed_forms_ok = False
            failures.append(f"closed forms disagree with F, G at k={k}")
        factored = (RatFun(ONE) + qpow(a + i) * one_minus(2 * k) / one_minus(i + k)) * RatFun(qb(i + k, 2 * k))
        if not rat_equal(RatFun(lemma5_bracket(a, i, k)), factored):
            rewrite_ok = False
            failures.append(f"bracket rewrite at k={k}")

    telescope_ok = rat_equal(_rat_sum(wz_F(a, i, k) for k in range(0, min(a, i) + 1)), RatFun(ONE))
    if not telescope_ok:
        failures.append("sum_k F(i,k) != 1")

    f0, f1 = wz_F(a, 1, 0), wz_F(a, 1, 1)
    t0 = qpow(a) * one_minus(a + 1) / one_minus(2 * a + 1)
    t1 = one_minus(a) / one_minus(2 * a + 1)
    anchor_ok = rat_equal(f0, t0) and rat_equal(f1, t1) and rat_equal(t0 + t1, RatFun(ONE))
    if not anchor_ok:
        failures.append("i=1 anchor")

    return WZCheck("q_lemma5", (a, i), (lo, hi), relation_ok, telescope_ok, anchor_ok,
                   certificate_ok, closed_forms_ok, rewrite_ok, failures)
