"""Both sides of every identity used in the Gaussian-inequality argument.

Each ``*_check`` returns an :class:`IdentityCheck` holding the two
independently computed sides, or a :class:`CheckReport` for the
non-negativity statements.  Sums over ``k >= 0`` are not given explicit
bounds beyond the support; out-of-range binomials vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .polyalg import (
    ONE, ZERO, IntPoly, NotDivisible, RatFun, exact_div, is_nonneg, is_symmetric,
    is_unimodal, rat_equal, rat_sub,
)
from .qkernel import q_binomial as qb
from .qkernel import q_binomial_at_one as C
from .report import FAIL, PASS, CheckReport

Side = Union[int, IntPoly, RatFun]


class FormMismatch(ArithmeticError):
    """Two formulas that should agree on an instance do not."""

    def __init__(self, what, params, values):
        self.what = what
        self.params = params
        self.values = values
        super().__init__(f"{what} at {params}: {values}")


class BadQuadruple(ValueError):
    pass


@dataclass(frozen=True)
class CkCoefficient:
    i: int
    k: int
    value: int


def _difference(lhs: Side, rhs: Side) -> IntPoly:
    if isinstance(lhs, RatFun) or isinstance(rhs, RatFun):
        lhs = lhs if isinstance(lhs, RatFun) else RatFun(lhs)
        rhs = rhs if isinstance(rhs, RatFun) else RatFun(rhs)
        return lhs.num * rhs.den - rhs.num * lhs.den
    if isinstance(lhs, int) and isinstance(rhs, int):
        return IntPoly([lhs - rhs])
    return IntPoly([lhs]) - rhs if isinstance(lhs, int) else lhs - rhs


def _sides_equal(lhs: Side, rhs: Side) -> bool:
    return not _difference(lhs, rhs)


@dataclass
class IdentityCheck:
    """``lhs`` and ``rhs`` of one instance; ``alt`` holds further right-hand forms."""

    name: str
    params: Dict[str, int]
    lhs: Side
    rhs: Side
    alt: List[Side] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return _sides_equal(self.lhs, self.rhs) and all(_sides_equal(self.lhs, r) for r in self.alt)

    def report(self) -> CheckReport:
        if self.equal:
            return CheckReport(self.name, self.params, PASS)
        bad = next(r for r in [self.rhs, *self.alt] if not _sides_equal(self.lhs, r))
        w = _difference(self.lhs, bad)
        idx = next(j for j, c in enumerate(w) if c)
        return CheckReport(self.name, self.params, FAIL, witness=w, failing_index=idx)


def _term(exponent: int, *factors: IntPoly) -> IntPoly:
    """``q**exponent * prod(factors)``, zero if any factor vanishes."""
    out = ONE
    for f in factors:
        if not f:
            return ZERO
        out = out * f
    if exponent < 0:
        raise ValueError(f"negative q-exponent {exponent} on a nonzero term")
    return out.shift(exponent)


def _nonneg_report(name, params, poly: IntPoly) -> CheckReport:
    v = is_nonneg(poly)
    if v:
        return CheckReport(name, params, PASS)
    return CheckReport(name, params, FAIL, witness=poly, failing_index=v.index)


# q-Vandermonde-Chu, two parametrizations ---------------------------------

def vandermonde_form_j(X: int, Y: int, Z: int) -> IdentityCheck:
    lhs = ZERO
    for j in range(0, Z + 1):
        lhs = lhs + _term(j * (X - Z + j), qb(X, Z - j), qb(Y, j))
    return IdentityCheck("vandermonde-j", {"X": X, "Y": Y, "Z": Z}, lhs, qb(X + Y, Z))


def vandermonde_form_k(X: int, Y: int, Z: int) -> IdentityCheck:
    rhs = ZERO
    for k in range(0, min(X, Z) + 1):
        rhs = rhs + _term((Z - k) * (X - k), qb(X, k), qb(Y, Z - k))
    return IdentityCheck("vandermonde-k", {"X": X, "Y": Y, "Z": Z}, qb(X + Y, Z), rhs)


def _square_expansion(b, c):
    return sum((_term(k * k, qb(b, k), qb(c, k)) for k in range(b + 1)), ZERO)


def remark1_expansion(a: int, b: int, c: int, d: int) -> Tuple[IdentityCheck, IdentityCheck]:
    if a * d != b * c:
        raise BadQuadruple(f"ad != bc for {(a, b, c, d)}")
    params = {"a": a, "b": b, "c": c, "d": d}
    return (
        IdentityCheck("remark1-bc", params, qb(b + c, b), _square_expansion(b, c)),
        IdentityCheck("remark1-ad", params, qb(a + d, a), _square_expansion(a, d)),
    )


# q = 1: the coefficients c_k(i) and the integer lemmas -------------------

def _lemma2_weight(i: int, k: int) -> int:
    """``(i+3k)/(i+k) * C(i+k, 2k)`` with the division checked for exactness."""
    top = (i + 3 * k) * C(i + k, 2 * k)
    if not top:
        return 0
    w, r = divmod(top, i + k)
    if r:
        raise FormMismatch("non-integral (i+3k)/(i+k)*C(i+k,2k)", {"i": i, "k": k}, (top, i + k))
    return w


def ck_forms(i: int, k: int) -> Tuple[int, int, int]:
    a_form = C(i + k - 1, 2 * k) + 2 * C(i + k - 1, 2 * k - 1) - C(i, k)
    b_form = _lemma2_weight(i, k) - C(i, k)
    c_form = C(i + k, 2 * k) + C(i + k - 1, 2 * k - 1) - C(i, k)
    return a_form, b_form, c_form


def ck_coefficient(i: int, k: int) -> CkCoefficient:
    if i < 1 or k < 0:
        raise ValueError("need i >= 1 and k >= 0")
    forms = ck_forms(i, k)
    if len(set(forms)) != 1:
        raise FormMismatch("c_k(i) forms disagree", {"i": i, "k": k}, forms)
    return CkCoefficient(i, k, forms[0])


def ck_table(max_i: int) -> List[List[int]]:
    if max_i < 1:
        raise ValueError("max_i must be >= 1")
    return [[ck_coefficient(i, k).value for k in range(1, i + 1)] for i in range(1, max_i + 1)]


def i1_special_case(a: int) -> IdentityCheck:
    lhs = C(3 * a + 1, a + 1) - C(3 * a + 2, a)
    return IdentityCheck("i1-special", {"a": a}, lhs, C(3 * a + 1, a - 1))


def lemma1_check(a: int, i: int) -> IdentityCheck:
    rhs = sum(C(i, k) * C(3 * a + i, a - k) for k in range(0, a + 1))
    return IdentityCheck("lemma1", {"a": a, "i": i}, C(3 * a + 2 * i, a), rhs)


def lemma2_check(a: int, i: int) -> IdentityCheck:
    ks = range(0, a + 1)
    weighted = sum(_lemma2_weight(i, k) * C(3 * a + i, a - k) for k in ks)
    bracket = sum((C(i + k, 2 * k) + C(i + k - 1, 2 * k - 1)) * C(3 * a + i, a - k) for k in ks)
    return IdentityCheck("lemma2", {"a": a, "i": i}, C(3 * a + i, a + i), weighted, [bracket])


def theorem2_check(a: int, i: int) -> IdentityCheck:
    lhs = C(3 * a + i, a + i) - C(3 * a + 2 * i, a)
    rhs = sum(ck_coefficient(i, k).value * C(3 * a + i, a - k) for k in range(1, a + 1))
    return IdentityCheck("theorem2", {"a": a, "i": i}, lhs, rhs)


def lemma3_telescope(i: int, k: int) -> IdentityCheck:
    """``C(i+k-1, 2k-1) = C(i,k) + sum_{r=1}^{k-1} C(i+r-1, k+r)``."""
    rhs = C(i, k) + sum(C(i + r - 1, k + r) for r in range(1, k))
    return IdentityCheck("lemma3-telescope", {"i": i, "k": k}, C(i + k - 1, 2 * k - 1), rhs)


def lemma3_positive_form(i: int, k: int) -> IdentityCheck:
    """``c_k(i) = C(i+k, 2k) + sum_{r=0}^{k-2} C(i+r, k+1+r)``: a sum of non-negatives."""
    rhs = C(i + k, 2 * k) + sum(C(i + r, k + 1 + r) for r in range(0, k - 1))
    return IdentityCheck("lemma3-positive", {"i": i, "k": k}, ck_coefficient(i, k).value, rhs)


# q-analogues, beta = 2 ----------------------------------------------------

def lemma4_rhs(a: int, i: int) -> IntPoly:
    out = ZERO
    for k in range(0, min(a, i) + 1):
        out = out + _term((a - k) * (i - k), qb(i, k), qb(3 * a + i, a - k))
    return out


def lemma4_check(a: int, i: int) -> IdentityCheck:
    return IdentityCheck("lemma4", {"a": a, "i": i}, qb(3 * a + 2 * i, a), lemma4_rhs(a, i))


def lemma5_bracket(a: int, i: int, k: int) -> IntPoly:
    """``binom(i+k, 2k) + q^(a+i) binom(i+k-1, 2k-1)``."""
    return qb(i + k, 2 * k) + qb(i + k - 1, 2 * k - 1).shift(a + i)


def lemma5_rhs(a: int, i: int) -> IntPoly:
    out = ZERO
    for k in range(0, min(a, i) + 1):
        out = out + _term((a - k) * (i - k), lemma5_bracket(a, i, k), qb(3 * a + i, a - k))
    return out


def lemma5_check(a: int, i: int) -> IdentityCheck:
    return IdentityCheck("lemma5", {"a": a, "i": i}, qb(3 * a + i, a + i), lemma5_rhs(a, i))


def lemma6_sum(i: int, k: int) -> IntPoly:
    """``sum_{r=1}^{k} q^(k+r) binom(i+r-1, k+r)``."""
    return sum((qb(i + r - 1, k + r).shift(k + r) for r in range(1, k + 1)), ZERO)


def lemma6_check(i: int, k: int) -> IdentityCheck:
    return IdentityCheck("lemma6", {"i": i, "k": k}, qb(i + k, 2 * k), qb(i, k) + lemma6_sum(i, k))


def lemma7_difference(i: int, k: int) -> IntPoly:
    return qb(i + k, i - k) - qb(i, i - k)


def lemma7_check(i: int, k: int) -> CheckReport:
    if not 0 <= k <= i:
        raise ValueError("lemma7 needs 0 <= k <= i")
    return _nonneg_report("lemma7", {"i": i, "k": k}, lemma7_difference(i, k))


def theorem3_bracket_poly(a: int, i: int, k: int) -> IntPoly:
    return lemma5_bracket(a, i, k) - qb(i, k)


def theorem3_bracket(a: int, i: int, k: int) -> CheckReport:
    if a < 1 or i < 1 or k < 1:
        raise ValueError("theorem3 bracket needs a, i, k >= 1")
    return _nonneg_report("theorem3-bracket", {"a": a, "i": i, "k": k}, theorem3_bracket_poly(a, i, k))


def theorem3_P(a: int, i: int) -> IntPoly:
    return qb(3 * a + i, a + i) - qb(3 * a + 2 * i, a)


def theorem3_expansion(a: int, i: int) -> IntPoly:
    out = ZERO
    for k in range(1, min(a, i) + 1):
        out = out + _term((a - k) * (i - k), theorem3_bracket_poly(a, i, k), qb(3 * a + i, a - k))
    return out


def theorem3_check(a: int, i: int) -> CheckReport:
    """``P(q)`` is non-negative and equals its bracket expansion."""
    params = {"a": a, "i": i}
    P = theorem3_P(a, i)
    exp = theorem3_expansion(a, i)
    if P != exp:
        w = P - exp
        return CheckReport("theorem3", params, FAIL, witness=w,
                           failing_index=next(j for j, c in enumerate(w) if c),
                           detail="P(q) differs from its expansion")
    return _nonneg_report("theorem3", params, P)


# Partial fractions and the unimodal decomposition ------------------------

def one_minus_q(e: int) -> IntPoly:
    """``1 - q**e`` for ``e >= 0``."""
    return ONE - IntPoly.monomial(e)


def lemma8_lhs(a: int, b: int, k: int) -> RatFun:
    return rat_sub(RatFun(ONE, qb(a + k, k)), RatFun(ONE, qb(b + k, k)))


def lemma8_term(a: int, b: int, k: int, i: int) -> RatFun:
    """The ``i``-th summand, built from its three displayed product pieces."""
    num = IntPoly.monomial(a + i) * one_minus_q(b - a)
    den = one_minus_q(b + i)
    for j in range(i, k + 1):
        num = num * one_minus_q(j)
        den = den * one_minus_q(a + j)
    for j in range(1, i):
        num = num * one_minus_q(j)
        den = den * one_minus_q(b + j)
    return RatFun(num, den)


def lemma8_rhs(a: int, b: int, k: int) -> RatFun:
    out = RatFun(ZERO)
    for i in range(1, k + 1):
        out = out + lemma8_term(a, b, k, i)
    return out


def lemma8_check(a: int, b: int, k: int) -> IdentityCheck:
    if not 0 <= k <= a < b:
        raise ValueError("lemma8 needs 0 <= k <= a < b")
    return IdentityCheck("lemma8", {"a": a, "b": b, "k": k}, lemma8_lhs(a, b, k), lemma8_rhs(a, b, k))


@dataclass
class Lemma9Decomposition:
    n: int
    k: int
    alpha: int
    d: int
    U: IntPoly
    difference: IntPoly
    geometric_part: IntPoly
    quotient: IntPoly
    remainder_part: IntPoly


def geometric_block(m: int, step: int) -> IntPoly:
    """``(1 - q^(m*step)) / (1 - q^step)`` as ``sum_{t<m} q^(t*step)``; zero when ``m == 0``."""
    out = [0] * (max(m - 1, 0) * step + 1) if m > 0 else []
    for t in range(m):
        out[t * step] = 1
    return IntPoly(out)


def lemma9_decompose(n: int, k: int) -> Lemma9Decomposition:
    """Split ``binom(n,k) - binom(n,k-1)`` as in the algebraic proof.

    Raises :class:`NotDivisible` if ``U (1 - q^(d+1))`` is not a multiple
    of ``1 - q^k``.
    """
    if k < 1 or 2 * k > n:
        raise ValueError("lemma9 needs 1 <= k and 2k <= n")
    alpha, d = divmod(n, k)
    U = qb(n, k - 1)
    quotient = exact_div(U * one_minus_q(d + 1), one_minus_q(k))
    return Lemma9Decomposition(
        n=n, k=k, alpha=alpha, d=d, U=U,
        difference=qb(n, k) - U,
        geometric_part=(U * geometric_block(alpha - 2, k)).shift(k),
        quotient=quotient,
        remainder_part=quotient.shift((alpha - 1) * k),
    )


def lemma9_check(n: int, k: int) -> CheckReport:
    params = {"n": n, "k": k}
    try:
        dec = lemma9_decompose(n, k)
    except NotDivisible as exc:
        return CheckReport("lemma9", params, FAIL, witness=exc.remainder,
                           failing_index=next(j for j, c in enumerate(exc.remainder) if c),
                           detail="U(1-q^(d+1)) not divisible by 1-q^k")
    diff = dec.difference
    rebuilt = dec.geometric_part + dec.remainder_part
    if rebuilt != diff:
        w = rebuilt - diff
        return CheckReport("lemma9", params, FAIL, witness=w,
                           failing_index=next(j for j, c in enumerate(w) if c),
                           detail="decomposition does not reproduce the difference")
    if not (is_unimodal(dec.U) and is_symmetric(dec.U)):
        return CheckReport("lemma9", params, FAIL, witness=dec.U,
                           failing_index=is_unimodal(dec.U).index, detail="U not unimodal/symmetric")
    for label, poly in (("difference", diff), ("quotient", dec.quotient)):
        v = is_nonneg(poly)
        if not v:
            return CheckReport("lemma9", params, FAIL, witness=poly, failing_index=v.index,
                               detail=f"negative coefficient in {label}")
    return CheckReport("lemma9", params, PASS)
