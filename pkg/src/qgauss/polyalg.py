"""Exact dense polynomials and rational functions in one variable ``q``.

:class:`IntPoly` stores arbitrary-precision integer coefficients, index ``j``
holding the coefficient of ``q**j``.  The stored tuple never has trailing
zeros, so the zero polynomial is ``()`` and its degree is ``None``.

:class:`RatFun` is a numerator/denominator pair that is never reduced;
equality goes through cross-multiplication.

The inner loops live in ``qgauss._kernels`` (compiled) when it is importable,
and in ``qgauss._kernels_py`` otherwise.  Setting ``QGAUSS_PURE=1`` in the
environment forces the pure-Python kernels.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from . import _kernels_py

if os.environ.get("QGAUSS_PURE"):
    _k = _kernels_py
else:
    try:
        from . import _kernels as _k  # type: ignore[attr-defined]
    except ImportError:
        _k = _kernels_py

KERNEL = "compiled" if _k is not _kernels_py else "python"

__all__ = [
    "IntPoly", "RatFun", "Verdict", "NotDivisible", "KERNEL",
    "add", "sub", "mul", "shift", "exact_div", "eval_at_one",
    "is_nonneg", "is_symmetric", "is_unimodal",
    "rat_equal", "rat_add", "rat_sub", "rat_mul",
]


class NotDivisible(ArithmeticError):
    """Long division left a nonzero remainder."""

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"{divisor} does not divide {dividend} (remainder {remainder})")


class Verdict(NamedTuple):
    """Outcome of a coefficient predicate; ``index`` is the first offending exponent."""

    ok: bool
    index: Optional[int] = None

    def __bool__(self):
        return self.ok


class IntPoly:
    """Immutable dense polynomial with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        n = len(c)
        while n and not c[n - 1]:
            n -= 1
        object.__setattr__(self, "coeffs", tuple(c[:n]))

    @classmethod
    def _wrap(cls, trimmed):
        # caller guarantees canonical form
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", tuple(trimmed))
        return p

    @classmethod
    def monomial(cls, m: int, c: int = 1) -> "IntPoly":
        if m < 0:
            raise ValueError("negative exponent")
        return cls([0] * m + [c])

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls([c])

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    def __getitem__(self, j: int) -> int:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return IntPoly._wrap(_k.add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return IntPoly._wrap(_k.sub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return IntPoly._wrap([-x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([x * other for x in self.coeffs])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return IntPoly._wrap(_k.mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def shift(self, m: int) -> "IntPoly":
        if m < 0:
            raise ValueError("shift must be non-negative")
        if not self.coeffs or not m:
            return self
        return IntPoly._wrap((0,) * m + self.coeffs)

    def at_one(self) -> int:
        return sum(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self):
        return format_sparse(self)

    def to_json(self) -> list:
        """Dense array of decimal strings, index = exponent."""
        return [str(x) for x in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "IntPoly":
        return cls(int(x) for x in data)


def _coerce(x) -> Optional[IntPoly]:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly([x])
    return None


def format_sparse(p: IntPoly) -> str:
    """Render ``p`` as e.g. ``1 + 3q^2 - q^5``."""
    terms = []
    for j, c in enumerate(p.coeffs):
        if not c:
            continue
        mag = abs(c)
        if j == 0:
            body = str(mag)
        else:
            var = "q" if j == 1 else f"q^{j}"
            body = var if mag == 1 else f"{mag}{var}"
        if not terms:
            terms.append(body if c > 0 else "-" + body)
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


ZERO = IntPoly()
ONE = IntPoly([1])


def add(p: IntPoly, r: IntPoly) -> IntPoly:
    return p + r


def sub(p: IntPoly, r: IntPoly) -> IntPoly:
    return p - r


def mul(p: IntPoly, r: IntPoly) -> IntPoly:
    return p * r


def shift(p: IntPoly, m: int) -> IntPoly:
    return p.shift(m)


def shift_add(p: IntPoly, r: IntPoly, m: int) -> IntPoly:
    """``p + q**m * r`` in one pass."""
    return IntPoly._wrap(_k.shift_add(p.coeffs, r.coeffs, m))


def exact_div(p: IntPoly, d: IntPoly) -> IntPoly:
    """Quotient ``t`` with ``p == t * d``; raises :class:`NotDivisible` otherwise."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    quot, rem = _k.divmod_exact(p.coeffs, d.coeffs)
    if rem:
        raise NotDivisible(p, d, IntPoly._wrap(rem))
    return IntPoly._wrap(quot)


def eval_at_one(p: IntPoly) -> int:
    return p.at_one()


def is_nonneg(p: IntPoly) -> Verdict:
    for j, c in enumerate(p.coeffs):
        if c < 0:
            return Verdict(False, j)
    return Verdict(True)


def is_symmetric(p: IntPoly, degree: Optional[int] = None) -> bool:
    """Palindromic test about ``degree`` (default: the stored degree).

    Passing an explicit ambient degree treats ``p`` as a polynomial of that
    nominal degree, so ``q**2`` is symmetric about 4.
    """
    c = p.coeffs
    if not c:
        return True
    n = len(c) - 1 if degree is None else degree
    if n < len(c) - 1:
        return False
    return all(p[j] == p[n - j] for j in range(n + 1))


def is_unimodal(p: IntPoly) -> Verdict:
    """No strict increase after a strict decrease; reports the offending exponent."""
    fell = False
    c = p.coeffs
    for j in range(1, len(c)):
        if c[j] < c[j - 1]:
            fell = True
        elif c[j] > c[j - 1] and fell:
            return Verdict(False, j)
    return Verdict(True)


PolyLike = Union[IntPoly, int]


@dataclass(frozen=True, eq=False)
class RatFun:
    """``num / den`` with no reduction to lowest terms."""

    num: IntPoly
    den: IntPoly = ONE

    def __post_init__(self):
        if not isinstance(self.num, IntPoly):
            object.__setattr__(self, "num", _coerce(self.num))
        if not isinstance(self.den, IntPoly):
            object.__setattr__(self, "den", _coerce(self.den))
        if not self.den:
            raise ZeroDivisionError("RatFun denominator is the zero polynomial")

    def __eq__(self, other):
        if isinstance(other, (IntPoly, int)):
            other = RatFun(_coerce(other))
        if not isinstance(other, RatFun):
            return NotImplemented
        return rat_equal(self, other)

    __hash__ = None  # equality is not structural

    def __add__(self, other):
        return rat_add(self, _as_rat(other))

    __radd__ = __add__

    def __sub__(self, other):
        return rat_sub(self, _as_rat(other))

    def __rsub__(self, other):
        return rat_sub(_as_rat(other), self)

    def __mul__(self, other):
        return rat_mul(self, _as_rat(other))

    __rmul__ = __mul__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __truediv__(self, other):
        other = _as_rat(other)
        return RatFun(self.num * other.den, self.den * other.num)

    def is_zero(self) -> bool:
        return not self.num

    def at_one(self) -> Fraction:
        return Fraction(self.num.at_one(), self.den.at_one())


def _as_rat(x) -> RatFun:
    if isinstance(x, RatFun):
        return x
    return RatFun(_coerce(x))


def rat_equal(x: RatFun, y: RatFun) -> bool:
    return x.num * y.den == y.num * x.den


def rat_add(x: RatFun, y: RatFun) -> RatFun:
    return RatFun(x.num * y.den + y.num * x.den, x.den * y.den)


def rat_sub(x: RatFun, y: RatFun) -> RatFun:
    return RatFun(x.num * y.den - y.num * x.den, x.den * y.den)


def rat_mul(x: RatFun, y: RatFun) -> RatFun:
    return RatFun(x.num * y.num, x.den * y.den)
