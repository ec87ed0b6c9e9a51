"""q-integers, q-factorials and Gaussian polynomials.

Three independent routes to ``binom(n, k)_q``:

* :func:`q_binomial` -- memoized Pascal recurrence (the fast path);
* :func:`q_binomial_via_factorials` -- exact division of q-factorials;
* :func:`brute_force_qbinomial` -- enumeration of words (inversions) or of
  lattice paths in a box (area), the two combinatorial oracles.

:func:`q_binomial_at_one` is a separate integer kernel for ``q = 1``.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from typing import Iterator, Tuple

from .polyalg import ONE, ZERO, IntPoly, exact_div, shift_add

ENUMERATION_LIMIT = 22


class TooLarge(ValueError):
    """Requested enumeration exceeds :data:`ENUMERATION_LIMIT`."""


@dataclass(frozen=True)
class QBinom:
    """Names ``binom(n, k)_q``; ``k`` outside ``[0, n]`` resolves to zero."""

    n: int
    k: int

    def resolve(self) -> IntPoly:
        return q_binomial(self.n, self.k)


@dataclass(frozen=True)
class Word:
    bits: Tuple[int, ...]

    @property
    def zeros(self) -> int:
        return self.bits.count(0)

    @property
    def ones(self) -> int:
        return self.bits.count(1)

    def inversion_set(self):
        b = self.bits
        return {(i, j) for i in range(len(b)) for j in range(i + 1, len(b)) if b[i] > b[j]}

    def inv(self) -> int:
        return len(self.inversion_set())


def words(n: int, k: int) -> Iterator[Word]:
    """All words of length ``n`` with ``k`` zeros and ``n - k`` ones."""
    if k < 0 or k > n:
        return
    for zpos in itertools.combinations(range(n), k):
        bits = [1] * n
        for p in zpos:
            bits[p] = 0
        yield Word(tuple(bits))


def q_int(n: int) -> IntPoly:
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    return IntPoly([1] * n)


def q_factorial(n: int) -> IntPoly:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = ONE
    for j in range(2, n + 1):
        out = out * q_int(j)
    return out


# Shared by every thread in the process.  Inserts are idempotent: two threads
# racing on the same key store equal polynomials.
_memo: dict = {(0, 0): ONE}
_memo_lock = threading.Lock()


def clear_cache() -> None:
    with _memo_lock:
        _memo.clear()
        _memo[(0, 0)] = ONE


def cache_size() -> int:
    return len(_memo)


def _key(n, k):
    return (n, min(k, n - k))


def _lookup(n, k):
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return _memo[_key(n, k)]


def q_binomial(n: int, k: int) -> IntPoly:
    """Gaussian polynomial via ``binom(m,j) = binom(m-1,j) + q^(m-j) binom(m-1,j-1)``.

    Zero whenever ``k`` lies outside ``[0, n]``, which covers every ``n < 0``.
    """
    if k < 0 or k > n:
        return ZERO
    k = min(k, n - k)
    if k == 0:
        return ONE
    hit = _memo.get((n, k))
    if hit is not None:
        return hit
    # Fill only the cells of the Pascal triangle that (n, k) depends on.
    for m in range(1, n + 1):
        for j in range(max(1, k - (n - m)), min(k, m - 1) + 1):
            key = _key(m, j)
            if key in _memo:
                continue
            val = shift_add(_lookup(m - 1, j), _lookup(m - 1, j - 1), m - j)
            _memo.setdefault(key, val)
    return _memo[(n, k)]


def q_binomial_via_factorials(n: int, k: int) -> IntPoly:
    if k < 0 or k > n:
        return ZERO
    return exact_div(q_factorial(n), q_factorial(k) * q_factorial(n - k))


def _check_size(n):
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration limited to n <= {ENUMERATION_LIMIT}, got {n}")


def _from_histogram(hist) -> IntPoly:
    if not hist:
        return ZERO
    out = [0] * (max(hist) + 1)
    for e, c in hist.items():
        out[e] = c
    return IntPoly(out)


def brute_force_qbinomial(n: int, k: int, mode: str = "inversion") -> IntPoly:
    """Generating function of a statistic by exhaustive enumeration.

    ``mode="inversion"`` sums ``q**inv(w)`` over words with ``k`` zeros and
    ``n - k`` ones.  ``mode="area"`` sums ``q**area`` over monotone lattice
    paths in a box of height ``k`` and width ``n - k``, where the area is the
    number of unit cells above the path.  The area below the path is the
    reflected statistic and gives the same polynomial.
    """
    _check_size(n)
    if k < 0 or k > n:
        return ZERO
    hist: dict = {}
    if mode == "inversion":
        for zpos in itertools.combinations(range(n), k):
            # a zero at position p is preceded by (p - t) ones
            inv = sum(p - t for t, p in enumerate(zpos))
            hist[inv] = hist.get(inv, 0) + 1
    elif mode == "area":
        height, width = k, n - k
        # a path is the non-decreasing sequence of heights of its east steps
        for hs in itertools.combinations_with_replacement(range(height + 1), width):
            area = sum(height - h for h in hs)
            hist[area] = hist.get(area, 0) + 1
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _from_histogram(hist)


def q_binomial_at_one(n: int, k: int) -> int:
    """Ordinary binomial coefficient; zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)
