"""Pure-Python coefficient-list kernels.

Every function takes plain sequences of Python ints (index = exponent) and
returns a *trimmed* list: no trailing zeros, ``[]`` for the zero polynomial.
The compiled module ``_kernels`` exposes the same five functions and is
checked against this one in the test-suite.
"""


def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    del c[n:]
    return c


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for j, y in enumerate(b):
        out[j] += y
    return _trim(out)


def sub(a, b):
    out = list(a)
    if len(out) < len(b):
        out.extend([0] * (len(b) - len(out)))
    for j, y in enumerate(b):
        out[j] -= y
    return _trim(out)


def shift_add(a, b, m):
    """Return ``a + q**m * b``; the Pascal-step of the q-binomial recurrence."""
    if not b:
        return list(a)
    n = max(len(a), len(b) + m)
    out = list(a)
    out.extend([0] * (n - len(out)))
    for j, y in enumerate(b):
        out[j + m] += y
    return _trim(out)


def mul(a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                out[i + j] += x * y
    return _trim(out)


def divmod_exact(p, d):
    """Long division over the integers.

    Returns ``(quotient, remainder)``; the remainder is ``[]`` exactly when
    ``d`` divides ``p`` in Z[q].  If a leading coefficient fails to divide,
    the partially reduced dividend is returned as the (nonzero) remainder.
    """
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    ld = len(d) - 1
    lead = d[ld]
    if len(r) <= ld:
        return [], _trim(r)
    quot = [0] * (len(r) - ld)
    for s in range(len(r) - 1 - ld, -1, -1):
        c = r[s + ld]
        if not c:
            continue
        t, rem = divmod(c, lead)
        if rem:
            return _trim(quot), _trim(r)
        quot[s] = t
        for j in range(ld + 1):
            r[s + j] -= t * d[j]
    return _trim(quot), _trim(r)
