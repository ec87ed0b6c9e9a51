"""The compiled kernel and the pure-Python kernel must agree bit for bit."""
import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgauss import _kernels_py as pure

compiled = pytest.importorskip("qgauss._kernels")

small = st.lists(st.integers(-1000, 1000), max_size=40)
# wide enough to force the object path of the compiled convolution
big = st.lists(st.integers(-(10 ** 30), 10 ** 30), max_size=20)
coeff_lists = st.one_of(small, big)


def trimmed(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


@given(coeff_lists, coeff_lists)
def test_add_sub_agree(a, b):
    assert compiled.add(a, b) == pure.add(a, b)
    assert compiled.sub(a, b) == pure.sub(a, b)


@given(coeff_lists, coeff_lists)
def test_mul_agrees(a, b):
    assert compiled.mul(a, b) == pure.mul(a, b)


@given(coeff_lists, coeff_lists, st.integers(0, 10))
def test_shift_add_agrees(a, b, m):
    assert compiled.shift_add(a, b, m) == pure.shift_add(a, b, m)


@given(coeff_lists, coeff_lists.filter(lambda d: trimmed(d)))
def test_divmod_agrees(p, d):
    d = trimmed(d)
    assert compiled.divmod_exact(p, d) == pure.divmod_exact(p, d)
    prod = pure.mul(p, d)
    qt, rem = compiled.divmod_exact(prod, d)
    assert rem == [] and qt == trimmed(p)


def test_int64_boundary():
    # products straddling the 63-bit fast-path limit
    a = [2 ** 31, 2 ** 31]
    b = [2 ** 31] * 4
    assert compiled.mul(a, b) == pure.mul(a, b)
    a = [2 ** 40, -(2 ** 40)]
    assert compiled.mul(a, a) == pure.mul(a, a) == [2 ** 80, -(2 ** 81), 2 ** 80]


@pytest.mark.parametrize("env, expected", [({"QGAUSS_PURE": "1"}, "python"), ({}, "compiled")])
def test_kernel_selection_at_import(env, expected):
    environ = {k: v for k, v in os.environ.items() if k != "QGAUSS_PURE"}
    environ.update(env)
    out = subprocess.run([sys.executable, "-c", "import qgauss.polyalg as p; print(p.KERNEL)"],
                         env=environ, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
