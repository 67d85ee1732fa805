import math

import pytest
from erf_reference import ERF_REFERENCE
from hypothesis import given
from hypothesis import strategies as st

from gbo.numerics import adaptive_simpson, bisect_decreasing, erf


@pytest.mark.parametrize("z,ref", ERF_REFERENCE)
def test_erf_reference(z, ref):
    assert abs(erf(z) - float(ref)) <= 1e-13


def test_erf_basics():
    assert erf(0.0) == 0.0
    assert erf(1.0) == pytest.approx(0.8427007929497149, abs=1e-15)
    assert erf(-1.0) == -erf(1.0)
    assert erf(6.5) == 1.0 and erf(-40.0) == -1.0


@given(st.floats(-10, 10))
def test_erf_odd(z):
    assert erf(z) + erf(-z) == 0.0


def test_erf_monotone_on_grid():
    vals = [erf(-7 + i * 1e-3) for i in range(14001)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


@given(st.floats(-7, 7))
def test_erf_matches_libm(z):
    assert abs(erf(z) - math.erf(z)) <= 1e-14


def test_simpson_polynomial_and_gaussian():
    assert adaptive_simpson(lambda x: x ** 3 - 2 * x, 0.0, 2.0) == pytest.approx(0.0, abs=1e-14)
    ref = math.sqrt(2 * math.pi) * math.erf(math.sqrt(0.5))
    assert adaptive_simpson(lambda t: math.exp(-t * t / 2), -1.0, 1.0, tol=1e-9) == pytest.approx(ref, abs=1e-12)


def test_simpson_orientation_and_empty():
    f = math.cos
    assert adaptive_simpson(f, 1.0, 1.0) == 0.0
    assert adaptive_simpson(f, 1.0, 0.0) == pytest.approx(-math.sin(1.0), abs=1e-12)


def test_bisection():
    root = bisect_decreasing(lambda x: 2.0 - x * x, 0.0, 2.0)
    assert root == pytest.approx(math.sqrt(2), abs=1e-12)
    with pytest.raises(ValueError, match="bracketed"):
        bisect_decreasing(lambda x: 1.0, 0.0, 1.0)
