from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cjtail.errors import OrderError
from cjtail.theta import MonomialSpec, ThetaSeries, pentagonal, series_product, theta

A, B = MonomialSpec(-1, Fraction(2)), MonomialSpec(-1, Fraction(1))


def _pentagonal_by_sum(order):
    """Sum of (-1)^n q^((3n^2 + n)/2) over |n| <= 3 and beyond as needed."""
    out = [0] * order
    for n in range(-order, order + 1):
        e = (3 * n * n + n) // 2
        if e < order:
            out[e] += (-1) ** (n % 2)
    return out


def test_f_minus_q2_minus_q():
    f = theta(A, B, 8)
    assert list(f.coeffs) == [1, -1, -1, 0, 0, 1, 0, 1]
    assert list(theta(A, B, 20).coeffs) == _pentagonal_by_sum(20) == list(pentagonal(20).coeffs)


def test_square_matches_golden_tail():
    f = theta(A, B, 8)
    assert list(series_product(f, f, 8).coeffs) == [1, -2, -1, 2, 1, 2, -2, 0]
    assert str(series_product(f, f, 8)).startswith("1 - 2q - q^2 + 2q^3 + q^4 + 2q^5 - 2q^6")


def test_other_specializations():
    # f(q, q) = sum q^(n^2), twice the squares
    assert list(theta(MonomialSpec.parse("q"), MonomialSpec.parse("q"), 10).coeffs) == \
        [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
    # f(-q, -q^2) equals f(-q^2, -q) by symmetry of the sum
    assert theta(B, A, 12).coeffs == theta(A, B, 12).coeffs


def test_order_one():
    for a, b in ((A, B), (MonomialSpec.parse("q"), MonomialSpec.parse("q^3"))):
        assert theta(a, b, 1).coeffs == (1,)


def test_errors():
    with pytest.raises(ValueError, match="does not truncate"):
        theta(MonomialSpec(1, Fraction(0)), MonomialSpec(1, Fraction(0)), 4)
    with pytest.raises(ValueError):
        MonomialSpec(1, Fraction(1, 3))
    with pytest.raises(ValueError):
        MonomialSpec(2, Fraction(1))
    with pytest.raises(ValueError):
        MonomialSpec(1, Fraction(-1))
    with pytest.raises(ValueError):
        MonomialSpec.parse("x^2")
    with pytest.raises(ValueError):
        theta(A, B, 0)
    with pytest.raises(ValueError, match="non-integral"):
        theta(MonomialSpec.parse("q^1/2"), MonomialSpec.parse("q"), 4)
    with pytest.raises(OrderError):
        series_product(theta(A, B, 3), theta(A, B, 5), 4)
    with pytest.raises(OrderError):
        theta(A, B, 3).truncate(4)


def test_parse_and_str():
    assert MonomialSpec.parse("-q^2") == A
    assert MonomialSpec.parse("- q") == B
    assert MonomialSpec.parse("+q^(3/2)") == MonomialSpec(1, Fraction(3, 2))
    for m in (A, B, MonomialSpec(1, Fraction(3, 2))):
        assert MonomialSpec.parse(str(m)) == m
    assert theta(A, B, 4).to_json() == {"coefficients": [1, -1, -1, 0], "order": 4}


series = st.integers(1, 12).flatmap(lambda n: st.lists(st.integers(-5, 5), min_size=n, max_size=n)).map(
    lambda c: ThetaSeries(tuple(c), len(c)))


def _cut(s, k):
    return ThetaSeries(s.coeffs[:k], k)


@settings(max_examples=100, deadline=None)
@given(series, series, series)
def test_product_properties(x, y, z):
    k = min(x.order, y.order, z.order)
    x, y, z = _cut(x, k), _cut(y, k), _cut(z, k)
    assert series_product(x, y, k).coeffs == series_product(y, x, k).coeffs
    left = series_product(series_product(x, y, k), z, k)
    right = series_product(x, series_product(y, z, k), k)
    assert left.coeffs == right.coeffs
    one = ThetaSeries((1,) + (0,) * (k - 1), k)
    assert series_product(x, one, k).coeffs == x.coeffs
