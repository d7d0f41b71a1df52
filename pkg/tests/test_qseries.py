import pytest
from hypothesis import given, strategies as st

from qaffine.qseries import (
    QSeries,
    YQSeries,
    format_qseries,
    gaussian_binomial,
    inv_q_pochhammer,
    q_pochhammer_poly,
    qs_add,
    qs_mul,
    y_pochhammer,
)

coeff_lists = st.lists(st.integers(-50, 50), min_size=1, max_size=12)


def test_add_cancels():
    assert qs_add(QSeries([1, 1]), QSeries([1, -1])) == QSeries([2, 0])


def test_add_zero_is_identity():
    a = QSeries([3, -1, 4], 2)
    assert qs_add(a, QSeries.zero(2)) == a


def test_add_mixed_orders_takes_minimum():
    s = qs_add(QSeries([1, -1, -1]), QSeries([0, 1], 5))
    assert s.order == 2
    assert s == QSeries([1, 0, -1])
    assert qs_add(QSeries([1, 1], 1), QSeries([1, 1, 1, 1])).order == 1


def test_mul_telescopes_geometric_series():
    assert qs_mul(QSeries([1, -1], 3), QSeries([1, 1, 1, 1])) == QSeries([1, 0, 0, 0])


def test_mul_by_one_and_binomial_square():
    a = QSeries([2, 0, -7, 1])
    assert qs_mul(a, QSeries.one(3)) == a
    assert qs_mul(QSeries([1, 1], 2), QSeries([1, 1], 2)) == QSeries([1, 2, 1])


def test_truncation_never_reports_past_order():
    s = QSeries([1, 1, 1, 1, 1, 1], 2)
    assert len(s.coeffs) == 3
    assert (s * s).coeffs == (1, 2, 3)
    with pytest.raises(IndexError):
        s[3]


def test_q_pochhammer_examples():
    assert q_pochhammer_poly(0, 4) == QSeries.one(4)
    assert q_pochhammer_poly(1, 4) == QSeries([1, -1], 4)
    assert q_pochhammer_poly(3, 6) == QSeries([1, -1, -1, 0, 1, 1, -1])


def test_inverse_pochhammer_examples():
    assert inv_q_pochhammer(0, 5) == QSeries.one(5)
    assert inv_q_pochhammer(1, 3) == QSeries([1, 1, 1, 1])
    assert inv_q_pochhammer(2, 4) == QSeries([1, 1, 2, 2, 3])


def test_gaussian_binomial_examples():
    assert gaussian_binomial(5, 0, 6) == QSeries.one(6)
    assert gaussian_binomial(2, 1, 4) == QSeries([1, 1], 4)
    assert gaussian_binomial(4, 2, 6) == QSeries([1, 1, 2, 1, 1], 6)
    assert gaussian_binomial(3, 4, 6).is_zero()


def test_pochhammer_times_inverse_is_one():
    for N in range(13):
        for order in (0, 7, 40):
            assert qs_mul(q_pochhammer_poly(N, order), inv_q_pochhammer(N, order)) == QSeries.one(order)


def test_gaussian_binomial_converges_to_inverse_pochhammer():
    for m in range(6):
        for N in range(21):
            assert gaussian_binomial(N + m, m, N) == inv_q_pochhammer(m, N)


def test_gaussian_binomial_symmetric_and_nonnegative():
    for m in range(13):
        for n in range(m + 1):
            g = gaussian_binomial(m, n, 80)
            assert g == gaussian_binomial(m, m - n, 80)
            assert all(c >= 0 for c in g.coeffs)
            # the polynomial has degree n(m-n) and value binom(m, n) at q = 1
            assert sum(g.coeffs) == __import__("math").comb(m, n)


def test_format_qseries():
    assert format_qseries(QSeries([0, 1, 2, 3, 4])) == "q + 2q^2 + 3q^3 + 4q^4"
    assert format_qseries(QSeries([1, -1, 0, -2])) == "1 - q - 2q^3"
    assert format_qseries(QSeries.zero(3)) == "0"
    assert format_qseries(QSeries([1], 2), show_order=True) == "1 + O(q^3)"


def test_y_pochhammer_examples():
    assert y_pochhammer((1,), 0, 1, 3, 2) == YQSeries.one(1, 3, 2)
    assert y_pochhammer((1,), 1, 1, 3, 2).coeffs == {((0,), 0): 1, ((1,), 0): -1}
    s = y_pochhammer((1, 1), 2, 2, 2, 1)
    # (1 - y1 y2)(1 - y1 y2 q): the cross term y1^2 y2^2 q fits in this box
    assert s.coeffs == {((0, 0), 0): 1, ((1, 1), 0): -1, ((1, 1), 1): -1, ((2, 2), 1): 1}
    small = y_pochhammer((1, 1), 2, 2, 1, 1)
    assert small.coeffs == {((0, 0), 0): 1, ((1, 1), 0): -1, ((1, 1), 1): -1}


def test_yq_series_drops_keys_outside_box():
    s = YQSeries(2, (1, 2), 3, {((2, 0), 0): 5, ((1, 2), 4): 1, ((1, 1), 3): 2})
    assert s.coeffs == {((1, 1), 3): 2}
    assert s.coefficient((0, 0)) == 0
    assert s.partial((1, 1)) == QSeries([0, 0, 0, 2])


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_laws(a, b, c):
    A, B, C = QSeries(a, 8), QSeries(b, 8), QSeries(c, 8)
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A - A == QSeries.zero(8)


@given(coeff_lists, st.integers(0, 10))
def test_shift_matches_monomial_product(a, k):
    A = QSeries(a, 10)
    assert A.shift(k) == A * QSeries.monomial(k, 10)


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 20))
def test_gaussian_pascal_rule(m, n, order):
    # [m+1, n] = [m, n-1] + q^n [m, n]
    lhs = gaussian_binomial(m + 1, n, order)
    rhs = gaussian_binomial(m, n - 1, order) + gaussian_binomial(m, n, order).shift(n)
    assert lhs == rhs
