import pytest
from hypothesis import given, strategies as st

from qaffine.ideals import Monomial
from qaffine.parsing import IdealParseError, parse_ideal


def test_monomial_ideal():
    spec = parse_ideal("x1*x2, x2*x3")
    assert spec.n == 3
    assert spec.is_monomial()
    assert spec.pairs() == [(1, 2), (2, 3)]
    assert spec.monomial_ideal().generators == (Monomial((1, 1, 0)), Monomial((0, 1, 1)))


def test_n_override():
    assert parse_ideal("x1*x2", n=4).monomial_ideal().n == 4
    with pytest.raises(ValueError):
        parse_ideal("x1*x5", n=4)


def test_powers_and_coefficients():
    spec = parse_ideal("x1^2*x3, 3*x2 - x1")
    assert not spec.is_monomial()
    assert spec.pairs() is None
    g1, g2 = spec.poly_generators()
    assert g1.terms == ((1, Monomial((2, 0, 1))),)
    assert g2.terms == ((3, Monomial((0, 1, 0))), (-1, Monomial((1, 0, 0))))


def test_polynomial_generator():
    spec = parse_ideal("x1, x2*x3*x2 - x2*x3*x3")
    g = spec.poly_generators()[1]
    assert g.terms == ((1, Monomial((0, 2, 1))), (-1, Monomial((0, 1, 2))))


def test_cubic_is_monomial_but_not_quadratic():
    spec = parse_ideal("x1*x2*x3")
    assert spec.is_monomial()
    assert spec.pairs() is None


@pytest.mark.parametrize("text, offset", [
    ("x1*x2 +", 7),
    ("x1*", 3),
    ("x1 x2", 3),
    ("y1", 0),
    ("", 0),
    ("x1,,x2", 3),
    ("x0", 0),
])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(IdealParseError) as err:
        parse_ideal(text)
    assert err.value.offset == offset
    assert f"offset {offset}" in str(err.value)


def test_constant_generator_rejected():
    with pytest.raises(ValueError):
        parse_ideal("x1, 1")


@given(st.lists(st.tuples(st.integers(1, 6), st.integers(1, 6)).filter(lambda p: p[0] != p[1]),
                min_size=1, max_size=5))
def test_pairs_roundtrip(pairs):
    text = ", ".join(f"x{i}*x{j}" for i, j in pairs)
    spec = parse_ideal(text)
    assert spec.pairs() == [tuple(sorted(p)) for p in pairs]
