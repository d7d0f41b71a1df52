import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import pair_sets
from qaffine.affine import (
    AffineMonomial,
    OracleCapacityError,
    PolyGenerator,
    affine_monomials,
    closed_form_partial_series,
    full_hilbert_series,
    homogeneous_grading,
    monomial_generators,
    oracle_quotient_dim,
    partial_affinization_product,
    partial_affinization_series,
    sparse_rank,
    theorem_basis_count,
)
from qaffine.ideals import Monomial, MonomialIdeal, standard_monomial_count
from qaffine.parsing import parse_ideal
from qaffine.qseries import QSeries, YQSeries, inv_q_pochhammer, y_pochhammer

PAIR = [(1, 2)]


def test_affine_monomial_degree_and_energy():
    b = AffineMonomial(((2, 3), (1, 0), (2, 1)))
    assert b.factors == ((1, 0), (2, 1), (2, 3))
    assert b.multidegree(2) == (1, 2)
    assert b.energy == 4
    assert str(b) == "x1[0]*x2[1]*x2[3]"


def test_affine_monomials_count_partitions():
    # monomials of x1^2 at energy 4: partitions of 4 into at most 2 parts
    assert len(affine_monomials((2,), 4)) == 3
    assert affine_monomials((0, 0), 0) == [AffineMonomial(())]
    assert affine_monomials((0, 0), 1) == []


def test_closed_form_examples():
    assert closed_form_partial_series(PAIR, (1, 1), 4) == QSeries([0, 1, 2, 3, 4])
    assert closed_form_partial_series([(1, 2), (2, 3)], (0, 0, 0), 5) == QSeries.one(5)
    for m in range(5):
        assert closed_form_partial_series(PAIR, (m, 0), 10) == inv_q_pochhammer(m, 10)


def test_closed_form_rejects_bad_pairs():
    with pytest.raises(ValueError):
        closed_form_partial_series([(2, 1)], (1, 1), 3)
    with pytest.raises(ValueError):
        closed_form_partial_series([(1, 3)], (1, 1), 3)


def test_theorem_basis_count_examples():
    assert theorem_basis_count(PAIR, (1, 1), 1) == 1
    assert theorem_basis_count([(1, 2), (2, 3)], (0, 0, 0), 0) == 1
    assert theorem_basis_count(PAIR, (1, 1), 0) == 0


def test_oracle_examples():
    gens = monomial_generators(PAIR, 2)
    assert oracle_quotient_dim(gens, (1, 1), 0) == 0
    assert oracle_quotient_dim(gens, (1, 1), 2) == 2
    assert oracle_quotient_dim(gens, (2, 0), 1) == 1


def test_oracle_capacity_error():
    gens = monomial_generators(PAIR, 2)
    with pytest.raises(OracleCapacityError):
        oracle_quotient_dim(gens, (2, 2), 4, cap=10)


def test_oracle_needs_homogeneous_generators():
    gens = parse_ideal("x1, x2*x3*x2 - x2*x3*x3").poly_generators()
    with pytest.raises(ValueError):
        oracle_quotient_dim(gens, (0, 2, 1), 2)
    assert homogeneous_grading(gens) == (1, 2, 2)
    assert oracle_quotient_dim(gens, (0, 3), 2, grading=(1, 2, 2)) == 11


def test_sparse_rank():
    assert sparse_rank([{0: 1, 1: 1}, {0: 2, 1: 2}, {1: 3}]) == 2
    assert sparse_rank([]) == 0
    assert sparse_rank([{0: 2, 2: 4}, {1: 6}, {0: 1, 1: 3, 2: 2}]) == 2


def test_full_series_single_pair_product_form():
    full = full_hilbert_series(PAIR, 2, 3, 8)
    # (y1 y2; q)_inf / ((y1; q)_inf (y2; q)_inf), with K = order + 1 factors
    num = y_pochhammer((1, 1), None, 2, 3, 8)
    den1 = _inverse_geometric(0, 3, 8)
    den2 = _inverse_geometric(1, 3, 8)
    assert full == num * den1 * den2


def _inverse_geometric(i, y_bound, order):
    """1/(y_i; q)_inf = sum_k y_i^k / (q)_k inside the box."""
    coeffs = {}
    for k in range(y_bound + 1):
        e = [0, 0]
        e[i] = k
        for j, c in enumerate(inv_q_pochhammer(k, order).coeffs):
            if c:
                coeffs[(tuple(e), j)] = c
    return YQSeries(2, y_bound, order, coeffs)


def test_full_series_q0_layer_is_finite_series():
    pairs = [(1, 2), (2, 3), (1, 3)]
    full = full_hilbert_series(pairs, 3, 3, 6)
    ideal = MonomialIdeal.from_pairs(pairs)
    for M in full.y_box():
        assert full.coefficient(M, 0) == standard_monomial_count(ideal, M)


def test_full_series_free_ring():
    full = full_hilbert_series([], 2, 2, 6)
    for M in full.y_box():
        expect = inv_q_pochhammer(M[0], 6) * inv_q_pochhammer(M[1], 6)
        assert full.partial(M) == expect


def test_partial_affinization_examples():
    assert partial_affinization_series(0, (1, 1), 6).is_zero()
    for N in range(5):
        assert partial_affinization_series(N, (0, 0), 6) == QSeries.one(6)
    # many modes at fixed order: the affinized closed form
    for M in itertools.product(range(4), repeat=2):
        assert partial_affinization_series(20, M, 12) == closed_form_partial_series(PAIR, M, 12)


def test_partial_affinization_against_product():
    for N in range(5):
        prod = partial_affinization_product(N, 4, 15)
        for M in prod.y_box():
            assert partial_affinization_series(N, M, 15) == prod.partial(M)


def test_theorem_oracle_closed_form_small():
    pairs = [(1, 2), (2, 3)]
    gens = monomial_generators(pairs, 3)
    for M in itertools.product(range(3), repeat=3):
        cf = closed_form_partial_series(pairs, M, 4)
        for N in range(5):
            assert oracle_quotient_dim(gens, M, N) == theorem_basis_count(pairs, M, N) == cf[N]


@given(pair_sets(max_n=4, max_pairs=4), st.data())
def test_q0_layer_is_standard_monomial_count(ps, data):
    n, pairs = ps
    M = data.draw(st.tuples(*[st.integers(0, 3)] * n))
    ideal = MonomialIdeal.from_pairs(pairs, n)
    assert closed_form_partial_series(pairs, M, 0)[0] == standard_monomial_count(ideal, M)


@given(pair_sets(max_n=4, max_pairs=4), st.data())
def test_closed_form_nonnegative(ps, data):
    n, pairs = ps
    M = data.draw(st.tuples(*[st.integers(0, 4)] * n))
    assert all(c >= 0 for c in closed_form_partial_series(pairs, M, 15).coeffs)


@given(pair_sets(max_n=3, max_pairs=3), st.data())
def test_oracle_generator_order_independent(ps, data):
    n, pairs = ps
    M = data.draw(st.tuples(*[st.integers(0, 2)] * n))
    N = data.draw(st.integers(0, 3))
    shuffled = list(pairs)
    random.Random(len(pairs)).shuffle(shuffled)
    a = oracle_quotient_dim(monomial_generators(pairs, n), M, N)
    assert a == oracle_quotient_dim(monomial_generators(shuffled[::-1], n), M, N)


def test_poly_generator_modes():
    g = PolyGenerator.from_monomial(Monomial((1, 1)))
    assert g.modes(1) == {AffineMonomial(((1, 0), (2, 1))): 1, AffineMonomial(((1, 1), (2, 0))): 1}
    with pytest.raises(ValueError):
        PolyGenerator(((0, Monomial((1, 0))),))
