from dataclasses import replace

import pytest
from hypothesis import given

from conftest import monomial_ideals
from qaffine.ideals import (
    Monomial,
    MonomialIdeal,
    admissible_subsets,
    check_complex,
    free_module_count,
    hilbert_numerator,
    hilbert_series_truncated,
    koszul_pairs,
    lcm_monomials,
    standard_monomial_count,
    taylor_resolution,
)
from qaffine.verify.checks import chain_hilbert_recursive


def mono(*exps):
    return Monomial(tuple(exps))


def shifts(res, degree):
    return {tuple(-e for e in s) for _, s in res.modules[degree]}


def test_lcm_examples():
    assert lcm_monomials([mono(1, 1, 0), mono(0, 1, 1)]) == mono(1, 1, 1)
    assert lcm_monomials([mono(2, 0, 1)]) == mono(2, 0, 1)
    chain = [mono(1, 1, 0, 0), mono(0, 1, 1, 0), mono(0, 0, 1, 1)]
    assert lcm_monomials(chain) == mono(1, 1, 1, 1)
    with pytest.raises(ValueError):
        lcm_monomials([])


def test_unit_generator_rejected():
    with pytest.raises(ValueError):
        MonomialIdeal(2, (mono(0, 0),))


def test_generator_order_is_preserved():
    ideal = MonomialIdeal.from_pairs([(2, 3), (1, 2)])
    assert ideal.generators == (mono(0, 1, 1), mono(1, 1, 0))
    assert ideal.pairs() == [(2, 3), (1, 2)]


def test_taylor_single_pair():
    res = taylor_resolution(MonomialIdeal.from_pairs([(1, 2)]))
    assert res.length == 1
    assert shifts(res, 1) == {(-1, -1)}


def test_taylor_chain4(chain4):
    res = taylor_resolution(chain4)
    assert shifts(res, 1) == {(-1, -1, 0, 0), (0, -1, -1, 0), (0, 0, -1, -1)}
    assert shifts(res, 2) == {(-1, -1, -1, 0), (0, -1, -1, -1), (-1, -1, -1, -1)}
    assert shifts(res, 3) == {(-1, -1, -1, -1)}
    assert check_complex(res)


def test_taylor_principal():
    res = taylor_resolution(MonomialIdeal(1, (mono(1),)))
    assert shifts(res, 1) == {(-1,)}
    assert check_complex(res)


def test_differential_signs(chain4):
    res = taylor_resolution(chain4)
    d = res.boundary((1, 2, 3))
    assert d[(2, 3)] == (-1, mono(1, 0, 0, 0))
    assert d[(1, 3)] == (1, mono(0, 0, 0, 0))
    assert d[(1, 2)] == (-1, mono(0, 0, 0, 1))


def test_flipped_sign_breaks_complex(chain4):
    res = taylor_resolution(chain4)
    key = ((1, 2, 3), (1, 3))
    sign, m = res.differential[key]
    broken = replace(res, differential={**res.differential, key: (-sign, m)})
    assert not check_complex(broken)


def test_standard_monomial_count():
    ideal = MonomialIdeal.from_pairs([(1, 2)])
    assert standard_monomial_count(ideal, (3, 0)) == 1
    assert standard_monomial_count(ideal, (1, 1)) == 0
    assert standard_monomial_count(ideal, (0, 0)) == 1
    with pytest.raises(ValueError):
        standard_monomial_count(ideal, (1, -1))


def test_free_module_count():
    assert free_module_count(3, 2) == 6
    assert free_module_count(2, 1, shift=2) == 0
    assert free_module_count(1, 5, shift=5) == 1


def test_hilbert_numerators():
    single = hilbert_numerator(taylor_resolution(MonomialIdeal.from_pairs([(1, 2)])))
    assert single == {(0, 0): 1, (1, 1): -1}
    chain3 = hilbert_numerator(taylor_resolution(MonomialIdeal.from_pairs([(1, 2), (2, 3)])))
    assert chain3 == {(0, 0, 0): 1, (1, 1, 0): -1, (0, 1, 1): -1, (1, 1, 1): 1}


def test_hilbert_numerator_triangle(triangle):
    num = hilbert_numerator(taylor_resolution(triangle))
    assert num == {(0, 0, 0): 1, (1, 1, 0): -1, (0, 1, 1): -1, (1, 0, 1): -1, (1, 1, 1): 2}


def test_single_pair_series_both_methods():
    ideal = MonomialIdeal.from_pairs([(1, 2)])
    basis = hilbert_series_truncated(ideal, 4, method="basis")
    assert basis == hilbert_series_truncated(ideal, 4, method="resolution")
    assert set(M for M, _ in basis.coeffs) == {M for M in basis.y_box() if M[0] * M[1] == 0}


def test_empty_ideal_gives_full_box():
    s = hilbert_series_truncated(MonomialIdeal(2, ()), (2, 3))
    assert len(s.coeffs) == 12


def test_unknown_method():
    with pytest.raises(ValueError):
        hilbert_series_truncated(MonomialIdeal(1, ()), 2, method="magic")


def test_chain4_series_matches_recursion(chain4):
    s = hilbert_series_truncated(chain4, 3)
    rec = chain_hilbert_recursive(4, 3)
    assert {M: c for (M, _), c in s.coeffs.items()} == rec


def test_admissible_worked_examples(chain4, triangle):
    assert admissible_subsets(chain4) == [(1,), (2,), (3,), (1, 2), (2, 3), (1, 2, 3)]
    assert len(admissible_subsets(triangle)) == 7
    assert admissible_subsets(MonomialIdeal.from_pairs([(1, 2)])) == [(1,)]


def test_admissible_drops_disjoint_blocks():
    chain6 = MonomialIdeal.from_pairs([(i, i + 1) for i in range(1, 6)])
    kept = admissible_subsets(chain6)
    # generator sets whose overlap graph is connected are exactly the intervals
    assert kept == [I for I in chain6.subsets() if I == tuple(range(I[0], I[-1] + 1))]
    assert (1, 2, 4, 5) not in kept


def test_koszul_pairs():
    assert ((1, 3), (1,), (3,)) in koszul_pairs(MonomialIdeal.from_pairs([(1, 2), (2, 3), (3, 4)]))
    assert koszul_pairs(MonomialIdeal.from_pairs([(1, 2)])) == []
    assert koszul_pairs(MonomialIdeal.from_pairs([(1, 2), (3, 4)])) == [((1, 2), (1,), (2,))]


@given(monomial_ideals())
def test_random_resolutions_are_complexes(ideal):
    assert check_complex(taylor_resolution(ideal))


@given(monomial_ideals(max_n=4, max_t=4))
def test_basis_equals_resolution(ideal):
    a = hilbert_series_truncated(ideal, 3, method="basis")
    assert a == hilbert_series_truncated(ideal, 3, method="resolution")


@given(monomial_ideals())
def test_numerator_coefficients(ideal):
    num = hilbert_numerator(taylor_resolution(ideal))
    assert num.get((0,) * ideal.n) == 1
    expected = {}
    for I in ideal.subsets():
        e = ideal.lcm(I).exponents
        expected[e] = expected.get(e, 0) + (-1) ** len(I)
    for e, c in expected.items():
        assert num.get(e, 0) == c


@given(monomial_ideals())
def test_admissible_contains_singletons(ideal):
    kept = admissible_subsets(ideal)
    assert all((i,) in kept for i in range(1, ideal.t + 1))
