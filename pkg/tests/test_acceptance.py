"""Acceptance gate: ten criteria, exact equality throughout.

Each test prints one ``criterion k: PASS|FAIL`` line.  Run standalone with
``python tests/test_acceptance.py``.
"""

import itertools
import sys
import time

import pytest

from conftest import random_pair_sets
from qaffine.affine import (
    closed_form_partial_series,
    monomial_generators,
    oracle_quotient_dim,
    theorem_basis_count,
)
from qaffine.engine.build import build_identity, extend_identity, reduce_identity
from qaffine.ideals import (
    MonomialIdeal,
    admissible_subsets,
    check_complex,
    standard_monomial_count,
    taylor_resolution,
)
from qaffine.qseries import gaussian_binomial, inv_q_pochhammer
from qaffine.verify.checks import (
    verify_against_closed_form,
    verify_chain_recursion,
    verify_delta,
    verify_identities_agree,
    verify_partial_affinization,
    verify_q0,
)
from qaffine.verify.fixtures import load_fixture, verify_fixture

RANDOM_IDEALS = random_pair_sets(100, max_n=5, max_pairs=5, seed=2026)


@pytest.fixture
def gate(capsys):
    """Yields a recorder; prints the criterion line even under output capture."""
    state = {}

    def record(number, title, checks, budget):
        state.update(number=number, title=title, checks=checks, budget=budget)

    start = time.perf_counter()
    yield record
    elapsed = time.perf_counter() - start
    failed = [name for name, ok in state["checks"] if not ok]
    slow = elapsed >= state["budget"]
    ok = not failed and not slow
    line = f"criterion {state['number']:>2}: {'PASS' if ok else 'FAIL'}  {state['title']}  ({elapsed:.2f}s, budget {state['budget']}s)"
    if failed:
        line += "  failed: " + ", ".join(failed)
    if slow:
        line += "  over budget"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_criterion_01_basic_identity(gate):
    rep = verify_against_closed_form(build_identity([(1, 2)]), [(1, 2)], 5, 30)
    gate(1, "single pair against closed form, M_i <= 5, order 30", [("closed form", rep.passed)], 1)


def test_criterion_02_theorem_against_oracle(gate):
    checks = []
    for n in range(1, 5):
        every = list(itertools.combinations(range(1, n + 1), 2))
        for k in range(1, min(4, len(every)) + 1):
            for P in itertools.combinations(every, k):
                gens = monomial_generators(P, n)
                ok = True
                for M in itertools.product(range(5), repeat=n):
                    if sum(M) > 4:
                        continue
                    cf = closed_form_partial_series(P, M, 5)
                    for N in range(6):
                        if not (oracle_quotient_dim(gens, M, N) == theorem_basis_count(P, M, N) == cf[N]):
                            ok = False
                checks.append((f"n={n} P={P}", ok))
    assert len(checks) == 64
    gate(2, "oracle = basis count = closed form, n <= 4, |P| <= 4, sum M <= 4, N <= 5", checks, 60)


def test_criterion_03_chain_family(gate):
    checks = []
    forms = {}
    for n in (3, 4, 5):
        pairs = [(i, i + 1) for i in range(1, n)]
        ident = build_identity(pairs)
        forms[n] = ident
        checks.append((f"chain n={n}", verify_against_closed_form(ident, pairs, 3, 20).passed))
    reduced, gone = reduce_identity(forms[4])
    checks.append(("m123 summed out", gone == ["m123"]))
    checks.append(("reduced form", verify_against_closed_form(reduced, [(1, 2), (2, 3), (3, 4)], 3, 20).passed))
    checks.append(("reduced = unreduced", verify_identities_agree(reduced, forms[4], 3, 20).passed))
    checks.append(("reduced = printed", reduced.to_json_dict() == load_fixture("chain4-reduced").identity.to_json_dict()))
    gate(3, "chain n = 3, 4, 5 at M_i <= 3, order 20; reduced vs unreduced", checks, 30)


def test_criterion_04_triangle_and_cycle(gate):
    base, _ = reduce_identity(build_identity([(i, i + 1) for i in range(1, 6)]))
    regenerated = extend_identity(base, [(1, 6)])
    frozen = load_fixture("cycle6").identity
    checks = [
        ("triangle", verify_fixture("triangle", box=(2, 2, 2), order=12).passed),
        ("cycle6", verify_fixture("cycle6", box=(1,) * 6, order=8).passed),
        ("cycle6 Q regenerated", regenerated.to_json_dict() == frozen.to_json_dict()),
        ("cycle6 engine form", verify_against_closed_form(regenerated, frozen.pairs, 1, 8).passed),
    ]
    gate(4, "triangle at M_i <= 2, order 12; six-cycle at M_i <= 1, order 8", checks, 60)


def test_criterion_05_lemma(gate):
    rep = verify_fixture("lemma-2mn", box=(4, 4), order=20)
    gate(5, "two-fold pair lemma at M, N <= 4, order 20", [("lemma", rep.passed)], 5)


def test_criterion_06_polynomial_fixtures(gate):
    checks = [
        ("delta", verify_delta(load_fixture("delta").identity, 8, 20).passed),
        ("minimal triangle", verify_fixture("minimal-triangle", box=(2, 2, 2), order=12).passed),
        ("line and cubic", verify_fixture("line-cubic", box=(1, 3, 3), order=10).passed),
    ]
    gate(6, "delta for M <= 8; minimal triangle at M_i <= 2; line and cubic at M1 <= 1, M2, M3 <= 3", checks, 20)


def test_criterion_07_q0_layer(gate):
    checks = [(name, verify_q0(load_fixture(name).identity, 4).passed)
              for name in ("basic-pair", "chain3", "triangle")]
    for n, pairs in RANDOM_IDEALS:
        ideal = MonomialIdeal.from_pairs(pairs, n)
        ok = all(closed_form_partial_series(pairs, M, 0)[0] == standard_monomial_count(ideal, M)
                 for M in itertools.product(range(4), repeat=n))
        checks.append((f"q^0 = h_V for n={n} P={pairs}", ok))
        checks.append((f"identity q^0 for n={n} P={pairs}", verify_q0(build_identity(pairs, n), 2).passed))
    gate(7, "q^0 layers at y-bound 4; q^0 of the affinized series on 100 random ideals", checks, 10)


def test_criterion_08_partial_affinization(gate):
    checks = [("product form", verify_partial_affinization(4, 4, 15).passed)]
    conv = all(gaussian_binomial(N + m, m, N) == inv_q_pochhammer(m, N)
               for m in range(6) for N in range(21))
    checks.append(("Gaussian binomial limit", conv))
    gate(8, "finite-mode sum against product form; Gaussian binomials to 1/(q)_m", checks, 10)


def test_criterion_09_structural_invariants(gate):
    chain4 = MonomialIdeal.from_pairs([(1, 2), (2, 3), (3, 4)])
    triangle = MonomialIdeal.from_pairs([(1, 2), (2, 3), (1, 3)])
    checks = [
        ("chain4 admissible", admissible_subsets(chain4) == [(1,), (2,), (3,), (1, 2), (2, 3), (1, 2, 3)]),
        ("triangle admissible", admissible_subsets(triangle) == triangle.subsets()),
        ("chain4 complex", check_complex(taylor_resolution(chain4))),
    ]
    for n, pairs in RANDOM_IDEALS:
        ideal = MonomialIdeal.from_pairs(pairs, n)
        ident = build_identity(pairs, n)
        half, _, _, linear, const = ident.decompose()
        qp = ident.q_prime()
        support = all(
            (ident.shift_coefficient(i, v.id) > 0) == (ideal.lcm(v.index_set).exponents[i - 1] > 0)
            and ident.shift_coefficient(i, v.id) >= 0
            for v in ident.variables for i in range(1, n + 1))
        ok = (
            check_complex(taylor_resolution(ideal))
            and sorted(v.index_set for v in ident.variables) == sorted(admissible_subsets(ideal))
            and all(v.sign_weight == len(v.index_set) for v in ident.variables)
            and support
            and half == {v.id: len(v.index_set) for v in ident.variables}
            and not linear and not const
            # Q' has nonnegative integer coefficients and no linear part, so Q'(m) >= 0 on the grid
            and not any(qp.lin.values()) and all(c >= 0 for c in qp.quad.values())
        )
        checks.append((f"n={n} P={pairs}", ok))
    gate(9, "d∘d = 0, admissible subsets, invariants on 100 random ideals", checks, 60)


def test_criterion_10_chain_recursion(gate):
    rep = verify_chain_recursion(8, 3, n_min=3)
    gate(10, "chain recursion for 3 <= n <= 8 at y-bound 3", [("recursion", rep.passed)], 10)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
