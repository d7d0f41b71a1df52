"""Cross-checks between identities, closed forms, finite Hilbert series and the oracle."""

from __future__ import annotations

import itertools
import time
from typing import Sequence

from ..affine import (
    PolyGenerator,
    closed_form_partial_series,
    oracle_quotient_dim,
    partial_affinization_product,
    partial_affinization_series,
)
from ..engine.identity import AlternatingSumIdentity
from ..ideals import MonomialIdeal, hilbert_series_truncated
from ..qseries import QSeries
from .evaluate import box_points, evaluate_box
from .report import VerificationReport


def _bounds(box, n: int) -> tuple[int, ...]:
    if isinstance(box, int):
        return (box,) * n
    box = tuple(box)
    if len(box) != n:
        raise ValueError(f"box {box} does not have {n} coordinates")
    return box


def _timed(report: VerificationReport, start: float) -> VerificationReport:
    report.millis = (time.perf_counter() - start) * 1000
    return report


def verify_against_closed_form(identity: AlternatingSumIdentity, pairs, M_box, order: int,
                               subject: str = "identity") -> VerificationReport:
    """Compare with ``q^{sum M_i M_j}/prod (q)_{M_i}`` at every point of the box."""
    start = time.perf_counter()
    pairs = [tuple(p) for p in pairs]
    box = _bounds(M_box, identity.n)
    report = VerificationReport(subject, box, order)
    values = evaluate_box(identity, box, order)
    for M in sorted(values):
        rhs = closed_form_partial_series(pairs, M, order)
        report.record(M, values[M].coeffs, rhs.coeffs)
    return _timed(report, start)


def verify_identities_agree(a: AlternatingSumIdentity, b: AlternatingSumIdentity, M_box,
                            order: int, subject: str = "identities") -> VerificationReport:
    """Pointwise agreement of two identities' right sides."""
    start = time.perf_counter()
    if a.n != b.n:
        raise ValueError("identities live in different numbers of variables")
    box = _bounds(M_box, a.n)
    report = VerificationReport(subject, box, order)
    va, vb = evaluate_box(a, box, order), evaluate_box(b, box, order)
    for M in sorted(va):
        report.record(M, va[M].coeffs, vb[M].coeffs)
    return _timed(report, start)


def verify_delta(identity: AlternatingSumIdentity, M_box, order: int,
                 subject: str = "delta") -> VerificationReport:
    """The right side equals 1 at ``M = 0`` and vanishes elsewhere."""
    start = time.perf_counter()
    box = _bounds(M_box, identity.n)
    report = VerificationReport(subject, box, order)
    values = evaluate_box(identity, box, order)
    for M in sorted(values):
        expect = QSeries.one(order) if not any(M) else QSeries.zero(order)
        report.record(M, values[M].coeffs, expect.coeffs)
    return _timed(report, start)


def verify_against_oracle(identity: AlternatingSumIdentity, generators: Sequence[PolyGenerator],
                          M_box, N_max: int, grading: Sequence[int] | None = None,
                          subject: str = "oracle") -> VerificationReport:
    """``[q^N]`` of the identity against quotient dimensions, ``N <= N_max``.

    With a coarse ``grading`` the identity is summed over all fine
    multidegrees in one class degree; the box then bounds class degrees.
    """
    start = time.perf_counter()
    n = identity.n
    if grading is None:
        box = _bounds(M_box, n)
        classes = {M: [M] for M in box_points(box)}
    else:
        k = max(grading)
        box = _bounds(M_box, k)
        classes = {}
        for D in box_points(box):
            fine = []
            for M in itertools.product(*(range(d + 1) for d in _class_caps(D, grading))):
                if tuple(sum(M[i] for i in range(n) if grading[i] == c + 1)
                         for c in range(k)) == D:
                    fine.append(M)
            classes[D] = fine
    report = VerificationReport(subject, box, N_max)
    fine_caps = [0] * n
    for fines in classes.values():
        for M in fines:
            fine_caps = [max(a, b) for a, b in zip(fine_caps, M)]
    values = evaluate_box(identity, tuple(fine_caps), N_max)
    for D in sorted(classes):
        lhs = [0] * (N_max + 1)
        for M in classes[D]:
            lhs = [a + b for a, b in zip(lhs, values[M].coeffs)]
        rhs = [oracle_quotient_dim(generators, D, N, grading=grading) for N in range(N_max + 1)]
        report.record(D, lhs, rhs)
    return _timed(report, start)


def _class_caps(D, grading):
    return [D[c - 1] for c in grading]


def verify_q0(identity: AlternatingSumIdentity, y_bound, subject: str = "q0") -> VerificationReport:
    """The q^0 layer summed against ``y^M`` equals the finite Hilbert series (basis method)."""
    start = time.perf_counter()
    box = _bounds(y_bound, identity.n)
    report = VerificationReport(subject, box, 0)
    ideal = MonomialIdeal.from_pairs(identity.pairs, identity.n)
    finite = hilbert_series_truncated(ideal, box, method="basis")
    values = evaluate_box(identity, box, 0)
    for M in sorted(values):
        report.record(M, values[M].coeffs, (finite.coefficient(M, 0),))
    return _timed(report, start)


def chain_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal.from_pairs([(i, i + 1) for i in range(1, n)], n)


def chain_hilbert_recursive(n: int, y_bound: int) -> dict[tuple[int, ...], int]:
    """``h_n`` from ``h_n = h_{n-2}/(1-y_n) + y_{n-1}/(1-y_{n-1}) h_{n-3}``, inside the box.

    Base data: ``h_0 = 1``, ``h_1 = 1/(1-y_1)`` and
    ``h_2 = 1/(1-y_2) + y_1/(1-y_1)``, which is the same series as
    ``1/(1-y_1) + y_2/(1-y_2)``: both list the pure powers of ``y_1, y_2``.
    """
    if n == 0:
        return {(): 1}
    if n == 1:
        return {(k,): 1 for k in range(y_bound + 1)}
    if n == 2:
        out = {(0, k): 1 for k in range(y_bound + 1)}
        out.update({(k, 0): 1 for k in range(1, y_bound + 1)})
        return out
    out: dict[tuple[int, ...], int] = {}
    for e, c in chain_hilbert_recursive(n - 2, y_bound).items():
        for k in range(y_bound + 1):
            key = e + (0, k)
            out[key] = out.get(key, 0) + c
    for e, c in chain_hilbert_recursive(n - 3, y_bound).items():
        for k in range(1, y_bound + 1):
            key = e + (0, k, 0)
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def verify_chain_recursion(n_max: int, y_bound: int, n_min: int = 3) -> VerificationReport:
    """The chain recursion against the direct standard-monomial series, ``n_min <= n <= n_max``."""
    if n_min < 2 or n_max < n_min:
        raise ValueError("need 2 <= n_min <= n_max")
    start = time.perf_counter()
    report = VerificationReport("chain-recursion", (y_bound,), 0,
                                note=f"n from {n_min} to {n_max}")
    for n in range(n_min, n_max + 1):
        rec = chain_hilbert_recursive(n, y_bound)
        direct = hilbert_series_truncated(chain_ideal(n), y_bound, method="basis")
        for M in box_points((y_bound,) * n):
            report.record(M, (rec.get(M, 0),), (direct.coefficient(M, 0),))
    return _timed(report, start)


def verify_partial_affinization(N_max: int, M_max: int, order: int) -> VerificationReport:
    """Alternating Gaussian-binomial sum against the product form, coefficientwise."""
    start = time.perf_counter()
    report = VerificationReport("partial-affinization", (M_max, M_max), order,
                                note=f"modes up to {N_max}")
    for N in range(N_max + 1):
        prod = partial_affinization_product(N, (M_max, M_max), order)
        for M in box_points((M_max, M_max)):
            lhs = partial_affinization_series(N, M, order)
            report.record(M, lhs.coeffs, prod.partial(M).coeffs)
    return _timed(report, start)
