"""Affinized coordinate rings of quadratic monomial (and small polynomial) ideals.

Each coordinate ``x_i`` becomes a tower of modes ``x_i[m]``; a graded piece
is labelled by the multidegree ``M`` and the energy ``N`` (sum of modes).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .ideals import Monomial
from .qseries import (
    QSeries,
    YQSeries,
    gaussian_binomial,
    inv_q_pochhammer,
    y_pochhammer,
)

Pair = tuple[int, int]


def _check_pairs(pairs: Iterable[Sequence[int]], n: int) -> list[Pair]:
    out = []
    for p in pairs:
        i, j = p
        if not (1 <= i < j <= n):
            raise ValueError(f"pair {tuple(p)} must satisfy 1 <= i < j <= {n}")
        out.append((i, j))
    return out


@dataclass(frozen=True, order=True)
class AffineMonomial:
    """Commutative product of modes, stored as sorted ``(variable, mode)`` factors."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    def multidegree(self, n: int) -> tuple[int, ...]:
        out = [0] * n
        for i, _ in self.factors:
            out[i - 1] += 1
        return tuple(out)

    @property
    def energy(self) -> int:
        return sum(m for _, m in self.factors)

    def __mul__(self, other: AffineMonomial) -> AffineMonomial:
        return AffineMonomial(self.factors + other.factors)

    def __str__(self) -> str:
        return "*".join(f"x{i}[{m}]" for i, m in self.factors) or "1"


@dataclass(frozen=True)
class PolyGenerator:
    """``sum c * monomial``; each term is one ordered product of variables."""

    terms: tuple[tuple[int, Monomial], ...]

    def __post_init__(self):
        terms = tuple((int(c), m) for c, m in self.terms if c)
        if not terms:
            raise ValueError("a generator needs at least one nonzero term")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_monomial(cls, m: Monomial) -> PolyGenerator:
        return cls(((1, m),))

    @property
    def n(self) -> int:
        return self.terms[0][1].n

    def multidegree(self) -> tuple[int, ...]:
        degs = {m.exponents for _, m in self.terms}
        if len(degs) != 1:
            raise ValueError("generator is not multidegree-homogeneous")
        return degs.pop()

    def modes(self, m: int) -> dict[AffineMonomial, int]:
        """Expansion of ``f[m]``: each monomial ``x_{i_1}..x_{i_r}`` summed over mode splittings."""
        out: dict[AffineMonomial, int] = {}
        for c, mono in self.terms:
            slots = [i + 1 for i, e in enumerate(mono.exponents) for _ in range(e)]
            for split in _compositions(m, len(slots)):
                am = AffineMonomial(tuple(zip(slots, split)))
                out[am] = out.get(am, 0) + c
        return {k: v for k, v in out.items() if v}


def _compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def closed_form_partial_series(pairs: Iterable[Sequence[int]], M: Sequence[int], order: int) -> QSeries:
    """``q^{sum M_i M_j} / prod (q)_{M_i}`` truncated at ``q^order``."""
    M = tuple(M)
    pairs = _check_pairs(pairs, len(M))
    if any(m < 0 for m in M):
        raise ValueError("multidegree must be nonnegative")
    lead = sum(M[i - 1] * M[j - 1] for i, j in pairs)
    if lead > order:
        return QSeries.zero(order)
    s = QSeries.one(order - lead)
    for m in M:
        s = s * inv_q_pochhammer(m, order - lead)
    return QSeries((0,) * lead + s.coeffs, order)


@lru_cache(maxsize=None)
def _partitions_at_most(total: int, parts: int) -> int:
    """Partitions of ``total`` into at most ``parts`` parts."""
    if total == 0:
        return 1
    if parts == 0 or total < 0:
        return 0
    # either fewer than ``parts`` parts, or subtract one from every part
    return _partitions_at_most(total, parts - 1) + _partitions_at_most(total - parts, parts)


def theorem_basis_count(pairs: Iterable[Sequence[int]], M: Sequence[int], N: int) -> int:
    """Count of mode monomials with ``n^(i)`` weakly ordered and the smallest ``>= sum_{(i,j)} M_j``."""
    M = tuple(M)
    pairs = _check_pairs(pairs, len(M))
    floors = [0] * len(M)
    for i, j in pairs:
        floors[i - 1] += M[j - 1]
    # per variable: M_i modes each >= floor, as a partition of the excess into <= M_i parts
    per_var = []
    for m, b in zip(M, floors):
        row = [0] * (N + 1)
        base = m * b
        for e in range(base, N + 1):
            row[e] = _partitions_at_most(e - base, m)
        per_var.append(row)
    acc = [1] + [0] * N
    for row in per_var:
        nxt = [0] * (N + 1)
        for a, ca in enumerate(acc):
            if ca:
                for b in range(N + 1 - a):
                    nxt[a + b] += ca * row[b]
        acc = nxt
    return acc[N]


def affine_monomials(M: Sequence[int], N: int) -> list[AffineMonomial]:
    """All mode monomials of multidegree ``M`` and energy ``N``, canonically sorted."""
    M = tuple(M)
    per_var: list[list[list[tuple[int, ...]]]] = []
    for m in M:
        by_energy = [[] for _ in range(N + 1)]
        for modes in itertools.combinations_with_replacement(range(N + 1), m):
            e = sum(modes)
            if e <= N:
                by_energy[e].append(modes)
        per_var.append(by_energy)
    out = []

    def rec(i, left, acc):
        if i == len(M):
            if left == 0:
                out.append(AffineMonomial(tuple(acc)))
            return
        for e in range(left + 1):
            for modes in per_var[i][e]:
                rec(i + 1, left - e, acc + [(i + 1, x) for x in modes])

    rec(0, N, [])
    return sorted(out)


class OracleCapacityError(RuntimeError):
    """The relation matrix for a graded piece exceeds the configured size cap."""


DEFAULT_ORACLE_CAP = 2_000_000


def _reduce_row(row: dict[int, int], pivots: dict[int, dict[int, int]]) -> dict[int, int]:
    while row:
        lead = min(row)
        piv = pivots.get(lead)
        if piv is None:
            return row
        a, b = piv[lead], row[lead]
        g = gcd(a, b)
        sa, sb = a // g, b // g
        new = {k: sa * v for k, v in row.items()}
        for k, v in piv.items():
            new[k] = new.get(k, 0) - sb * v
        row = {k: v for k, v in new.items() if v}
        if row:
            c = 0
            for v in row.values():
                c = gcd(c, v)
            if c > 1:
                row = {k: v // c for k, v in row.items()}
    return row


def sparse_rank(rows: Iterable[dict[int, int]]) -> int:
    """Exact rank of integer sparse rows by fraction-free echelon reduction."""
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        red = _reduce_row({k: v for k, v in r.items() if v}, pivots)
        if red:
            pivots[min(red)] = red
    return len(pivots)


def homogeneous_grading(generators: Sequence[PolyGenerator]) -> tuple[int, ...]:
    """Finest grading of the variables in which every generator is homogeneous.

    Returns a 1-based class label per variable; variables whose exponents
    trade off inside some generator share a class.
    """
    n = generators[0].n if generators else 0
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in generators:
        first = g.terms[0][1].exponents
        for _, m in g.terms[1:]:
            moved = [i for i, (a, b) in enumerate(zip(first, m.exponents)) if a != b]
            for i in moved[1:]:
                parent[find(i)] = find(moved[0])
    labels: dict[int, int] = {}
    out = []
    for i in range(n):
        out.append(labels.setdefault(find(i), len(labels) + 1))
    return tuple(out)


def _class_degree(exponents: Sequence[int], grading: Sequence[int]) -> tuple[int, ...]:
    out = [0] * max(grading, default=0)
    for e, c in zip(exponents, grading):
        out[c - 1] += e
    return tuple(out)


def _fine_degrees(D: Sequence[int], grading: Sequence[int]) -> list[tuple[int, ...]]:
    """All fine multidegrees whose class degree is ``D``."""
    n = len(grading)
    members = [[i for i in range(n) if grading[i] == c + 1] for c in range(len(D))]
    out = []
    for split in itertools.product(*(list(_compositions(d, len(ms))) for d, ms in zip(D, members))):
        M = [0] * n
        for ms, parts in zip(members, split):
            for i, x in zip(ms, parts):
                M[i] = x
        out.append(tuple(M))
    return out


def oracle_quotient_dim(
    generators: Sequence[PolyGenerator],
    M: Sequence[int],
    N: int,
    cap: int = DEFAULT_ORACLE_CAP,
    grading: Sequence[int] | None = None,
) -> int:
    """``dim`` of the ``(M; N)`` piece of the quotient by all modes of the generators.

    Without ``grading`` every generator must be multidegree-homogeneous and
    ``M`` is a fine multidegree.  With ``grading`` (a class label per
    variable, see :func:`homogeneous_grading`) ``M`` gives one degree per
    class.
    """
    M = tuple(M)
    n = generators[0].n if generators else len(M)
    if grading is None:
        grading = tuple(range(1, len(M) + 1))
        for g in generators:
            g.multidegree()
    grading = tuple(grading)
    if len(grading) != n or len(M) != max(grading, default=0):
        raise ValueError("multidegree does not match the grading")
    basis = [b for fine in _fine_degrees(M, grading) for b in affine_monomials(fine, N)]
    index = {b: k for k, b in enumerate(basis)}
    rows: dict[tuple, dict[int, int]] = {}
    for g in generators:
        if g.n != n:
            raise ValueError("generator and multidegree disagree on n")
        degs = {_class_degree(m.exponents, grading) for _, m in g.terms}
        if len(degs) != 1:
            raise ValueError("generator is not homogeneous for the grading")
        rest = tuple(a - b for a, b in zip(M, degs.pop()))
        if any(r < 0 for r in rest):
            continue
        for m in range(N + 1):
            expansion = g.modes(m)
            for fine in _fine_degrees(rest, grading):
                for b in affine_monomials(fine, N - m):
                    row: dict[int, int] = {}
                    for am, c in expansion.items():
                        col = index[am * b]
                        row[col] = row.get(col, 0) + c
                    row = {k: v for k, v in row.items() if v}
                    if not row:
                        continue
                    key = tuple(sorted(row.items()))
                    rows.setdefault(key, row)
                    if len(rows) * max(len(basis), 1) > cap:
                        raise OracleCapacityError(
                            f"relation matrix for M={M}, N={N} exceeds cap {cap}"
                        )
    return len(basis) - sparse_rank(rows.values())


def monomial_generators(pairs: Iterable[Sequence[int]], n: int) -> list[PolyGenerator]:
    return [PolyGenerator.from_monomial(Monomial.from_variables(n, p)) for p in pairs]


def full_hilbert_series(pairs: Iterable[Sequence[int]], n: int, y_bound, order: int) -> YQSeries:
    pairs = _check_pairs(pairs, n)
    out = YQSeries(n, y_bound, order)
    coeffs = {}
    for M in out.y_box():
        s = closed_form_partial_series(pairs, M, order)
        for k, c in enumerate(s.coeffs):
            if c:
                coeffs[(M, k)] = c
    return out.like(coeffs)


def partial_affinization_series(N_modes: int, M: Sequence[int], order: int) -> QSeries:
    """Alternating Gaussian-binomial sum for ``<x1*x2>`` with modes ``0..N_modes``."""
    M1, M2 = M
    if N_modes < 0:
        raise ValueError("number of modes must be nonnegative")
    total = QSeries.zero(order)
    for m in range(min(M1, M2, N_modes + 1) + 1):
        lead = m * (m - 1) // 2
        if lead > order:
            break
        term = (gaussian_binomial(N_modes + 1, m, order)
                * gaussian_binomial(N_modes + M1 - m, M1 - m, order)
                * gaussian_binomial(N_modes + M2 - m, M2 - m, order)).shift(lead)
        total = total + term * (-1) ** m
    return total


def partial_affinization_product(N_modes: int, y_bound, order: int) -> YQSeries:
    """``(y1 y2; q)_{N+1} / ((y1; q)_{N+1} (y2; q)_{N+1})`` inside the box."""
    num = y_pochhammer((1, 1), N_modes + 1, 2, y_bound, order)
    out = num
    for e in ((1, 0), (0, 1)):
        out = out * _inverse_y_pochhammer(e, N_modes + 1, y_bound, order)
    return out


def _inverse_y_pochhammer(e, N: int, y_bound, order: int) -> YQSeries:
    """``1/(y^e; q)_N`` as a product of geometric series in ``y^e q^k``."""
    out = YQSeries.one(2, y_bound, order)
    for k in range(N):
        geo = {}
        j = 0
        while True:
            ye = tuple(j * x for x in e)
            if any(a > b for a, b in zip(ye, out.y_bound)) or j * k > order:
                break
            geo[(ye, j * k)] = 1
            j += 1
            if not any(e):
                break
        out = out * out.like(geo)
    return out
