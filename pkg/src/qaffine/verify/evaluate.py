"""Exact truncated evaluation of alternating-sum identities.

Terms with a denominator argument ``(q)_k``, ``k < 0``, vanish.  Every bound
variable has a positive shift coefficient somewhere, so ``dM_i <= M_i``
confines the sum to a finite region.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from ..engine.forms import external
from ..engine.identity import AlternatingSumIdentity
from ..qseries import QSeries


def divide_by_pochhammer(coeffs: list[int], k: int, order: int) -> list[int]:
    """Multiply a dense series by ``1/(q)_k`` in place, one geometric factor at a time."""
    for j in range(1, k + 1):
        if j > order:
            break
        for e in range(j, order + 1):
            coeffs[e] += coeffs[e - j]
    return coeffs


class _Plan:
    """Enumeration data shared by every multidegree of an identity."""

    def __init__(self, identity: AlternatingSumIdentity):
        self.identity = identity
        self.ids = identity.var_ids
        self.shift = [identity.shift_vector(v) for v in self.ids]
        for v, a in zip(self.ids, self.shift):
            if any(c < 0 for c in a) or not any(a):
                raise ValueError(f"variable {v} has no bounding positive shift coefficient")
        self.weight = [identity.variable(v).sign_weight for v in self.ids]
        half, bil, squares, linear, _ = identity.decompose()
        self.m_free = identity.is_m_free()
        # the partial exponent with unassigned variables at zero is a lower bound
        self.monotone = (self.m_free and all(w >= 0 for w in half.values())
                         and all(c >= 0 for c in bil.values())
                         and all(c >= 0 for c in squares.values()) and not linear)

    def assignments(self, caps: Sequence[int], order: int | None, extra=None):
        """Yield ``(values, dM)`` with ``dM <= caps`` (and exponent pruning when valid)."""
        n = len(caps)
        E = self.identity.exponent
        ids = self.ids
        base = dict(extra or {})
        values = {v: 0 for v in ids}
        values.update(base)

        def rec(k, used):
            if k == len(ids):
                yield dict(values), tuple(used)
                return
            a = self.shift[k]
            v = ids[k]
            m = 0
            while True:
                new = [u + m * c for u, c in zip(used, a)]
                if any(x > cap for x, cap in zip(new, caps)):
                    break
                values[v] = m
                if self.monotone and order is not None and m and E.value(values) > order:
                    break
                yield from rec(k + 1, new)
                m += 1
            values[v] = 0

        yield from rec(0, [0] * n)


def _term_series(values, plan: _Plan, e: int, order: int):
    top = order - e
    if top < 0:
        return None
    s = [0] * (top + 1)
    s[0] = 1
    for v in plan.ids:
        divide_by_pochhammer(s, values[v], top)
    return s


def _accumulate(acc: dict[int, int], series: list[int], offset: int, sign: int):
    for k, c in enumerate(series):
        if c:
            acc[k + offset] = acc.get(k + offset, 0) + sign * c


def _finish(acc: dict[int, int], order: int) -> QSeries:
    low = [k for k, c in acc.items() if k < 0 and c]
    if low:
        raise ArithmeticError("negative q-powers did not cancel")
    return QSeries(tuple(acc.get(k, 0) for k in range(order + 1)), order)


def _vanishes(identity: AlternatingSumIdentity, M: Sequence[int]) -> bool:
    vals = {external(i + 1): m for i, m in enumerate(M)}
    return any(L.evaluate(vals) != 0 for L in identity.vanishing)


def _sign(plan: _Plan, values) -> int:
    return -1 if sum(w * values[v] for v, w in zip(plan.ids, plan.weight)) % 2 else 1


def evaluate_identity(identity: AlternatingSumIdentity, M: Sequence[int], order: int) -> QSeries:
    """The right side of ``identity`` at multidegree ``M``, truncated at ``q^order``."""
    M = tuple(M)
    if len(M) != identity.n or any(m < 0 for m in M):
        raise ValueError(f"multidegree {M} invalid for n={identity.n}")
    if _vanishes(identity, M):
        return QSeries.zero(order)
    plan = _Plan(identity)
    ext = {external(i + 1): m for i, m in enumerate(M)}
    acc: dict[int, int] = {}
    cache: dict[tuple, list[int] | None] = {}
    for values, dM in plan.assignments(M, order, ext):
        e = identity.exponent.value(values)
        if e > order:
            continue
        rest = tuple(m - d for m, d in zip(M, dM))
        key = (tuple(sorted(values[v] for v in plan.ids)), rest, e)
        if key not in cache:
            s = _term_series(values, plan, e, order)
            if s is not None:
                for k in rest:
                    divide_by_pochhammer(s, k, order - e)
            cache[key] = s
        s = cache[key]
        if s is not None:
            _accumulate(acc, s, e, _sign(plan, values))
    return _finish(acc, order)


def box_points(bounds: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(b + 1) for b in bounds)))


def evaluate_box(identity: AlternatingSumIdentity, bounds: Sequence[int], order: int,
                 points: Iterable[Sequence[int]] | None = None) -> dict[tuple[int, ...], QSeries]:
    """Evaluate on every ``M`` in the box ``0 <= M_i <= bounds_i``.

    For ``M``-free exponents the bound sum is done once: terms are grouped
    by their shift vector ``d`` and then convolved, one axis at a time, with
    ``1/(q)_{M_i - d_i}``.
    """
    bounds = tuple(bounds)
    if len(bounds) != identity.n:
        raise ValueError("box has the wrong number of coordinates")
    wanted = [tuple(p) for p in points] if points is not None else box_points(bounds)
    if not identity.is_m_free():
        return {M: evaluate_identity(identity, M, order) for M in wanted}
    plan = _Plan(identity)
    grouped: dict[tuple, dict[int, int]] = {}
    for values, dM in plan.assignments(bounds, order):
        e = identity.exponent.value(values)
        if e > order:
            continue
        key = (dM, tuple(sorted(values[v] for v in plan.ids)))
        bucket = grouped.setdefault(key, {})
        bucket[e] = bucket.get(e, 0) + _sign(plan, values)
    # rows keep exponent -> coefficient so that negative exponents can cancel
    table: dict[tuple[int, ...], dict[int, int]] = {}
    for (dM, ms), bucket in grouped.items():
        for e, c in bucket.items():
            if not c:
                continue
            series = [0] * (order + 1 - e)
            series[0] = 1
            for m in ms:
                divide_by_pochhammer(series, m, order - e)
            row = table.setdefault(dM, {})
            for k, x in enumerate(series):
                if x:
                    row[k + e] = row.get(k + e, 0) + c * x
    return _convolve_axes(table, bounds, order, wanted)


def _convolve_axes(table, bounds, order, wanted):
    rows = {d: r for d, r in table.items() if r}
    for axis in range(len(bounds)):
        out: dict[tuple, dict[int, int]] = {}
        for d, row in rows.items():
            if not row:
                continue
            for target in range(d[axis], bounds[axis] + 1):
                k = target - d[axis]
                key = d[:axis] + (target,) + d[axis + 1:]
                acc = out.setdefault(key, {})
                low = min(min(row), 0)
                dense = [0] * (order + 1 - low)
                for e, c in row.items():
                    if e <= order:
                        dense[e - low] += c
                divide_by_pochhammer(dense, k, order - low)
                for j, c in enumerate(dense):
                    if c:
                        acc[j + low] = acc.get(j + low, 0) + c
        rows = out
    result = {}
    for M in wanted:
        acc = rows.get(M, {})
        result[M] = _finish(acc, order)
    return result
