"""Exact truncated power series in ``q`` and in ``(y_1, ..., y_n; q)``.

All coefficients are Python integers.  A :class:`QSeries` stores a dense
coefficient list up to and including its truncation order; a
:class:`YQSeries` stores a sparse map from ``(y-exponent, q-exponent)``
to coefficient inside a finite box.  Binary operations between series of
different orders silently truncate to the smaller order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence


class QSeries:
    """Truncated series ``c_0 + c_1 q + ... + c_order q^order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[int], order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        elif len(coeffs) < order + 1:
            coeffs.extend([0] * (order + 1 - len(coeffs)))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, order: int) -> QSeries:
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> QSeries:
        return cls((1,), order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> QSeries:
        """``coeff * q^exponent``; vanishes when the exponent is past ``order``."""
        if exponent < 0:
            raise ValueError("negative q-exponent")
        if exponent > order:
            return cls.zero(order)
        return cls([0] * exponent + [coeff], order)

    def __getitem__(self, k: int) -> int:
        if 0 <= k <= self.order:
            return self.coeffs[k]
        raise IndexError(f"q^{k} is outside truncation order {self.order}")

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == (other,) + (0,) * self.order
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"QSeries({list(self.coeffs)!r}, order={self.order})"

    def __str__(self) -> str:
        return format_qseries(self)

    def truncate(self, order: int) -> QSeries:
        if order > self.order:
            raise ValueError("cannot raise truncation order")
        return QSeries(self.coeffs[: order + 1], order)

    def __neg__(self) -> QSeries:
        return QSeries([-c for c in self.coeffs], self.order)

    def __add__(self, other: QSeries) -> QSeries:
        if isinstance(other, int):
            other = QSeries((other,), self.order)
        order = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return QSeries([a[k] + b[k] for k in range(order + 1)], order)

    __radd__ = __add__

    def __sub__(self, other: QSeries) -> QSeries:
        return self + (-other)

    def __mul__(self, other) -> QSeries:
        if isinstance(other, int):
            return QSeries([other * c for c in self.coeffs], self.order)
        order = min(self.order, other.order)
        return QSeries(_mul_dense(self.coeffs, other.coeffs, order), order)

    __rmul__ = __mul__

    def shift(self, k: int) -> QSeries:
        """Multiply by ``q^k`` (``k >= 0``), keeping the order."""
        if k < 0:
            raise ValueError("negative shift")
        if k > self.order:
            return QSeries.zero(self.order)
        return QSeries([0] * k + list(self.coeffs[: self.order + 1 - k]), self.order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def first_difference(self, other: QSeries) -> int | None:
        """Lowest exponent where the two series differ (within the smaller order)."""
        for k in range(min(self.order, other.order) + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None


def _mul_dense(a: Sequence[int], b: Sequence[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai:
            for j in range(order + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
    return out


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


@lru_cache(maxsize=None)
def _pochhammer_coeffs(N: int, order: int) -> tuple[int, ...]:
    coeffs = [1] + [0] * order
    for k in range(1, min(N, order) + 1):
        # multiply by (1 - q^k) in place, high exponents first
        for e in range(order, k - 1, -1):
            coeffs[e] -= coeffs[e - k]
    return tuple(coeffs)


def q_pochhammer_poly(N: int, order: int) -> QSeries:
    """Truncated expansion of ``(q)_N = prod_{k=1}^N (1 - q^k)``."""
    if N < 0:
        raise ValueError("(q)_N needs N >= 0")
    return QSeries(_pochhammer_coeffs(N, order), order)


@lru_cache(maxsize=None)
def _inv_pochhammer_coeffs(m: int, order: int) -> tuple[int, ...]:
    if m == 0:
        return (1,) + (0,) * order
    if m > order:
        # factors 1/(1 - q^k) with k > order are 1 inside the window
        return _inv_pochhammer_coeffs(order, order)
    coeffs = list(_inv_pochhammer_coeffs(m - 1, order))
    # multiply by 1/(1 - q^m) = 1 + q^m + q^{2m} + ...
    for e in range(m, order + 1):
        coeffs[e] += coeffs[e - m]
    return tuple(coeffs)


def inv_q_pochhammer(m: int, order: int) -> QSeries:
    """Truncated ``1/(q)_m``: partitions into at most ``m`` parts.

    Built by successive multiplication with geometric series, never by
    polynomial division.
    """
    if m < 0:
        raise ValueError("1/(q)_m needs m >= 0")
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    return QSeries(_inv_pochhammer_coeffs(m, order), order)


def inv_q_pochhammer_coeffs(m: int, order: int) -> tuple[int, ...]:
    """Raw coefficient tuple of :func:`inv_q_pochhammer` (cached)."""
    return _inv_pochhammer_coeffs(m, order)


@lru_cache(maxsize=None)
def _gaussian_coeffs(m: int, n: int) -> tuple[int, ...]:
    # q-Pascal: [m, n] = [m-1, n-1] + q^n [m-1, n]
    if n == 0 or n == m:
        return (1,)
    left = _gaussian_coeffs(m - 1, n - 1)
    right = _gaussian_coeffs(m - 1, n)
    out = [0] * (n * (m - n) + 1)
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(right):
        out[i + n] += c
    return tuple(out)


def gaussian_binomial(m: int, n: int, order: int) -> QSeries:
    """Gaussian polynomial ``(q)_m / ((q)_n (q)_{m-n})``, zero outside ``0 <= n <= m``."""
    if n < 0 or m < 0 or n > m:
        return QSeries.zero(order)
    return QSeries(_gaussian_coeffs(m, n), order)


def format_qseries(s: QSeries, var: str = "q", show_order: bool = False) -> str:
    terms = []
    for k, c in enumerate(s.coeffs):
        if not c:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        text = "0"
    else:
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
    if show_order:
        text += f" + O({var}^{s.order + 1})"
    return text


class YQSeries:
    """Sparse truncated series in ``y_1..y_n`` and ``q``.

    Coefficients live in the box ``0 <= y_i-exponent <= y_bound[i]`` and
    ``0 <= q-exponent <= q_order``; keys outside the box are dropped on
    construction.
    """

    __slots__ = ("n", "y_bound", "q_order", "coeffs")

    def __init__(
        self,
        n: int,
        y_bound: int | Sequence[int],
        q_order: int,
        coeffs: Mapping[tuple[tuple[int, ...], int], int] | None = None,
    ):
        if isinstance(y_bound, int):
            y_bound = (y_bound,) * n
        y_bound = tuple(y_bound)
        if len(y_bound) != n:
            raise ValueError("y_bound length must equal n")
        self.n = n
        self.y_bound = y_bound
        self.q_order = q_order
        clean = {}
        for (ye, qe), c in (coeffs or {}).items():
            if c and self._in_box(ye, qe):
                clean[(tuple(ye), qe)] = c
        self.coeffs = clean

    def _in_box(self, ye, qe) -> bool:
        return 0 <= qe <= self.q_order and all(
            0 <= e <= b for e, b in zip(ye, self.y_bound)
        )

    @classmethod
    def one(cls, n, y_bound, q_order) -> YQSeries:
        return cls(n, y_bound, q_order, {((0,) * n, 0): 1})

    @classmethod
    def monomial(cls, n, y_bound, q_order, y_exp, q_exp=0, coeff=1) -> YQSeries:
        return cls(n, y_bound, q_order, {(tuple(y_exp), q_exp): coeff})

    def like(self, coeffs) -> YQSeries:
        return YQSeries(self.n, self.y_bound, self.q_order, coeffs)

    def _check(self, other: YQSeries) -> tuple[tuple[int, ...], int]:
        if self.n != other.n:
            raise ValueError("y-variable counts differ")
        yb = tuple(min(a, b) for a, b in zip(self.y_bound, other.y_bound))
        return yb, min(self.q_order, other.q_order)

    def __getitem__(self, key) -> int:
        ye, qe = key
        return self.coeffs.get((tuple(ye), qe), 0)

    def coefficient(self, y_exp, q_exp=0) -> int:
        return self.coeffs.get((tuple(y_exp), q_exp), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, YQSeries):
            return NotImplemented
        return (
            self.n == other.n
            and self.y_bound == other.y_bound
            and self.q_order == other.q_order
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        return (
            f"YQSeries(n={self.n}, y_bound={self.y_bound}, "
            f"q_order={self.q_order}, terms={len(self.coeffs)})"
        )

    def __neg__(self) -> YQSeries:
        return self.like({k: -c for k, c in self.coeffs.items()})

    def __add__(self, other: YQSeries) -> YQSeries:
        yb, qo = self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return YQSeries(self.n, yb, qo, out)

    def __sub__(self, other: YQSeries) -> YQSeries:
        return self + (-other)

    def __mul__(self, other) -> YQSeries:
        if isinstance(other, int):
            return self.like({k: other * c for k, c in self.coeffs.items()})
        yb, qo = self._check(other)
        out: dict = {}
        for (ya, qa), ca in self.coeffs.items():
            for (yb_, qb), cb in other.coeffs.items():
                qe = qa + qb
                if qe > qo:
                    continue
                ye = tuple(x + y for x, y in zip(ya, yb_))
                if any(e > b for e, b in zip(ye, yb)):
                    continue
                key = (ye, qe)
                out[key] = out.get(key, 0) + ca * cb
        return YQSeries(self.n, yb, qo, out)

    __rmul__ = __mul__

    def q0_layer(self) -> YQSeries:
        """The ``q^0`` part, as a series with ``q_order`` 0."""
        return YQSeries(
            self.n,
            self.y_bound,
            0,
            {k: c for k, c in self.coeffs.items() if k[1] == 0},
        )

    def restrict(self, y_bound=None, q_order=None) -> YQSeries:
        yb = self.y_bound if y_bound is None else y_bound
        qo = self.q_order if q_order is None else q_order
        return YQSeries(self.n, yb, qo, self.coeffs)

    def partial(self, M: Sequence[int]) -> QSeries:
        """Coefficient of ``y^M`` as a q-series."""
        M = tuple(M)
        return QSeries(
            [self.coeffs.get((M, k), 0) for k in range(self.q_order + 1)],
            self.q_order,
        )

    def y_box(self):
        return product(*(range(b + 1) for b in self.y_bound))


def geometric_y(n: int, y_bound, q_order: int, i: int) -> YQSeries:
    """Truncated ``1/(1 - y_i)`` (``i`` is 0-based)."""
    s = YQSeries(n, y_bound, q_order)
    coeffs = {}
    for e in range(s.y_bound[i] + 1):
        ye = [0] * n
        ye[i] = e
        coeffs[(tuple(ye), 0)] = 1
    return s.like(coeffs)


def y_pochhammer(
    y_exponent: Sequence[int],
    N: int | None,
    n: int,
    y_bound,
    q_order: int,
) -> YQSeries:
    """Truncated ``(y^e; q)_N = prod_{k=1}^N (1 - y^e q^{k-1})``.

    ``N=None`` means ``N = infinity``; factors whose ``q`` power exceeds
    the truncation order are dropped when ``y^e`` has positive degree
    (they only touch coefficients outside the box).
    """
    y_exponent = tuple(y_exponent)
    result = YQSeries.one(n, y_bound, q_order)
    if N is None:
        if not any(y_exponent):
            raise ValueError("(1;q)_infinity is not a power series unit")
        N = q_order + 1
    for k in range(1, N + 1):
        factor = result.like({((0,) * n, 0): 1, (y_exponent, k - 1): -1})
        result = result * factor
    return result
