"""Monomial ideals, Taylor's resolution and finite Hilbert series.

Generators are kept in the order given; subsets of generators are written as
strictly increasing 1-based index tuples (``IndexSet``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .qseries import YQSeries

IndexSet = tuple[int, ...]


def index_set(indices: Iterable[int]) -> IndexSet:
    out = tuple(indices)
    if not out:
        raise ValueError("index set must be nonempty")
    if any(a >= b for a, b in zip(out, out[1:])) or out[0] < 1:
        raise ValueError(f"index set {out} must be strictly increasing and 1-based")
    return out


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError("monomial exponents must be nonnegative")

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * n)

    @classmethod
    def from_variables(cls, n: int, variables: Iterable[int]) -> Monomial:
        """Product of ``x_i`` over the (1-based, repeatable) indices given."""
        exps = [0] * n
        for i in variables:
            if not 1 <= i <= n:
                raise ValueError(f"variable x{i} outside x1..x{n}")
            exps[i - 1] += 1
        return cls(tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, e in enumerate(self.exponents) if e)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: Monomial) -> Monomial:
        _check_same(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: Monomial) -> Monomial:
        _check_same(self, other)
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        return format_monomial(self)


def _check_same(a: Monomial, b: Monomial) -> None:
    if a.n != b.n:
        raise ValueError("monomials live in different rings")


def format_monomial(m: Monomial, var: str = "x") -> str:
    parts = []
    for i, e in enumerate(m.exponents, start=1):
        if e == 1:
            parts.append(f"{var}{i}")
        elif e:
            parts.append(f"{var}{i}^{e}")
    return "*".join(parts) if parts else "1"


def lcm_monomials(ms: Sequence[Monomial]) -> Monomial:
    if not ms:
        raise ValueError("lcm of an empty collection is not defined here")
    n = ms[0].n
    for m in ms:
        if m.n != n:
            raise ValueError("monomials live in different rings")
    return Monomial(tuple(max(col) for col in zip(*(m.exponents for m in ms))))


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.n != self.n:
                raise ValueError(f"generator {g} does not live in {self.n} variables")
            if g.is_one():
                raise ValueError("the unit monomial is not allowed as a generator")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
        pairs = [tuple(p) for p in pairs]
        if n is None:
            n = max((max(p) for p in pairs), default=0)
        return cls(n, tuple(Monomial.from_variables(n, p) for p in pairs))

    @property
    def t(self) -> int:
        return len(self.generators)

    def pairs(self) -> list[tuple[int, int]] | None:
        """The pair set when every generator is a squarefree quadratic, else None."""
        out = []
        for g in self.generators:
            if g.degree != 2 or not g.is_squarefree():
                return None
            i, j = sorted(g.support())
            out.append((i, j))
        return out

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    def lcm(self, I: IndexSet) -> Monomial:
        return lcm_monomials([self.generators[i - 1] for i in I])

    def subsets(self) -> list[IndexSet]:
        """All nonempty generator subsets, by size and then lexicographically."""
        return [c for s in range(1, self.t + 1)
                for c in itertools.combinations(range(1, self.t + 1), s)]

    def __str__(self) -> str:
        return "<" + ", ".join(map(str, self.generators)) + ">"


@dataclass
class TaylorResolution:
    """Free modules ``e_I`` with multidegree shifts ``f_I`` and differential entries.

    ``differential[(I, J)] = (sign, f_I / f_J)`` for ``J = I`` minus one element.
    """

    ideal: MonomialIdeal
    modules: dict[int, list[tuple[IndexSet, tuple[int, ...]]]] = field(default_factory=dict)
    differential: dict[tuple[IndexSet, IndexSet], tuple[int, Monomial]] = field(default_factory=dict)

    def shift(self, I: IndexSet) -> tuple[int, ...]:
        for J, s in self.modules[len(I)]:
            if J == I:
                return s
        raise KeyError(I)

    @property
    def length(self) -> int:
        return max(self.modules, default=0)

    def boundary(self, I: IndexSet) -> dict[IndexSet, tuple[int, Monomial]]:
        return {J: v for (K, J), v in self.differential.items() if K == I}


def taylor_resolution(ideal: MonomialIdeal) -> TaylorResolution:
    res = TaylorResolution(ideal)
    lcms: dict[IndexSet, Monomial] = {}
    for I in ideal.subsets():
        f = ideal.lcm(I)
        lcms[I] = f
        res.modules.setdefault(len(I), []).append((I, f.exponents))
    for I, f in lcms.items():
        if len(I) == 1:
            continue
        for k in range(1, len(I) + 1):
            J = I[:k - 1] + I[k:]
            res.differential[(I, J)] = ((-1) ** k, f / lcms[J])
    return res


def _compose(res: TaylorResolution, I: IndexSet) -> dict[tuple[IndexSet, Monomial], int]:
    """Entries of ``d(d(e_I))`` as a sparse polynomial vector."""
    out: dict[tuple[IndexSet, Monomial], int] = {}
    for J, (s1, m1) in res.boundary(I).items():
        for K, (s2, m2) in res.boundary(J).items():
            key = (K, m1 * m2)
            out[key] = out.get(key, 0) + s1 * s2
    return out


def check_complex(res: TaylorResolution) -> bool:
    for s in range(3, res.length + 1):
        for I, _ in res.modules[s]:
            if any(_compose(res, I).values()):
                return False
    return True


def free_module_count(n: int, degree: int, shift: int = 0) -> int:
    """Monomials of total degree ``degree - shift`` in ``n`` variables."""
    d = degree - shift
    if d < 0 or n <= 0:
        return int(d == 0 and n == 0)
    return comb(d + n - 1, n - 1)


def standard_monomial_count(ideal: MonomialIdeal, M: Sequence[int]) -> int:
    """Standard monomials of multidegree ``M``: either ``x^M`` itself or nothing."""
    if len(M) != ideal.n or any(m < 0 for m in M):
        raise ValueError(f"multidegree {tuple(M)} invalid for {ideal.n} variables")
    return 0 if ideal.contains(Monomial(tuple(M))) else 1


def hilbert_numerator(res: TaylorResolution) -> dict[tuple[int, ...], int]:
    """``sum_I (-1)^{|I|} y^{f_I}`` plus the constant 1, as ``{exponent: coeff}``."""
    n = res.ideal.n
    out: dict[tuple[int, ...], int] = {(0,) * n: 1}
    for s, mods in res.modules.items():
        for _, shift in mods:
            out[shift] = out.get(shift, 0) + (-1) ** s
    return {k: v for k, v in out.items() if v}


def polynomial_over_free(numerator: dict, n: int, y_bound) -> YQSeries:
    """Expand ``numerator / prod (1 - y_i)`` inside the y-box (q-order 0)."""
    yb = _bound(y_bound, n)
    coeffs = {}
    for M in itertools.product(*(range(b + 1) for b in yb)):
        c = sum(v for e, v in numerator.items() if all(a <= m for a, m in zip(e, M)))
        if c:
            coeffs[(M, 0)] = c
    return YQSeries(n, yb, 0, coeffs)


def _bound(y_bound, n: int) -> tuple[int, ...]:
    if isinstance(y_bound, int):
        return (y_bound,) * n
    return tuple(y_bound)


def hilbert_series_truncated(ideal: MonomialIdeal, y_bound, method: str = "basis") -> YQSeries:
    if method == "basis":
        yb = _bound(y_bound, ideal.n)
        coeffs = {}
        for M in itertools.product(*(range(b + 1) for b in yb)):
            if standard_monomial_count(ideal, M):
                coeffs[(M, 0)] = 1
        return YQSeries(ideal.n, yb, 0, coeffs)
    if method == "resolution":
        return polynomial_over_free(hilbert_numerator(taylor_resolution(ideal)), ideal.n, y_bound)
    raise ValueError(f"unknown method {method!r}; expected 'basis' or 'resolution'")


def splits_off(ideal: MonomialIdeal, I: IndexSet, r: int) -> bool:
    """Whether ``f_I = f_{I minus r} * f_r``."""
    rest = tuple(i for i in I if i != r)
    if not rest:
        return False
    return ideal.lcm(I) == ideal.lcm(rest) * ideal.generators[r - 1]


def admissible_subsets(ideal: MonomialIdeal) -> list[IndexSet]:
    """Generator subsets that carry a summation variable in the normalized identity.

    ``I`` is kept unless it splits as ``I = J u J'`` (disjoint, nonempty)
    with ``f_I = f_J f_J'``; a split set is reproduced by the pair of
    variables for ``J`` and ``J'`` instead.  For squarefree generators this
    says: the generators of ``I``, joined when they share a variable, form a
    connected graph.  Singletons are always kept.
    """
    return [I for I in ideal.subsets() if not _splits(ideal, I)]


def _splits(ideal: MonomialIdeal, I: IndexSet) -> bool:
    fI = ideal.lcm(I)
    first, rest = I[0], I[1:]
    # fix the first generator in J so each partition is tried once
    for s in range(len(rest)):
        for extra in itertools.combinations(rest, s):
            J = (first,) + extra
            J2 = tuple(i for i in rest if i not in extra)
            if ideal.lcm(J) * ideal.lcm(J2) == fI:
                return True
    return False


def koszul_pairs(ideal: MonomialIdeal) -> list[tuple[IndexSet, IndexSet, IndexSet]]:
    """All ``(I, J, J')`` with ``J, J'`` disjoint nonempty, ``J u J'`` inside ``I``, ``f_I = f_J f_J'``."""
    out = []
    for I in ideal.subsets():
        if len(I) < 2:
            continue
        fI = ideal.lcm(I)
        for s in range(1, len(I)):
            for J in itertools.combinations(I, s):
                others = [i for i in I if i not in J]
                for s2 in range(1, len(others) + 1):
                    for J2 in itertools.combinations(others, s2):
                        if J < J2 and ideal.lcm(J) * ideal.lcm(J2) == fI:
                            out.append((I, J, J2))
    return out


def format_polynomial(poly: dict, var: str = "y") -> str:
    """``1 - y1*y2 + 2*y1*y2*y3`` style, terms ordered by degree then exponent."""
    items = sorted(poly.items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))
    parts = []
    for e, c in items:
        if not c:
            continue
        mono = format_monomial(Monomial(tuple(e)), var)
        if mono == "1":
            body = str(abs(c))
        else:
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
