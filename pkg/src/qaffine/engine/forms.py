"""Integer linear forms and quadratic exponents over named symbols.

Symbols are plain strings.  External multidegree symbols are ``M1..Mn``;
everything else is a bound summation variable.  A :class:`QuadExponent`
stores *twice* the exponent, so ``m(m-1)/2`` is kept as ``m^2 - m`` and
every stored coefficient is an integer.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

_EXTERNAL = re.compile(r"^M(\d+)$")


def is_external(sym: str) -> bool:
    return _EXTERNAL.match(sym) is not None


def external_index(sym: str) -> int:
    """1-based variable index of ``M<i>``."""
    return int(_EXTERNAL.match(sym).group(1))


def external(i: int) -> str:
    return f"M{i}"


def symbol_key(sym: str):
    """Canonical ordering: externals by index, then bound symbols by name."""
    m = _EXTERNAL.match(sym)
    if m:
        return (0, int(m.group(1)), "")
    return (1, len(sym), sym)


class LinearForm:
    """``sum c_s * s + const`` with integer coefficients."""

    __slots__ = ("terms", "const", "_hash")

    def __init__(self, terms: Mapping[str, int] | Iterable = (), const: int = 0):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[str, int] = {}
        for s, c in items:
            acc[s] = acc.get(s, 0) + c
        self.terms = tuple(sorted(((s, c) for s, c in acc.items() if c),
                                  key=lambda t: symbol_key(t[0])))
        self.const = const
        self._hash = None

    @classmethod
    def symbol(cls, sym: str) -> LinearForm:
        return cls({sym: 1})

    @classmethod
    def zero(cls) -> LinearForm:
        return cls()

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def coeff(self, sym: str) -> int:
        for s, c in self.terms:
            if s == sym:
                return c
        return 0

    def symbols(self) -> list[str]:
        return [s for s, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms and self.const == 0

    def single_symbol(self) -> str | None:
        """The symbol if this form is exactly one symbol with coefficient 1."""
        if self.const == 0 and len(self.terms) == 1 and self.terms[0][1] == 1:
            return self.terms[0][0]
        return None

    def __add__(self, other: LinearForm) -> LinearForm:
        if isinstance(other, int):
            return LinearForm(self.terms, self.const + other)
        return LinearForm(self.terms + other.terms, self.const + other.const)

    __radd__ = __add__

    def __neg__(self) -> LinearForm:
        return LinearForm([(s, -c) for s, c in self.terms], -self.const)

    def __sub__(self, other: LinearForm) -> LinearForm:
        return self + (-other)

    def __mul__(self, k: int) -> LinearForm:
        return LinearForm([(s, k * c) for s, c in self.terms], k * self.const)

    __rmul__ = __mul__

    def substitute(self, sym: str, replacement: LinearForm) -> LinearForm:
        c = self.coeff(sym)
        if not c:
            return self
        rest = LinearForm([(s, v) for s, v in self.terms if s != sym], self.const)
        return rest + replacement * c

    def evaluate(self, values: Mapping[str, int]) -> int:
        return self.const + sum(c * values[s] for s, c in self.terms)

    def without(self, syms) -> LinearForm:
        syms = set(syms)
        return LinearForm([(s, c) for s, c in self.terms if s not in syms], self.const)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.terms == other.terms and self.const == other.const

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.terms, self.const))
        return self._hash

    def __repr__(self) -> str:
        return f"LinearForm({self})"

    def __str__(self) -> str:
        return format_linear(self)


def format_linear(form: LinearForm, times: str = "") -> str:
    parts = []
    for s, c in form.terms:
        mag = abs(c)
        body = s if mag == 1 else f"{mag}{times}{s}"
        parts.append(("-" if c < 0 else "+", body))
    if form.const or not parts:
        parts.append(("-" if form.const < 0 else "+", str(abs(form.const))))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if symbol_key(a) <= symbol_key(b) else (b, a)


def _raw_product(left: LinearForm, right: LinearForm, scale: int) -> "QuadExponent":
    """``scale * left * right`` stored as-is (no doubling)."""
    quad: dict = {}
    lin: dict = {}
    for a, ca in left.terms:
        for b, cb in right.terms:
            k = _pair(a, b)
            quad[k] = quad.get(k, 0) + scale * ca * cb
        lin[a] = lin.get(a, 0) + scale * ca * right.const
    for b, cb in right.terms:
        lin[b] = lin.get(b, 0) + scale * cb * left.const
    return QuadExponent(quad, lin, scale * left.const * right.const)


class QuadExponent:
    """Twice a quadratic polynomial: ``sum Q[a,b] a*b + sum L[s] s + C``.

    The pair dictionary is keyed by canonically ordered pairs; ``(a, a)``
    holds squares.  :meth:`value` halves the doubled evaluation and checks
    that the result is integral.
    """

    __slots__ = ("quad", "lin", "const")

    def __init__(self, quad=None, lin=None, const: int = 0):
        self.quad: dict[tuple[str, str], int] = {}
        for (a, b), c in (quad or {}).items():
            if c:
                k = _pair(a, b)
                self.quad[k] = self.quad.get(k, 0) + c
        self.quad = {k: c for k, c in self.quad.items() if c}
        self.lin: dict[str, int] = {s: c for s, c in (lin or {}).items() if c}
        self.const = const

    def copy(self) -> QuadExponent:
        return QuadExponent(dict(self.quad), dict(self.lin), self.const)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadExponent):
            return NotImplemented
        return (self.quad == other.quad and self.lin == other.lin
                and self.const == other.const)

    def __repr__(self) -> str:
        return f"QuadExponent({format_quad(self)})"

    def symbols(self) -> set[str]:
        out = set(self.lin)
        for a, b in self.quad:
            out.add(a)
            out.add(b)
        return out

    def __add__(self, other: QuadExponent) -> QuadExponent:
        quad = dict(self.quad)
        for k, c in other.quad.items():
            quad[k] = quad.get(k, 0) + c
        lin = dict(self.lin)
        for k, c in other.lin.items():
            lin[k] = lin.get(k, 0) + c
        return QuadExponent(quad, lin, self.const + other.const)

    def __neg__(self) -> QuadExponent:
        return QuadExponent({k: -c for k, c in self.quad.items()},
                            {k: -c for k, c in self.lin.items()}, -self.const)

    def __sub__(self, other: QuadExponent) -> QuadExponent:
        return self + (-other)

    @classmethod
    def product(cls, left: LinearForm, right: LinearForm, coeff: int = 1) -> QuadExponent:
        """The exponent ``coeff * left * right`` (stored doubled)."""
        return _raw_product(left, right, 2 * coeff)

    @classmethod
    def half_square(cls, sym: str, weight: int = 1) -> QuadExponent:
        """``weight * sym (sym - 1) / 2``."""
        return cls({(sym, sym): weight}, {sym: -weight})

    def substitute(self, sym: str, replacement: LinearForm) -> QuadExponent:
        if not self.involves(sym):
            return self
        out = QuadExponent({k: c for k, c in self.quad.items() if sym not in k},
                           {k: c for k, c in self.lin.items() if k != sym},
                           self.const)
        for (a, b), c in self.quad.items():
            if sym not in (a, b):
                continue
            la = replacement if a == sym else LinearForm.symbol(a)
            lb = replacement if b == sym else LinearForm.symbol(b)
            out = out + _raw_product(la, lb, c)
        if sym in self.lin:
            out = out + _raw_product(replacement, LinearForm({}, 1), self.lin[sym])
        return out

    def doubled_value(self, values: Mapping[str, int]) -> int:
        total = self.const
        for (a, b), c in self.quad.items():
            total += c * values[a] * values[b]
        for s, c in self.lin.items():
            total += c * values[s]
        return total

    def value(self, values: Mapping[str, int]) -> int:
        d = self.doubled_value(values)
        if d % 2:
            raise ArithmeticError("exponent evaluated to a half-integer")
        return d // 2

    def restrict(self, keep) -> QuadExponent:
        """Terms whose symbols all lie in ``keep``."""
        keep = set(keep)
        return QuadExponent({k: c for k, c in self.quad.items() if k[0] in keep and k[1] in keep},
                            {k: c for k, c in self.lin.items() if k in keep}, self.const)

    def coeff_pair(self, a: str, b: str) -> int:
        """Doubled coefficient of ``a*b`` (``a == b`` gives the doubled square)."""
        return self.quad.get(_pair(a, b), 0)

    def involves(self, sym: str) -> bool:
        return sym in self.lin or any(sym in k for k in self.quad)

    def is_even(self) -> bool:
        """Whether every integer point gives an integer exponent."""
        # 2Q(x) even for all integer x iff cross terms even and square+linear parity agree
        for (a, b), c in self.quad.items():
            if a != b and c % 2:
                return False
        syms = self.symbols()
        for s in syms:
            if (self.quad.get((s, s), 0) + self.lin.get(s, 0)) % 2:
                return False
        return self.const % 2 == 0


def format_quad(q: QuadExponent) -> str:
    """Human-readable rendering of the (undoubled) exponent."""
    from fractions import Fraction
    parts = []
    for (a, b), c in sorted(q.quad.items(), key=lambda t: (symbol_key(t[0][0]), symbol_key(t[0][1]))):
        v = Fraction(c, 2)
        mono = f"{a}^2" if a == b else f"{a}*{b}"
        parts.append((v, mono))
    for s, c in sorted(q.lin.items(), key=lambda t: symbol_key(t[0])):
        parts.append((Fraction(c, 2), s))
    if q.const:
        parts.append((Fraction(q.const, 2), ""))
    if not parts:
        return "0"
    out = []
    for i, (v, mono) in enumerate(parts):
        mag = abs(v)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if v < 0 else "+"
        if i == 0:
            out.append(("-" if v < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
