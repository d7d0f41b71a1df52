"""Parser for ideal strings such as ``"x1*x2, x2*x3"`` or ``"x1, x2^2*x3 - x2*x3^2"``.

Grammar::

    ideal     := generator ("," generator)*
    generator := ["+" | "-"] term (("+" | "-") term)*
    term      := [integer "*"] factor ("*" factor)*  |  integer
    factor    := "x" index ["^" integer]
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .affine import PolyGenerator
from .ideals import Monomial, MonomialIdeal

_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(\d+)|([*^,+-]))")


class IdealParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class IdealSpec:
    source: str
    n: int
    # each generator is a list of (coefficient, exponent-dict) terms
    generators: tuple[tuple[tuple[int, tuple[tuple[int, int], ...]], ...], ...]

    def _monomial(self, powers) -> Monomial:
        exps = [0] * self.n
        for i, e in powers:
            exps[i - 1] += e
        return Monomial(tuple(exps))

    def is_monomial(self) -> bool:
        return all(len(g) == 1 and g[0][0] == 1 for g in self.generators)

    def monomial_ideal(self) -> MonomialIdeal:
        if not self.is_monomial():
            raise ValueError("ideal has non-monomial generators")
        return MonomialIdeal(self.n, tuple(self._monomial(g[0][1]) for g in self.generators))

    def poly_generators(self) -> list[PolyGenerator]:
        return [PolyGenerator(tuple((c, self._monomial(p)) for c, p in g)) for g in self.generators]

    def pairs(self) -> list[tuple[int, int]] | None:
        """Pair set when every generator is ``x_i * x_j`` with ``i != j``, else None."""
        if not self.is_monomial():
            return None
        return self.monomial_ideal().pairs()


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise IdealParseError(f"unexpected character {text[start]!r}", start)
        start = m.start(1) if m.group(1) else m.start(3) if m.group(3) else m.start(4)
        if m.group(1):
            out.append(("var", int(m.group(2)), start))
        elif m.group(3):
            out.append(("int", int(m.group(3)), start))
        else:
            out.append((m.group(4), None, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None):
        tok = self.toks[self.k]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else tok[1])
            raise IdealParseError(f"expected {kind} but found {what}", tok[2])
        self.k += 1
        return tok

    def factor(self):
        tok = self.peek()
        if tok[0] != "var":
            what = "end of input" if tok[0] == "end" else f"{tok[0] if tok[1] is None else tok[1]!r}"
            raise IdealParseError(f"expected a variable x<k> but found {what}", tok[2])
        self.take()
        if tok[1] < 1:
            raise IdealParseError("variable indices start at 1", tok[2])
        e = 1
        if self.peek()[0] == "^":
            self.take()
            e = self.take("int")[1]
        return tok[1], e

    def term(self):
        coeff = 1
        powers = []
        if self.peek()[0] == "int":
            coeff = self.take()[1]
            if self.peek()[0] != "*":
                return coeff, ()
            self.take()
        powers.append(self.factor())
        while self.peek()[0] == "*":
            self.take()
            powers.append(self.factor())
        return coeff, tuple(powers)

    def generator(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        terms = []
        c, p = self.term()
        terms.append((sign * c, p))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            c, p = self.term()
            terms.append((sign * c, p))
        return tuple(terms)

    def ideal(self):
        gens = [self.generator()]
        while self.peek()[0] == ",":
            self.take()
            gens.append(self.generator())
        tok = self.peek()
        if tok[0] != "end":
            raise IdealParseError(f"unexpected {tok[0] if tok[1] is None else tok[1]!r}", tok[2])
        return gens


def parse_ideal(text: str, n: int | None = None) -> IdealSpec:
    """Parse ``text``; ``n`` defaults to the largest variable index."""
    if not text.strip():
        raise IdealParseError("empty ideal specification", 0)
    gens = _Parser(text).ideal()
    top = max((i for g in gens for _, p in g for i, _ in p), default=0)
    if n is None:
        n = top
    elif top > n:
        raise ValueError(f"variable x{top} exceeds n={n}")
    spec = IdealSpec(text, n, tuple(gens))
    for g in spec.poly_generators():
        if any(m.is_one() for _, m in g.terms):
            raise ValueError("constant terms are not allowed in generators")
    return spec
