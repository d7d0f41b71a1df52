"""Normalized alternating-sum identities and their serializations.

An :class:`AlternatingSumIdentity` stands for

    sum_{m_v >= 0} (-1)^{sum w_v m_v} q^{Q(m, M)} / (prod_v (q)_{m_v} prod_i (q)_{M_i - dM_i})

times ``prod_k delta(L_k, 0)`` for the (usually empty) list of vanishing
forms ``L_k`` in the external symbols.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import LinearForm, QuadExponent, external, format_linear, is_external, symbol_key
from .rewrite import RewriteError, RewriteExpression


@dataclass(frozen=True)
class Variable:
    id: str
    index_set: tuple[int, ...]
    sign_weight: int


@dataclass(frozen=True)
class AlternatingSumIdentity:
    n: int
    pairs: tuple[tuple[int, int], ...]
    variables: tuple[Variable, ...]
    delta: tuple[LinearForm, ...]
    exponent: QuadExponent = field(default_factory=QuadExponent)
    vanishing: tuple[LinearForm, ...] = ()

    def __post_init__(self):
        if len(self.delta) != self.n:
            raise ValueError("need one shift per external symbol")
        ids = [v.id for v in self.variables]
        if len(set(ids)) != len(ids):
            raise ValueError("variable ids must be distinct")
        known = set(ids) | {external(i) for i in range(1, self.n + 1)}
        for d in self.delta:
            if any(s not in ids for s in d.symbols()) or d.const:
                raise ValueError("shifts are combinations of bound variables only")
        for s in self.exponent.symbols():
            if s not in known:
                raise ValueError(f"exponent mentions unknown symbol {s}")
        for L in self.vanishing:
            if any(not is_external(s) for s in L.symbols()):
                raise ValueError("vanishing conditions may only involve M symbols")

    # -- accessors -----------------------------------------------------
    @property
    def var_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.variables)

    def variable(self, vid: str) -> Variable:
        for v in self.variables:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def shift_coefficient(self, i: int, vid: str) -> int:
        """``a^{(i)}`` of variable ``vid`` (``i`` is 1-based)."""
        return self.delta[i - 1].coeff(vid)

    def shift_vector(self, vid: str) -> tuple[int, ...]:
        return tuple(d.coeff(vid) for d in self.delta)

    def index_sets(self) -> dict[str, tuple[int, ...]]:
        return {v.id: v.index_set for v in self.variables}

    def is_m_free(self) -> bool:
        return not any(is_external(s) for s in self.exponent.symbols()) and not self.vanishing

    def decompose(self) -> tuple[dict[str, int], dict[tuple[str, str], int], dict[str, int], dict[str, int], int]:
        """Split the exponent as ``sum w_v v(v-1)/2 + sum c_ab a b + sum s_v v^2 + linear + const``.

        Returns ``(half_square, bilinear, squares, linear, const)`` with
        integer entries; ``linear`` only collects external symbols.
        """
        E = self.exponent
        half: dict[str, int] = {}
        squares: dict[str, int] = {}
        linear: dict[str, int] = {}
        for s, c in E.lin.items():
            if is_external(s):
                if c % 2:
                    raise ValueError(f"linear coefficient of {s} is not an integer")
                linear[s] = c // 2
            else:
                half[s] = -c
        for (a, b), c in E.quad.items():
            if a == b and not is_external(a):
                rest = c - half.get(a, 0)
                if rest % 2:
                    raise ValueError(f"square coefficient of {a} is not an integer")
                if rest:
                    squares[a] = rest // 2
        bilinear: dict[tuple[str, str], int] = {}
        for (a, b), c in E.quad.items():
            if a == b and not is_external(a):
                continue
            if a == b:
                if c % 2:
                    raise ValueError(f"square coefficient of {a} is not an integer")
                squares[a] = c // 2
                continue
            if c % 2:
                raise ValueError(f"coefficient of {a}*{b} is not an integer")
            bilinear[(a, b)] = c // 2
        if E.const % 2:
            raise ValueError("constant term is not an integer")
        return ({k: v for k, v in half.items() if v}, bilinear, squares, linear, E.const // 2)

    def q_prime(self) -> QuadExponent:
        """``Q`` minus ``sum |I| m_I (m_I - 1) / 2``."""
        out = self.exponent
        for v in self.variables:
            out = out - QuadExponent.half_square(v.id, len(v.index_set))
        return out

    # -- conversion to and from the rewrite state --------------------------
    def to_expression(self) -> RewriteExpression:
        dens = tuple(LinearForm.symbol(v.id) for v in self.variables) + tuple(
            LinearForm.symbol(external(i)) - self.delta[i - 1] for i in range(1, self.n + 1)
        )
        return RewriteExpression(
            n=self.n,
            bound=self.var_ids,
            index_sets=self.index_sets(),
            weights={v.id: v.sign_weight for v in self.variables},
            exponent=self.exponent,
            denominators=dens,
        )

    @classmethod
    def from_expression(cls, expr: RewriteExpression, pairs=()) -> AlternatingSumIdentity:
        if expr.products:
            raise RewriteError("expression still has pending M-dependent products")
        variables = []
        for v in expr.bound:
            if not expr.offset(v).is_zero():
                raise RewriteError(f"variable {v} is not normalized")
            variables.append(Variable(v, tuple(expr.index_sets[v]), expr.weights[v]))
        delta = tuple(expr.delta(i) for i in range(1, expr.n + 1))
        if len(expr.denominators) != len(variables) + expr.n:
            raise RewriteError("denominator is not of normalized shape")
        return cls(expr.n, tuple(tuple(p) for p in pairs), tuple(variables), delta, expr.exponent)

    # -- serialization ---------------------------------------------------
    def to_json_dict(self) -> dict:
        half, bil, squares, linear, const = self.decompose()
        order = {v.id: k for k, v in enumerate(self.variables)}

        def key(s):
            return (0, order[s]) if s in order else (1, symbol_key(s))

        bil_rows = sorted(
            ([*sorted((a, b), key=key), c] for (a, b), c in bil.items()),
            key=lambda r: (key(r[0]), key(r[1])),
        )
        q = {
            "half_square": {v.id: half[v.id] for v in self.variables if half.get(v.id)},
            "bilinear": bil_rows,
            "squares": [[s, squares[s]] for s in sorted(squares, key=key)],
        }
        if linear:
            q["linear"] = {s: linear[s] for s in sorted(linear, key=symbol_key)}
        if const:
            q["constant"] = const
        out = {
            "n": self.n,
            "pairs": [list(p) for p in self.pairs],
            "variables": [
                {"id": v.id, "index_set": list(v.index_set), "sign_weight": v.sign_weight}
                for v in self.variables
            ],
            "delta": {
                f"x{i}": {s: c for s, c in self.delta[i - 1].terms}
                for i in range(1, self.n + 1)
            },
            "Q": q,
        }
        if self.vanishing:
            out["vanishing"] = [_linear_to_dict(L) for L in self.vanishing]
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> AlternatingSumIdentity:
        n = data["n"]
        variables = tuple(
            Variable(v["id"], tuple(v["index_set"]), v["sign_weight"]) for v in data["variables"]
        )
        order = [v.id for v in variables]
        delta = []
        for i in range(1, n + 1):
            row = data["delta"].get(f"x{i}", {})
            delta.append(LinearForm(sorted(row.items(), key=lambda t: order.index(t[0]))))
        q = data["Q"]
        E = QuadExponent()
        for s, w in q.get("half_square", {}).items():
            E = E + QuadExponent.half_square(s, w)
        for a, b, c in q.get("bilinear", []):
            E = E + QuadExponent.product(LinearForm.symbol(a), LinearForm.symbol(b), c)
        for s, c in q.get("squares", []):
            E = E + QuadExponent.product(LinearForm.symbol(s), LinearForm.symbol(s), c)
        for s, c in q.get("linear", {}).items():
            E = E + QuadExponent({}, {s: 2 * c})
        E = E + QuadExponent({}, {}, 2 * q.get("constant", 0))
        vanishing = tuple(_linear_from_dict(d) for d in data.get("vanishing", []))
        return cls(n, tuple(tuple(p) for p in data.get("pairs", [])), variables,
                   tuple(delta), E, vanishing)


def _linear_to_dict(L: LinearForm) -> dict:
    out = {s: c for s, c in L.terms}
    if L.const:
        out["1"] = L.const
    return out


def _linear_from_dict(d: dict) -> LinearForm:
    return LinearForm([(s, c) for s, c in d.items() if s != "1"], d.get("1", 0))


def to_json(identity: AlternatingSumIdentity) -> str:
    return json.dumps(identity.to_json_dict(), indent=2) + "\n"


def from_json(text: str) -> AlternatingSumIdentity:
    return AlternatingSumIdentity.from_json_dict(json.loads(text))


# -- human-readable renderings -------------------------------------------

def _fraction_terms(E: QuadExponent, ordering) -> list[tuple[Fraction, str, str]]:
    """(coefficient, plain monomial, latex monomial) triples of the exponent."""
    out = []
    for (a, b), c in sorted(E.quad.items(), key=lambda t: (ordering(t[0][0]), ordering(t[0][1]))):
        if a == b:
            out.append((Fraction(c, 2), f"{a}^2", f"{_tex_sym(a)}^2"))
        else:
            out.append((Fraction(c, 2), f"{a}*{b}", f"{_tex_sym(a)} {_tex_sym(b)}"))
    for s, c in sorted(E.lin.items(), key=lambda t: ordering(t[0])):
        out.append((Fraction(c, 2), s, _tex_sym(s)))
    if E.const:
        out.append((Fraction(E.const, 2), "", ""))
    return out


def _tex_sym(s: str) -> str:
    if is_external(s):
        return f"M_{{{s[1:]}}}"
    base, _, prime = s.partition("'")
    sub = base[1:].replace("_", ",")
    tex = f"m_{{{sub}}}"
    if prime:
        tex += f"^{{({prime})}}"
    return tex


def _tex_linear(L: LinearForm) -> str:
    parts = []
    for s, c in L.terms:
        body = _tex_sym(s) if abs(c) == 1 else f"{abs(c)}{_tex_sym(s)}"
        parts.append(("-" if c < 0 else "+", body))
    if L.const or not parts:
        parts.append(("-" if L.const < 0 else "+", str(abs(L.const))))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _tex_coeff(c: Fraction) -> str:
    c = abs(c)
    if c == 1:
        return ""
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\tfrac{{{c.numerator}}}{{{c.denominator}}}"


def render_text(identity: AlternatingSumIdentity) -> str:
    order = {v.id: k for k, v in enumerate(identity.variables)}

    def ordering(s):
        return (0, order[s]) if s in order else (1, symbol_key(s))

    half, bil, squares, linear, const = identity.decompose()
    lines = [f"n = {identity.n}"]
    if identity.pairs:
        lines.append("pairs: " + ", ".join(f"x{i}*x{j}" for i, j in identity.pairs))
    lines.append("variables:")
    for v in identity.variables:
        idx = ",".join(map(str, v.index_set))
        lines.append(f"  {v.id}  I={{{idx}}}  sign weight {v.sign_weight}")
    lines.append("shifts:")
    for i in range(1, identity.n + 1):
        lines.append(f"  dM{i} = {format_linear(identity.delta[i - 1])}")
    pieces = []
    for v in identity.variables:
        w = half.get(v.id)
        if w:
            pieces.append(f"{Fraction(w, 2)}*{v.id}*({v.id}-1)" if w != 2 else f"{v.id}*({v.id}-1)")
    for (a, b), c in sorted(bil.items(), key=lambda t: (ordering(t[0][0]), ordering(t[0][1]))):
        pieces.append(f"{c}*{a}*{b}" if c != 1 else f"{a}*{b}")
    for s in sorted(squares, key=ordering):
        c = squares[s]
        pieces.append(f"{c}*{s}^2" if c != 1 else f"{s}^2")
    for s in sorted(linear, key=symbol_key):
        pieces.append(f"{linear[s]}*{s}")
    if const:
        pieces.append(str(const))
    lines.append("Q = " + (" + ".join(pieces) if pieces else "0").replace("+ -", "- "))
    for L in identity.vanishing:
        lines.append(f"vanishes unless {format_linear(L)} = 0")
    return "\n".join(lines) + "\n"


def render_latex(identity: AlternatingSumIdentity) -> str:
    """LaTeX for the right-hand side of the identity."""
    order = {v.id: k for k, v in enumerate(identity.variables)}

    def ordering(s):
        return (0, order[s]) if s in order else (1, symbol_key(s))

    half, bil, squares, linear, const = identity.decompose()
    expo = []
    for v in identity.variables:
        w = half.get(v.id)
        if w:
            m = _tex_sym(v.id)
            expo.append((Fraction(w, 2), f"{m}({m}-1)"))
    for (a, b), c in sorted(bil.items(), key=lambda t: (ordering(t[0][0]), ordering(t[0][1]))):
        expo.append((Fraction(c), f"{_tex_sym(a)} {_tex_sym(b)}"))
    for s in sorted(squares, key=ordering):
        expo.append((Fraction(squares[s]), f"{_tex_sym(s)}^2"))
    for s in sorted(linear, key=symbol_key):
        expo.append((Fraction(linear[s]), _tex_sym(s)))
    exp_tex = ""
    for k, (c, body) in enumerate(expo):
        sign = "-" if c < 0 else "+"
        term = _tex_coeff(c) + body
        exp_tex += (("-" if sign == "-" else "") + term) if k == 0 else f" {sign} {term}"
    if const:
        exp_tex += f" {'-' if const < 0 else '+'} {abs(const)}"
    if not exp_tex:
        exp_tex = "0"
    signs = []
    for v in identity.variables:
        if v.sign_weight % 2:
            w = v.sign_weight
            signs.append((str(w) if w != 1 else "") + _tex_sym(v.id))
    sign_tex = f"(-1)^{{{' + '.join(signs)}}}" if signs else ""
    dens = [f"(q)_{{{_tex_sym(v.id)}}}" for v in identity.variables]
    for i in range(1, identity.n + 1):
        d = identity.delta[i - 1]
        if d.is_zero():
            dens.append(f"(q)_{{M_{{{i}}}}}")
        else:
            dens.append(f"(q)_{{M_{{{i}}} - ({_tex_linear(d)})}}")
    ranges = ", ".join(_tex_sym(v.id) for v in identity.variables)
    body = f"\\sum_{{{ranges} \\geq 0}} {sign_tex} \\frac{{q^{{{exp_tex}}}}}{{{' '.join(dens)}}}"
    if identity.vanishing:
        deltas = " ".join(f"\\delta_{{{_tex_linear(L)},0}}" for L in identity.vanishing)
        body = f"{deltas} {body}"
    return body


def render(identity: AlternatingSumIdentity, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(identity)
    if fmt == "text":
        return render_text(identity)
    if fmt == "latex":
        return render_latex(identity) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected json, text or latex")
