"""Symbolic state of the alternating-sum construction and its rewrite steps.

A :class:`RewriteExpression` denotes

    sum_{bound >= 0} (-1)^{sum w_v v} q^{E} / prod_k (q)_{D_k}

where ``E`` is the settled exponent plus the pending keyed products
``left * right``.  Pending products are kept apart from the settled
exponent so that equal monomials with different origins are never merged.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .forms import LinearForm, QuadExponent, external, is_external


class RewriteError(ValueError):
    """A rewrite step was applied where its preconditions do not hold."""


@dataclass(frozen=True)
class Product:
    """Pending exponent term ``left * right`` tagged with its origin index set."""

    left: LinearForm
    right: LinearForm
    key: tuple[int, ...]

    def same_term(self, a: LinearForm, b: LinearForm) -> bool:
        return (self.left, self.right) in ((a, b), (b, a))


@dataclass(frozen=True)
class RewriteExpression:
    n: int
    bound: tuple[str, ...] = ()
    index_sets: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    exponent: QuadExponent = field(default_factory=QuadExponent)
    products: tuple[Product, ...] = ()
    denominators: tuple[LinearForm, ...] = ()

    def full_exponent(self) -> QuadExponent:
        total = self.exponent
        for p in self.products:
            total = total + QuadExponent.product(p.left, p.right)
        return total

    def own_factor(self, sym: str) -> int:
        """Index of the denominator factor that carries ``sym`` with coefficient +1.

        For ``M_i`` this is the unique factor ``(q)_{M_i - dM_i}``; for a bound
        variable ``v`` it is the factor ``(q)_{v - c}`` with ``c`` a
        nonnegative combination of other bound variables.
        """
        hits = []
        for k, d in enumerate(self.denominators):
            if d.coeff(sym) != 1:
                continue
            if is_external(sym):
                hits.append(k)
            elif d.const == 0 and all(
                s == sym or (c < 0 and not is_external(s)) for s, c in d.terms
            ):
                hits.append(k)
        if len(hits) != 1:
            raise RewriteError(f"no unique denominator factor owned by {sym}")
        return hits[0]

    def offset(self, sym: str) -> LinearForm:
        """``sym - own(sym)``: what has been peeled off ``sym`` so far."""
        return LinearForm.symbol(sym) - self.denominators[self.own_factor(sym)]

    def delta(self, i: int) -> LinearForm:
        """Current shift ``dM_i`` of the factor ``(q)_{M_i - dM_i}``."""
        return self.offset(external(i))

    def is_m_free(self) -> bool:
        return not self.products and not any(
            is_external(s) for s in self.exponent.symbols()
        )


def var_name(index_set: Sequence[int], taken=()) -> str:
    """Subscripted variable id: ``m12`` for ``{1, 2}``; ``m1_10`` once indices exceed 9."""
    if all(i < 10 for i in index_set):
        base = "m" + "".join(str(i) for i in index_set)
    else:
        base = "m" + "_".join(str(i) for i in index_set)
    name = base
    k = 1
    while name in taken:
        k += 1
        name = f"{base}'{k}"
    return name


def init_expression(pairs: Sequence[tuple[int, int]], n: int | None = None) -> RewriteExpression:
    """``q^{sum M_i M_j} / prod (q)_{M_i}`` with one pending product per pair."""
    pairs = [tuple(p) for p in pairs]
    if n is None:
        n = max((max(p) for p in pairs), default=0)
    for i, j in pairs:
        if not (1 <= i < j <= n):
            raise ValueError(f"invalid pair ({i}, {j}) for n={n}")
    products = tuple(
        Product(LinearForm.symbol(external(i)), LinearForm.symbol(external(j)), (k,))
        for k, (i, j) in enumerate(pairs, start=1)
    )
    dens = tuple(LinearForm.symbol(external(i)) for i in range(1, n + 1))
    return RewriteExpression(n=n, products=products, denominators=dens)


def _find_product(expr: RewriteExpression, left: LinearForm, right: LinearForm) -> int:
    for k, p in enumerate(expr.products):
        if p.same_term(left, right):
            return k
    raise RewriteError(f"exponent has no pending term ({left})*({right})")


def apply_basic_identity(
    expr: RewriteExpression,
    term: tuple[LinearForm, LinearForm],
    new_var: str,
    key: tuple[int, ...] | None = None,
) -> RewriteExpression:
    """Replace ``q^{AB}/((q)_A (q)_B)`` by ``sum_m (-1)^m q^{m(m-1)/2}/((q)_m (q)_{A-m} (q)_{B-m})``."""
    left, right = term
    k = _find_product(expr, left, right)
    if new_var in expr.bound or is_external(new_var):
        raise RewriteError(f"variable name {new_var} already in use")
    dens = list(expr.denominators)
    try:
        ia = dens.index(left)
    except ValueError:
        raise RewriteError(f"denominator has no factor (q)_({left})") from None
    dens[ia] = None
    try:
        ib = dens.index(right)
    except ValueError:
        raise RewriteError(f"denominator has no factor (q)_({right})") from None
    m = LinearForm.symbol(new_var)
    dens[ia] = left - m
    dens[ib] = right - m
    dens.append(m)
    if key is None:
        key = expr.products[k].key
    products = expr.products[:k] + expr.products[k + 1:]
    return replace(
        expr,
        bound=expr.bound + (new_var,),
        index_sets={**expr.index_sets, new_var: tuple(key)},
        weights={**expr.weights, new_var: 1},
        exponent=expr.exponent + QuadExponent.half_square(new_var),
        products=products,
        denominators=tuple(dens),
    )


def shift_variable(expr: RewriteExpression, var: str, offset: LinearForm) -> RewriteExpression:
    """Substitute ``var -> var + offset`` everywhere, adjusting sign weights."""
    if var not in expr.bound:
        raise RewriteError(f"{var} is not a bound variable")
    if offset.coeff(var) or any(is_external(s) for s in offset.symbols()) or offset.const:
        raise RewriteError("offset must be a combination of other bound variables")
    if offset.is_zero():
        return expr
    repl = LinearForm.symbol(var) + offset
    weights = dict(expr.weights)
    w = weights[var]
    for s, c in offset.terms:
        weights[s] = weights.get(s, 0) + w * c
    products = tuple(
        Product(p.left.substitute(var, repl), p.right.substitute(var, repl), p.key)
        for p in expr.products
    )
    return replace(
        expr,
        weights=weights,
        exponent=expr.exponent.substitute(var, repl),
        products=products,
        denominators=tuple(d.substitute(var, repl) for d in expr.denominators),
    )


def peel(expr: RewriteExpression, index: int) -> tuple[RewriteExpression, int]:
    """Rewrite pending ``X*Y`` as ``own(X)*own(Y)`` plus remainders.

    With ``X = own(X) + a`` and ``Y = own(Y) + b``::

        X*Y = own(X)*own(Y) + a*Y + b*X - a*b

    Remainder pieces that still involve an external symbol become new
    pending products keyed by the union of index sets; the rest goes to the
    settled exponent.  Returns the new expression and the position of the
    ``own(X)*own(Y)`` product.
    """
    p = expr.products[index]
    xs, ys = p.left.single_symbol(), p.right.single_symbol()
    if xs is None or ys is None:
        raise RewriteError("can only peel a product of two symbols")
    X, Y = p.left, p.right
    own_x = expr.denominators[expr.own_factor(xs)]
    own_y = expr.denominators[expr.own_factor(ys)]
    a = X - own_x
    b = Y - own_y
    settled = expr.exponent - QuadExponent.product(a, b)
    new_products = []
    for off, other in ((a, Y), (b, X)):
        for u, c in off.terms:
            piece_key = tuple(sorted(set(expr.index_sets[u]) | set(p.key)))
            if any(is_external(s) for s in other.symbols()):
                if c < 0:
                    raise RewriteError("negative offset coefficient in peel")
                new_products.extend([Product(LinearForm.symbol(u), other, piece_key)] * c)
            else:
                settled = settled + QuadExponent.product(LinearForm.symbol(u), other, c)
    products = (
        expr.products[:index]
        + (Product(own_x, own_y, p.key),)
        + expr.products[index + 1:]
        + tuple(new_products)
    )
    return replace(expr, exponent=settled, products=products), index


def normalize_shifts(expr: RewriteExpression, only=None) -> RewriteExpression:
    """Shift bound variables (newest first) so each owns a plain ``(q)_{m}``."""
    for v in reversed(expr.bound):
        if only is not None and v not in only:
            continue
        off = expr.offset(v)
        if not off.is_zero():
            expr = shift_variable(expr, v, off)
    return expr
