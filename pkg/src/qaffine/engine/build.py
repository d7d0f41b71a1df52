"""Construction of normalized identities from a pair set.

The level-wise build repeatedly takes the oldest pending product, peels it
down to two owned denominator arguments and applies the basic identity
there.  Shifts are normalized once at the very end.

The level-wise build can miss an admissible subset: its term is then
present only as a cross term ``u*v`` with ``f_{S(u)} f_{S(v)}`` covering
``f_I``.  The completion pass expands such a cross term with the basic
identity once more ("un-summing"), introducing the missing variable.  A
depth-first search with most-constrained-first ordering picks which cross
term to expand.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from ..ideals import IndexSet, MonomialIdeal, admissible_subsets
from .forms import LinearForm, QuadExponent, external, is_external
from .identity import AlternatingSumIdentity, Variable
from .rewrite import (
    Product,
    RewriteExpression,
    apply_basic_identity,
    init_expression,
    normalize_shifts,
    peel,
    shift_variable,
    var_name,
)

MAX_STEPS = 100_000
SEARCH_BUDGET = 100_000


class EngineError(RuntimeError):
    """The construction did not terminate or could not reach the target shape."""


def _step(expr: RewriteExpression, index: int) -> RewriteExpression:
    expr, index = peel(expr, index)
    p = expr.products[index]
    return apply_basic_identity(expr, (p.left, p.right), var_name(p.key, expr.bound), p.key)


def _ordered_pairs(pairs, generator_order):
    pairs = [tuple(p) for p in pairs]
    if generator_order is None:
        return pairs
    order = list(generator_order)
    if sorted(order) != list(range(1, len(pairs) + 1)):
        raise ValueError("generator_order must be a permutation of 1..len(pairs)")
    return [pairs[k - 1] for k in order]


def build_level(pairs: Sequence[tuple[int, int]], n: int | None = None) -> RewriteExpression:
    """Level-wise rewrite of ``q^{sum M_i M_j}/prod (q)_{M_i}`` (normalized, uncompleted)."""
    expr = init_expression(pairs, n)
    steps = 0
    while expr.products:
        steps += 1
        if steps > MAX_STEPS:
            raise EngineError("rewrite did not terminate within the step guard")
        expr = _step(expr, 0)
    return normalize_shifts(expr)


def _un_sum(expr: RewriteExpression, u: str, v: str, key: IndexSet) -> RewriteExpression:
    """Move one ``u*v`` out of the exponent and expand it with the basic identity."""
    lu, lv = LinearForm.symbol(u), LinearForm.symbol(v)
    E = expr.exponent - QuadExponent.product(lu, lv)
    tmp = replace(expr, exponent=E, products=(Product(lu, lv, tuple(key)),))
    tmp = apply_basic_identity(tmp, (lu, lv), var_name(key, expr.bound), tuple(key))
    return normalize_shifts(tmp, only={u, v})


def _supports(ideal: MonomialIdeal) -> dict[IndexSet, frozenset]:
    return {I: ideal.lcm(I).support() for I in ideal.subsets()}


def completion_candidates(expr: RewriteExpression, I: IndexSet, supports) -> list[tuple[str, str]]:
    """Cross terms ``u*v`` whose expansion would create the variable for ``I``."""
    out = []
    target = set(I)
    for a, u in enumerate(expr.bound):
        Su = set(expr.index_sets[u])
        for v in expr.bound[a + 1:]:
            Sv = set(expr.index_sets[v])
            if Su & Sv or not (Su | Sv) <= target or len(Su) + len(Sv) != len(I) - 1:
                continue
            if expr.exponent.coeff_pair(u, v) < 2:
                continue
            if supports[tuple(sorted(Su))] | supports[tuple(sorted(Sv))] != supports[I]:
                continue
            out.append((u, v))
    return out


def complete_expression(expr: RewriteExpression, ideal: MonomialIdeal,
                        budget: int = SEARCH_BUDGET) -> RewriteExpression:
    """Introduce the admissible subsets the level-wise build missed."""
    supports = _supports(ideal)
    target = set(admissible_subsets(ideal))
    nodes = 0

    def search(e):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise EngineError("completion search exceeded its node budget")
        have = {e.index_sets[v] for v in e.bound}
        missing = sorted(target - have, key=lambda I: (len(I), I))
        if not missing:
            return e
        options = [(I, completion_candidates(e, I, supports)) for I in missing]
        options = [t for t in options if t[1]]
        if not options:
            return None
        I, cands = min(options, key=lambda t: len(t[1]))
        for u, v in cands:
            found = search(_un_sum(e, u, v, I))
            if found is not None:
                return found
        return None

    out = search(expr)
    if out is None:
        raise EngineError("no completion reaches the admissible subsets")
    return out


def _check_pairs(pairs, n):
    if not pairs:
        raise ValueError("pair set must be nonempty")
    for i, j in pairs:
        if not (1 <= i < j <= n):
            raise ValueError(f"pair ({i}, {j}) must satisfy 1 <= i < j <= {n}")


def build_identity(pairs: Sequence[tuple[int, int]], n: int | None = None,
                   generator_order: Sequence[int] | None = None) -> AlternatingSumIdentity:
    """Normalized identity whose variables biject with the admissible subsets.

    ``generator_order`` permutes the pairs (1-based) before building; index
    sets then refer to positions in the permuted list.
    """
    pairs = _ordered_pairs(pairs, generator_order)
    if n is None:
        n = max((max(p) for p in pairs), default=0)
    _check_pairs(pairs, n)
    if len(set(pairs)) != len(pairs):
        raise ValueError("pair set has repeated pairs")
    ideal = MonomialIdeal.from_pairs(pairs, n)
    expr = complete_expression(build_level(pairs, n), ideal)
    return AlternatingSumIdentity.from_expression(expr, pairs)


def extend_identity(identity: AlternatingSumIdentity,
                    new_pairs: Sequence[tuple[int, int]]) -> AlternatingSumIdentity:
    """Add generators to an existing normalized identity.

    Each new product ``M_i M_j`` is processed in turn; pending remainders are
    taken newest first, and shifts are normalized after each generator.
    """
    new_pairs = [tuple(p) for p in new_pairs]
    _check_pairs(new_pairs, identity.n)
    if not identity.is_m_free():
        raise ValueError("can only extend an identity with an M-free exponent")
    expr = identity.to_expression()
    t = len(identity.pairs)
    steps = 0
    for k, (i, j) in enumerate(new_pairs, start=t + 1):
        prod = Product(LinearForm.symbol(external(i)), LinearForm.symbol(external(j)), (k,))
        expr = replace(expr, products=expr.products + (prod,))
        expr = _step(expr, len(expr.products) - 1)
        while expr.products:
            steps += 1
            if steps > MAX_STEPS:
                raise EngineError("rewrite did not terminate within the step guard")
            expr = _step(expr, len(expr.products) - 1)
        expr = normalize_shifts(expr)
    return AlternatingSumIdentity.from_expression(expr, tuple(identity.pairs) + tuple(new_pairs))


# -- summing variables out -------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """Outcome of :func:`sum_out_variable`; ``identity`` is unchanged when not reducible."""

    identity: AlternatingSumIdentity
    reducible: bool
    variable: str
    reason: str = ""


def _host_options(identity: AlternatingSumIdentity, var: str, external_hosts: bool = True):
    """Candidate host sets: bound variables ``H`` and the ``M``-factors named by the residual."""
    a_t = identity.shift_vector(var)
    others = [v.id for v in identity.variables if v.id != var]
    # pairs of bound hosts first: they keep the identity normalized and M-free
    options = [(u, w) for k, u in enumerate(others) for w in others[k + 1:]]
    options += [(u,) for u in others] + [()]
    for H in options:
        r = list(a_t)
        for u in H:
            r = [x - y for x, y in zip(r, identity.shift_vector(u))]
        if any(x not in (0, 1) for x in r):
            continue
        m_hosts = [i + 1 for i, x in enumerate(r) if x == 1]
        if m_hosts and not external_hosts:
            continue
        if 1 <= len(H) + len(m_hosts) <= 2:
            yield H, m_hosts


def sum_out_variable(identity: AlternatingSumIdentity, var: str,
                     external_hosts: bool = True) -> Reduction:
    """Sum ``var`` out with the basic identity read backwards, or by the delta identity.

    Hosts are the denominator factors that will carry ``var`` after shifting
    each bound host ``u -> u - var``.  With two hosts ``A, B`` the sum over
    ``var`` gives ``q^{AB}/((q)_A (q)_B)``; with a single host ``A`` it gives
    ``delta(A, 0)``.  With ``external_hosts=False`` only bound variables may
    host, so the result stays normalized with an ``M``-free exponent.
    """
    if var not in identity.var_ids:
        raise KeyError(var)
    for H, m_hosts in _host_options(identity, var, external_hosts):
        expr = identity.to_expression()
        for u in H:
            expr = shift_variable(expr, u, -LinearForm.symbol(var))
        E = expr.exponent
        if E.quad.get((var, var), 0) != 1 or E.lin.get(var, 0) != -1:
            continue
        if any(var in k and k != (var, var) for k in E.quad):
            continue
        if expr.weights[var] % 2 == 0:
            continue
        others = [v for v in identity.variables if v.id != var]
        weights = {v.id: expr.weights[v.id] for v in others}
        rest = E.restrict(set(E.symbols()) - {var})
        delta = [expr.delta(i).without([var]) for i in range(1, identity.n + 1)]
        hosts = [LinearForm.symbol(u) for u in H]
        hosts += [LinearForm.symbol(external(i)) - delta[i - 1] for i in m_hosts]
        vanishing = list(identity.vanishing)
        if len(hosts) == 2:
            rest = rest + QuadExponent.product(hosts[0], hosts[1])
        elif H:
            # delta(u, 0): drop u by setting it to zero
            u = H[0]
            rest = rest.substitute(u, LinearForm.zero())
            delta = [d.without([u]) for d in delta]
            others = [v for v in others if v.id != u]
            weights.pop(u)
        else:
            L = hosts[0]
            if any(not is_external(s) for s in L.symbols()):
                continue
            vanishing.append(L)
        variables = tuple(Variable(v.id, v.index_set, weights[v.id]) for v in others)
        out = AlternatingSumIdentity(identity.n, identity.pairs, variables, tuple(delta),
                                     rest, tuple(vanishing))
        return Reduction(out, True, var)
    return Reduction(identity, False, var, "no host factors admit the reverse summation")


def reduce_identity(identity: AlternatingSumIdentity) -> tuple[AlternatingSumIdentity, list[str]]:
    """Greedily sum out variables, newest first, until none is eliminable.

    Only bound variables act as hosts; summing into ``M``-factors would
    simply undo the construction.
    """
    eliminated = []
    while True:
        for v in reversed(identity.var_ids):
            red = sum_out_variable(identity, v, external_hosts=False)
            if red.reducible:
                identity = red.identity
                eliminated.append(v)
                break
        else:
            return identity, eliminated


def simplify_vanishing(identity: AlternatingSumIdentity) -> AlternatingSumIdentity:
    """Substitute ``M_i = 0`` wherever a vanishing condition is exactly ``M_i``."""
    E = identity.exponent
    for L in identity.vanishing:
        s = L.single_symbol()
        if s is not None:
            E = E.substitute(s, LinearForm.zero())
    return replace(identity, exponent=E)


# -- the two-fold pair lemma -----------------------------------------------

def derive_lemma_2MN() -> AlternatingSumIdentity:
    """``q^{2MN}/((q)_M (q)_N)`` as a triple alternating sum, with ``M = M1`` and ``N = M2``.

    Steps: split ``2MN = MN + MN`` and expand the first copy (variable ``r``);
    peel the second copy and expand ``(M-r)(N-r)`` (variable ``s``); peel
    ``rN`` and expand ``r(N-(r+s))`` (variable ``t``); keep ``rM`` in the
    exponent; finally shift ``r -> r + t``.
    """
    M, N = LinearForm.symbol(external(1)), LinearForm.symbol(external(2))
    expr = init_expression([(1, 2), (1, 2)], 2)
    expr = apply_basic_identity(expr, (M, N), "r", (1,))
    expr, k = peel(expr, 0)
    expr = apply_basic_identity(expr, (expr.products[k].left, expr.products[k].right), "s", (2,))
    r = LinearForm.symbol("r")
    k = next(i for i, p in enumerate(expr.products) if p.same_term(r, N))
    expr, k = peel(expr, k)
    p = expr.products[k]
    expr = apply_basic_identity(expr, (p.left, p.right), "t", (1, 2))
    rest = expr.products[0]
    expr = replace(expr, exponent=expr.exponent + QuadExponent.product(rest.left, rest.right),
                   products=())
    expr = shift_variable(expr, "r", LinearForm.symbol("t"))
    return AlternatingSumIdentity.from_expression(expr, ((1, 2), (1, 2)))
