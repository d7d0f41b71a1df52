"""The q^0 layer of a normalized identity as a numerator over prod (1 - y_i)."""

from __future__ import annotations

from .identity import AlternatingSumIdentity


def q0_numerator(identity: AlternatingSumIdentity, y_bound=None) -> dict[tuple[int, ...], int]:
    """``sum (-1)^{sum w_v m_v} y^{dM(m)}`` over the assignments with ``Q(m) = 0``.

    With ``Q`` split as ``sum w m(m-1)/2 + Q'`` and every piece nonnegative,
    only 0/1 assignments can reach ``Q = 0``: a single variable survives
    unless ``Q'`` has its square, and a set of variables survives when
    ``Q'`` has no cross term among them.  ``y_bound`` (int or tuple) drops
    monomials outside the box.
    """
    if not identity.is_m_free():
        raise ValueError("the q^0 layer needs an M-free exponent")
    half, bil, squares, linear, const = identity.decompose()
    if any(c < 0 for c in bil.values()) or any(c < 0 for c in squares.values()) \
            or any(w <= 0 for w in (half.get(v, 0) for v in identity.var_ids)) or const:
        raise ValueError("exponent is not of nonnegative normalized shape")
    ids = [v for v in identity.var_ids if not squares.get(v)]
    clash = {v: set() for v in ids}
    for (a, b), c in bil.items():
        if c and a in clash and b in clash:
            clash[a].add(b)
            clash[b].add(a)
    shift = {v: identity.shift_vector(v) for v in ids}
    weight = {v.id: v.sign_weight for v in identity.variables}
    n = identity.n
    if y_bound is None:
        bound = None
    elif isinstance(y_bound, int):
        bound = (y_bound,) * n
    else:
        bound = tuple(y_bound)
    out: dict[tuple[int, ...], int] = {}

    def rec(k, chosen, exps, parity):
        if k == len(ids):
            if bound is None or all(e <= b for e, b in zip(exps, bound)):
                key = tuple(exps)
                out[key] = out.get(key, 0) + (-1 if parity else 1)
            return
        rec(k + 1, chosen, exps, parity)
        v = ids[k]
        if not (clash[v] & chosen):
            rec(k + 1, chosen | {v}, [a + b for a, b in zip(exps, shift[v])],
                parity ^ (weight[v] % 2))

    rec(0, frozenset(), [0] * n, 0)
    return {k: c for k, c in out.items() if c}
