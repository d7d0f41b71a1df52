"""Closed-shape identities for the chain ideal ``<x1 x2, ..., x_{n-1} x_n>``."""

from __future__ import annotations

from .forms import LinearForm, QuadExponent
from .identity import AlternatingSumIdentity, Variable
from .rewrite import var_name


def chain_identity(n: int) -> AlternatingSumIdentity:
    """The reduced chain identity: ``m_i`` for each generator, ``n_i`` for each adjacent pair.

    ``dM_i = m_i + m_{i-1} + n_i + n_{i-1} + n_{i-2}`` and
    ``Q = sum m_i(m_i-1)/2 + sum n_i(n_i-1) + sum m_i (m_{i+1} + m_{i+2})
    + sum m_i (n_{i-2} + ... + n_{i+2}) + sum n_i (n_{i+1} + n_{i+2})``,
    with out-of-range symbols read as zero.
    """
    if n < 2:
        raise ValueError("the chain needs at least two variables")
    ms = {i: var_name((i,)) for i in range(1, n)}
    ns = {i: var_name((i, i + 1)) for i in range(1, n - 1)}

    def m(i):
        return LinearForm.symbol(ms[i]) if i in ms else LinearForm.zero()

    def nn(i):
        return LinearForm.symbol(ns[i]) if i in ns else LinearForm.zero()

    variables = tuple([Variable(ms[i], (i,), 1) for i in ms]
                      + [Variable(ns[i], (i, i + 1), 2) for i in ns])
    delta = tuple(m(i) + m(i - 1) + nn(i) + nn(i - 1) + nn(i - 2) for i in range(1, n + 1))
    E = QuadExponent()
    for i in ms:
        E = E + QuadExponent.half_square(ms[i], 1)
        E = E + QuadExponent.product(m(i), m(i + 1) + m(i + 2))
        E = E + QuadExponent.product(m(i), nn(i - 2) + nn(i - 1) + nn(i) + nn(i + 1) + nn(i + 2))
    for i in ns:
        E = E + QuadExponent.half_square(ns[i], 2)
        E = E + QuadExponent.product(nn(i), nn(i + 1) + nn(i + 2))
    pairs = tuple((i, i + 1) for i in range(1, n))
    return AlternatingSumIdentity(n, pairs, variables, delta, E)
