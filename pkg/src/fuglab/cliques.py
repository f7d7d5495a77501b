"""Clique search on graphs given as lists of Python-int bit sets.

Both searches relabel vertices by descending degree and prune with a
greedy sequential colouring: a vertex set that can be coloured with ``c``
colours contains no clique larger than ``c``.
"""

from __future__ import annotations

from typing import Iterator, Sequence


def _lowbit_index(x: int) -> int:
    return (x & -x).bit_length() - 1


def _iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def colour_bound(adj: Sequence[int], P: int) -> int:
    colours = 0
    uncoloured = P
    while uncoloured:
        colours += 1
        Q = uncoloured
        while Q:
            v = _lowbit_index(Q)
            bit = 1 << v
            Q &= ~adj[v] & ~bit
            uncoloured &= ~bit
    return colours


def _relabel(adj: Sequence[int]):
    n = len(adj)
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    pos = {v: i for i, v in enumerate(order)}
    new = []
    for v in order:
        m = 0
        for u in _iter_bits(adj[v]):
            m |= 1 << pos[u]
        new.append(m)
    return order, pos, new


def k_cliques(adj: Sequence[int], k: int, candidates: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every clique of exactly ``k`` vertices inside ``candidates`` (default: all), once each."""
    n = len(adj)
    if k == 0:
        yield ()
        return
    order, pos, radj = _relabel(adj)
    P = (1 << n) - 1
    if candidates is not None:
        P = 0
        for v in _iter_bits(candidates):
            P |= 1 << pos[v]

    def extend(R, P):
        if len(R) == k:
            yield R
            return
        need = k - len(R)
        if P.bit_count() < need or colour_bound(radj, P) < need:
            return
        while P:
            v = _lowbit_index(P)
            P &= ~(1 << v)
            yield from extend(R + (v,), P & radj[v])
            if P.bit_count() < need:
                return

    for clique in extend((), P):
        yield tuple(sorted(order[v] for v in clique))


def max_clique(adj: Sequence[int], required: Sequence[int] = ()) -> tuple[int, ...]:
    """A maximum clique that contains all ``required`` vertices (branch and bound)."""
    n = len(adj)
    order, pos, radj = _relabel(adj)
    R0 = tuple(pos[v] for v in required)
    P = (1 << n) - 1
    for v in R0:
        P &= radj[v]
    for v in R0:
        P &= ~(1 << v)
    for i, v in enumerate(R0):
        for u in R0[i + 1:]:
            if not radj[v] >> u & 1:
                raise ValueError("required vertices are not pairwise adjacent")
    best = R0

    def expand(R, P):
        nonlocal best
        if not P:
            if len(R) > len(best):
                best = R
            return
        if len(R) + colour_bound(radj, P) <= len(best):
            return
        while P:
            if len(R) + P.bit_count() <= len(best):
                return
            v = _lowbit_index(P)
            P &= ~(1 << v)
            expand(R + (v,), P & radj[v])

    expand(R0, P)
    return tuple(sorted(order[v] for v in best))
