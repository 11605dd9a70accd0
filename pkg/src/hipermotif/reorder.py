"""Structural reordering of pattern graphs.

The highest-ranked vertex takes index 0; every following index goes to the
best-ranked unplaced out-neighbor of the vertex placed just before it, or to
the best-ranked unplaced vertex overall when there is none.  Rank is
``(totaldeg, outdeg)`` with ties going to the smaller original id.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyPattern
from .graph import PropertyGraph

__all__ = ["ReorderResult", "sigma_rank", "structural_reorder", "relabel", "identity_reorder"]


@dataclass(frozen=True)
class ReorderResult:
    """``permutation[old_id] == new_id``; ``reordered`` is the relabeled pattern."""

    permutation: tuple[int, ...]
    reordered: PropertyGraph

    @property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.permutation)
        for old, new in enumerate(self.permutation):
            inv[new] = old
        return tuple(inv)

    @property
    def placement(self) -> tuple[int, ...]:
        """Original vertex ids in the order they were placed."""
        return self.inverse


def sigma_rank(g: PropertyGraph, v: int) -> tuple[int, int, int]:
    indeg, outdeg, total = g.degrees(v)
    return total, outdeg, -v


def relabel(g: PropertyGraph, permutation: tuple[int, ...] | list[int]) -> PropertyGraph:
    """Rebuild ``g`` with vertex ``v`` renamed ``permutation[v]``; attributes follow."""
    perm = np.asarray(permutation, dtype=np.int64)
    n = g.vertex_count
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)):
        raise ValueError("permutation must be a bijection on the vertex ids")
    new_src = perm[g.src]
    new_dst = perm[g.dst]
    order = np.lexsort((new_dst, new_src))
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    vcols = {k: g.vertex_column(k)[inv] for k in g.vertex_keys}
    ecols = {k: g.edge_column(k)[order] for k in g.edge_keys}
    return PropertyGraph(n, new_src[order], new_dst[order], vcols, ecols)


def structural_reorder(pattern: PropertyGraph) -> ReorderResult:
    n = pattern.vertex_count
    if n == 0:
        raise EmptyPattern("cannot reorder an empty pattern")
    # Degrees of a static graph never change, so ranks are computed once.
    rank = [sigma_rank(pattern, v) for v in range(n)]
    placed = [False] * n
    order: list[int] = []

    first = max(range(n), key=rank.__getitem__)
    order.append(first)
    placed[first] = True
    while len(order) < n:
        last = order[-1]
        fresh = [w for w in pattern.out_neighbors(last) if not placed[w]]
        pool = fresh if fresh else (w for w in range(n) if not placed[w])
        nxt = max(pool, key=rank.__getitem__)
        order.append(nxt)
        placed[nxt] = True

    permutation = [0] * n
    for new, old in enumerate(order):
        permutation[old] = new
    return ReorderResult(tuple(permutation), relabel(pattern, permutation))


def identity_reorder(pattern: PropertyGraph) -> ReorderResult:
    return ReorderResult(tuple(range(pattern.vertex_count)), pattern)
