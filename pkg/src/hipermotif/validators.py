"""Candidate pruning before search.

:func:`vertex_validator` marks target vertices that may host pattern vertex
0.  :class:`EdgeValidator` decides whether a target edge ``(u, v)`` can host
the pattern edge ``(0, 1)`` and, if so, writes the depth-2 state that the
tree search resumes from.  Both are necessary conditions only: they never
reject a pair that some embedding uses.
"""
from __future__ import annotations

import numpy as np

from .errors import NoViableEdge, PatternSelfLoop
from .graph import PropertyGraph
from .search import SearchState, Semantics, TreeSearch, new_state

__all__ = ["EdgeValidator", "edge_validator", "vertex_validator"]


def vertex_validator(pattern: PropertyGraph, target: PropertyGraph) -> np.ndarray:
    """Boolean array over target vertices: attributes and in/out degree cover pattern vertex 0."""
    indeg0, outdeg0, _ = pattern.degrees(0)
    flags = target.vertex_mask(pattern.vertex_attr_sets[0])
    flags &= target.in_degree >= indeg0
    flags &= target.out_degree >= outdeg0
    return flags


class EdgeValidator:
    """Validator for mapping the pattern edge ``(0, 1)`` onto target edges.

    Checks, in order: attributes of ``v`` against pattern vertex 1; edge
    attributes of ``(u, v)`` against ``(0, 1)``; the reverse edge ``(v, u)``
    when the pattern has ``(1, 0)``; in/out degree of ``v`` against vertex 1;
    the number of two-way neighbors of ``u`` and ``v`` against those of
    0 and 1; the number of common neighbors of ``u`` and ``v`` against that
    of 0 and 1; and, when the search uses lookahead, the frontier counts the
    search itself would demand of ``v`` at depth 1.  Under ``"iso"`` it also
    rejects a reverse target edge the pattern lacks and self-loops on ``u``
    or ``v``.
    """

    def __init__(self, search: TreeSearch) -> None:
        pattern, target = search.pattern, search.target
        if pattern.vertex_count < 2:
            raise NoViableEdge("pattern needs at least two vertices")
        if pattern.has_self_loops:
            raise PatternSelfLoop("edge-centric search does not support pattern self-loops")
        fwd = pattern.get_edge_id(0, 1)
        if fwd is None:
            raise NoViableEdge("pattern has no edge (0, 1); reorder it or pick another engine")
        self.search = search
        self.pattern = pattern
        self.target = target
        self.iso = search.iso
        self.fwd = fwd
        self.rev = pattern.get_edge_id(1, 0)
        self.indeg1, self.outdeg1, _ = pattern.degrees(1)
        self.mutual0 = int(pattern.mutual_degree[0])
        self.mutual1 = int(pattern.mutual_degree[1])
        self._mutual = target.mutual_degree if (self.mutual0 or self.mutual1) else None
        self.overlap = len(set(pattern.neighbors(0)) & set(pattern.neighbors(1)))
        self.need_in = search._need_in[1] if search.lookahead else 0
        self.need_out = search._need_out[1] if search.lookahead else 0
        self._local = bool(self.overlap or self.need_in or self.need_out)
        pair = (0, 1)
        self._t1_in = set(pattern.in_neighbors(0)).union(pattern.in_neighbors(1)).difference(pair)
        self._t1_out = set(pattern.out_neighbors(0)).union(pattern.out_neighbors(1)).difference(pair)
        self._indeg = target._indeg
        self._outdeg = target._outdeg
        self._out_adj = target._out_adj
        self._in_adj = target._in_adj
        self._loops = target.self_loops
        self._last_u = -1
        self._last_nbrs: set[int] = set()
        self._last_in: set[int] = set()
        self._last_out: set[int] = set()

    def __call__(self, u: int, v: int, state: SearchState) -> bool:
        """Validate target edge ``(u, v)``; on success fill the fresh ``state`` to depth 2."""
        if state.depth != 0:
            raise ValueError("edge validation needs a fresh state")
        search = self.search
        vf = search.vertex_filters[1]
        if vf is not None and not vf[v]:
            return False
        target = self.target
        e = target.get_edge_id(u, v)
        if e is None:
            return False
        ef = search.edge_filters[self.fwd]
        if ef is not None and not ef[e]:
            return False
        er = target.get_edge_id(v, u)
        if self.rev is not None:
            if er is None:
                return False
            ef = search.edge_filters[self.rev]
            if ef is not None and not ef[er]:
                return False
        elif self.iso and er is not None:
            return False
        if self.iso and (u in self._loops or v in self._loops):
            return False
        if self._indeg[v] < self.indeg1 or self._outdeg[v] < self.outdeg1:
            return False
        mutual = self._mutual
        if mutual is not None and (mutual[u] < self.mutual0 or mutual[v] < self.mutual1):
            return False
        if self._local and not self._neighborhood_ok(u, v):
            return False
        self._fill(u, v, state)
        return True

    def _cache_u(self, u: int) -> None:
        if u != self._last_u:
            ins = set(self._in_adj[u])
            outs = set(self._out_adj[u])
            self._last_u = u
            self._last_in, self._last_out = ins, outs
            self._last_nbrs = ins | outs

    def _neighborhood_ok(self, u: int, v: int) -> bool:
        """Common-neighbor count, then the tree search's depth-1 frontier lookahead."""
        self._cache_u(u)
        out_v = self._out_adj[v]
        in_v = self._in_adj[v]
        if self.need_in or self.need_out:
            # Neighbors of v inside the frontier left by mapping only 0 -> u.
            hits_in = self._last_in.intersection(out_v)
            hits_in.update(self._last_in.intersection(in_v))
            hits_in.discard(u)
            hits_in.discard(v)
            if len(hits_in) < self.need_in:
                return False
            hits_out = self._last_out.intersection(out_v)
            hits_out.update(self._last_out.intersection(in_v))
            hits_out.discard(u)
            hits_out.discard(v)
            if len(hits_out) < self.need_out:
                return False
            return len(hits_in | hits_out) >= self.overlap
        nu = self._last_nbrs
        common = nu.intersection(out_v)
        common.update(nu.intersection(in_v))
        common.discard(u)
        common.discard(v)
        return len(common) >= self.overlap

    def _fill(self, u: int, v: int, state: SearchState) -> None:
        self._cache_u(u)
        state.core[0] = u
        state.core[1] = v
        state.core_inverse = {u, v}
        state.t1_in = set(self._t1_in)
        state.t1_out = set(self._t1_out)
        t2_in = self._last_in.union(self._in_adj[v])
        t2_in.discard(u)
        t2_in.discard(v)
        t2_out = self._last_out.union(self._out_adj[v])
        t2_out.discard(u)
        t2_out.discard(v)
        state.t2_in = t2_in
        state.t2_out = t2_out
        state.depth = 2

    def inject(self, u: int, v: int) -> SearchState | None:
        """Depth-2 state for an edge that already passed :meth:`screen`, or None.

        Only the common-neighbor check remains, as :meth:`screen` covers
        every other test of :meth:`__call__`.
        """
        if self._local and not self._neighborhood_ok(u, v):
            return None
        state = new_state(self.target.vertex_count, self.pattern.vertex_count)
        self._fill(u, v, state)
        return state

    def screen(self, edge_ids: np.ndarray) -> np.ndarray:
        """Vectorized form of the stateless checks; ``True`` where ``__call__`` may accept.

        Never rejects an edge the scalar validator accepts, so callers can
        drop rejected edges before allocating states.
        """
        target = self.target
        edge_ids = np.asarray(edge_ids, dtype=np.int64)
        u = target.src[edge_ids]
        v = target.dst[edge_ids]
        ok = (target.in_degree[v] >= self.indeg1) & (target.out_degree[v] >= self.outdeg1)
        if self._mutual is not None:
            ok &= (self._mutual[u] >= self.mutual0) & (self._mutual[v] >= self.mutual1)
        attrs1 = self.pattern.vertex_attr_sets[1]
        if attrs1:
            ok &= target.vertex_mask(attrs1)[v]
        attrs01 = self.pattern.edge_attr_sets[self.fwd]
        if attrs01:
            ok &= target.edge_mask(attrs01)[edge_ids]

        if self.iso and self._loops:
            loops = np.zeros(target.vertex_count, dtype=bool)
            loops[list(self._loops)] = True
            ok &= ~loops[u] & ~loops[v]
        if self.rev is not None or self.iso:
            rev = target.reverse_edge_ids[edge_ids]
            exists = rev >= 0
            if self.rev is not None:
                ok &= exists
                attrs10 = self.pattern.edge_attr_sets[self.rev]
                if attrs10:
                    ok &= target.edge_mask(attrs10)[np.where(exists, rev, 0)]
            else:
                ok &= ~exists
        return ok


def edge_validator(
    u: int,
    v: int,
    state: SearchState,
    pattern: PropertyGraph,
    target: PropertyGraph,
    semantics: Semantics = "mono",
) -> bool:
    """One-shot wrapper around :class:`EdgeValidator`; prefer the class in loops."""
    return EdgeValidator(TreeSearch(pattern, target, semantics))(u, v, state)
