"""VF2-style backtracking over a static pattern-vertex order.

Pattern vertices are matched in index order ``0, 1, 2, ...``, so at depth
``d`` exactly the pattern vertices ``0 .. d-1`` are mapped.  A search can
start from any state, which is how edge-centric initialization injects
depth-2 states.

Semantics
---------
``"mono"``
    Every pattern edge must map onto a target edge (non-induced).
``"iso"``
    Additionally, no target edge may join two images unless the pattern has
    the corresponding edge (induced), including self-loops.
"""
from __future__ import annotations

from bisect import bisect_left
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

from .errors import InvalidSize, TargetAlreadyUsed
from .graph import PropertyGraph
from .matchset import Embedding, MatchSet

__all__ = [
    "UNMAPPED",
    "Semantics",
    "SearchState",
    "TreeSearch",
    "check_semantics",
    "extend",
    "feasible",
    "new_state",
    "vf2ps",
]

UNMAPPED = -1
Semantics = Literal["iso", "mono"]


def check_semantics(semantics: str) -> Semantics:
    if semantics not in ("iso", "mono"):
        raise ValueError(f"semantics must be 'iso' or 'mono', got {semantics!r}")
    return semantics  # type: ignore[return-value]


@dataclass(slots=True)
class SearchState:
    """Partial mapping plus VF2 frontier sets.

    ``t1_*`` hold unmapped pattern vertices adjacent to the mapped region,
    ``t2_*`` the same for target vertices; ``_in`` sets contain vertices with
    an edge *into* the mapped region, ``_out`` sets vertices reached *from*
    it.  A state is owned by one search task at a time.
    """

    core: list[int]
    core_inverse: set[int] = field(default_factory=set)
    t1_in: set[int] = field(default_factory=set)
    t1_out: set[int] = field(default_factory=set)
    t2_in: set[int] = field(default_factory=set)
    t2_out: set[int] = field(default_factory=set)
    depth: int = 0

    def copy(self) -> SearchState:
        return SearchState(
            self.core.copy(), set(self.core_inverse), set(self.t1_in), set(self.t1_out),
            set(self.t2_in), set(self.t2_out), self.depth,
        )


def new_state(target_size: int, pattern_size: int) -> SearchState:
    if target_size <= 0 or pattern_size <= 0:
        raise InvalidSize(f"state sizes must be positive, got ({target_size}, {pattern_size})")
    return SearchState([UNMAPPED] * pattern_size)


class TreeSearch:
    """Matching context for one (pattern, target, semantics) instance.

    Pattern-side bookkeeping is precomputed once; attribute filters are
    evaluated lazily as boolean lists over target vertices and edges.  The
    object holds no per-search state besides the ``nodes`` counter, so
    forked workers can each use their own copy.
    """

    def __init__(
        self,
        pattern: PropertyGraph,
        target: PropertyGraph,
        semantics: Semantics = "mono",
        lookahead: bool = True,
    ) -> None:
        self.pattern = pattern
        self.target = target
        self.semantics = check_semantics(semantics)
        self.lookahead = lookahead
        self.iso = semantics == "iso"
        self.nodes = 0

        n1 = pattern.vertex_count
        self.n1 = n1
        self.n2 = target.vertex_count
        self._out_adj = target._out_adj
        self._in_adj = target._in_adj
        self._out_off = target._out_off
        self._target_loops = target.self_loops

        self._pred: list[list[tuple[int, int]]] = [[] for _ in range(n1)]
        self._succ: list[list[tuple[int, int]]] = [[] for _ in range(n1)]
        self._loop: list[int | None] = [None] * n1
        for e, (u, v) in enumerate(pattern.edges()):
            if u == v:
                self._loop[u] = e
            elif u < v:
                self._pred[v].append((u, e))
            else:
                self._succ[u].append((v, e))
        self._nonpred: list[list[int]] = []
        self._nonsucc: list[list[int]] = []
        for p in range(n1):
            preds = {q for q, _ in self._pred[p]}
            succs = {q for q, _ in self._succ[p]}
            self._nonpred.append([q for q in range(p) if q not in preds])
            self._nonsucc.append([q for q in range(p) if q not in succs])

        # Frontier-count lookahead thresholds; the pattern frontier at depth p
        # depends only on p because the matching order is static.
        self._need_in = [0] * n1
        self._need_out = [0] * n1
        t_in: set[int] = set()
        t_out: set[int] = set()
        for p in range(n1):
            nbrs = set(pattern.out_neighbors(p)).union(pattern.in_neighbors(p))
            nbrs.discard(p)
            self._need_in[p] = len(t_in & nbrs)
            self._need_out[p] = len(t_out & nbrs)
            t_in.update(pattern.in_neighbors(p))
            t_out.update(pattern.out_neighbors(p))
            t_in.difference_update(range(p + 1))
            t_out.difference_update(range(p + 1))

    @cached_property
    def vertex_filters(self) -> list[list[bool] | None]:
        """Per pattern vertex, attribute compatibility over target vertices (None = wildcard)."""
        return [
            self.target.vertex_mask(attrs).tolist() if attrs else None
            for attrs in self.pattern.vertex_attr_sets
        ]

    @cached_property
    def edge_filters(self) -> list[list[bool] | None]:
        """Per pattern edge, attribute compatibility over target edges (None = wildcard)."""
        return [
            self.target.edge_mask(attrs).tolist() if attrs else None
            for attrs in self.pattern.edge_attr_sets
        ]

    # -- state operations ----------------------------------------------------

    def extend(self, state: SearchState, pattern_v: int, target_v: int) -> SearchState:
        """Return a new state with ``pattern_v -> target_v`` added; ``state`` is untouched."""
        if pattern_v != state.depth:
            raise ValueError(f"pattern vertex {pattern_v} is not next in order (depth {state.depth})")
        if target_v in state.core_inverse:
            raise TargetAlreadyUsed(f"target vertex {target_v} is already mapped")
        core = state.core.copy()
        core[pattern_v] = target_v
        used = set(state.core_inverse)
        used.add(target_v)
        pattern = self.pattern
        mapped = range(pattern_v + 1)
        t1_in = state.t1_in.union(pattern.in_neighbors(pattern_v))
        t1_in.difference_update(mapped)
        t1_out = state.t1_out.union(pattern.out_neighbors(pattern_v))
        t1_out.difference_update(mapped)
        t2_in = state.t2_in.union(self._in_adj[target_v])
        t2_in.difference_update(used)
        t2_out = state.t2_out.union(self._out_adj[target_v])
        t2_out.difference_update(used)
        return SearchState(core, used, t1_in, t1_out, t2_in, t2_out, pattern_v + 1)

    def feasible(self, state: SearchState, pattern_v: int, target_v: int) -> bool:
        """Can ``pattern_v -> target_v`` extend ``state`` without violating a constraint?"""
        p, b = pattern_v, target_v
        if b in state.core_inverse:
            return False
        vf = self.vertex_filters[p]
        if vf is not None and not vf[b]:
            return False
        core = state.core
        out_adj = self._out_adj
        off = self._out_off
        ef = self.edge_filters

        loop = self._loop[p]
        if loop is not None:
            adj = out_adj[b]
            i = bisect_left(adj, b)
            if i == len(adj) or adj[i] != b:
                return False
            f = ef[loop]
            if f is not None and not f[off[b] + i]:
                return False
        elif self.iso and b in self._target_loops:
            return False

        for q, pe in self._pred[p]:
            a = core[q]
            adj = out_adj[a]
            i = bisect_left(adj, b)
            if i == len(adj) or adj[i] != b:
                return False
            f = ef[pe]
            if f is not None and not f[off[a] + i]:
                return False
        if self._succ[p]:
            adj = out_adj[b]
            for q, pe in self._succ[p]:
                a = core[q]
                i = bisect_left(adj, a)
                if i == len(adj) or adj[i] != a:
                    return False
                f = ef[pe]
                if f is not None and not f[off[b] + i]:
                    return False

        if self.iso:
            adj = out_adj[b]
            for q in self._nonsucc[p]:
                a = core[q]
                i = bisect_left(adj, a)
                if i < len(adj) and adj[i] == a:
                    return False
            adj = self._in_adj[b]
            for q in self._nonpred[p]:
                a = core[q]
                i = bisect_left(adj, a)
                if i < len(adj) and adj[i] == a:
                    return False

        if self.lookahead:
            need = self._need_in[p]
            if need and self._frontier_hits(state.t2_in, b) < need:
                return False
            need = self._need_out[p]
            if need and self._frontier_hits(state.t2_out, b) < need:
                return False
        return True

    def _frontier_hits(self, frontier: set[int], b: int) -> int:
        hits = frontier.intersection(self._out_adj[b])
        hits.update(frontier.intersection(self._in_adj[b]))
        hits.discard(b)
        return len(hits)

    def candidates(self, state: SearchState):
        """Ascending target vertices that can possibly host pattern vertex ``state.depth``.

        Every mapped neighbor of the vertex contributes the neighbor list of
        its image; the candidates are their intersection, a sorted subset of
        the matching target frontier containing every feasible candidate.
        With no mapped neighbor all target vertices are candidates.
        """
        p = state.depth
        core = state.core
        lists = [self._out_adj[core[q]] for q, _ in self._pred[p]]
        lists.extend(self._in_adj[core[q]] for q, _ in self._succ[p])
        if not lists:
            return range(self.n2)
        if len(lists) == 1:
            return lists[0]
        lists.sort(key=len)
        return sorted(set(lists[0]).intersection(*lists[1:]))

    # -- enumeration ---------------------------------------------------------

    def iter_embeddings(
        self, state: SearchState, stop: Callable[[], bool] | None = None
    ) -> Iterator[Embedding]:
        """Yield every complete embedding extending ``state`` in lexicographic order."""
        n1 = self.n1
        if state.depth == n1:
            yield tuple(state.core)
            return
        feasible = self.feasible
        extend = self.extend
        candidates = self.candidates
        stack = [(state, iter(candidates(state)))]
        while stack:
            st, cands = stack[-1]
            p = st.depth
            for b in cands:
                if not feasible(st, p, b):
                    continue
                self.nodes += 1
                if p + 1 == n1:
                    core = st.core.copy()
                    core[p] = b
                    yield tuple(core)
                    if stop is not None and stop():
                        return
                else:
                    if stop is not None and stop():
                        return
                    child = extend(st, p, b)
                    stack.append((child, iter(candidates(child))))
                    break
            else:
                stack.pop()

    def run(
        self,
        state: SearchState,
        limit: int | None = None,
        stop: Callable[[], bool] | None = None,
    ) -> list[Embedding]:
        found: list[Embedding] = []
        if limit is not None and limit <= 0:
            return found
        for emb in self.iter_embeddings(state, stop):
            found.append(emb)
            if limit is not None and len(found) >= limit:
                break
        return found


def extend(
    state: SearchState,
    pattern: PropertyGraph,
    target: PropertyGraph,
    pattern_v: int,
    target_v: int,
) -> SearchState:
    return TreeSearch(pattern, target).extend(state, pattern_v, target_v)


def feasible(
    state: SearchState,
    pattern: PropertyGraph,
    target: PropertyGraph,
    pattern_v: int,
    target_v: int,
    semantics: Semantics = "mono",
    lookahead: bool = True,
) -> bool:
    if pattern_v != state.depth:
        raise ValueError(f"pattern vertex {pattern_v} is not next in order (depth {state.depth})")
    return TreeSearch(pattern, target, semantics, lookahead).feasible(state, pattern_v, target_v)


def vf2ps(
    state: SearchState,
    start_depth: int,
    pattern: PropertyGraph,
    target: PropertyGraph,
    semantics: Semantics = "mono",
    limit: int | None = None,
    lookahead: bool = True,
) -> MatchSet:
    """Enumerate every embedding extending ``state``.

    Embeddings are indexed by the ids of ``pattern`` as given.  With
    ``limit`` the first ``limit`` embeddings in canonical order are returned.
    """
    if state.depth != start_depth:
        raise ValueError(f"state depth {state.depth} does not match start depth {start_depth}")
    search = TreeSearch(pattern, target, semantics, lookahead)
    found = search.run(state, limit)
    truncated = limit is not None and len(found) >= limit
    return MatchSet(tuple(found), None, True, truncated, search.nodes)
