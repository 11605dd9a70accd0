"""Immutable directed property graph in double-index CSR form.

Edges are stored in CSR order: sorted by source, then destination.  An edge
id is the edge's position in that order, so ``src[e]`` and ``dst[e]`` give
its endpoints in constant time and ``get_edge_id`` is a binary search in the
source's out-list.  A second index over the same edge ids groups edges by
destination for in-neighbor queries.

Attributes live in per-key columns (one entry per vertex or edge, ``None``
where the element lacks the key).  An element's :data:`AttributeSet` is the
sorted tuple of its ``(key, value)`` pairs.
"""
from __future__ import annotations

from bisect import bisect_left
from collections.abc import Iterable, Iterator, Mapping, Sequence
from functools import cached_property
from typing import Any, Literal, Union

import numpy as np

from .errors import DuplicateEdge, EndpointOutOfRange, GraphError, PatternSelfLoop

__all__ = [
    "AttributeSet",
    "PropertyGraph",
    "attribute_set",
    "build_graph",
    "check_edge_attrs",
    "check_vertex_attrs",
]

AttributeSet = tuple[tuple[str, str], ...]
AttrsLike = Union[Mapping[str, Any], Iterable[tuple[str, Any]], None]
Direction = Literal["in", "out", "both"]


def attribute_set(items: AttrsLike = None) -> AttributeSet:
    """Normalize a mapping or pair sequence into a sorted, key-unique tuple."""
    if not items:
        return ()
    pairs = items.items() if isinstance(items, Mapping) else items
    seen: dict[str, str] = {}
    for key, value in pairs:
        key = str(key)
        if key in seen:
            raise GraphError(f"duplicate attribute key {key!r}")
        seen[key] = str(value)
    return tuple(sorted(seen.items()))


def _columns_from_sets(sets: Sequence[AttributeSet], size: int) -> dict[str, np.ndarray]:
    columns: dict[str, np.ndarray] = {}
    for idx, attrs in enumerate(sets):
        for key, value in attrs:
            col = columns.get(key)
            if col is None:
                col = columns[key] = np.full(size, None, dtype=object)
            col[idx] = value
    return columns


class PropertyGraph:
    """Directed graph without parallel edges, plus vertex and edge attributes.

    Instances are built with :func:`build_graph` and never mutated, so they
    can be shared freely between concurrent searches.

    Attributes
    ----------
    vertex_count : int
        Number of vertices; ids are ``0 .. vertex_count - 1``.
    src, dst : numpy.ndarray
        Edge endpoints in CSR order.
    out_offsets : numpy.ndarray
        ``out_offsets[v]:out_offsets[v + 1]`` is the edge-id range of ``v``'s
        out-edges.
    in_offsets, in_edge_ids : numpy.ndarray
        ``in_edge_ids[in_offsets[v]:in_offsets[v + 1]]`` are the ids of
        ``v``'s in-edges, ordered by source.
    """

    def __init__(
        self,
        vertex_count: int,
        src: np.ndarray,
        dst: np.ndarray,
        vertex_columns: Mapping[str, np.ndarray] | None = None,
        edge_columns: Mapping[str, np.ndarray] | None = None,
    ) -> None:
        # Callers guarantee CSR order and validity; use build_graph otherwise.
        self.vertex_count = int(vertex_count)
        self.src = np.ascontiguousarray(src, dtype=np.int64)
        self.dst = np.ascontiguousarray(dst, dtype=np.int64)
        n = self.vertex_count
        self.out_degree = np.bincount(self.src, minlength=n).astype(np.int64)
        self.in_degree = np.bincount(self.dst, minlength=n).astype(np.int64)
        self.out_offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.out_degree, out=self.out_offsets[1:])
        self.in_offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.in_degree, out=self.in_offsets[1:])
        self.in_edge_ids = np.lexsort((self.src, self.dst)).astype(np.int64)
        self._vertex_columns = {
            k: np.asarray(c, dtype=object) for k, c in (vertex_columns or {}).items()
        }
        self._edge_columns = {
            k: np.asarray(c, dtype=object) for k, c in (edge_columns or {}).items()
        }
        for arr in (self.src, self.dst, self.out_degree, self.in_degree,
                    self.out_offsets, self.in_offsets, self.in_edge_ids,
                    *self._vertex_columns.values(), *self._edge_columns.values()):
            arr.flags.writeable = False

        # Plain-Python mirrors for the search hot loops.
        out_off = self.out_offsets.tolist()
        dst_list = self.dst.tolist()
        in_off = self.in_offsets.tolist()
        in_src = self.src[self.in_edge_ids].tolist()
        self._out_off: list[int] = out_off
        self._out_adj: list[tuple[int, ...]] = [
            tuple(dst_list[out_off[v]:out_off[v + 1]]) for v in range(n)
        ]
        self._in_adj: list[tuple[int, ...]] = [
            tuple(in_src[in_off[v]:in_off[v + 1]]) for v in range(n)
        ]
        self._indeg: list[int] = self.in_degree.tolist()
        self._outdeg: list[int] = self.out_degree.tolist()

    # -- structure -----------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return int(self.src.shape[0])

    def __len__(self) -> int:
        return self.vertex_count

    def __repr__(self) -> str:
        return (f"PropertyGraph(vertices={self.vertex_count}, edges={self.edge_count}, "
                f"vertex_keys={self.vertex_keys}, edge_keys={self.edge_keys})")

    def edges(self) -> Iterator[tuple[int, int]]:
        return zip(self.src.tolist(), self.dst.tolist())

    def get_edge_id(self, u: int, v: int) -> int | None:
        """Return the id of edge ``(u, v)`` or ``None`` if it is absent."""
        adj = self._out_adj[u]
        i = bisect_left(adj, v)
        if i < len(adj) and adj[i] == v:
            return self._out_off[u] + i
        return None

    def has_edge(self, u: int, v: int) -> bool:
        return self.get_edge_id(u, v) is not None

    def degrees(self, v: int) -> tuple[int, int, int]:
        """Return ``(indeg, outdeg, totaldeg)``; a self-loop counts once each way."""
        i, o = self._indeg[v], self._outdeg[v]
        return i, o, i + o

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out_adj[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in_adj[v]

    def neighbors(self, v: int, direction: Direction = "both") -> tuple[int, ...]:
        if direction == "out":
            return self._out_adj[v]
        if direction == "in":
            return self._in_adj[v]
        if direction == "both":
            return tuple(sorted(set(self._out_adj[v]).union(self._in_adj[v])))
        raise ValueError(f"unknown direction {direction!r}")

    @cached_property
    def has_self_loops(self) -> bool:
        return bool(np.any(self.src == self.dst))

    @cached_property
    def self_loops(self) -> frozenset[int]:
        return frozenset(self.src[self.src == self.dst].tolist())

    @cached_property
    def reverse_edge_ids(self) -> np.ndarray:
        """Id of edge ``(v, u)`` for each edge ``(u, v)``, or -1 when absent."""
        out = np.full(self.edge_count, -1, dtype=np.int64)
        if self.edge_count == 0:
            return out
        n = np.int64(self.vertex_count)
        keys = self.src * n + self.dst
        # Visiting edges in in-index order makes the reversed keys ascending,
        # which keeps the binary searches cache friendly.
        order = self.in_edge_ids
        rkeys = self.dst[order] * n + self.src[order]
        idx = np.minimum(np.searchsorted(keys, rkeys), len(keys) - 1)
        hit = keys[idx] == rkeys
        out[order[hit]] = idx[hit]
        out.flags.writeable = False
        return out

    @cached_property
    def mutual_degree(self) -> np.ndarray:
        """Per vertex, the number of other vertices joined to it in both directions."""
        rev = self.reverse_edge_ids
        both = (rev >= 0) & (self.src != self.dst)
        out = np.bincount(self.src[both], minlength=self.vertex_count).astype(np.int64)
        out.flags.writeable = False
        return out

    # -- attributes ----------------------------------------------------------

    @property
    def vertex_keys(self) -> tuple[str, ...]:
        return tuple(sorted(self._vertex_columns))

    @property
    def edge_keys(self) -> tuple[str, ...]:
        return tuple(sorted(self._edge_columns))

    def vertex_column(self, key: str) -> np.ndarray | None:
        return self._vertex_columns.get(key)

    def edge_column(self, key: str) -> np.ndarray | None:
        return self._edge_columns.get(key)

    def vertex_attrs(self, v: int) -> AttributeSet:
        return tuple(
            (k, self._vertex_columns[k][v]) for k in self.vertex_keys
            if self._vertex_columns[k][v] is not None
        )

    def edge_attrs(self, e: int) -> AttributeSet:
        return tuple(
            (k, self._edge_columns[k][e]) for k in self.edge_keys
            if self._edge_columns[k][e] is not None
        )

    @cached_property
    def vertex_attr_sets(self) -> tuple[AttributeSet, ...]:
        return tuple(self.vertex_attrs(v) for v in range(self.vertex_count))

    @cached_property
    def edge_attr_sets(self) -> tuple[AttributeSet, ...]:
        return tuple(self.edge_attrs(e) for e in range(self.edge_count))

    def vertex_mask(self, attrs: AttributeSet) -> np.ndarray:
        """Boolean mask of vertices whose attributes contain ``attrs``."""
        return self._mask(self._vertex_columns, attrs, self.vertex_count)

    def edge_mask(self, attrs: AttributeSet) -> np.ndarray:
        """Boolean mask of edges whose attributes contain ``attrs``."""
        return self._mask(self._edge_columns, attrs, self.edge_count)

    @staticmethod
    def _mask(columns: Mapping[str, np.ndarray], attrs: AttributeSet, size: int) -> np.ndarray:
        mask = np.ones(size, dtype=bool)
        for key, value in attrs:
            col = columns.get(key)
            if col is None:
                return np.zeros(size, dtype=bool)
            mask &= col == value
        return mask

    def with_columns(
        self,
        vertex_columns: Mapping[str, np.ndarray] | None = None,
        edge_columns: Mapping[str, np.ndarray] | None = None,
    ) -> PropertyGraph:
        """Return a copy of this graph with extra or replaced attribute columns."""
        vcols = dict(self._vertex_columns)
        ecols = dict(self._edge_columns)
        for key, col in (vertex_columns or {}).items():
            if len(col) != self.vertex_count:
                raise GraphError(f"vertex column {key!r} has wrong length")
            vcols[key] = col
        for key, col in (edge_columns or {}).items():
            if len(col) != self.edge_count:
                raise GraphError(f"edge column {key!r} has wrong length")
            ecols[key] = col
        return PropertyGraph(self.vertex_count, self.src, self.dst, vcols, ecols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PropertyGraph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and self.vertex_attr_sets == other.vertex_attr_sets
            and self.edge_attr_sets == other.edge_attr_sets
        )

    __hash__ = None  # type: ignore[assignment]


def build_graph(
    edges: Iterable[tuple[int, int]] | np.ndarray,
    vertex_attrs: Mapping[int, AttrsLike] | Sequence[AttrsLike] | None = None,
    edge_attrs: Mapping[tuple[int, int], AttrsLike] | Sequence[AttrsLike] | None = None,
    *,
    vertex_count: int | None = None,
    allow_self_loops: bool = True,
) -> PropertyGraph:
    """Build a :class:`PropertyGraph` from an edge list.

    Parameters
    ----------
    edges
        ``(u, v)`` pairs or an ``(m, 2)`` integer array.  Order does not
        matter; edge ids are assigned in CSR order.
    vertex_attrs
        Per-vertex attributes, as a sequence indexed by vertex or a mapping
        from vertex id.  Each entry is a mapping or ``(key, value)`` pairs.
    edge_attrs
        Per-edge attributes, as a sequence parallel to ``edges`` or a mapping
        keyed by ``(u, v)``.
    vertex_count
        Defaults to one more than the largest id mentioned anywhere.
    allow_self_loops
        Pattern graphs are built with ``False``.

    Raises
    ------
    DuplicateEdge
        If a directed edge appears twice.
    EndpointOutOfRange
        If an endpoint is negative or not below ``vertex_count``.
    PatternSelfLoop
        If ``allow_self_loops`` is false and an edge ``(v, v)`` is present.
    """
    arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphError("edges must be (u, v) pairs")
    src, dst = arr[:, 0], arr[:, 1]

    if vertex_count is None:
        top = int(arr.max()) + 1 if arr.size else 0
        if isinstance(vertex_attrs, Mapping) and vertex_attrs:
            top = max(top, max(int(k) for k in vertex_attrs) + 1)
        elif vertex_attrs is not None and not isinstance(vertex_attrs, Mapping):
            top = max(top, len(vertex_attrs))
        vertex_count = top
    n = int(vertex_count)
    if n < 0:
        raise GraphError("vertex_count must be non-negative")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = int(np.flatnonzero((src < 0) | (src >= n) | (dst < 0) | (dst >= n))[0])
        raise EndpointOutOfRange(
            f"edge ({int(src[bad])}, {int(dst[bad])}) has an endpoint outside 0..{n - 1}")
    if not allow_self_loops and np.any(src == dst):
        loop = int(src[np.flatnonzero(src == dst)[0]])
        raise PatternSelfLoop(f"self-loop ({loop}, {loop}) is not allowed in a pattern graph")

    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    if src.size > 1:
        dup = np.flatnonzero((src[1:] == src[:-1]) & (dst[1:] == dst[:-1]))
        if dup.size:
            i = int(dup[0])
            raise DuplicateEdge(f"duplicate edge ({int(src[i])}, {int(dst[i])})")

    vsets: list[AttributeSet] = [()] * n
    if vertex_attrs is not None:
        items = vertex_attrs.items() if isinstance(vertex_attrs, Mapping) else enumerate(vertex_attrs)
        for v, attrs in items:
            v = int(v)
            if not 0 <= v < n:
                raise EndpointOutOfRange(f"vertex attribute for {v} outside 0..{n - 1}")
            vsets[v] = attribute_set(attrs)

    m = src.size
    esets: list[AttributeSet] = [()] * m
    if edge_attrs is not None:
        if isinstance(edge_attrs, Mapping):
            position = {(u, v): i for i, (u, v) in enumerate(zip(src.tolist(), dst.tolist()))}
            for (u, v), attrs in edge_attrs.items():
                i = position.get((int(u), int(v)))
                if i is None:
                    raise GraphError(f"edge attributes given for missing edge ({u}, {v})")
                esets[i] = attribute_set(attrs)
        else:
            if len(edge_attrs) != m:
                raise GraphError("edge_attrs must be parallel to edges")
            for new_pos, old_pos in enumerate(order.tolist()):
                esets[new_pos] = attribute_set(edge_attrs[old_pos])

    return PropertyGraph(n, src, dst, _columns_from_sets(vsets, n), _columns_from_sets(esets, m))


def _contains(target: PropertyGraph, columns_of: str, idx: int, attrs: AttributeSet) -> bool:
    columns = target._vertex_columns if columns_of == "v" else target._edge_columns
    for key, value in attrs:
        col = columns.get(key)
        if col is None or col[idx] != value:
            return False
    return True


def check_vertex_attrs(pattern: PropertyGraph, pv: int, target: PropertyGraph, tv: int) -> bool:
    """True iff every attribute of pattern vertex ``pv`` appears on ``tv`` with equal value."""
    return _contains(target, "v", tv, pattern.vertex_attr_sets[pv])


def check_edge_attrs(pattern: PropertyGraph, pe: int, target: PropertyGraph, te: int) -> bool:
    """Edge counterpart of :func:`check_vertex_attrs`; attribute-less edges are wildcards."""
    return _contains(target, "e", te, pattern.edge_attr_sets[pe])
