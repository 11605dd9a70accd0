"""Direct re-validation of embeddings against both graphs.

Deliberately shares nothing with the search code beyond the public
attribute predicates: edges come from the raw ``src``/``dst`` arrays and
every constraint is checked from scratch.
"""
from __future__ import annotations

from collections.abc import Sequence

from .graph import PropertyGraph, check_edge_attrs, check_vertex_attrs
from .search import Semantics, check_semantics

__all__ = ["EmbeddingVerifier", "verify_embedding"]


class EmbeddingVerifier:
    """Reusable checker for one (pattern, target, semantics) instance."""

    def __init__(self, pattern: PropertyGraph, target: PropertyGraph, semantics: Semantics = "mono"):
        self.pattern = pattern
        self.target = target
        self.iso = check_semantics(semantics) == "iso"
        self.n1 = pattern.vertex_count
        self.n2 = target.vertex_count
        self.pattern_edges = [(u, v, e) for e, (u, v) in enumerate(pattern.edges())]
        self.pattern_pairs = {(u, v) for u, v, _ in self.pattern_edges}
        self.target_edges = {(u, v): e for e, (u, v) in enumerate(target.edges())}
        self._vertex_ok: dict[tuple[int, int], bool] = {}
        self._edge_ok: dict[tuple[int, int], bool] = {}

    def vertex_ok(self, p: int, t: int) -> bool:
        key = (p, t)
        ok = self._vertex_ok.get(key)
        if ok is None:
            ok = self._vertex_ok[key] = check_vertex_attrs(self.pattern, p, self.target, t)
        return ok

    def edge_ok(self, pe: int, te: int) -> bool:
        key = (pe, te)
        ok = self._edge_ok.get(key)
        if ok is None:
            ok = self._edge_ok[key] = check_edge_attrs(self.pattern, pe, self.target, te)
        return ok

    def __call__(self, f: Sequence[int]) -> bool:
        if len(f) != self.n1:
            return False
        if any(not 0 <= t < self.n2 for t in f):
            return False
        if len(set(f)) != self.n1:
            return False
        for p in range(self.n1):
            if not self.vertex_ok(p, f[p]):
                return False
        target_edges = self.target_edges
        for u, v, pe in self.pattern_edges:
            te = target_edges.get((f[u], f[v]))
            if te is None or not self.edge_ok(pe, te):
                return False
        if self.iso:
            pairs = self.pattern_pairs
            for u in range(self.n1):
                for v in range(self.n1):
                    if (u, v) not in pairs and (f[u], f[v]) in target_edges:
                        return False
        return True


def verify_embedding(
    pattern: PropertyGraph,
    target: PropertyGraph,
    f: Sequence[int],
    semantics: Semantics = "mono",
) -> bool:
    """Check injectivity, edge constraints for ``semantics`` and all attribute constraints."""
    return EmbeddingVerifier(pattern, target, semantics)(f)
