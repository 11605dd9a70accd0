"""Canonical embedding collections."""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

__all__ = ["Embedding", "MatchSet", "canonical"]

# f[p] is the target vertex assigned to pattern vertex p.
Embedding = tuple[int, ...]


def canonical(embeddings: Iterable[Embedding]) -> tuple[Embedding, ...]:
    """Sort lexicographically and drop duplicates."""
    return tuple(sorted(set(map(tuple, embeddings))))


@dataclass(frozen=True)
class MatchSet:
    """Sorted, duplicate-free embeddings plus the id space they are written in.

    ``permutation`` is the relabeling (``permutation[old] == new``) applied
    to the pattern before searching, or ``None`` when the pattern was
    searched as given.  ``original_ids`` says whether ``embeddings`` are
    indexed by original pattern ids; :meth:`original` and :meth:`reordered`
    convert between the two views.
    """

    embeddings: tuple[Embedding, ...] = ()
    permutation: tuple[int, ...] | None = field(default=None, compare=False)
    original_ids: bool = True
    truncated: bool = field(default=False, compare=False)
    nodes: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.embeddings)

    def __iter__(self) -> Iterator[Embedding]:
        return iter(self.embeddings)

    def __contains__(self, item: object) -> bool:
        return tuple(item) in set(self.embeddings)  # type: ignore[arg-type]

    @property
    def count(self) -> int:
        return len(self.embeddings)

    def original(self) -> MatchSet:
        if self.original_ids or self.permutation is None:
            return self
        perm = self.permutation
        converted = (tuple(f[perm[old]] for old in range(len(perm))) for f in self.embeddings)
        return MatchSet(canonical(converted), perm, True, self.truncated, self.nodes)

    def reordered(self) -> MatchSet:
        if not self.original_ids or self.permutation is None:
            return self
        perm = self.permutation
        n = len(perm)
        converted = []
        for f in self.embeddings:
            g = [0] * n
            for old, new in enumerate(perm):
                g[new] = f[old]
            converted.append(tuple(g))
        return MatchSet(canonical(converted), perm, False, self.truncated, self.nodes)
