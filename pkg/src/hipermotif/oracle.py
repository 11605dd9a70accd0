"""Exhaustive reference enumerator for small instances."""
from __future__ import annotations

from itertools import permutations

from .errors import InstanceTooLarge
from .graph import PropertyGraph
from .matchset import MatchSet
from .search import Semantics
from .verify import EmbeddingVerifier

__all__ = ["DEFAULT_CAP", "brute_force"]

DEFAULT_CAP = 12


def brute_force(
    pattern: PropertyGraph,
    target: PropertyGraph,
    semantics: Semantics = "mono",
    cap: int = DEFAULT_CAP,
) -> MatchSet:
    """Try every injective map from pattern to target vertices; keep the valid ones.

    Cost is ``|V2|! / (|V2| - |V1|)!`` verifier calls, hence the cap on the
    target size.
    """
    if target.vertex_count > cap:
        raise InstanceTooLarge(
            f"brute force is capped at {cap} target vertices, got {target.vertex_count}")
    verifier = EmbeddingVerifier(pattern, target, semantics)
    # permutations() yields in lexicographic order, so the result is canonical.
    found = tuple(f for f in permutations(range(target.vertex_count), pattern.vertex_count)
                  if verifier(f))
    return MatchSet(found)
