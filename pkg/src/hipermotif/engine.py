"""Edge-centric parallel matching with depth-2 state injection.

The pattern is reordered so that its two best-ranked vertices form the edge
``(0, 1)``.  Every target edge whose source passes the vertex validator is
offered to the edge validator; each accepted edge yields a depth-2 state
that the tree search extends to full embeddings.  Embeddings are therefore
partitioned by the target edge hosting ``(0, 1)``, which makes target edges
independent units of parallel work.

Workers are forked processes, so the graphs and precomputed filters are
shared copy-on-write and never pickled.  Platforms without ``fork`` fall
back to threads.
"""
from __future__ import annotations

import copy
import math
import multiprocessing as mp
import threading
import time
from collections.abc import Callable
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import PatternSelfLoop, PatternTooSmall
from .graph import PropertyGraph
from .matchset import Embedding, MatchSet, canonical
from .oracle import brute_force
from .reorder import ReorderResult, identity_reorder, structural_reorder
from .search import Semantics, TreeSearch, check_semantics, new_state
from .validators import EdgeValidator, vertex_validator
from .verify import EmbeddingVerifier, verify_embedding

__all__ = [
    "ENGINES",
    "MatchConfig",
    "hipermotif",
    "run_engine",
    "run_vf2ps",
    "verify_embedding",
]

EngineName = Literal["hipermotif", "vf2ps", "oracle"]
ENGINES: tuple[str, ...] = ("hipermotif", "vf2ps", "oracle")


@dataclass(frozen=True)
class MatchConfig:
    """Options shared by all engines.

    ``match_limit`` stops the search once that many embeddings exist;
    ``time_limit_s`` abandons the search after that many seconds, leaving
    a truncated result.  ``verify`` re-checks every emitted embedding
    independently (slow).
    ``chunk_size`` is the number of target edges per parallel task; the
    default spreads edges over roughly eight tasks per worker.
    """

    semantics: Semantics = "mono"
    reorder: bool = True
    worker_count: int = 1
    match_limit: int | None = None
    report_original_ids: bool = True
    lookahead: bool = True
    verify: bool = False
    chunk_size: int | None = None
    time_limit_s: float | None = None

    def __post_init__(self) -> None:
        check_semantics(self.semantics)
        if self.worker_count < 1:
            raise ValueError("worker_count must be at least 1")
        if self.match_limit is not None and self.match_limit < 1:
            raise ValueError("match_limit must be at least 1")
        if self.chunk_size is not None and self.chunk_size < 1:
            raise ValueError("chunk_size must be at least 1")
        if self.time_limit_s is not None and not self.time_limit_s > 0:
            raise ValueError("time_limit_s must be positive")

    def deadline(self) -> float | None:
        if self.time_limit_s is None:
            return None
        return time.monotonic() + self.time_limit_s


# -- shared match counters ----------------------------------------------------

def _expired(deadline: float | None) -> bool:
    return deadline is not None and time.monotonic() >= deadline


class _LocalCounter:
    def __init__(self, limit: int | None, deadline: float | None = None) -> None:
        self.limit = limit
        self.deadline = deadline
        self.value = 0
        self._lock = threading.Lock()

    def add(self, k: int = 1) -> None:
        with self._lock:
            self.value += k

    def reached(self) -> bool:
        return (self.limit is not None and self.value >= self.limit) or _expired(self.deadline)


class _ProcessCounter:
    def __init__(self, ctx, limit: int | None, deadline: float | None = None) -> None:
        self.limit = limit
        self.deadline = deadline
        self._value = ctx.Value("q", 0)

    def add(self, k: int = 1) -> None:
        with self._value.get_lock():
            self._value.value += k

    @property
    def value(self) -> int:
        return self._value.value

    def reached(self) -> bool:
        return (self.limit is not None and self._value.value >= self.limit) or _expired(self.deadline)


# -- per-edge work ------------------------------------------------------------

def _scan_edges(
    search: TreeSearch,
    validator: EdgeValidator,
    edge_ids: np.ndarray,
    counter,
) -> tuple[list[Embedding], int]:
    """Validate each screened edge, inject its depth-2 state and enumerate its extensions."""
    search = copy.copy(search)
    search.nodes = 0
    validator = copy.copy(validator)
    validator.search = search
    target = search.target
    inject = validator.inject
    srcs = target.src[edge_ids].tolist()
    dsts = target.dst[edge_ids].tolist()
    bounded = counter.limit is not None or counter.deadline is not None
    stop: Callable[[], bool] | None = counter.reached if bounded else None
    found: list[Embedding] = []
    for u, v in zip(srcs, dsts):
        if stop is not None and stop():
            break
        state = inject(u, v)
        if state is None:
            continue
        search.nodes += 1
        for emb in search.iter_embeddings(state, stop):
            found.append(emb)
            counter.add(1)
    return found, search.nodes


_WORKER: dict = {}


def _init_worker(search: TreeSearch, validator: EdgeValidator, counter) -> None:
    _WORKER["search"] = search
    _WORKER["validator"] = validator
    _WORKER["counter"] = counter


def _worker_task(edge_ids: np.ndarray) -> tuple[list[Embedding], int]:
    return _scan_edges(_WORKER["search"], _WORKER["validator"], edge_ids, _WORKER["counter"])


def _fork_context():
    try:
        return mp.get_context("fork")
    except ValueError:
        return None


def _run_parallel(
    search: TreeSearch,
    validator: EdgeValidator,
    candidates: np.ndarray,
    config: MatchConfig,
    deadline: float | None = None,
) -> tuple[list[Embedding], int]:
    workers = config.worker_count
    if config.chunk_size is not None:
        size = config.chunk_size
    else:
        size = max(1, min(4096, math.ceil(len(candidates) / (workers * 8))))
    chunks = [candidates[i:i + size] for i in range(0, len(candidates), size)]
    workers = min(workers, len(chunks))
    # Materialize the lazy filters once so workers inherit them.
    search.vertex_filters, search.edge_filters

    if workers <= 1:
        counter = _LocalCounter(config.match_limit, deadline)
        return _scan_edges(search, validator, candidates, counter)

    ctx = _fork_context()
    executor: Executor
    if ctx is not None:
        counter = _ProcessCounter(ctx, config.match_limit, deadline)
        executor = ProcessPoolExecutor(
            max_workers=workers, mp_context=ctx,
            initializer=_init_worker, initargs=(search, validator, counter),
        )
        task = _worker_task
    else:
        counter = _LocalCounter(config.match_limit, deadline)
        executor = ThreadPoolExecutor(max_workers=workers)

        def task(chunk):
            return _scan_edges(search, validator, chunk, counter)

    found: list[Embedding] = []
    nodes = 0
    with executor:
        futures = [executor.submit(task, chunk) for chunk in chunks]
        for fut in as_completed(futures):
            if fut.cancelled():
                continue
            part, part_nodes = fut.result()
            found.extend(part)
            nodes += part_nodes
            if counter.reached():
                for other in futures:
                    other.cancel()
    return found, nodes


# -- engines ------------------------------------------------------------------

def _prepare(pattern: PropertyGraph, config: MatchConfig) -> ReorderResult:
    return structural_reorder(pattern) if config.reorder else identity_reorder(pattern)


def _finish(
    found: list[Embedding],
    nodes: int,
    reorder: ReorderResult,
    config: MatchConfig,
    search_pattern: PropertyGraph,
    target: PropertyGraph,
    deadline: float | None = None,
) -> MatchSet:
    embeddings = canonical(found)
    if len(embeddings) != len(found):
        raise RuntimeError("an embedding was produced twice; edge partition violated")
    truncated = _expired(deadline)
    if config.match_limit is not None and len(embeddings) >= config.match_limit:
        embeddings = embeddings[:config.match_limit]
        truncated = True
    if config.verify:
        check = EmbeddingVerifier(search_pattern, target, config.semantics)
        bad = next((f for f in embeddings if not check(f)), None)
        if bad is not None:
            raise RuntimeError(f"engine produced an invalid embedding {bad}")
    if config.reorder:
        result = MatchSet(embeddings, reorder.permutation, False, truncated, nodes)
        return result.original() if config.report_original_ids else result
    return MatchSet(embeddings, None, True, truncated, nodes)


def hipermotif(
    pattern: PropertyGraph,
    target: PropertyGraph,
    config: MatchConfig | None = None,
) -> MatchSet:
    """Enumerate embeddings of ``pattern`` in ``target`` by edge-centric state injection.

    Raises
    ------
    PatternTooSmall
        If the pattern has fewer than two vertices or no edges.
    NoViableEdge
        If the (reordered) pattern has no edge ``(0, 1)``, which happens
        when its best-ranked vertex has no out-edges.
    PatternSelfLoop
        If the pattern contains a self-loop.
    """
    config = config or MatchConfig()
    if pattern.vertex_count < 2 or pattern.edge_count == 0:
        raise PatternTooSmall(
            "edge-centric search needs a pattern with at least two vertices and one edge")
    if pattern.has_self_loops:
        raise PatternSelfLoop("pattern graphs must not contain self-loops")
    reorder = _prepare(pattern, config)
    sp = reorder.reordered
    search = TreeSearch(sp, target, config.semantics, config.lookahead)
    validator = EdgeValidator(search)
    if sp.vertex_count > target.vertex_count:
        return _finish([], 0, reorder, config, sp, target)

    deadline = config.deadline()
    flags = vertex_validator(sp, target)
    src, dst = target.src, target.dst
    candidates = np.flatnonzero(flags[src] & (src != dst))
    candidates = candidates[validator.screen(candidates)]
    found, nodes = _run_parallel(search, validator, candidates, config, deadline)
    return _finish(found, nodes, reorder, config, sp, target, deadline)


def run_vf2ps(
    pattern: PropertyGraph,
    target: PropertyGraph,
    config: MatchConfig | None = None,
) -> MatchSet:
    """Baseline: the same tree search started from the empty state (sequential)."""
    config = config or MatchConfig()
    if pattern.vertex_count == 0:
        raise PatternTooSmall("pattern has no vertices")
    reorder = _prepare(pattern, config)
    sp = reorder.reordered
    if sp.vertex_count > target.vertex_count:
        return _finish([], 0, reorder, config, sp, target)
    search = TreeSearch(sp, target, config.semantics, config.lookahead)
    deadline = config.deadline()
    stop = (lambda: _expired(deadline)) if deadline is not None else None
    found = search.run(new_state(target.vertex_count, sp.vertex_count), config.match_limit, stop)
    return _finish(found, search.nodes, reorder, config, sp, target, deadline)


def run_oracle(
    pattern: PropertyGraph,
    target: PropertyGraph,
    config: MatchConfig | None = None,
) -> MatchSet:
    config = config or MatchConfig()
    result = brute_force(pattern, target, config.semantics)
    if config.match_limit is not None and len(result) >= config.match_limit:
        return MatchSet(result.embeddings[:config.match_limit], truncated=True)
    return result


_DISPATCH = {"hipermotif": hipermotif, "vf2ps": run_vf2ps, "oracle": run_oracle}


def run_engine(
    engine: EngineName | str,
    pattern: PropertyGraph,
    target: PropertyGraph,
    config: MatchConfig | None = None,
) -> MatchSet:
    try:
        fn = _DISPATCH[engine]
    except KeyError:
        raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}") from None
    return fn(pattern, target, config)
