"""Seeded synthetic graph families and uniform attribute assignment.

* ``er``: directed Erdős–Rényi ``G(n, p)`` over ordered pairs without
  self-loops, sampled by geometric skipping.
* ``ws``: undirected Watts–Strogatz ring rewiring, emitted in both
  directions.
* ``scale_free``: directed preferential-attachment growth of Bollobás et
  al., parallel edges coalesced, self-loops kept.

All randomness comes from :class:`~hipermotif.rng.SplitMix64`.
"""
from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Literal

import numpy as np

from .errors import InvalidParameter
from .graph import PropertyGraph
from .rng import SplitMix64

__all__ = [
    "AttributeSchema",
    "GeneratorSpec",
    "FAMILIES",
    "assign_attributes",
    "erdos_renyi",
    "generate",
    "load_generator_spec",
    "parse_generator_spec",
    "scale_free",
    "watts_strogatz",
]

Family = Literal["er", "ws", "scale_free"]
FAMILIES: tuple[str, ...] = ("er", "ws", "scale_free")

# Attribute streams are kept apart from structure streams of the same seed.
ATTRIBUTE_SEED_OFFSET = 0x5EED


@dataclass(frozen=True)
class AttributeSchema:
    """Attribute keys and their value alphabets, for vertices and edges."""

    vertex: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    edge: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for kind, spec in (("vertex", self.vertex), ("edge", self.edge)):
            for key, values in spec.items():
                if not values:
                    raise InvalidParameter(f"{kind} attribute {key!r} has an empty alphabet")

    def __bool__(self) -> bool:
        return bool(self.vertex) or bool(self.edge)


@dataclass(frozen=True)
class GeneratorSpec:
    family: Family
    n: int
    seed: int = 0
    p: float | None = None
    k: int | None = None
    alpha: float = 0.41
    beta: float = 0.54
    gamma: float = 0.05
    delta_in: float = 0.2
    delta_out: float = 0.2
    schema: AttributeSchema = field(default_factory=AttributeSchema)

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidParameter(f"unknown family {self.family!r}")
        if self.n < 0:
            raise InvalidParameter("n must be non-negative")
        if self.family in ("er", "ws"):
            if self.p is None:
                raise InvalidParameter(f"family {self.family} needs p")
            if not 0.0 <= self.p <= 1.0:
                raise InvalidParameter(f"p must lie in [0, 1], got {self.p}")
        if self.family == "ws":
            if self.k is None:
                raise InvalidParameter("family ws needs k")
            if self.k < 2 or self.k % 2 or self.k >= self.n:
                raise InvalidParameter(f"ws needs an even k with 2 <= k < n, got k={self.k}")
        if self.family == "scale_free":
            probs = (self.alpha, self.beta, self.gamma)
            if any(not 0.0 <= x <= 1.0 for x in probs):
                raise InvalidParameter("alpha, beta, gamma must lie in [0, 1]")
            if abs(sum(probs) - 1.0) > 1e-9:
                raise InvalidParameter(f"alpha + beta + gamma must be 1, got {sum(probs)}")
            if self.alpha + self.gamma <= 0.0:
                raise InvalidParameter("alpha + gamma must be positive or the graph never grows")
            if self.delta_in < 0 or self.delta_out < 0:
                raise InvalidParameter("delta_in and delta_out must be non-negative")
            if self.n < 3:
                raise InvalidParameter("scale_free needs n >= 3 (it grows from a 3-cycle)")


def _from_pairs(n: int, src: np.ndarray, dst: np.ndarray) -> PropertyGraph:
    order = np.lexsort((dst, src))
    return PropertyGraph(n, src[order], dst[order])


def erdos_renyi(n: int, p: float, rng: SplitMix64) -> PropertyGraph:
    """Each of the ``n(n-1)`` ordered pairs is an edge independently with probability ``p``."""
    total = n * (n - 1)
    if p <= 0.0 or total == 0:
        return PropertyGraph(n, np.empty(0, np.int64), np.empty(0, np.int64))
    if p >= 1.0:
        idx = np.arange(total, dtype=np.int64)
    else:
        log_q = math.log1p(-p)
        parts = []
        pos = -1
        while True:
            expected = (total - pos) * p
            batch = int(expected + 6.0 * math.sqrt(expected + 1.0)) + 64
            r = rng.random_array(batch)
            gaps = np.floor(np.log1p(-r) / log_q).astype(np.int64) + 1
            idx = pos + np.cumsum(gaps)
            inside = idx[idx < total]
            parts.append(inside)
            if len(inside) < batch:
                break
            pos = int(idx[-1])
        idx = np.concatenate(parts)
    u = idx // (n - 1)
    w = idx % (n - 1)
    v = w + (w >= u)
    return PropertyGraph(n, u, v)


def watts_strogatz(n: int, k: int, p: float, rng: SplitMix64) -> PropertyGraph:
    """Ring lattice with ``k`` nearest neighbors, each lattice edge rewired with probability ``p``."""
    half = k // 2
    adj = [set() for _ in range(n)]
    for j in range(1, half + 1):
        for u in range(n):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    coins = rng.random_array(n * half)
    for j in range(1, half + 1):
        base = (j - 1) * n
        for u in np.flatnonzero(coins[base:base + n] < p).tolist():
            v = (u + j) % n
            if v not in adj[u] or len(adj[u]) >= n - 1:
                continue
            w = rng.integer(n)
            while w == u or w in adj[u]:
                w = rng.integer(n)
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    src = np.fromiter((u for u in range(n) for _ in adj[u]), dtype=np.int64)
    dst = np.fromiter((w for u in range(n) for w in adj[u]), dtype=np.int64)
    return _from_pairs(n, src, dst)


def scale_free(
    n: int,
    alpha: float,
    beta: float,
    gamma: float,
    delta_in: float,
    delta_out: float,
    rng: SplitMix64,
) -> PropertyGraph:
    """Directed preferential attachment grown from the 3-cycle until ``n`` vertices exist.

    Each step draws one of: a new vertex pointing at an old one chosen with
    weight ``indeg + delta_in`` (prob. ``alpha``); an edge between two old
    vertices chosen by ``outdeg + delta_out`` and ``indeg + delta_in``
    (``beta``); or an old vertex, chosen by ``outdeg + delta_out``, pointing
    at a new one (``gamma``).
    """
    src = [0, 1, 2]
    dst = [1, 2, 0]
    count = 3
    ab = alpha + beta
    random = rng.random

    def pick(ends: list[int], delta: float) -> int:
        # Endpoint of a uniform edge is degree-proportional; the rest is uniform.
        m = len(ends)
        r = random() * (m + delta * count)
        if r < m:
            return ends[int(r)]
        return min(int((r - m) / delta), count - 1)

    while count < n:
        r = random()
        if r < alpha:
            w = pick(dst, delta_in)
            src.append(count)
            dst.append(w)
            count += 1
        elif r < ab:
            v = pick(src, delta_out)
            w = pick(dst, delta_in)
            src.append(v)
            dst.append(w)
        else:
            v = pick(src, delta_out)
            src.append(v)
            dst.append(count)
            count += 1
    keys = np.unique(np.asarray(src, dtype=np.int64) * n + np.asarray(dst, dtype=np.int64))
    return PropertyGraph(n, keys // n, keys % n)


def assign_attributes(g: PropertyGraph, schema: AttributeSchema, seed: int) -> PropertyGraph:
    """Give every vertex and edge one i.i.d. uniform value per schema key.

    Keys are drawn in sorted order, vertex keys before edge keys.
    """
    rng = SplitMix64(seed)
    vcols = {}
    for key in sorted(schema.vertex):
        values = np.asarray(schema.vertex[key], dtype=object)
        vcols[key] = values[rng.integers_array(len(values), g.vertex_count)]
    ecols = {}
    for key in sorted(schema.edge):
        values = np.asarray(schema.edge[key], dtype=object)
        ecols[key] = values[rng.integers_array(len(values), g.edge_count)]
    return g.with_columns(vcols, ecols)


def generate(spec: GeneratorSpec) -> PropertyGraph:
    spec.validate()
    rng = SplitMix64(spec.seed)
    if spec.family == "er":
        g = erdos_renyi(spec.n, spec.p, rng)
    elif spec.family == "ws":
        g = watts_strogatz(spec.n, spec.k, spec.p, rng)
    else:
        g = scale_free(spec.n, spec.alpha, spec.beta, spec.gamma,
                       spec.delta_in, spec.delta_out, rng)
    if spec.schema:
        g = assign_attributes(g, spec.schema, spec.seed + ATTRIBUTE_SEED_OFFSET)
    return g


_FLOAT_KEYS = ("p", "alpha", "beta", "gamma", "delta_in", "delta_out")
_INT_KEYS = ("n", "seed", "k")


def parse_generator_spec(text: str, **overrides) -> GeneratorSpec:
    """Parse ``key=value`` lines; ``vertex_attr.KEY=A,B`` / ``edge_attr.KEY=...`` set the schema."""
    fields: dict = {}
    vschema: dict[str, tuple[str, ...]] = {}
    eschema: dict[str, tuple[str, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParameter(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key == "family":
                fields[key] = value
            elif key in _INT_KEYS:
                fields[key] = int(value)
            elif key in _FLOAT_KEYS:
                fields[key] = float(value)
            elif key.startswith("vertex_attr."):
                vschema[key.split(".", 1)[1]] = tuple(v for v in value.split(",") if v)
            elif key.startswith("edge_attr."):
                eschema[key.split(".", 1)[1]] = tuple(v for v in value.split(",") if v)
            else:
                raise InvalidParameter(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, InvalidParameter):
                raise
            raise InvalidParameter(f"line {lineno}: bad value for {key}: {value!r}") from None
    if "family" not in fields or "n" not in fields:
        raise InvalidParameter("generator spec needs at least family and n")
    spec = GeneratorSpec(schema=AttributeSchema(vschema, eschema), **fields)
    if overrides:
        spec = replace(spec, **{k: v for k, v in overrides.items() if v is not None})
    spec.validate()
    return spec


def load_generator_spec(path: str | Path, **overrides) -> GeneratorSpec:
    return parse_generator_spec(Path(path).read_text(), **overrides)
