"""Benchmark harness: repeated timed runs, Student-t intervals, speedups.

Only the match call is timed.  Graph loading and pattern reordering are
measured once per cell and reported in their own columns, so the ratio
between reorder on and off can be studied without counting the reorder.
"""
from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from scipy import stats

from .engine import MatchConfig, run_engine
from .errors import EngineDisagreement, InvalidParameter
from .generators import GeneratorSpec, generate
from .graph import PropertyGraph, build_graph
from .io import save_edge_list
from .reorder import structural_reorder
from .rng import SplitMix64
from .search import Semantics

__all__ = [
    "AblationRow",
    "BenchReport",
    "BenchRow",
    "Instance",
    "ablate_reorder",
    "ablation_instances",
    "ci95",
    "planted_pattern",
    "random_pattern",
    "run_bench",
    "time_call",
]


def ci95(samples: Sequence[float]) -> float:
    """Half-width of the 95% Student-t interval of the mean; 0.0 for one sample."""
    n = len(samples)
    if n < 2:
        return 0.0
    sd = statistics.stdev(samples)
    return float(stats.t.ppf(0.975, n - 1) * sd / math.sqrt(n))


def time_call(fn: Callable[[], object], reps: int) -> tuple[list[float], object]:
    """Wall-clock ``fn`` ``reps`` times; returns the samples and the last result."""
    if reps < 1:
        raise InvalidParameter("reps must be at least 1")
    samples = []
    result = None
    for _ in range(reps):
        t0 = time.perf_counter()
        result = fn()
        samples.append(time.perf_counter() - t0)
    return samples, result


@dataclass(frozen=True)
class BenchRow:
    engine: str
    graph: str
    pattern: str
    workers: int
    reps: int
    mean_s: float
    ci95_s: float
    matches: int
    speedup: float
    load_s: float
    reorder_s: float


@dataclass(frozen=True)
class AblationRow:
    engine: str
    graph: str
    pattern: str
    pattern_size: int
    reps: int
    off_mean_s: float
    on_mean_s: float
    ratio: float
    matches: int
    timed_out: bool


class BenchReport:
    """Rows of one kind, serialisable as CSV or JSON with a fixed column order."""

    def __init__(self, rows: Iterable, row_type: type = BenchRow) -> None:
        self.rows = list(rows)
        self.row_type = row_type

    @property
    def columns(self) -> list[str]:
        return [f.name for f in fields(self.row_type)]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.columns, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(asdict(row))
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps([asdict(r) for r in self.rows], indent=2) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise InvalidParameter(f"unknown format {fmt!r}")


@dataclass
class Instance:
    """A named (target, pattern) pair plus the seconds it took to obtain the target."""

    graph_name: str
    target: PropertyGraph
    pattern_name: str
    pattern: PropertyGraph
    load_s: float = 0.0


def _dump(inst: Instance, dump_dir: str | Path | None, counts: dict) -> str:
    if dump_dir is None:
        return ""
    d = Path(dump_dir)
    d.mkdir(parents=True, exist_ok=True)
    save_edge_list(inst.target, d / "target.el")
    save_edge_list(inst.pattern, d / "pattern.el")
    (d / "counts.json").write_text(json.dumps(counts, indent=2) + "\n")
    return f"; instance written to {d}"


def run_bench(
    instances: Iterable[Instance],
    engines: Sequence[str] = ("hipermotif",),
    workers: Sequence[int] = (1,),
    reps: int = 5,
    semantics: Semantics = "mono",
    match_limit: int | None = None,
    dump_dir: str | Path | None = None,
) -> BenchReport:
    """Time every engine and worker count on every instance.

    The pattern is reordered once per instance (timed as ``reorder_s``) and
    the reordered pattern is handed to the engines with reordering off.
    Sequential engines get a single row with ``workers=1``.  Each engine's
    speedup is its 1-worker mean over the row's mean; a 1-worker run is
    added when ``workers`` lacks one.  Disagreeing match counts raise
    :class:`EngineDisagreement` before any row of the instance is kept.
    """
    worker_list = sorted(set(workers) | {1})
    rows: list[BenchRow] = []
    for inst in instances:
        t0 = time.perf_counter()
        prepared = structural_reorder(inst.pattern).reordered
        reorder_s = time.perf_counter() - t0
        cell: list[tuple[str, int, list[float], int]] = []
        counts: dict[str, int] = {}
        for engine in engines:
            for w in worker_list if engine == "hipermotif" else [1]:
                config = MatchConfig(semantics, reorder=False, worker_count=w,
                                     match_limit=match_limit)
                samples, result = time_call(
                    lambda: run_engine(engine, prepared, inst.target, config), reps)
                counts[f"{engine}/w{w}"] = len(result)
                cell.append((engine, w, samples, len(result)))
        if len(set(counts.values())) > 1:
            where = _dump(inst, dump_dir, counts)
            raise EngineDisagreement(
                f"match counts differ on {inst.graph_name} x {inst.pattern_name}: {counts}{where}")
        base = {engine: statistics.fmean(s) for engine, w, s, _ in cell if w == 1}
        for engine, w, samples, matches in cell:
            if w not in workers and not (w == 1 and engine != "hipermotif"):
                continue
            mean = statistics.fmean(samples)
            rows.append(BenchRow(
                engine, inst.graph_name, inst.pattern_name, w, reps, mean, ci95(samples),
                matches, base[engine] / mean if mean > 0 else 1.0, inst.load_s, reorder_s,
            ))
    return BenchReport(rows, BenchRow)


def ablate_reorder(
    instances: Iterable[Instance],
    engine: str = "vf2ps",
    reps: int = 1,
    semantics: Semantics = "mono",
    match_limit: int | None = None,
    time_limit_s: float | None = None,
) -> BenchReport:
    """Time each instance with reordering off, then on; ``ratio = off / on``.

    ``time_limit_s`` caps each run.  A capped run is flagged in
    ``timed_out`` and its time is a lower bound, so the ratio is too.
    Match counts of the two runs must agree unless a run timed out.
    """
    rows: list[AblationRow] = []
    cfg = MatchConfig(semantics, reorder=False, match_limit=match_limit,
                      time_limit_s=time_limit_s)

    def hit_clock(r) -> bool:
        return r.truncated and (match_limit is None or len(r) < match_limit)

    for inst in instances:
        prepared = structural_reorder(inst.pattern).reordered
        off, r_off = time_call(lambda: run_engine(engine, inst.pattern, inst.target, cfg), reps)
        on, r_on = time_call(lambda: run_engine(engine, prepared, inst.target, cfg), reps)
        timed_out = hit_clock(r_off) or hit_clock(r_on)
        if not timed_out and len(r_off) != len(r_on):
            raise EngineDisagreement(
                f"reordering changed the match count on {inst.graph_name} x "
                f"{inst.pattern_name}: {len(r_off)} vs {len(r_on)}")
        off_mean, on_mean = statistics.fmean(off), statistics.fmean(on)
        # Timer resolution floor keeps the ratio finite for trivial instances.
        floor = time.get_clock_info("perf_counter").resolution
        ratio = max(off_mean, floor) / max(on_mean, floor)
        rows.append(AblationRow(engine, inst.graph_name, inst.pattern_name,
                                inst.pattern.vertex_count, reps, off_mean, on_mean,
                                ratio, max(len(r_off), len(r_on)), timed_out))
    return BenchReport(rows, AblationRow)


# -- random instances ---------------------------------------------------------

def random_pattern(n: int, density: float, rng: SplitMix64) -> PropertyGraph:
    """Weakly connected random pattern on ``n`` vertices, without self-loops.

    A random tree with random edge directions guarantees connectivity; every
    other ordered pair then becomes an edge with probability ``density``.
    """
    if n < 1:
        raise InvalidParameter("patterns need at least one vertex")
    edges = set()
    for v in range(1, n):
        u = rng.integer(v)
        edges.add((u, v) if rng.random() < 0.5 else (v, u))
    for a in range(n):
        for b in range(n):
            if a != b and (a, b) not in edges and rng.random() < density:
                edges.add((a, b))
    return build_graph(sorted(edges), vertex_count=n)


def planted_pattern(target: PropertyGraph, n: int, rng: SplitMix64) -> PropertyGraph | None:
    """Induced subgraph on ``n`` target vertices grown from a random seed vertex.

    Vertices are added by a random frontier walk over undirected adjacency
    and numbered in discovery order, so every vertex but the first has an
    earlier neighbor; attributes are copied.  ``None`` when the seed's
    component has fewer than ``n`` vertices.
    """
    if target.vertex_count == 0:
        return None
    chosen = [rng.integer(target.vertex_count)]
    seen = set(chosen)
    frontier = sorted(set(target.neighbors(chosen[0])) - seen)
    while len(chosen) < n:
        if not frontier:
            return None
        w = frontier.pop(rng.integer(len(frontier)))
        chosen.append(w)
        seen.add(w)
        frontier = sorted(set(frontier).union(target.neighbors(w)) - seen)
    order = chosen
    new_id = {v: i for i, v in enumerate(order)}
    edges = []
    edge_attrs = {}
    for v in order:
        for w in target.out_neighbors(v):
            if w in new_id and w != v:
                edges.append((new_id[v], new_id[w]))
                attrs = target.edge_attrs(target.get_edge_id(v, w))
                if attrs:
                    edge_attrs[edges[-1]] = dict(attrs)
    vertex_attrs = {new_id[v]: dict(target.vertex_attrs(v)) for v in order}
    return build_graph(edges, vertex_attrs, edge_attrs, vertex_count=n)


def ablation_instances(
    count: int = 20,
    seed: int = 0,
    target_n: int = 200,
    target_p: float = 0.03,
    sizes: Sequence[int] = tuple(range(3, 21)),
) -> list[Instance]:
    """``count`` planted patterns with sizes cycling through ``sizes`` on one ER target."""
    t0 = time.perf_counter()
    target = generate(GeneratorSpec("er", target_n, seed, p=target_p))
    load_s = time.perf_counter() - t0
    rng = SplitMix64(seed + 1)
    name = f"er(n={target_n},p={target_p},seed={seed})"
    out: list[Instance] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count:
            raise InvalidParameter("could not plant patterns; the target is too fragmented")
        size = sizes[len(out) % len(sizes)]
        pattern = planted_pattern(target, size, rng)
        if pattern is None:
            continue
        out.append(Instance(name, target, f"planted{len(out)}(n={size})", pattern, load_s))
    return out
