"""Line-oriented edge-list files.

Format::

    # comment
    0 1 w=strong          edge lines: src dst [key=value]*
    1 2
    #vertices             optional vertex section
    0 type=A              vid [key=value]*

Tokens are whitespace separated; keys and values may not contain whitespace
and keys may not contain ``=``.  The vertex count is one more than the
largest id that appears.
"""
from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path

from .errors import ParseError
from .graph import PropertyGraph, build_graph

__all__ = ["VERTEX_SECTION", "dumps_edge_list", "load_edge_list", "parse_edge_list", "save_edge_list"]

VERTEX_SECTION = "#vertices"


def _parse_id(token: str, lineno: int, path: str | None) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected a vertex id, got {token!r}", lineno, path) from None
    if value < 0:
        raise ParseError(f"negative vertex id {value}", lineno, path)
    return value


def _parse_attrs(tokens: list[str], lineno: int, path: str | None) -> dict[str, str]:
    attrs: dict[str, str] = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not key:
            raise ParseError(f"expected key=value, got {tok!r}", lineno, path)
        if key in attrs:
            raise ParseError(f"attribute {key!r} given twice", lineno, path)
        attrs[key] = value
    return attrs


def parse_edge_list(
    lines: Iterable[str],
    *,
    allow_self_loops: bool = True,
    source: str | None = None,
) -> PropertyGraph:
    edges: list[tuple[int, int]] = []
    edge_attrs: list[dict[str, str]] = []
    vertex_attrs: dict[int, dict[str, str]] = {}
    in_vertices = False
    top = -1
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if line == VERTEX_SECTION:
            in_vertices = True
            continue
        if line.startswith("#"):
            continue
        tokens = line.split()
        if in_vertices:
            vid = _parse_id(tokens[0], lineno, source)
            if vid in vertex_attrs:
                raise ParseError(f"vertex {vid} listed twice", lineno, source)
            vertex_attrs[vid] = _parse_attrs(tokens[1:], lineno, source)
            top = max(top, vid)
        else:
            if len(tokens) < 2 or "=" in tokens[1]:
                raise ParseError(f"edge line needs 'src dst', got {line!r}", lineno, source)
            u = _parse_id(tokens[0], lineno, source)
            v = _parse_id(tokens[1], lineno, source)
            edges.append((u, v))
            edge_attrs.append(_parse_attrs(tokens[2:], lineno, source))
            top = max(top, u, v)
    return build_graph(edges, vertex_attrs, edge_attrs, vertex_count=top + 1,
                       allow_self_loops=allow_self_loops)


def load_edge_list(path: str | Path, *, allow_self_loops: bool = True) -> PropertyGraph:
    """Read a graph file; pattern files are usually loaded with ``allow_self_loops=False``."""
    path = Path(path)
    with path.open() as fh:
        return parse_edge_list(fh, allow_self_loops=allow_self_loops, source=str(path))


def _format_attrs(attrs) -> str:
    parts = []
    for key, value in attrs:
        if not key or "=" in key or any(c.isspace() for c in key + value):
            raise ValueError(f"attribute {key!r}={value!r} cannot be written to an edge list")
        parts.append(f"{key}={value}")
    return " ".join(parts)


def dumps_edge_list(g: PropertyGraph) -> str:
    out = []
    for e, (u, v) in enumerate(g.edges()):
        attrs = g.edge_attrs(e) if g.edge_keys else ()
        out.append(f"{u} {v} {_format_attrs(attrs)}".rstrip())
    vertex_lines = []
    n = g.vertex_count
    touched = set(g.src.tolist()) | set(g.dst.tolist())
    for v in range(n):
        attrs = g.vertex_attrs(v) if g.vertex_keys else ()
        # The last vertex is listed even without attributes so the count survives.
        if attrs or (v == n - 1 and v not in touched):
            vertex_lines.append(f"{v} {_format_attrs(attrs)}".rstrip())
    if vertex_lines:
        out.append(VERTEX_SECTION)
        out.extend(vertex_lines)
    return "\n".join(out) + ("\n" if out else "")


def save_edge_list(g: PropertyGraph, path: str | Path) -> None:
    Path(path).write_text(dumps_edge_list(g))
