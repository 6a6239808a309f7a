"""Plain-text edge lists.

One edge per line as ``<tail> <head> <weight>`` with 1-based node indices.
Blank lines and lines starting with ``#`` are skipped.  An optional first
line ``nodes <N>`` fixes the node count; otherwise it is the largest index
seen.
"""
from __future__ import annotations

import math
from pathlib import Path

from .errors import EdgeListParseError, InvalidGraphError
from .graph import DiGraph


def parse_edge_list(text: str) -> DiGraph:
    n_header = None
    edges: dict[tuple[int, int], float] = {}
    seen_content = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "nodes":
            if seen_content:
                raise EdgeListParseError("'nodes' header must precede all edges", line_no)
            if len(fields) != 2:
                raise EdgeListParseError("expected 'nodes <N>'", line_no)
            try:
                n_header = int(fields[1])
            except ValueError:
                raise EdgeListParseError(f"bad node count {fields[1]!r}", line_no) from None
            if n_header < 1:
                raise EdgeListParseError("node count must be positive", line_no)
            seen_content = True
            continue
        seen_content = True
        if len(fields) != 3:
            raise EdgeListParseError(f"expected '<tail> <head> <weight>', got {line!r}", line_no)
        try:
            tail, head = int(fields[0]), int(fields[1])
            weight = float(fields[2])
        except ValueError:
            raise EdgeListParseError(f"cannot parse {line!r}", line_no) from None
        if tail < 1 or head < 1:
            raise EdgeListParseError("node indices are 1-based", line_no)
        if tail == head:
            raise EdgeListParseError(f"self-loop at node {tail}", line_no)
        if not (weight > 0 and math.isfinite(weight)):
            raise EdgeListParseError(f"weight must be positive and finite, got {fields[2]}", line_no)
        if (tail, head) in edges:
            raise EdgeListParseError(f"duplicate edge {tail} -> {head}", line_no)
        edges[(tail, head)] = weight

    max_index = max((max(e) for e in edges), default=0)
    if n_header is None:
        if max_index == 0:
            raise EdgeListParseError("no edges and no 'nodes' header")
        n = max_index
    else:
        if max_index > n_header:
            raise EdgeListParseError(f"edge references node {max_index} but header says {n_header} nodes")
        n = n_header
    try:
        return DiGraph(n, edges)
    except InvalidGraphError as exc:
        raise EdgeListParseError(str(exc)) from exc


def read_edge_list(path) -> DiGraph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def format_edge_list(g: DiGraph) -> str:
    lines = [f"nodes {g.n}"]
    lines += [f"{i} {j} {w!r}" for i, j, w in g.edges()]
    return "\n".join(lines) + "\n"
