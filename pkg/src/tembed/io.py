"""Graph file formats: DIMACS-like edge lists and a JSON alternative.

DIMACS-like:   comments `c ...`, header `p edge <n> <m>`, edges `e <i> <j>`
with 1-based endpoints. JSON: {"n": int, "edges": [[i, j], ...]} 0-based.
"""

from __future__ import annotations

import json
from pathlib import Path

from .graphs import ProblemGraph, graph_from_edge_list


def graph_to_dimacs(g: ProblemGraph) -> str:
    lines = [f"p edge {g.n} {g.num_edges}"]
    lines += [f"e {i + 1} {j + 1}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


def graph_from_dimacs(text: str) -> ProblemGraph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise ValueError(f"line {lineno}: bad problem line {raw!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: bad edge line {raw!r}")
            i, j = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((i, j))
        else:
            raise ValueError(f"line {lineno}: unrecognized line {raw!r}")
    if n is None:
        raise ValueError("missing problem line")
    return graph_from_edge_list(n, edges)


def graph_to_json(g: ProblemGraph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})


def graph_from_json(text: str) -> ProblemGraph:
    data = json.loads(text)
    return graph_from_edge_list(int(data["n"]), data["edges"])


def save_graph(g: ProblemGraph, path: str | Path) -> None:
    path = Path(path)
    text = graph_to_json(g) if path.suffix == ".json" else graph_to_dimacs(g)
    path.write_text(text)


def load_graph(path: str | Path) -> ProblemGraph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return graph_from_json(text)
    return graph_from_dimacs(text)
