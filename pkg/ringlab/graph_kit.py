# ringlab/graph_kit.py
"""
Looped undirected graphs: K°_n, join, disjoint union, isomorphism and emitters
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import ValidationError

from ringlab.config import get_settings
from ringlab.errors import PreconditionError, SpecParseError
from ringlab.models import GraphDocument, IsoStatus, OutputFormat

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompressedGraph:
    vertex_labels: Tuple[str, ...]
    edges: FrozenSet[Tuple[int, int]]  # non-loop, min id first
    loops: FrozenSet[int]

    def __init__(self, vertex_labels: Iterable[str], edges: Iterable[Tuple[int, int]] = (),
                 loops: Iterable[int] = ()):
        labels = tuple(str(v) for v in vertex_labels)
        n = len(labels)
        normalized = set()
        loop_set = set(int(v) for v in loops)
        for i, j in edges:
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise PreconditionError(f"Edge ({i}, {j}) references a missing vertex")
            if i == j:
                loop_set.add(i)
            else:
                normalized.add((min(i, j), max(i, j)))
        if any(not 0 <= v < n for v in loop_set):
            raise PreconditionError("Loop references a missing vertex")
        object.__setattr__(self, "vertex_labels", labels)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "loops", frozenset(loop_set))

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return i in self.loops
        return (min(i, j), max(i, j)) in self.edges

    def adjacency(self) -> np.ndarray:
        """Symmetric boolean matrix without the diagonal"""
        adj = np.zeros((self.vertex_count, self.vertex_count), dtype=bool)
        for i, j in self.edges:
            adj[i, j] = adj[j, i] = True
        return adj

    def degree_sequence(self) -> List[int]:
        """Non-loop degrees, largest first"""
        return sorted(self.adjacency().sum(axis=1).tolist(), reverse=True)

    def all_looped(self) -> bool:
        return len(self.loops) == self.vertex_count

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for i, label in enumerate(self.vertex_labels):
            g.add_node(i, label=label)
        g.add_edges_from(self.edges)
        g.add_edges_from((v, v) for v in self.loops)
        return g


# ===================== CONSTRUCTIONS =====================
def complete_with_loops(n: int) -> CompressedGraph:
    """K°_n"""
    if n < 0:
        raise PreconditionError(f"Vertex count must be >= 0, got {n}")
    return CompressedGraph(
        [str(i) for i in range(n)],
        ((i, j) for i in range(n) for j in range(i + 1, n)),
        range(n),
    )


def join(g: CompressedGraph, h: CompressedGraph) -> CompressedGraph:
    """G ∨ H: disjoint copies plus every cross edge"""
    offset = g.vertex_count
    edges = list(g.edges)
    edges += [(i + offset, j + offset) for i, j in h.edges]
    edges += [(i, offset + j) for i in range(g.vertex_count) for j in range(h.vertex_count)]
    loops = list(g.loops) + [v + offset for v in h.loops]
    return CompressedGraph(g.vertex_labels + h.vertex_labels, edges, loops)


def disjoint_union(t: int, g: CompressedGraph) -> CompressedGraph:
    """tG; copy c relabels vertex v as "c.v" """
    if t < 0:
        raise PreconditionError(f"Copy count must be >= 0, got {t}")
    if t == 1:
        return g
    n = g.vertex_count
    labels = [f"{c}.{label}" for c in range(t) for label in g.vertex_labels]
    edges = [(i + c * n, j + c * n) for c in range(t) for i, j in g.edges]
    loops = [v + c * n for c in range(t) for v in g.loops]
    return CompressedGraph(labels, edges, loops)


def relabel(g: CompressedGraph, permutation: Sequence[int]) -> CompressedGraph:
    """Move vertex i to position permutation[i]"""
    perm = [int(p) for p in permutation]
    if sorted(perm) != list(range(g.vertex_count)):
        raise PreconditionError("relabel needs a permutation of the vertex ids")
    labels = [""] * g.vertex_count
    for i, label in enumerate(g.vertex_labels):
        labels[perm[i]] = label
    return CompressedGraph(
        labels,
        [(perm[i], perm[j]) for i, j in g.edges],
        [perm[v] for v in g.loops],
    )


# ===================== ISOMORPHISM =====================
@dataclass(frozen=True)
class IsomorphismResult:
    status: IsoStatus
    mapping: Optional[Tuple[int, ...]] = None  # mapping[i] = image of vertex i of G

    @property
    def found(self) -> bool:
        return self.status == IsoStatus.ISOMORPHIC


def _refine(adjacencies: Sequence[np.ndarray], loops: Sequence[FrozenSet[int]]) -> List[List[int]]:
    """Joint colour refinement of several graphs; colours are comparable across them"""
    colors = [
        [(int(v in lp), int(adj[v].sum())) for v in range(adj.shape[0])]
        for adj, lp in zip(adjacencies, loops)
    ]
    palette = sorted(set(c for cs in colors for c in cs))
    ids = [[palette.index(c) for c in cs] for cs in colors]
    while True:
        signatures = [
            [(ids_g[v], tuple(sorted(ids_g[u] for u in np.flatnonzero(adj[v]))))
             for v in range(adj.shape[0])]
            for adj, ids_g in zip(adjacencies, ids)
        ]
        palette = sorted(set(s for sg in signatures for s in sg))
        lookup = {s: k for k, s in enumerate(palette)}
        refined = [[lookup[s] for s in sg] for sg in signatures]
        if len(palette) == len(set(c for cs in ids for c in cs)):
            return refined
        ids = refined


def isomorphic(g: CompressedGraph, h: CompressedGraph) -> IsomorphismResult:
    """
    Exact isomorphism test: colour refinement seeded with (loop, degree), then
    backtracking over equal colours. Above the exactness budget the answer is
    UNDECIDED unless a cheap invariant already separates the graphs.
    """
    n = g.vertex_count
    if (n != h.vertex_count or g.edge_count != h.edge_count
            or len(g.loops) != len(h.loops) or g.degree_sequence() != h.degree_sequence()):
        return IsomorphismResult(IsoStatus.NON_ISOMORPHIC)

    limit = get_settings().iso_exact_limit
    if n > limit:
        logger.warning(f"Isomorphism undecided: {n} vertices above the exact limit {limit}")
        return IsomorphismResult(IsoStatus.UNDECIDED)

    adj_g, adj_h = g.adjacency(), h.adjacency()
    colors_g, colors_h = _refine([adj_g, adj_h], [g.loops, h.loops])
    if sorted(colors_g) != sorted(colors_h):
        return IsomorphismResult(IsoStatus.NON_ISOMORPHIC)

    cells: Dict[int, List[int]] = {}
    for v, c in enumerate(colors_h):
        cells.setdefault(c, []).append(v)
    order = sorted(range(n), key=lambda v: (len(cells[colors_g[v]]), v))

    mapping = [-1] * n
    used = [False] * n

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        v = order[depth]
        for w in cells[colors_g[v]]:
            if used[w]:
                continue
            if any(adj_g[v, u] != adj_h[w, mapping[u]] for u in order[:depth]):
                continue
            mapping[v], used[w] = w, True
            if extend(depth + 1):
                return True
            mapping[v], used[w] = -1, False
        return False

    if extend(0):
        return IsomorphismResult(IsoStatus.ISOMORPHIC, tuple(mapping))
    return IsomorphismResult(IsoStatus.NON_ISOMORPHIC)


# ===================== EMITTERS =====================
def to_document(g: CompressedGraph) -> GraphDocument:
    return GraphDocument(
        vertices=list(g.vertex_labels),
        edges=sorted(g.edges),
        loops=sorted(g.loops),
    )


def _dot_label(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def emit(g: CompressedGraph, fmt: OutputFormat = OutputFormat.JSON) -> str:
    """Deterministic DOT or compact JSON text"""
    if fmt == OutputFormat.JSON:
        return json.dumps(to_document(g).model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    lines = ["graph G {"]
    for i, label in enumerate(g.vertex_labels):
        lines.append(f'  {i} [label="{_dot_label(label)}"];')
    for i, j in sorted(list(g.edges) + [(v, v) for v in g.loops]):
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_json(text: str) -> CompressedGraph:
    try:
        document = GraphDocument.model_validate_json(text)
    except ValidationError as e:
        raise SpecParseError(f"Invalid graph JSON: {e}") from e
    return CompressedGraph(document.vertices, document.edges, document.loops)
