"""Labeled undirected graphs: the 9-vertex base graph, line graphs,
perfect-matching search, independent triples, clique enumeration, and DOT
export.

All graphs here are tiny (at most a few dozen vertices), so every search
is plain exhaustive backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

# Edges of the 9-vertex base graph, one per ray of the 18-ray set.  Each
# vertex has degree 4 and the triple {7,8,9} is independent.
_BASE_EDGES = (
    ("1", "2"), ("1", "6"), ("1", "7"), ("1", "8"),
    ("2", "3"), ("2", "8"), ("2", "9"),
    ("3", "4"), ("3", "7"), ("3", "9"),
    ("4", "5"), ("4", "7"), ("4", "8"),
    ("5", "6"), ("5", "8"), ("5", "9"),
    ("6", "7"), ("6", "9"),
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph over an ordered tuple of string labels.

    ``adjacency`` is a symmetric 0/1 matrix with zero diagonal, indexed by
    vertex position.  Instances are immutable after construction.
    """

    vertices: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("vertex labels must be unique")
        if len(self.adjacency) != n or any(len(row) != n for row in self.adjacency):
            raise ValueError("adjacency must be a square matrix over the vertices")
        for i in range(n):
            if self.adjacency[i][i] != 0:
                raise ValueError("adjacency diagonal must vanish")
            for j in range(i + 1, n):
                a = self.adjacency[i][j]
                if a not in (0, 1) or a != self.adjacency[j][i]:
                    raise ValueError("adjacency must be a symmetric 0/1 matrix")
        object.__setattr__(
            self, "_index", {v: i for i, v in enumerate(self.vertices)}
        )

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(sum(row) for row in self.adjacency) // 2

    def index(self, label: str) -> int:
        try:
            return self._index[label]  # type: ignore[attr-defined]
        except KeyError:
            raise ValueError(f"unknown vertex {label!r}") from None

    def has_edge(self, a: str, b: str) -> bool:
        return bool(self.adjacency[self.index(a)][self.index(b)])

    def degree(self, label: str) -> int:
        return sum(self.adjacency[self.index(label)])

    def neighbors(self, label: str) -> tuple[str, ...]:
        row = self.adjacency[self.index(label)]
        return tuple(v for v, bit in zip(self.vertices, row) if bit)

    def edges(self) -> tuple[tuple[str, str], ...]:
        """All edges once each, as label pairs in vertex-position order."""
        out = []
        for i, u in enumerate(self.vertices):
            row = self.adjacency[i]
            for j in range(i + 1, len(self.vertices)):
                if row[j]:
                    out.append((u, self.vertices[j]))
        return tuple(out)


def graph_from_edges(
    vertices: Sequence[str], edges: Iterable[tuple[str, str]]
) -> Graph:
    """Build a Graph from a vertex sequence and an edge list (no loops)."""
    verts = tuple(vertices)
    index = {v: i for i, v in enumerate(verts)}
    if len(index) != len(verts):
        raise ValueError("vertex labels must be unique")
    adj = [[0] * len(verts) for _ in verts]
    for a, b in edges:
        if a not in index or b not in index:
            raise ValueError(f"edge ({a!r}, {b!r}) mentions an unknown vertex")
        if a == b:
            raise ValueError(f"loop at vertex {a!r} not allowed")
        adj[index[a]][index[b]] = 1
        adj[index[b]][index[a]] = 1
    return Graph(verts, tuple(tuple(row) for row in adj))


def base_graph_9() -> Graph:
    """The 9-vertex, 18-edge base graph whose line graph the 18-ray set realizes."""
    return graph_from_edges(tuple(str(i) for i in range(1, 10)), _BASE_EDGES)


def line_graph(g: Graph) -> Graph:
    """Graph on ``g``'s edges, adjacent iff the edges share an endpoint.

    Each edge {a, b} becomes the vertex ``"v" + a + b`` with a, b in label
    order, so the line graph of the base graph carries exactly the 18-ray
    labels "v12", "v16", ...  Raises if that naming scheme collides.
    """
    edge_list = g.edges()
    labels = tuple("v" + "".join(sorted(e)) for e in edge_list)
    if len(set(labels)) != len(labels):
        raise ValueError("edge labels collide; vertex labels are ambiguous")
    n = len(edge_list)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if set(edge_list[i]) & set(edge_list[j]):
                adj[i][j] = adj[j][i] = 1
    return Graph(labels, tuple(tuple(row) for row in adj))


def disjoint_edge_cover_exists(g: Graph) -> bool:
    """Whether ``g`` has a perfect matching, by exhaustive backtracking.

    Picks the uncovered vertex of smallest remaining degree first; the
    graphs in scope are tiny, so no matching theory is needed.
    """
    n = g.vertex_count
    adj = g.adjacency
    uncovered = set(range(n))

    def backtrack() -> bool:
        if not uncovered:
            return True
        v = min(
            uncovered,
            key=lambda i: (sum(1 for j in uncovered if adj[i][j]), i),
        )
        partners = [j for j in uncovered if adj[v][j]]
        if not partners:
            return False
        uncovered.discard(v)
        for j in partners:
            uncovered.discard(j)
            if backtrack():
                return True
            uncovered.add(j)
        uncovered.add(v)
        return False

    return backtrack()


def independent_triples(g: Graph) -> tuple[tuple[str, str, str], ...]:
    """All 3-subsets of vertices with no internal edge, in lexicographic order."""
    labels = sorted(g.vertices)
    out = []
    for a, b, c in combinations(labels, 3):
        if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
            out.append((a, b, c))
    return tuple(out)


def cliques_of_size(g: Graph, k: int) -> tuple[tuple[str, ...], ...]:
    """All k-cliques as sorted label tuples, in lexicographic order."""
    if k < 1:
        raise ValueError("clique size must be positive")
    labels = sorted(g.vertices)
    result: list[tuple[str, ...]] = []

    def extend(clique: list[str], candidates: list[str]) -> None:
        if len(clique) == k:
            result.append(tuple(clique))
            return
        for i, v in enumerate(candidates):
            if len(clique) + len(candidates) - i < k:
                break
            clique.append(v)
            extend(clique, [u for u in candidates[i + 1 :] if g.has_edge(u, v)])
            clique.pop()

    extend([], labels)
    return tuple(result)


def export_dot(g: Graph) -> str:
    """Render as a DOT ``graph`` document.

    Vertices appear in label order and each undirected edge is emitted
    once, endpoints in label order.
    """
    lines = ["graph {"]
    for v in sorted(g.vertices):
        lines.append(f'  "{v}";')
    for a, b in sorted(tuple(sorted(e)) for e in g.edges()):
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> dict:
    """JSON-ready dict: ``{"vertices": [...], "edges": [["a","b"], ...]}``."""
    return {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.edges()],
    }


def graph_from_json(data: dict) -> Graph:
    """Inverse of :func:`graph_to_json`."""
    return graph_from_edges(
        [str(v) for v in data["vertices"]],
        [(str(a), str(b)) for a, b in data["edges"]],
    )
