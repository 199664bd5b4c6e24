"""Undirected and directed simple graphs over labelled vertices.

Vertices are addressed by label at every public entry point; internally each
vertex is an index into ``Graph.labels``. Distances are hop counts, with
:data:`UNREACHABLE` marking pairs that have no connecting (directed) path.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

UNDIRECTED = "undirected"
DIRECTED = "directed"
KINDS = (UNDIRECTED, DIRECTED)

#: Sentinel stored in distance arrays for pairs without a path.
UNREACHABLE = -1

LABEL_RE = re.compile(r"[A-Za-z0-9_]+")


class GraphError(ValueError):
    """Malformed graph input (bad label, unknown endpoint, self-loop...)."""


class Connectivity(str, Enum):
    CONNECTED = "connected"
    STRONGLY_CONNECTED = "strongly_connected"
    WEAKLY_CONNECTED_ONLY = "weakly_connected_only"
    DISCONNECTED = "disconnected"


class TwinStatus(str, Enum):
    TRUE_TWINS = "true_twins"
    FALSE_TWINS = "false_twins"
    NOT_TWINS = "not_twins"


@dataclass(frozen=True)
class VertexClass:
    """Membership flags of a vertex in a directed graph.

    A vertex is *solitary* if some other vertex has no arc to or from it, an
    *in-vertex* if some vertex has an arc into it that is not reciprocated,
    and an *out-vertex* if it has an unreciprocated arc out of it.
    """

    solitary: bool = False
    in_vertex: bool = False
    out_vertex: bool = False

    @property
    def in_out(self) -> bool:
        return self.in_vertex and self.out_vertex


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph.

    ``succ[i]`` and ``pred[i]`` are sorted tuples of neighbour indices. For an
    undirected graph they coincide. Equality is label based: two graphs are
    equal when they have the same kind, the same label set and the same
    labelled edges, regardless of vertex order.
    """

    kind: str
    labels: tuple[str, ...]
    succ: tuple[tuple[int, ...], ...]
    pred: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def directed(self) -> bool:
        return self.kind == DIRECTED

    @cached_property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def _succ_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(s) for s in self.succ)

    def vertex(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise GraphError(f"unknown vertex {label!r}") from None

    def has_edge(self, u: int, v: int) -> bool:
        """Arc (or edge) test by vertex index."""
        return v in self._succ_sets[u]

    def neighbors(self, label: str) -> tuple[str, ...]:
        """Open neighbourhood (out-neighbours for directed graphs)."""
        return tuple(self.labels[j] for j in self.succ[self.vertex(label)])

    def in_neighbors(self, label: str) -> tuple[str, ...]:
        return tuple(self.labels[j] for j in self.pred[self.vertex(label)])

    def edges(self) -> list[tuple[str, str]]:
        """Edges as label pairs; undirected edges are listed once, with the
        endpoint of smaller index first."""
        out = []
        for i, row in enumerate(self.succ):
            for j in row:
                if self.directed or i < j:
                    out.append((self.labels[i], self.labels[j]))
        return out

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense boolean adjacency matrix (read-only)."""
        a = np.zeros((self.n, self.n), dtype=bool)
        for i, row in enumerate(self.succ):
            a[i, list(row)] = True
        a.flags.writeable = False
        return a

    @cached_property
    def _key(self):
        arcs = frozenset(
            (self.labels[i], self.labels[j]) for i, row in enumerate(self.succ) for j in row
        )
        return self.kind, frozenset(self.labels), arcs

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Graph({self.kind}, n={self.n}, edges={self.edges()})"

    @classmethod
    def from_adjacency(cls, kind: str, labels: Sequence[str], adjacency) -> "Graph":
        """Build from a boolean matrix; for undirected graphs the matrix must be
        symmetric. The diagonal must be empty."""
        a = np.asarray(adjacency, dtype=bool)
        labels = tuple(labels)
        _check_labels(labels)
        if kind not in KINDS:
            raise GraphError(f"unknown graph kind {kind!r}")
        if a.shape != (len(labels), len(labels)):
            raise GraphError("adjacency shape does not match label count")
        if a.diagonal().any():
            i = int(np.flatnonzero(a.diagonal())[0])
            raise GraphError(f"self-loop at {labels[i]!r}")
        if kind == UNDIRECTED and not np.array_equal(a, a.T):
            raise GraphError("undirected adjacency must be symmetric")
        succ = tuple(tuple(np.flatnonzero(row).tolist()) for row in a)
        pred = succ if kind == UNDIRECTED else tuple(tuple(np.flatnonzero(col).tolist()) for col in a.T)
        return cls(kind, labels, succ, pred)


def _check_labels(labels: Sequence[str]) -> None:
    seen = set()
    for label in labels:
        if not isinstance(label, str) or not label:
            raise GraphError(f"labels must be non-empty strings, got {label!r}")
        if label in seen:
            raise GraphError(f"duplicate label {label!r}")
        seen.add(label)


def build_graph(kind: str, labels: Iterable[str], edges: Iterable[tuple[str, str]]) -> Graph:
    """Construct a graph from labels and label pairs.

    Repeated edges are merged. Raises :class:`GraphError` on a duplicate
    label, an endpoint that is not a label, or a self-loop.
    """
    if kind not in KINDS:
        raise GraphError(f"unknown graph kind {kind!r}")
    labels = tuple(labels)
    _check_labels(labels)
    index = {label: i for i, label in enumerate(labels)}
    succ: list[set[int]] = [set() for _ in labels]
    pred: list[set[int]] = [set() for _ in labels]
    for u, v in edges:
        for x in (u, v):
            if x not in index:
                raise GraphError(f"edge ({u}, {v}) names unknown vertex {x!r}")
        if u == v:
            raise GraphError(f"self-loop at {u!r}")
        i, j = index[u], index[v]
        succ[i].add(j)
        pred[j].add(i)
        if kind == UNDIRECTED:
            succ[j].add(i)
            pred[i].add(j)
    s = tuple(tuple(sorted(x)) for x in succ)
    p = s if kind == UNDIRECTED else tuple(tuple(sorted(x)) for x in pred)
    return Graph(kind, labels, s, p)


def induced_subgraph(g: Graph, labels: Iterable[str]) -> Graph:
    """Subgraph induced by ``labels``, keeping the original vertex order."""
    keep = sorted({g.vertex(x) for x in labels})
    sub = g.adjacency[np.ix_(keep, keep)]
    return Graph.from_adjacency(g.kind, [g.labels[i] for i in keep], sub)


def remove_vertex(g: Graph, label: str) -> Graph:
    v = g.vertex(label)
    return induced_subgraph(g, [x for i, x in enumerate(g.labels) if i != v])


def bfs_distances(g: Graph, source: str) -> np.ndarray:
    """Hop distances from ``source`` following arc direction.

    Entry ``i`` is the distance to ``g.labels[i]`` or :data:`UNREACHABLE`.
    """
    s = g.vertex(source)
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    dist[s] = 0
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y in g.succ[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Distance matrix with ``D[u, v] = d(u, v)``; rows are BFS from each
    vertex, run simultaneously as boolean frontier expansion."""
    n = g.n
    a = g.adjacency.astype(np.int32)
    dist = np.full((n, n), UNREACHABLE, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    step = 0
    while frontier.any():
        step += 1
        frontier = ((frontier.astype(np.int32) @ a) > 0) & ~reached
        dist[frontier] = step
        reached |= frontier
    return dist


def complement(g: Graph) -> Graph:
    if g.directed:
        raise GraphError("complement is defined here for undirected graphs only")
    a = ~g.adjacency
    np.fill_diagonal(a, False)
    return Graph.from_adjacency(UNDIRECTED, g.labels, a)


def _reaches_all(adjacency: np.ndarray) -> bool:
    n = adjacency.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    stack = [0]
    while stack:
        x = stack.pop()
        new = adjacency[x] & ~seen
        seen |= new
        stack.extend(np.flatnonzero(new).tolist())
    return bool(seen.all())


def connectivity(g: Graph) -> Connectivity:
    if g.n <= 1:
        return Connectivity.STRONGLY_CONNECTED if g.directed else Connectivity.CONNECTED
    a = g.adjacency
    if not g.directed:
        return Connectivity.CONNECTED if _reaches_all(a) else Connectivity.DISCONNECTED
    if _reaches_all(a) and _reaches_all(a.T):
        return Connectivity.STRONGLY_CONNECTED
    if _reaches_all(a | a.T):
        return Connectivity.WEAKLY_CONNECTED_ONLY
    return Connectivity.DISCONNECTED


def vertex_class_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Boolean arrays ``(solitary, in_vertex, out_vertex)`` over all vertices."""
    a = g.adjacency
    t = a.T
    none = ~a & ~t
    np.fill_diagonal(none, False)
    solitary = none.any(axis=1)
    in_vertex = (t & ~a).any(axis=1)
    out_vertex = (a & ~t).any(axis=1)
    return solitary, in_vertex, out_vertex


def classify_vertex(g: Graph, u: str) -> VertexClass:
    if not g.directed:
        raise GraphError("vertex classes are defined for directed graphs")
    i = g.vertex(u)
    sol, inv, outv = vertex_class_arrays(g)
    return VertexClass(bool(sol[i]), bool(inv[i]), bool(outv[i]))


def twin_status(g: Graph, u: str, v: str) -> TwinStatus:
    if g.directed:
        raise GraphError("twins are defined here for undirected graphs")
    i, j = g.vertex(u), g.vertex(v)
    if i == j:
        raise GraphError("twin status needs two distinct vertices")
    ni, nj = set(g.succ[i]), set(g.succ[j])
    if g.has_edge(i, j):
        return TwinStatus.TRUE_TWINS if ni | {i} == nj | {j} else TwinStatus.NOT_TWINS
    return TwinStatus.FALSE_TWINS if ni == nj else TwinStatus.NOT_TWINS


# -- edge-list text format -------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    The first meaningful line is ``undirected`` or ``directed``; every later
    line is ``u v`` (an edge, or the arc u->v). ``#`` starts a comment. A line
    holding a single label declares an isolated vertex. Vertex order is the
    order of first appearance.
    """
    kind = None
    labels: dict[str, None] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if kind is None:
            if line not in KINDS:
                raise GraphError(f"line {lineno}: expected 'undirected' or 'directed', got {line!r}")
            kind = line
            continue
        parts = line.split()
        if len(parts) > 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        for p in parts:
            if not LABEL_RE.fullmatch(p):
                raise GraphError(f"line {lineno}: invalid label {p!r}")
            labels.setdefault(p)
        if len(parts) == 2:
            edges.append((parts[0], parts[1]))
    if kind is None:
        raise GraphError("empty edge list: missing 'undirected'/'directed' header")
    if not labels:
        raise GraphError("edge list declares no vertices")
    return build_graph(kind, labels, edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def format_edge_list(g: Graph) -> str:
    lines = [g.kind]
    lines += [f"{u} {v}" for u, v in g.edges()]
    touched = {x for e in g.edges() for x in e}
    lines += [x for x in g.labels if x not in touched]
    return "\n".join(lines) + "\n"


def format_dot(g: Graph, name: str = "G") -> str:
    """Minimal DOT: node ids and edges, no attributes."""
    head, arrow = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [f"{head} {name} {{"]
    lines += [f"  {x};" for x in g.labels]
    lines += [f"  {u} {arrow} {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
