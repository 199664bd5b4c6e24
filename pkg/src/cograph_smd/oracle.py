"""Exact, definition-level computations for small graphs.

Nothing here knows about co-trees. Distances come from BFS, the strong
resolving graph from the maximal-distance conditions, and minimum vertex
covers from an exact bitmask search. The module refuses graphs above
``max_vertices`` rather than approximating.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .graph import UNDIRECTED, UNREACHABLE, Graph, all_pairs_distances

MAX_VERTICES = 24


class OracleError(ValueError):
    """Input outside the oracle's domain (too large, not strongly connected)."""


@dataclass(frozen=True)
class MmdRelation:
    """``matrix[u, v]``: u is mutually maximally distant (to) v.

    Symmetric for undirected graphs; for directed graphs the ordered relation
    need not be.
    """

    directed: bool
    labels: tuple[str, ...]
    matrix: np.ndarray


def _checked_distances(g: Graph, max_vertices: int) -> np.ndarray:
    if g.n > max_vertices:
        raise OracleError(f"oracle bound exceeded: {g.n} > {max_vertices} vertices")
    dist = all_pairs_distances(g)
    if (dist == UNREACHABLE).any():
        what = "strongly connected" if g.directed else "connected"
        raise OracleError(f"graph is not {what}; distances are undefined")
    return dist


def mmd_relation(g: Graph, max_vertices: int = MAX_VERTICES) -> MmdRelation:
    d = _checked_distances(g, max_vertices)
    a = g.adjacency
    # far_in[u, v]: largest d(u', v) over in-neighbours u' of u (-1 if none)
    far_in = np.where(a.T[:, :, None], d[None, :, :], -1).max(axis=1)
    # far_out[u, v]: largest d(u, v') over out-neighbours v' of v
    far_out = np.where(a[None, :, :], d[:, None, :], -1).max(axis=2)
    to = far_in <= d
    if g.directed:
        rel = to & (far_out <= d)
    else:
        rel = to & to.T
    np.fill_diagonal(rel, False)
    rel.flags.writeable = False
    return MmdRelation(g.directed, g.labels, rel)


def srg_exact(g: Graph, max_vertices: int = MAX_VERTICES) -> Graph:
    """Strong resolving graph: undirected, edge {u, v} iff u, v are mutually
    maximally distant (in either order, for directed input)."""
    rel = mmd_relation(g, max_vertices).matrix
    return Graph.from_adjacency(UNDIRECTED, g.labels, rel | rel.T)


# -- exact vertex cover ------------------------------------------------------


class _MisSolver:
    """Maximum independent sets over vertex subsets given as bitmasks."""

    def __init__(self, adjacency: np.ndarray):
        n = adjacency.shape[0]
        self.n = n
        self.nbr = [sum(1 << j for j in np.flatnonzero(adjacency[i]).tolist()) for i in range(n)]
        self.memo: dict[int, int] = {0: 0}

    def alpha(self, p: int) -> int:
        memo = self.memo
        if p in memo:
            return memo[p]
        nbr = self.nbr
        best_v = max_v = -1
        min_deg, max_deg = self.n + 1, -1
        rest = p
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            deg = (nbr[v] & p).bit_count()
            if deg < min_deg:
                min_deg, best_v = deg, v
            if deg > max_deg:
                max_deg, max_v = deg, v
        if min_deg <= 1:
            # a vertex of degree <= 1 is always in some maximum independent set
            res = 1 + self.alpha(p & ~(nbr[best_v] | (1 << best_v)))
        else:
            without = self.alpha(p & ~(1 << max_v))
            with_v = 1 + self.alpha(p & ~(nbr[max_v] | (1 << max_v)))
            res = max(without, with_v)
        memo[p] = res
        return res

    def constrained_cover(self, forced_in: int, forced_out: int) -> int | None:
        """Smallest cover containing ``forced_in`` and avoiding ``forced_out``."""
        nbr = self.nbr
        must = forced_in
        rest = forced_out
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            must |= nbr[v]
        if must & forced_out:
            return None
        free = ((1 << self.n) - 1) & ~must & ~forced_out
        return must.bit_count() + free.bit_count() - self.alpha(free)


def min_vertex_cover_exact(h: Graph, max_vertices: int = MAX_VERTICES) -> tuple[int, tuple[str, ...]]:
    """Minimum vertex cover size and the lexicographically smallest minimum
    cover (as the sorted tuple of vertex indices), reported by label."""
    if h.directed:
        raise OracleError("vertex cover needs an undirected graph")
    if h.n > max_vertices:
        raise OracleError(f"oracle bound exceeded: {h.n} > {max_vertices} vertices")
    solver = _MisSolver(h.adjacency)
    full = (1 << h.n) - 1
    tau = h.n - solver.alpha(full)
    chosen = rejected = 0
    for v in range(h.n):
        bit = 1 << v
        if solver.constrained_cover(chosen | bit, rejected) == tau:
            chosen |= bit
        else:
            rejected |= bit
    cover = tuple(h.labels[v] for v in range(h.n) if chosen >> v & 1)
    assert len(cover) == tau
    return tau, cover


def max_independent_set_size(h: Graph, max_vertices: int = MAX_VERTICES) -> int:
    if h.n > max_vertices:
        raise OracleError(f"oracle bound exceeded: {h.n} > {max_vertices} vertices")
    return _MisSolver(h.adjacency).alpha((1 << h.n) - 1)


# -- strong resolution ---------------------------------------------------------


def _resolution_tensor(d: np.ndarray) -> np.ndarray:
    """``res[w, u, v]``: w strongly resolves u to v, i.e. some shortest u-w
    path passes v or some shortest w-v path passes u. For symmetric distances
    this is the undirected notion."""
    d_uw = d.T[:, :, None]
    d_uv = d[None, :, :]
    d_vw = d.T[:, None, :]
    d_wv = d[:, None, :]
    d_wu = d[:, :, None]
    return (d_uw == d_uv + d_vw) | (d_wv == d_wu + d_uv)


def strongly_resolves(g: Graph, w: str, u: str, v: str, max_vertices: int = MAX_VERTICES) -> bool:
    """Whether ``w`` strongly resolves ``u`` to ``v`` (for undirected graphs
    the order of ``u`` and ``v`` does not matter)."""
    d = _checked_distances(g, max_vertices)
    iw, iu, iv = g.vertex(w), g.vertex(u), g.vertex(v)
    return bool(d[iu, iw] == d[iu, iv] + d[iv, iw] or d[iw, iv] == d[iw, iu] + d[iu, iv])


def find_unresolved_pair(g: Graph, vertices, max_vertices: int = MAX_VERTICES) -> tuple[str, str] | None:
    """First pair not strongly resolved by any member of ``vertices``.

    Pairs are scanned in vertex order; for undirected graphs only ``u < v``.
    """
    d = _checked_distances(g, max_vertices)
    members = sorted({g.vertex(x) for x in vertices})
    res = _resolution_tensor(d)[members].any(axis=0) if members else np.zeros((g.n, g.n), bool)
    bad = ~res
    np.fill_diagonal(bad, False)
    if not g.directed:
        bad = np.triu(bad)
    hits = np.argwhere(bad)
    if hits.size == 0:
        return None
    u, v = hits[0].tolist()
    return g.labels[u], g.labels[v]


def is_strong_resolving_set(g: Graph, vertices, max_vertices: int = MAX_VERTICES) -> bool:
    return find_unresolved_pair(g, vertices, max_vertices) is None


def smd_exact(g: Graph, max_vertices: int = MAX_VERTICES) -> tuple[int, tuple[str, ...]]:
    """Strong metric dimension as the vertex cover number of the strong
    resolving graph, with the cover as a strong resolving set.

    The cover is re-checked against the raw resolving definition.
    """
    size, cover = min_vertex_cover_exact(srg_exact(g, max_vertices), max_vertices)
    if not is_strong_resolving_set(g, cover, max_vertices):
        raise OracleError("vertex cover of the strong resolving graph failed the resolving check")
    return size, cover


def smd_by_definition(g: Graph, max_vertices: int = 16) -> tuple[int, tuple[str, ...]]:
    """Smallest strong resolving set by subset enumeration (exponential).

    Independent of the strong resolving graph; the first set found in
    increasing size and lexicographic order is returned.
    """
    d = _checked_distances(g, max_vertices)
    res = _resolution_tensor(d)
    n = g.n
    weights = 1 << np.arange(n, dtype=np.int64)
    # resolver bitmask per ordered pair
    masks = np.tensordot(weights, res.astype(np.int64), axes=(0, 0))
    off = ~np.eye(n, dtype=bool)
    needed = sorted(set(masks[off].tolist()))
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            bits = 0
            for v in combo:
                bits |= 1 << v
            if all(bits & m for m in needed):
                return k, tuple(g.labels[v] for v in combo)
    raise AssertionError("the full vertex set always resolves")
