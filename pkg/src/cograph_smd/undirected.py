"""Strong metric dimension of connected undirected co-graphs.

Removing true twins one at a time lowers the dimension by one each time, and
in a twin-free graph of diameter at most two the strong resolving graph is
the complement, so the dimension is ``n`` minus the largest clique that
contains no two true twins. On a canonical co-tree true twins are exactly the
leaf children of a common join node, which gives a single bottom-up pass.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .cotree import JOIN, KIND_NAMES, CoTree, CoTreeError, canonicalize, is_canonical
from .graph import UNDIRECTED, Graph, GraphError, all_pairs_distances
from .results import ConnectivityError, SmdResult, split_labels


@dataclass(frozen=True)
class TwinlessCliqueResult:
    size: int
    witness: tuple[str, ...]


def max_twinless_clique(t: CoTree) -> TwinlessCliqueResult:
    """Largest clique without true twins, read off a canonical co-tree.

    Leaves score 1, a union takes its best child (first on ties) and a join
    adds up its non-leaf children plus one for all leaf children together.
    The witness takes the first leaf child of every join it passes.
    """
    if t.is_directed:
        raise CoTreeError("max_twinless_clique needs an undirected co-tree")
    if not is_canonical(t):
        raise CoTreeError("max_twinless_clique needs a canonical co-tree; call canonicalize first")
    val, pick = K.max_twinless_clique_dp(t.kinds, t.child_ptr, t.child_idx)
    witness = K.twinless_witness(t.kinds, t.child_ptr, t.child_idx, t.leaf_index, pick, t.root)
    return TwinlessCliqueResult(int(val[t.root]), tuple(t.labels[i] for i in witness.tolist()))


def smd_undirected(t: CoTree) -> SmdResult:
    if t.is_directed:
        raise CoTreeError("smd_undirected needs a co-tree without directed joins")
    c = canonicalize(t)
    if c.n_leaves == 1:
        return SmdResult(1, 0, (), c.labels, UNDIRECTED)
    if c.root_kind != JOIN:
        raise ConnectivityError(f"root is a {KIND_NAMES[c.root_kind]} node: the co-graph is disconnected")
    val, pick = K.max_twinless_clique_dp(c.kinds, c.child_ptr, c.child_idx)
    witness = K.twinless_witness(c.kinds, c.child_ptr, c.child_idx, c.leaf_index, pick, c.root)
    rest, wit = split_labels(c.labels, witness)
    return SmdResult(c.n_leaves, c.n_leaves - int(val[c.root]), rest, wit, UNDIRECTED)


def srg_diameter2(g: Graph) -> Graph:
    """Strong resolving graph of a connected graph with diameter at most 2:
    the complement plus an edge between every pair of true twins."""
    if g.directed:
        raise GraphError("srg_diameter2 needs an undirected graph")
    d = all_pairs_distances(g)
    if (d < 0).any() or (d > 2).any():
        raise GraphError("srg_diameter2 needs a connected graph of diameter at most 2")
    a = g.adjacency
    closed = a | np.eye(g.n, dtype=bool)
    same_closed = (closed[:, None, :] == closed[None, :, :]).all(axis=2)
    h = (~a | same_closed) & ~np.eye(g.n, dtype=bool)
    return Graph.from_adjacency(UNDIRECTED, g.labels, h)
