"""Strong metric dimension of strongly connected directed co-graphs.

Works on a binary co-tree whose root is a join. Each node carries the sizes
of maximum cliques in the complement of the strong resolving graph over its
vertices, restricted to vertex classes of the node's subgraph:

    m   all vertices
    s   solitary or in-out vertices
    i   in-vertices
    o   out-vertices
    si  solitary or in-vertices
    so  solitary or out-vertices

Being an in- or out-vertex is a flag, so an in-out vertex is counted in
``i``, ``o``, ``si`` and ``so`` as well as in ``s``.

Union and directed-join nodes add no complement edges across their sides;
across a join, u (left) and v (right) are adjacent iff
:func:`cross_edge_predicate` holds for their classes in the two sides.

The four-slot recursion (m, s, i, o) misses cliques that mix a solitary
vertex with an in-only (or out-only) vertex on one side of a join; the
``si``/``so`` slots cover them. The four-slot recursion is kept as the
``"prose_derived"`` and ``"as_printed"`` variants, which differ only in the
directed-join s-rule, for comparison runs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .cotree import JOIN, KIND_NAMES, CoTree, binarize
from .graph import DIRECTED, VertexClass
from .results import ConnectivityError, SmdResult, split_labels

RULE_VARIANTS = ("extended", "prose_derived", "as_printed")
DEFAULT_RULE = "extended"
_VARIANT_CODE = {"extended": K.EXTENDED, "prose_derived": K.PROSE_DERIVED, "as_printed": K.AS_PRINTED}
SLOTS = ("m", "s", "i", "o", "si", "so")


def _variant(rule: str) -> int:
    try:
        return _VARIANT_CODE[rule]
    except KeyError:
        raise ValueError(f"unknown rule variant {rule!r}; expected one of {RULE_VARIANTS}") from None


@dataclass(frozen=True)
class CliqueVector:
    m: int
    s: int
    i: int
    o: int
    si: int
    so: int
    M: tuple[str, ...]
    S: tuple[str, ...]
    I: tuple[str, ...]  # noqa: E741
    O: tuple[str, ...]  # noqa: E741
    SI: tuple[str, ...]
    SO: tuple[str, ...]

    def sizes(self) -> tuple[int, int, int, int]:
        """The (m, s, i, o) quadruple."""
        return self.m, self.s, self.i, self.o


class CliqueTable:
    """Clique vectors of every node of a binary co-tree."""

    def __init__(self, t: CoTree, rule: str = DEFAULT_RULE):
        if not t.is_binary:
            raise ValueError("clique vectors need a binary co-tree; call binarize first")
        self.tree = t
        self.rule = rule
        self.values, self._src_l, self._src_r, self.rule_trace = K.clique_vector_dp(
            t.kinds, t.child_ptr, t.child_idx, _variant(rule)
        )

    def witness_indices(self, node: int, slot: int) -> np.ndarray:
        t = self.tree
        return K.clique_witness(t.kinds, t.child_ptr, t.child_idx, t.leaf_index, self._src_l, self._src_r, node, slot)

    def witness(self, node: int, slot: str) -> tuple[str, ...]:
        idx = self.witness_indices(node, SLOTS.index(slot))
        return tuple(self.tree.labels[i] for i in idx.tolist())

    def vector(self, node: int | None = None) -> CliqueVector:
        node = self.tree.root if node is None else node
        vals = [int(x) for x in self.values[node]]
        sets = [self.witness(node, s) for s in SLOTS]
        return CliqueVector(*vals, *sets)


def clique_vector(t: CoTree, rule: str = DEFAULT_RULE) -> CliqueVector:
    """Root clique vector of a binary co-tree (joins read as two-way arcs)."""
    return CliqueTable(t, rule).vector()


def smd_directed(t: CoTree, rule: str = DEFAULT_RULE) -> SmdResult:
    """``n - m`` at the root, with the complement of the root's M set as a
    minimum strong resolving set.

    Raises :class:`ConnectivityError` unless the root is a join (or the tree
    is a single leaf): any other root gives a graph that is not strongly
    connected.
    """
    _variant(rule)
    if t.n_leaves == 1:
        return SmdResult(1, 0, (), t.labels, DIRECTED, rule, np.zeros(1, np.int8))
    if t.root_kind != JOIN:
        raise ConnectivityError(f"root is a {KIND_NAMES[t.root_kind]} node: the co-graph is not strongly connected")
    b = binarize(t)
    table = CliqueTable(b, rule)
    witness = table.witness_indices(b.root, K.M)
    rest, wit = split_labels(b.labels, witness)
    m = int(table.values[b.root, K.M])
    return SmdResult(b.n_leaves, b.n_leaves - m, rest, wit, DIRECTED, rule, table.rule_trace)


def cross_edge_predicate(cl_u: VertexClass, cl_v: VertexClass) -> bool:
    """Whether u of the left side and v of the right side of a join are
    adjacent in the complement of the strong resolving graph, given their
    classes within their own sides."""
    return (
        cl_u.solitary
        or cl_v.solitary
        or cl_u.in_out
        or cl_v.in_out
        or (cl_u.in_vertex and cl_v.in_vertex)
        or (cl_u.out_vertex and cl_v.out_vertex)
    )
