"""Co-trees: operation trees of union, join and directed-join compositions.

A :class:`CoTree` is stored flat. Nodes are numbered in post-order (every
child precedes its parent and the root is the last node), leaves are numbered
left to right, and children of node ``k`` are
``child_idx[child_ptr[k]:child_ptr[k + 1]]``. The layout makes every pass
over the tree an iterative loop, so degenerate trees with millions of leaves
need no recursion.

Textual form::

    tree := IDENT | "U(" tree ("," tree)+ ")" | "J(" ... ")" | "D(" ... ")"
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from . import _kernels as K
from .graph import DIRECTED, UNDIRECTED, Graph, GraphError

LEAF, UNION, JOIN, DIR_JOIN = K.LEAF, K.UNION, K.JOIN, K.DIR_JOIN
KIND_NAMES = {LEAF: "leaf", UNION: "union", JOIN: "join", DIR_JOIN: "dir_join"}
SYMBOLS = {UNION: "U", JOIN: "J", DIR_JOIN: "D"}
_BY_SYMBOL = {v: k for k, v in SYMBOLS.items()}


class CoTreeError(ValueError):
    """Invalid co-tree structure or unparsable expression."""


class CoTreeSyntaxError(CoTreeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CoTree:
    """Immutable co-tree over uniquely labelled leaves."""

    __slots__ = ("kinds", "child_ptr", "child_idx", "leaf_index", "labels", "__dict__")

    def __init__(self, kinds, child_ptr, child_idx, leaf_index, labels: Sequence[str], *, check: bool = True):
        self.kinds = np.ascontiguousarray(kinds, dtype=np.int8)
        self.child_ptr = np.ascontiguousarray(child_ptr, dtype=np.int64)
        self.child_idx = np.ascontiguousarray(child_idx, dtype=np.int64)
        self.leaf_index = np.ascontiguousarray(leaf_index, dtype=np.int64)
        self.labels = tuple(labels)
        for a in (self.kinds, self.child_ptr, self.child_idx, self.leaf_index):
            a.flags.writeable = False
        if check:
            self._validate()

    def _validate(self) -> None:
        n = self.kinds.shape[0]
        if n == 0:
            raise CoTreeError("a co-tree needs at least one leaf")
        if self.child_ptr.shape != (n + 1,) or self.leaf_index.shape != (n,):
            raise CoTreeError("inconsistent array shapes")
        if not np.isin(self.kinds, (LEAF, UNION, JOIN, DIR_JOIN)).all():
            raise CoTreeError("unknown node kind")
        arity = np.diff(self.child_ptr)
        if (arity < 0).any() or self.child_ptr[0] != 0 or self.child_ptr[-1] != self.child_idx.shape[0]:
            raise CoTreeError("malformed child offsets")
        is_leaf = self.kinds == LEAF
        if (arity[is_leaf] != 0).any():
            raise CoTreeError("leaf with children")
        if (arity[~is_leaf] < 2).any():
            k = int(np.flatnonzero(~is_leaf & (arity < 2))[0])
            raise CoTreeError(f"{KIND_NAMES[int(self.kinds[k])]} node with fewer than 2 children")
        owner = np.repeat(np.arange(n), arity)
        if (self.child_idx >= owner).any() or (self.child_idx < 0).any():
            raise CoTreeError("children must precede their parent")
        counts = np.bincount(self.child_idx, minlength=n)
        if (counts[:-1] != 1).any() or counts[-1] != 0:
            raise CoTreeError("every non-root node needs exactly one parent")
        nleaf = int(is_leaf.sum())
        if not np.array_equal(self.leaf_index[is_leaf], np.arange(nleaf)) or (self.leaf_index[~is_leaf] != -1).any():
            raise CoTreeError("leaves must be numbered left to right")
        if len(self.labels) != nleaf:
            raise CoTreeError("label count does not match leaf count")
        if len(set(self.labels)) != nleaf:
            raise CoTreeError(f"duplicate leaf label {_first_duplicate(self.labels)!r}")
        if not K.is_postorder(self.child_ptr, self.child_idx, self.sizes):
            raise CoTreeError("nodes are not in post-order")

    # -- construction -------------------------------------------------------

    @classmethod
    def leaf(cls, label: str) -> "CoTree":
        return cls([LEAF], [0, 0], [], [0], [label])

    @classmethod
    def compose(cls, kind: int | str, *subtrees: "CoTree") -> "CoTree":
        """New root of ``kind`` over ``subtrees`` (kept in the given order)."""
        kind = _kind_code(kind)
        if kind == LEAF or len(subtrees) < 2:
            raise CoTreeError("an internal node needs a composition kind and at least 2 children")
        kinds, ptrs, idxs, leafs, labels = [], [], [], [], []
        node_off = edge_off = leaf_off = 0
        roots = []
        for t in subtrees:
            kinds.append(t.kinds)
            ptrs.append(t.child_ptr[:-1] + edge_off)
            idxs.append(t.child_idx + node_off)
            leafs.append(np.where(t.leaf_index >= 0, t.leaf_index + leaf_off, -1))
            labels.extend(t.labels)
            node_off += t.n_nodes
            edge_off += t.child_idx.shape[0]
            leaf_off += t.n_leaves
            roots.append(node_off - 1)
        kinds.append([kind])
        ptrs.append([edge_off, edge_off + len(roots)])
        idxs.append(roots)
        leafs.append([-1])
        return cls(np.concatenate(kinds), np.concatenate(ptrs), np.concatenate(idxs), np.concatenate(leafs), labels)

    # -- inspection -----------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return self.kinds.shape[0]

    @property
    def n_leaves(self) -> int:
        return len(self.labels)

    @property
    def root(self) -> int:
        return self.n_nodes - 1

    @property
    def root_kind(self) -> int:
        return int(self.kinds[-1])

    @cached_property
    def is_directed(self) -> bool:
        """True iff the tree contains a directed-join node."""
        return bool((self.kinds == DIR_JOIN).any())

    @cached_property
    def is_binary(self) -> bool:
        arity = np.diff(self.child_ptr)
        return bool((arity[self.kinds != LEAF] == 2).all())

    @cached_property
    def spans(self) -> tuple[np.ndarray, np.ndarray]:
        """Per node, the half-open range of leaf positions below it."""
        return K.leaf_spans(self.kinds, self.child_ptr, self.child_idx)

    @cached_property
    def sizes(self) -> np.ndarray:
        """Number of nodes in the subtree of every node."""
        return K.subtree_sizes(self.kinds, self.child_ptr, self.child_idx)

    @cached_property
    def parent(self) -> np.ndarray:
        return K.parents(self.child_ptr, self.child_idx, self.n_nodes)

    def children(self, node: int) -> list[int]:
        return self.child_idx[self.child_ptr[node]:self.child_ptr[node + 1]].tolist()

    def kind(self, node: int) -> int:
        return int(self.kinds[node])

    def leaves_under(self, node: int) -> tuple[str, ...]:
        lo, hi = self.spans
        return self.labels[lo[node]:hi[node]]

    def subtree(self, node: int) -> "CoTree":
        """The complete subtree rooted at ``node`` as a standalone co-tree."""
        lo, hi = self.spans
        first = node - int(self.sizes[node]) + 1
        sl = slice(first, node + 1)
        e0, e1 = self.child_ptr[first], self.child_ptr[node + 1]
        leaf = self.leaf_index[sl]
        return CoTree(
            self.kinds[sl],
            self.child_ptr[first:node + 2] - e0,
            self.child_idx[e0:e1] - first,
            np.where(leaf >= 0, leaf - lo[node], -1),
            self.labels[lo[node]:hi[node]],
        )

    def __eq__(self, other):
        if not isinstance(other, CoTree):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.kinds, other.kinds)
            and np.array_equal(self.child_ptr, other.child_ptr)
            and np.array_equal(self.child_idx, other.child_idx)
        )

    def __hash__(self):
        return hash((self.labels, self.kinds.tobytes(), self.child_ptr.tobytes()))

    def __repr__(self):
        text = serialize(self) if self.n_leaves <= 40 else f"<{self.n_leaves} leaves>"
        return f"CoTree({text})"

    def __str__(self):
        return serialize(self)


def _first_duplicate(labels):
    seen = set()
    for x in labels:
        if x in seen:
            return x
        seen.add(x)
    return None


def _kind_code(kind) -> int:
    if isinstance(kind, str):
        lookup = {"union": UNION, "join": JOIN, "dir_join": DIR_JOIN, **_BY_SYMBOL}
        try:
            return lookup[kind]
        except KeyError:
            raise CoTreeError(f"unknown node kind {kind!r}") from None
    return int(kind)


def leaf(label: str) -> CoTree:
    return CoTree.leaf(label)


def union(*subtrees: CoTree) -> CoTree:
    return CoTree.compose(UNION, *subtrees)


def join(*subtrees: CoTree) -> CoTree:
    return CoTree.compose(JOIN, *subtrees)


def dir_join(*subtrees: CoTree) -> CoTree:
    return CoTree.compose(DIR_JOIN, *subtrees)


# -- text form ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([UJD])\s*\(|([A-Za-z0-9_]+)|(,)|(\))|(\S))")


def parse(text: str) -> CoTree:
    """Parse a co-tree expression such as ``J(U(a,b),c)``.

    Raises :class:`CoTreeSyntaxError` (with the offending position) on bad
    syntax or an internal node with fewer than two children, and
    :class:`CoTreeError` on repeated leaf labels.
    """
    kinds: list[int] = []
    ptr: list[int] = [0]
    idx: list[int] = []
    leaf_index: list[int] = []
    labels: list[str] = []
    # open compositions: (kind, position of the operator, child node ids)
    stack: list[tuple[int, int, list[int]]] = []
    done = False
    expect_tree = True
    pos = 0
    end = len(text)
    for m in _TOKEN.finditer(text):
        pos = m.start(m.lastindex)
        op, ident, comma, close, bad = m.groups()
        if bad is not None:
            raise CoTreeSyntaxError(f"unexpected character {bad!r}", pos)
        if done:
            raise CoTreeSyntaxError("trailing input after complete expression", pos)
        if op is not None or ident is not None:
            if not expect_tree:
                raise CoTreeSyntaxError("expected ',' or ')'", pos)
            if op is not None:
                stack.append((_BY_SYMBOL[op], pos, []))
                continue
            node = len(kinds)
            kinds.append(LEAF)
            ptr.append(ptr[-1])
            leaf_index.append(len(labels))
            labels.append(ident)
            if not stack:
                done = True
            else:
                stack[-1][2].append(node)
            expect_tree = False
        elif comma is not None:
            if expect_tree or not stack:
                raise CoTreeSyntaxError("unexpected ','", pos)
            expect_tree = True
        else:
            if expect_tree or not stack:
                raise CoTreeSyntaxError("unexpected ')'", pos)
            kind, start, children = stack.pop()
            if len(children) < 2:
                raise CoTreeSyntaxError(f"{SYMBOLS[kind]}(...) needs at least 2 children", start)
            node = len(kinds)
            kinds.append(kind)
            idx.extend(children)
            ptr.append(ptr[-1] + len(children))
            leaf_index.append(-1)
            if not stack:
                done = True
            else:
                stack[-1][2].append(node)
    if not done:
        raise CoTreeSyntaxError("unexpected end of input", end)
    if len(set(labels)) != len(labels):
        raise CoTreeError(f"duplicate leaf label {_first_duplicate(labels)!r}")
    return CoTree(kinds, ptr, idx, leaf_index, labels, check=False)


_TOKEN_TEXT = {K.TOK_OPEN_U: "U(", K.TOK_OPEN_J: "J(", K.TOK_OPEN_D: "D(", K.TOK_COMMA: ",", K.TOK_CLOSE: ")"}


def serialize(t: CoTree) -> str:
    tokens = K.token_stream(t.kinds, t.child_ptr, t.child_idx, t.leaf_index).tolist()
    labels = t.labels
    return "".join([labels[x] if x >= 0 else _TOKEN_TEXT[x] for x in tokens])


# -- semantics ---------------------------------------------------------------


def adjacency_matrix(t: CoTree, directed: bool | None = None) -> np.ndarray:
    """Dense boolean adjacency of the evaluated graph, vertices in leaf order."""
    n = t.n_leaves
    a = np.zeros((n, n), dtype=bool)
    lo, hi = t.spans
    for k in np.flatnonzero(t.kinds != LEAF).tolist():
        kind = t.kinds[k]
        if kind == UNION:
            continue
        cs = t.children(k)
        for x in range(len(cs)):
            for y in range(x + 1, len(cs)):
                left = slice(lo[cs[x]], hi[cs[x]])
                right = slice(lo[cs[y]], hi[cs[y]])
                a[left, right] = True
                if kind == JOIN:
                    a[right, left] = True
    return a


def evaluate(t: CoTree, directed: bool | None = None) -> Graph:
    """The co-graph described by ``t``.

    A tree with a directed-join node evaluates to a directed graph; otherwise
    an undirected one unless ``directed=True`` is requested (joins then add
    arcs in both directions).
    """
    if directed is None:
        directed = t.is_directed
    if t.is_directed and not directed:
        raise CoTreeError("a tree with a directed join cannot evaluate to an undirected graph")
    return Graph.from_adjacency(DIRECTED if directed else UNDIRECTED, t.labels, adjacency_matrix(t))


def canonicalize(t: CoTree) -> CoTree:
    """Merge runs of equal compositions (union into union, join into join and
    directed join into directed join), keeping child order."""
    kinds, ptr, idx, leaf_index = K.flatten_same_kind(t.kinds, t.child_ptr, t.child_idx, t.leaf_index)
    if kinds.shape[0] == t.n_nodes:
        return t
    return CoTree(kinds, ptr, idx, leaf_index, t.labels, check=False)


def is_canonical(t: CoTree) -> bool:
    par = t.parent[:-1]
    inner = t.kinds[:-1] != LEAF
    return not bool((t.kinds[:-1][inner] == t.kinds[par[inner]]).any())


def binarize(t: CoTree) -> CoTree:
    """Left-associative expansion of every node with more than two children:
    ``X(c1, c2, c3)`` becomes ``X(X(c1, c2), c3)``."""
    if t.is_binary:
        return t
    kinds_in = t.kinds.tolist()
    ptr_in = t.child_ptr.tolist()
    idx_in = t.child_idx.tolist()
    kinds: list[int] = []
    ptr: list[int] = [0]
    idx: list[int] = []
    leaf_index: list[int] = []
    newid = [0] * t.n_nodes
    nleaf = 0
    for k, kind in enumerate(kinds_in):
        if kind == LEAF:
            newid[k] = len(kinds)
            kinds.append(LEAF)
            ptr.append(ptr[-1])
            leaf_index.append(nleaf)
            nleaf += 1
            continue
        cs = [newid[c] for c in idx_in[ptr_in[k]:ptr_in[k + 1]]]
        acc = cs[0]
        for c in cs[1:]:
            node = len(kinds)
            kinds.append(kind)
            idx.extend((acc, c))
            ptr.append(ptr[-1] + 2)
            leaf_index.append(-1)
            acc = node
        newid[k] = acc
    # partial nodes were appended after all siblings; renumber into post-order
    return _reorder_postorder(kinds, ptr, idx, leaf_index, t.labels)


def _reorder_postorder(kinds, ptr, idx, leaf_index, labels) -> CoTree:
    n = len(kinds)
    order = []
    stack = [(n - 1, False)]
    while stack:
        k, expanded = stack.pop()
        if expanded or kinds[k] == LEAF:
            order.append(k)
            continue
        stack.append((k, True))
        for c in reversed(idx[ptr[k]:ptr[k + 1]]):
            stack.append((c, False))
    newid = [0] * n
    for i, k in enumerate(order):
        newid[k] = i
    out_kinds, out_ptr, out_idx, out_leaf = [], [0], [], []
    nleaf = 0
    for k in order:
        out_kinds.append(kinds[k])
        cs = [newid[c] for c in idx[ptr[k]:ptr[k + 1]]]
        out_idx.extend(cs)
        out_ptr.append(out_ptr[-1] + len(cs))
        if kinds[k] == LEAF:
            out_leaf.append(nleaf)
            nleaf += 1
        else:
            out_leaf.append(-1)
    leaf_order = [leaf_index[k] for k in order if kinds[k] == LEAF]
    return CoTree(out_kinds, out_ptr, out_idx, out_leaf, [labels[i] for i in leaf_order], check=False)


# -- recognition -------------------------------------------------------------


@dataclass(frozen=True)
class NotCograph:
    """Recognition failure.

    ``vertices`` is the vertex set of the indecomposable part that stopped the
    decomposition; ``obstruction`` is an induced P4 (in path order) when one
    was located, undirected inputs only.
    """

    vertices: tuple[str, ...]
    obstruction: tuple[str, ...] | None = None

    def __bool__(self):
        return False

    def describe(self) -> str:
        if self.obstruction:
            return "not a co-graph: induced P4 " + "-".join(self.obstruction)
        return "not a co-graph: no union, join or directed-join split of {" + ",".join(self.vertices) + "}"


def _components(adjacency: np.ndarray) -> list[np.ndarray]:
    """Connected components (undirected reading), each sorted, ordered by
    their smallest vertex."""
    ncomp, lab = connected_components(adjacency, directed=False)
    comps = [np.flatnonzero(lab == c) for c in range(ncomp)]
    comps.sort(key=lambda c: int(c[0]))
    return comps


def _find_p4(a: np.ndarray) -> tuple[int, int, int, int] | None:
    n = a.shape[0]
    for b in range(n):
        for c in np.flatnonzero(a[b]).tolist():
            only_b = np.flatnonzero(a[b] & ~a[c])
            only_c = np.flatnonzero(a[c] & ~a[b])
            only_b = only_b[only_b != c]
            only_c = only_c[only_c != b]
            for x in only_b.tolist():
                ds = only_c[~a[x, only_c]]
                if ds.size:
                    return x, b, c, int(ds[0])
    return None


def _assemble(plan: list, labels: Sequence[str]) -> CoTree:
    """Turn a (kind, children) nested plan into a post-order CoTree."""
    kinds, ptr, idx, leaf_index, out_labels = [], [0], [], [], []
    # entries: (plan item, parent's child-id list, own child ids once expanded)
    stack: list = [(plan, None, None)]
    while stack:
        item, parent_ids, ids = stack.pop()
        if isinstance(item, int):
            kinds.append(LEAF)
            ptr.append(ptr[-1])
            leaf_index.append(len(out_labels))
            out_labels.append(labels[item])
        elif ids is None:
            ids = []
            stack.append((item, parent_ids, ids))
            for c in reversed(item[1]):
                stack.append((c, ids, None))
            continue
        else:
            kinds.append(item[0])
            idx.extend(ids)
            ptr.append(ptr[-1] + len(ids))
            leaf_index.append(-1)
        if parent_ids is not None:
            parent_ids.append(len(kinds) - 1)
    return CoTree(kinds, ptr, idx, leaf_index, out_labels, check=False)


def recognize_undirected(g: Graph) -> CoTree | NotCograph:
    """Co-tree of an undirected co-graph, or :class:`NotCograph`.

    Splits into connected components (union) or complement components (join)
    recursively. Children are ordered by their smallest vertex index.
    """
    if g.directed:
        raise GraphError("recognize_undirected needs an undirected graph")
    a = g.adjacency
    plan = _decompose(g, lambda sub: _undirected_split(a, sub))
    if isinstance(plan, NotCograph):
        return plan
    return _assemble(plan, g.labels)


def _undirected_split(a: np.ndarray, sub: np.ndarray):
    s = a[np.ix_(sub, sub)]
    comps = _components(s)
    if len(comps) > 1:
        return UNION, [sub[c] for c in comps]
    co = ~s
    np.fill_diagonal(co, False)
    comps = _components(co)
    if len(comps) > 1:
        return JOIN, [sub[c] for c in comps]
    return None


def recognize_directed(g: Graph) -> CoTree | NotCograph:
    """Co-tree of a directed co-graph, or :class:`NotCograph`.

    At each step tries, in order: weak components (union); components of the
    graph linking pairs that are not joined both ways (join); components of
    the graph linking pairs that do not have exactly one arc, accepted when
    arcs between components all point one way and order the components
    linearly (directed join).
    """
    if not g.directed:
        raise GraphError("recognize_directed needs a directed graph")
    a = g.adjacency
    plan = _decompose(g, lambda sub: _directed_split(a, sub))
    if isinstance(plan, NotCograph):
        return plan
    return _assemble(plan, g.labels)


def _directed_split(a: np.ndarray, sub: np.ndarray):
    s = a[np.ix_(sub, sub)]
    t = s.T
    comps = _components(s | t)
    if len(comps) > 1:
        return UNION, [sub[c] for c in comps]
    not_both = ~(s & t)
    np.fill_diagonal(not_both, False)
    comps = _components(not_both)
    if len(comps) > 1:
        return JOIN, [sub[c] for c in comps]
    not_single = ~(s ^ t)
    np.fill_diagonal(not_single, False)
    comps = _components(not_single)
    if len(comps) == 1:
        return None
    r = len(comps)
    beats = np.zeros((r, r), dtype=bool)
    for x in range(r):
        for y in range(x + 1, r):
            block = s[np.ix_(comps[x], comps[y])]
            if block.all():
                beats[x, y] = True
            elif not block.any():
                beats[y, x] = True
            else:
                return None
    wins = beats.sum(axis=1)
    order = np.argsort(-wins, kind="stable")
    # a transitive tournament has distinct win counts r-1, ..., 0
    if not np.array_equal(wins[order], np.arange(r - 1, -1, -1)):
        return None
    for p in range(r):
        for q in range(p + 1, r):
            if not beats[order[p], order[q]]:
                return None
    return DIR_JOIN, [sub[comps[i]] for i in order]


def _decompose(g: Graph, split):
    """Iterative top-down decomposition; returns a nested plan or NotCograph."""
    root_sub = np.arange(g.n)
    plan_root: list = [None]
    stack = [(root_sub, plan_root, 0)]
    while stack:
        sub, holder, slot = stack.pop()
        if sub.size == 1:
            holder[slot] = int(sub[0])
            continue
        res = split(sub)
        if res is None:
            verts = tuple(g.labels[i] for i in sub.tolist())
            p4 = None
            if not g.directed:
                found = _find_p4(g.adjacency[np.ix_(sub, sub)])
                if found is not None:
                    p4 = tuple(g.labels[sub[i]] for i in found)
            return NotCograph(verts, p4)
        kind, parts = res
        children: list = [None] * len(parts)
        holder[slot] = (kind, children)
        for i in reversed(range(len(parts))):
            stack.append((parts[i], children, i))
    return plan_root[0]


def recognize(g: Graph) -> CoTree | NotCograph:
    return recognize_directed(g) if g.directed else recognize_undirected(g)


def iter_nodes(t: CoTree) -> Iterator[tuple[int, int, list[int]]]:
    """``(node, kind, children)`` in post-order."""
    for k in range(t.n_nodes):
        yield k, int(t.kinds[k]), t.children(k)
