"""Seeded random co-trees and exhaustive enumeration of small co-trees."""
from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import _kernels as K
from .cotree import DIR_JOIN, JOIN, LEAF, UNION, CoTree

UNDIRECTED_MODE = "undirected"
DIRECTED_MODE = "directed"
DIRECTED_JOIN_ROOT = "directed_join_root"
MODES = (UNDIRECTED_MODE, DIRECTED_MODE, DIRECTED_JOIN_ROOT)

MAX_ENUMERATION_LEAVES = 8


def _default_weights(mode: str) -> dict[int, float]:
    if mode == UNDIRECTED_MODE:
        return {UNION: 0.5, JOIN: 0.5}
    return {UNION: 1 / 3, JOIN: 1 / 3, DIR_JOIN: 1 / 3}


@dataclass(frozen=True)
class GenConfig:
    """Parameters of :func:`random_cotree`.

    ``weights`` maps node kinds to probabilities; it defaults to uniform over
    the kinds allowed by ``mode``. In ``directed_join_root`` mode, or with
    ``join_root`` set, the root of any tree with two or more leaves is a join.
    """

    leaves: int
    seed: int = 0
    mode: str = UNDIRECTED_MODE
    weights: dict[int, float] = field(default=None)  # type: ignore[assignment]
    join_root: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.leaves < 1:
            raise ValueError("a co-tree needs at least one leaf")
        if self.weights is None:
            object.__setattr__(self, "weights", _default_weights(self.mode))
        w = self.weights
        allowed = {UNION, JOIN} if self.mode == UNDIRECTED_MODE else {UNION, JOIN, DIR_JOIN}
        if not set(w) <= allowed:
            raise ValueError(f"weights name kinds not allowed in {self.mode} mode")
        if any(p <= 0 for p in w.values()) or not np.isclose(sum(w.values()), 1.0):
            raise ValueError("weights must be positive and sum to 1")


def random_cotree(cfg: GenConfig) -> CoTree:
    """Binary co-tree with ``cfg.leaves`` leaves labelled ``v0 .. v{n-1}``.

    Each internal node splits its leaf count uniformly at random and draws its
    kind from ``cfg.weights``. Equal configs give identical trees.
    """
    n = cfg.leaves
    rng = np.random.default_rng(cfg.seed)
    split_u = rng.random(max(n - 1, 0))
    kinds = np.array(list(cfg.weights), dtype=np.int8)
    probs = np.array(list(cfg.weights.values()), dtype=float)
    kind_draw = rng.choice(kinds, size=max(n - 1, 0), p=probs / probs.sum()).astype(np.int8)
    if (cfg.join_root or cfg.mode == DIRECTED_JOIN_ROOT) and n >= 2:
        kind_draw[0] = JOIN
    arrays = K.random_binary_tree(n, split_u, kind_draw)
    return CoTree(*arrays, [f"v{i}" for i in range(n)], check=False)


def caterpillar(n: int, kind: int = UNION, root_kind: int | None = None) -> CoTree:
    """Maximally deep binary tree ``X(...X(X(v0, v1), v2)..., v{n-1})``."""
    total = 2 * n - 1
    kinds = np.full(total, kind, dtype=np.int8)
    leaf_index = np.full(total, -1, dtype=np.int64)
    # post-order: v0 v1 x1 v2 x2 v3 x3 ...
    kinds[0] = LEAF
    leaf_index[0] = 0
    leaf_pos = np.arange(1, n) * 2 - 1
    kinds[leaf_pos] = LEAF
    leaf_index[leaf_pos] = np.arange(1, n)
    if root_kind is not None and n >= 2:
        kinds[-1] = root_kind
    arity = np.where(kinds == LEAF, 0, 2)
    child_ptr = np.concatenate([[0], np.cumsum(arity)])
    inner = np.flatnonzero(kinds != LEAF)
    child_idx = np.empty(2 * (n - 1), dtype=np.int64)
    child_idx[0::2] = np.concatenate([[0], inner[:-1]]) if n > 1 else []
    child_idx[1::2] = inner - 1
    return CoTree(kinds, child_ptr, child_idx, leaf_index, [f"v{i}" for i in range(n)])


def canonical_labels(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"v{i}" for i in range(n)]


@lru_cache(maxsize=None)
def _shapes(n: int) -> tuple:
    """Binary tree shapes with ``n`` leaves as nested pairs (``None`` = leaf)."""
    if n == 1:
        return (None,)
    out = []
    for left in range(1, n):
        for a in _shapes(left):
            for b in _shapes(n - left):
                out.append((a, b))
    return tuple(out)


def _shape_arrays(shape) -> tuple[list[int], list[int], list[int]]:
    """Post-order child layout of a shape, plus the post-order id of each
    internal node listed in pre-order (the root first)."""
    internal_post: list[int] = []
    ptr = [0]
    idx: list[int] = []
    is_leaf: list[bool] = []

    def emit(s) -> int:
        if s is None:
            node = len(is_leaf)
            is_leaf.append(True)
            ptr.append(ptr[-1])
            return node
        slot = len(internal_post)
        internal_post.append(-1)
        left = emit(s[0])
        right = emit(s[1])
        node = len(is_leaf)
        is_leaf.append(False)
        idx.extend((left, right))
        ptr.append(ptr[-1] + 2)
        internal_post[slot] = node
        return node

    emit(shape)
    return internal_post, ptr, idx, is_leaf


def enumerate_cotrees(max_leaves: int, mode: str = UNDIRECTED_MODE, min_leaves: int = 2) -> Iterator[CoTree]:
    """Every binary shape crossed with every assignment of internal kinds, for
    leaf counts ``min_leaves .. max_leaves``. Leaves are labelled a, b, c, ...
    in order. Trees equal up to associativity are all emitted."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if max_leaves > MAX_ENUMERATION_LEAVES:
        raise ValueError(f"enumeration is limited to {MAX_ENUMERATION_LEAVES} leaves")
    kinds_allowed = (UNION, JOIN) if mode == UNDIRECTED_MODE else (UNION, JOIN, DIR_JOIN)
    for n in range(max(min_leaves, 1), max_leaves + 1):
        labels = canonical_labels(n)
        for shape in _shapes(n):
            internal_post, ptr, idx, is_leaf = _shape_arrays(shape)
            base = np.where(is_leaf, LEAF, 0).astype(np.int8)
            leaf_index = np.full(len(is_leaf), -1, dtype=np.int64)
            leaf_index[np.flatnonzero(is_leaf)] = np.arange(n)
            ptr_a = np.array(ptr, dtype=np.int64)
            idx_a = np.array(idx, dtype=np.int64)
            pos = np.array(internal_post, dtype=np.int64)
            choices = [kinds_allowed] * len(internal_post)
            if mode == DIRECTED_JOIN_ROOT and internal_post:
                choices[0] = (JOIN,)
            for assignment in itertools.product(*choices):
                kinds = base.copy()
                kinds[pos] = assignment
                yield CoTree(kinds, ptr_a, idx_a, leaf_index, labels, check=False)
