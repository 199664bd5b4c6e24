from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class ConnectivityError(ValueError):
    """The co-tree describes a disconnected (or not strongly connected) graph."""


@dataclass(frozen=True)
class SmdResult:
    """Strong metric dimension together with a minimum strong resolving set.

    ``resolving_set`` and ``clique_witness`` partition the vertices and are
    listed in the input's leaf order. For directed trees ``rule_trace`` holds,
    per node of the binarized tree, the index into ``RULE_NAMES`` of the
    maximand that produced the clique size there.
    """

    n: int
    smd: int
    resolving_set: tuple[str, ...]
    clique_witness: tuple[str, ...]
    mode: str
    rule_variant: str | None = None
    rule_trace: np.ndarray | None = field(default=None, repr=False, compare=False)

    def rule_names(self) -> list[str]:
        from ._kernels import RULE_NAMES

        if self.rule_trace is None:
            return []
        return [RULE_NAMES[c] for c in self.rule_trace.tolist()]


def split_labels(labels: tuple[str, ...], witness_idx: np.ndarray) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """(complement, witness) of a sorted index array, both in label order."""
    keep = np.ones(len(labels), dtype=bool)
    keep[witness_idx] = False
    rest = tuple(labels[i] for i in np.flatnonzero(keep).tolist())
    return rest, tuple(labels[i] for i in witness_idx.tolist())
