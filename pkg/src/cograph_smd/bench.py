"""Wall-clock timing of the co-tree recursions on seeded random trees."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .cotree import parse
from .directed import DEFAULT_RULE, smd_directed
from .generator import DIRECTED_JOIN_ROOT, UNDIRECTED_MODE, GenConfig, random_cotree
from .undirected import smd_undirected


@dataclass(frozen=True)
class BenchRow:
    size: int
    generate_ms: float
    dp_ms: float
    smd: int


def warm_up() -> None:
    """Trigger compilation of the kernels so it is not timed."""
    smd_directed(parse("J(D(a,U(b,c)),d)"))
    smd_undirected(parse("J(U(a,b),c)"))


def run_benchmark(sizes, seed: int = 0, directed: bool = True, repeats: int = 3, rule: str = DEFAULT_RULE) -> list[BenchRow]:
    """Generate one join-rooted tree per size and time only the recursion
    (best of ``repeats``); generation is timed separately."""
    warm_up()
    rows = []
    for n in sizes:
        if n < 1:
            raise ValueError("sizes must be positive")
        cfg = GenConfig(n, seed, DIRECTED_JOIN_ROOT) if directed else GenConfig(n, seed, UNDIRECTED_MODE, join_root=True)
        t0 = time.perf_counter()
        tree = random_cotree(cfg)
        gen = time.perf_counter() - t0
        best = float("inf")
        for _ in range(max(repeats, 1)):
            t0 = time.perf_counter()
            res = smd_directed(tree, rule) if directed else smd_undirected(tree)
            best = min(best, time.perf_counter() - t0)
        rows.append(BenchRow(n, gen * 1e3, best * 1e3, res.smd))
    return rows
