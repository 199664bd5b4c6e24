"""Oracle arbitration between variants of the directed clique-vector rules.

Runs every rule variant and the exact oracle over all join-rooted directed
co-trees up to a leaf bound, plus seeded random trees and fixed probe trees,
and collects the trees on which a variant's dimension disagrees with the
oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .cotree import CoTree, evaluate, parse, serialize
from .directed import DEFAULT_RULE, RULE_VARIANTS, smd_directed
from .generator import DIRECTED_JOIN_ROOT, GenConfig, enumerate_cotrees, random_cotree

#: Smallest known tree on which the two printed forms of the directed-join
#: s-rule give different dimensions.
SEPARATING_INSTANCE = "J(D(D(u,J(U(a,b),c)),v),z)"


@dataclass(frozen=True)
class Counterexample:
    tree: str
    leaves: int
    oracle_smd: int
    dp_smd: int


@dataclass
class ArbitrationReport:
    max_leaves: int
    seed: int
    count: int
    variants: tuple[str, ...]
    trees_checked: int = 0
    mismatches: dict[str, int] = field(default_factory=dict)
    counterexamples: dict[str, list[Counterexample]] = field(default_factory=dict)
    probes: list[dict] = field(default_factory=list)

    def agreeing_variants(self) -> list[str]:
        return [v for v in self.variants if self.mismatches[v] == 0]

    def to_dict(self, show: int | None = None) -> dict:
        return {
            "max_leaves": self.max_leaves,
            "seed": self.seed,
            "count": self.count,
            "trees_checked": self.trees_checked,
            "default_rule": DEFAULT_RULE,
            "mismatches": dict(self.mismatches),
            "agreeing_variants": self.agreeing_variants(),
            "counterexamples": {
                v: [c.__dict__ for c in cs[:show]] for v, cs in self.counterexamples.items()
            },
            "probes": self.probes,
        }

    def to_text(self, show: int = 5) -> str:
        lines = [
            f"trees checked: {self.trees_checked} "
            f"(exhaustive <= {self.max_leaves} leaves, {self.count} random, seed {self.seed})"
        ]
        for v in self.variants:
            tag = " (default)" if v == DEFAULT_RULE else ""
            lines.append(f"{v}{tag}: {self.mismatches[v]} mismatches")
            for c in self.counterexamples[v][:show]:
                lines.append(f"  {c.tree}  oracle={c.oracle_smd} dp={c.dp_smd}")
        for p in self.probes:
            dp = " ".join(f"{v}={p['dp'][v]}" for v in self.variants)
            lines.append(f"probe {p['tree']}: oracle={p['oracle_smd']} {dp}")
        return "\n".join(lines) + "\n"


def _check(t: CoTree, report: ArbitrationReport) -> tuple[int, dict[str, int]]:
    expected, _ = oracle.smd_exact(evaluate(t, directed=True))
    got = {}
    text = None
    for v in report.variants:
        got[v] = smd_directed(t, v).smd
        if got[v] != expected:
            report.mismatches[v] += 1
            text = text or serialize(t)
            report.counterexamples[v].append(Counterexample(text, t.n_leaves, expected, got[v]))
    report.trees_checked += 1
    return expected, got


def run_arbitration(
    max_leaves: int = 7,
    seed: int = 0,
    count: int = 0,
    fuzz_leaves: int = 12,
    variants: tuple[str, ...] = RULE_VARIANTS,
    probes: tuple[str, ...] = (SEPARATING_INSTANCE,),
) -> ArbitrationReport:
    """Compare each variant with the oracle.

    Counterexample lists are sorted by leaf count, then by serialization.
    """
    if fuzz_leaves > oracle.MAX_VERTICES:
        raise ValueError(f"fuzz trees must stay within the oracle bound of {oracle.MAX_VERTICES}")
    report = ArbitrationReport(max_leaves, seed, count, tuple(variants))
    report.mismatches = {v: 0 for v in variants}
    report.counterexamples = {v: [] for v in variants}
    for t in enumerate_cotrees(max_leaves, DIRECTED_JOIN_ROOT):
        _check(t, report)
    rng = np.random.default_rng(seed)
    sizes = rng.integers(2, fuzz_leaves + 1, size=count)
    seeds = rng.integers(0, 2**63 - 1, size=count)
    for n, s in zip(sizes.tolist(), seeds.tolist()):
        _check(random_cotree(GenConfig(n, s, DIRECTED_JOIN_ROOT)), report)
    for text in probes:
        expected, got = _check(parse(text), report)
        report.probes.append({"tree": text, "oracle_smd": expected, "dp": got})
    for cs in report.counterexamples.values():
        cs.sort(key=lambda c: (c.leaves, c.tree))
    return report
