"""Acceptance criteria 1-10.

Each test prints one ``criterion N PASS|FAIL: ...`` line (repeated in the
pytest terminal summary). Criterion 3 is run twice: literally, against the
four-slot ``prose_derived`` rule (expected to fail, marked strict xfail), and
against the shipped default rule.
"""
from __future__ import annotations

import itertools
import json
import time
import tracemalloc

import numpy as np
import pytest

from cograph_smd import oracle
from cograph_smd.bench import run_benchmark, warm_up
from cograph_smd.cli import main as cli_main
from cograph_smd.cotree import JOIN, canonicalize, evaluate, parse, recognize, serialize
from cograph_smd.directed import DEFAULT_RULE, cross_edge_predicate, smd_directed
from cograph_smd.generator import (
    DIRECTED_JOIN_ROOT,
    DIRECTED_MODE,
    UNDIRECTED_MODE,
    GenConfig,
    enumerate_cotrees,
    random_cotree,
)
from cograph_smd.graph import (
    DIRECTED,
    UNDIRECTED,
    Graph,
    TwinStatus,
    VertexClass,
    all_pairs_distances,
    remove_vertex,
    twin_status,
    vertex_class_arrays,
)
from cograph_smd.undirected import smd_undirected, srg_diameter2

from conftest import oracle_smd
from helpers import directed, undirected

SEPARATING = "J(D(D(u,J(U(a,b),c)),v),z)"


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _random_trees(count: int, max_leaves: int, mode: str, seed: int, join_root: bool = True, min_leaves: int = 2):
    rng = np.random.default_rng(seed)
    sizes = rng.integers(min_leaves, max_leaves + 1, size=count).tolist()
    seeds = rng.integers(0, 2**63 - 1, size=count).tolist()
    return [random_cotree(GenConfig(n, s, mode, join_root=join_root)) for n, s in zip(sizes, seeds)]


@pytest.fixture(scope="session")
def directed_cases():
    """(tree, graph, oracle smd) for join-rooted directed trees: all with at
    most 7 leaves, then 1000 seeded ones with at most 18."""
    trees = list(enumerate_cotrees(7, DIRECTED_JOIN_ROOT))
    trees += _random_trees(1000, 18, DIRECTED_JOIN_ROOT, seed=2024)
    out = []
    for t in trees:
        g = evaluate(t, directed=True)
        out.append((t, g, oracle_smd(g)[0]))
    return out


def _dp_equivalence(cases, solve):
    mismatches = []
    bad_sets = []
    for t, g, expected in cases:
        res = solve(t)
        if res.smd != expected:
            mismatches.append((serialize(t), expected, res.smd))
        elif len(res.resolving_set) != res.smd or not oracle.is_strong_resolving_set(g, res.resolving_set):
            bad_sets.append(serialize(t))
    return mismatches, bad_sets


# -- 1 -------------------------------------------------------------------------


def test_criterion_1_oracle_self_validation(report):
    start = time.perf_counter()
    graphs: dict[Graph, None] = {}
    for mode in (UNDIRECTED_MODE, DIRECTED_MODE):
        for t in enumerate_cotrees(6, mode, min_leaves=1):
            c = canonicalize(t)
            if c.n_leaves > 1 and c.root_kind != JOIN:
                continue  # disconnected or not strongly connected: distances undefined
            graphs.setdefault(evaluate(t, directed=mode == DIRECTED_MODE))
    mismatches = []
    for g in graphs:
        by_subsets, _ = oracle.smd_by_definition(g)
        tau, _ = oracle.min_vertex_cover_exact(oracle.srg_exact(g))
        if by_subsets != tau:
            mismatches.append((g, by_subsets, tau))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 300
    report(
        f"criterion 1 {_verdict(ok)}: {len(graphs)} distinct (strongly) connected graphs from co-trees "
        f"<= 6 leaves, {len(mismatches)} mismatches between subset search and tau(srg), {elapsed:.1f}s"
    )
    assert ok


# -- 2 -------------------------------------------------------------------------


def test_criterion_2_undirected_dp(report):
    start = time.perf_counter()
    trees = [t for t in enumerate_cotrees(7, UNDIRECTED_MODE, min_leaves=1) if t.n_leaves == 1 or canonicalize(t).root_kind == JOIN]
    n_exhaustive = len(trees)
    trees += _random_trees(1000, 20, UNDIRECTED_MODE, seed=2023)
    cases = []
    for t in trees:
        g = evaluate(t)
        cases.append((t, g, oracle_smd(g)[0]))
    mismatches, bad_sets = _dp_equivalence(cases, smd_undirected)
    elapsed = time.perf_counter() - start
    ok = not mismatches and not bad_sets and elapsed < 300
    report(
        f"criterion 2 {_verdict(ok)}: {n_exhaustive} exhaustive + 1000 random undirected trees, "
        f"{len(mismatches)} mismatches, {len(bad_sets)} invalid sets, {elapsed:.1f}s"
    )
    assert ok, mismatches[:5]


# -- 3 -------------------------------------------------------------------------


@pytest.mark.xfail(
    strict=True,
    reason="the four-slot recursion under the prose-derived s-rule disagrees with the oracle "
    "(see criterion 4 and the decisions ledger); the shipped default is checked below",
)
def test_criterion_3_directed_dp_prose_derived_literal(report, directed_cases):
    mismatches, bad_sets = _dp_equivalence(directed_cases, lambda t: smd_directed(t, "prose_derived"))
    ok = not mismatches and not bad_sets
    first = f"; smallest: {min(mismatches, key=lambda m: (len(m[0]), m[0]))}" if mismatches else ""
    report(
        f"criterion 3 [prose_derived, literal] {_verdict(ok)}: {len(directed_cases)} trees, "
        f"{len(mismatches)} mismatches{first}"
    )
    assert ok


def test_criterion_3_directed_dp_shipped_default(report, directed_cases):
    start = time.perf_counter()
    mismatches, bad_sets = _dp_equivalence(directed_cases, lambda t: smd_directed(t, DEFAULT_RULE))
    elapsed = time.perf_counter() - start
    ok = not mismatches and not bad_sets
    report(
        f"criterion 3 [{DEFAULT_RULE}, shipped default] {_verdict(ok)}: {len(directed_cases)} join-rooted "
        f"directed trees (all <= 7 leaves, 1000 random <= 18), {len(mismatches)} mismatches, "
        f"{len(bad_sets)} invalid sets, {elapsed:.1f}s"
    )
    assert ok, mismatches[:5]


# -- 4 -------------------------------------------------------------------------


def test_criterion_4_rule_arbitration(report, capsys):
    code = cli_main(["discrepancy", "--max-leaves", "7", "--seed", "0", "--count", "200", "--show", "1000000", "--json"])
    data = json.loads(capsys.readouterr().out)
    winners = data["agreeing_variants"]
    losers = [v for v in data["mismatches"] if v not in winners]
    probe = next(p for p in data["probes"] if p["tree"] == SEPARATING)
    listed = {v: [c for c in data["counterexamples"][v] if c["tree"] == SEPARATING] for v in losers}
    separated_by = [v for v in losers if probe["dp"][v] != probe["oracle_smd"]]
    ok = (
        code == 0
        and len(winners) == 1
        and winners[0] == DEFAULT_RULE
        and bool(separated_by)
        and all(listed[v] and listed[v][0]["oracle_smd"] == probe["oracle_smd"] for v in separated_by)
    )
    counts = ", ".join(f"{v}={n}" for v, n in data["mismatches"].items())
    report(
        f"criterion 4 {_verdict(ok)}: {data['trees_checked']} trees, mismatches {counts}; "
        f"zero-mismatch variant(s) {winners} (default {DEFAULT_RULE}); {SEPARATING} oracle="
        f"{probe['oracle_smd']} listed for {separated_by}"
    )
    assert ok


# -- 5 -------------------------------------------------------------------------


def test_criterion_5_closed_forms(report):
    failures = []
    for n in range(2, 51):
        t = parse("J(" + ",".join(f"v{i}" for i in range(n)) + ")")
        if smd_undirected(t).smd != n - 1 or smd_directed(t).smd != n - 1:
            failures.append(f"K{n}")
        if n <= 10 and oracle_smd(evaluate(t))[0] != n - 1:
            failures.append(f"K{n} oracle")
    fixed = {"J(U(a,c),b)": 1, "J(U(a,c),U(b,d))": 2, "a": 0}
    for text, expected in fixed.items():
        t = parse(text)
        if smd_undirected(t).smd != expected or oracle_smd(evaluate(t))[0] != expected:
            failures.append(text)
    # the fixed trees really are P3 and C4
    if evaluate(parse("J(U(a,c),b)")) != undirected("ab", "bc"):
        failures.append("P3 shape")
    if evaluate(parse("J(U(a,c),U(b,d))")) != undirected("ab", "bc", "cd", "da"):
        failures.append("C4 shape")
    ok = not failures
    report(f"criterion 5 {_verdict(ok)}: smd(K_n)=n-1 for n=2..50 (oracle n<=10), P3=1, C4=2, K1=0; failures {failures}")
    assert ok


# -- 6 -------------------------------------------------------------------------


def test_criterion_6_diameter2_bridge(report):
    rng = np.random.default_rng(6)
    graphs = []
    while len(graphs) < 1000:
        n = int(rng.integers(2, 11))
        p = rng.uniform(0.35, 0.95)
        a = np.triu(rng.random((n, n)) < p, 1)
        a = a | a.T
        g = Graph.from_adjacency(UNDIRECTED, [f"v{i}" for i in range(n)], a)
        d = all_pairs_distances(g)
        if (d >= 0).all() and d.max() <= 2:
            graphs.append(g)
    mismatches = sum(srg_diameter2(g) != oracle.srg_exact(g) for g in graphs)
    non_cographs = sum(not recognize(g) for g in graphs)
    ok = mismatches == 0 and non_cographs > 0
    report(
        f"criterion 6 {_verdict(ok)}: 1000 random connected diameter<=2 graphs (n<=10, "
        f"{non_cographs} not co-graphs), {mismatches} edge-set mismatches"
    )
    assert ok


# -- 7 -------------------------------------------------------------------------


def test_criterion_7_twin_removal(report):
    rng = np.random.default_rng(7)
    checked = failures = 0
    while checked < 200:
        n = int(rng.integers(3, 15))
        t = random_cotree(GenConfig(n, int(rng.integers(2**62)), UNDIRECTED_MODE, join_root=True))
        g = evaluate(t)
        pair = next(
            (p for p in itertools.combinations(g.labels, 2) if twin_status(g, *p) == TwinStatus.TRUE_TWINS),
            None,
        )
        if pair is None:
            continue
        checked += 1
        if oracle_smd(g)[0] != oracle_smd(remove_vertex(g, pair[1]))[0] + 1:
            failures += 1
    ok = failures == 0
    report(f"criterion 7 {_verdict(ok)}: 200 random co-graphs with a true-twin pair, {failures} violations of smd(G)=smd(G-v)+1")
    assert ok


# -- 8 -------------------------------------------------------------------------


def _distinct_directed_cographs(max_n: int) -> dict[int, list[np.ndarray]]:
    """Adjacency matrices of all graphs of directed co-trees with leaves in
    order, by vertex count, built by composing smaller ones."""
    levels: dict[int, list[np.ndarray]] = {1: [np.zeros((1, 1), dtype=bool)]}
    for n in range(2, max_n + 1):
        seen: dict[bytes, np.ndarray] = {}
        for k in range(1, n):
            for left in levels[k]:
                for right in levels[n - k]:
                    for kind in ("U", "J", "D"):
                        a = np.zeros((n, n), dtype=bool)
                        a[:k, :k] = left
                        a[k:, k:] = right
                        if kind != "U":
                            a[:k, k:] = True
                        if kind == "J":
                            a[k:, :k] = True
                        seen.setdefault(a.tobytes(), a)
        levels[n] = list(seen.values())
    return levels


def test_criterion_8_cross_edges(report):
    start = time.perf_counter()
    levels = _distinct_directed_cographs(7)
    # the composition count agrees with evaluating every enumerated tree
    assert len(levels[5]) == len({evaluate(t).adjacency.tobytes() for t in enumerate_cotrees(5, DIRECTED_MODE, min_leaves=5)})
    classes = {
        n: [np.stack(vertex_class_arrays(Graph.from_adjacency(DIRECTED, [f"x{i}" for i in range(n)], a)), axis=1) for a in mats]
        for n, mats in levels.items()
    }
    splits = disagreements = 0
    for n in range(2, 9):
        labels = [f"x{i}" for i in range(n)]
        for k in range(1, n):
            for li, left in enumerate(levels[k]):
                for ri, right in enumerate(levels[n - k]):
                    a = np.ones((n, n), dtype=bool)
                    a[:k, :k] = left
                    a[k:, k:] = right
                    np.fill_diagonal(a, False)
                    comp = ~oracle.srg_exact(Graph.from_adjacency(DIRECTED, labels, a)).adjacency
                    cl, cr = classes[k][li], classes[n - k][ri]
                    for u in range(k):
                        for v in range(n - k):
                            if comp[u, k + v] != cross_edge_predicate(
                                _vertex_class(cl[u]), _vertex_class(cr[v])
                            ):
                                disagreements += 1
                    splits += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0
    report(
        f"criterion 8 {_verdict(ok)}: {splits} distinct root-join splits of join-rooted directed co-trees "
        f"<= 8 leaves, {disagreements} cross-pair disagreements, {elapsed:.1f}s"
    )
    assert ok


def _vertex_class(row) -> VertexClass:
    return VertexClass(bool(row[0]), bool(row[1]), bool(row[2]))


# -- 9 -------------------------------------------------------------------------


def test_criterion_9_recognition_round_trip(report):
    failures = []
    for mode, is_directed in ((UNDIRECTED_MODE, False), (DIRECTED_MODE, True)):
        for t in _random_trees(1000, 40, mode, seed=9, join_root=False, min_leaves=1):
            g = evaluate(t, directed=is_directed)
            r = recognize(g)
            if not r or evaluate(r, directed=is_directed) != g:
                failures.append(serialize(t))
    p4 = recognize(undirected("ab", "bc", "cd"))
    cycle = recognize(directed("ab", "bc", "ca"))
    ok = not failures and not p4 and not cycle
    report(
        f"criterion 9 {_verdict(ok)}: 1000 random co-graphs per mode round-tripped, {len(failures)} failures; "
        f"P4 rejected={not p4}, directed 3-cycle rejected={not cycle}"
    )
    assert ok


# -- 10 ------------------------------------------------------------------------


def test_criterion_10_performance(report):
    warm_up()
    rows = run_benchmark([10**5, 10**6], seed=10, directed=True, repeats=3)
    t5, t6 = rows[0].dp_ms, rows[1].dp_ms
    ratio = t6 / t5
    und = run_benchmark([10**5, 10**6], seed=10, directed=False, repeats=3)
    # memory: peak traced allocation per leaf of the directed run
    tree = random_cotree(GenConfig(10**6, 10, DIRECTED_JOIN_ROOT))
    tracemalloc.start()
    smd_directed(tree)
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    per_leaf = peak / 10**6
    ok = 3 <= ratio <= 30 and t6 < 2000 and per_leaf < 1024
    report(
        f"criterion 10 {_verdict(ok)}: directed DP {t5:.1f} ms @1e5, {t6:.1f} ms @1e6 (ratio {ratio:.1f}); "
        f"undirected {und[0].dp_ms:.1f}/{und[1].dp_ms:.1f} ms; peak traced memory {per_leaf:.0f} B/leaf"
    )
    assert ok
