"""Strong metric dimension of a few small undirected co-graphs.

Run with ``python3 demos/01_undirected_basics.py``.
"""
from cograph_smd import oracle
from cograph_smd.cotree import canonicalize, evaluate, parse, serialize
from cograph_smd.graph import format_edge_list
from cograph_smd.undirected import max_twinless_clique, smd_undirected

# A co-tree is written with U (disjoint union) and J (join). J(U(a,b),c) is
# the path a - c - b.
t = parse("J(U(a,b),c)")
g = evaluate(t)
print(format_edge_list(g))

res = smd_undirected(t)
print("smd:", res.smd, "resolving set:", res.resolving_set, "clique witness:", res.clique_witness)

# The answer is n minus the largest clique without true twins. Leaves that
# hang directly off the same join are true twins, so they count once.
for text in ["J(a,b,c,d)", "J(U(a,b),U(c,d))", "J(U(a,b),J(c,d))", "J(a,U(b,c),d,U(e,J(f,g)))"]:
    c = canonicalize(parse(text))
    clique = max_twinless_clique(c)
    print(f"{serialize(c):28s} twinless clique {clique.size} {clique.witness}")

# The oracle works from the definitions alone: distances, mutually maximally
# distant pairs, and an exact minimum vertex cover of the resulting graph.
t = parse("J(U(a,J(b,c)),U(d,e),f)")
g = evaluate(t)
size, cover = oracle.smd_exact(g)
print("oracle:", size, cover, "recursion:", smd_undirected(t).smd)
print("strong resolving graph edges:", oracle.srg_exact(g).edges())
print("resolving set valid:", oracle.is_strong_resolving_set(g, smd_undirected(t).resolving_set))
print("first unresolved pair for {a}:", oracle.find_unresolved_pair(g, ["a"]))
