"""Directed co-graphs and the three clique-vector variants.

A D node is a directed join: every vertex on the left gets an arc to every
vertex on the right. The recursion keeps, per node, the largest clique of the
complement of the strong resolving graph within several vertex classes.
"""
from cograph_smd import oracle
from cograph_smd.arbitration import SEPARATING_INSTANCE, run_arbitration
from cograph_smd.cotree import binarize, evaluate, parse
from cograph_smd.directed import RULE_VARIANTS, CliqueTable, clique_vector, smd_directed
from cograph_smd.graph import classify_vertex

t = parse("D(a,b)")
print("D(a,b):", clique_vector(t))
g = evaluate(t)
print("classes:", {x: classify_vertex(g, x) for x in g.labels})

t = parse("J(D(a,b),c)")
res = smd_directed(t)
print("J(D(a,b),c): smd", res.smd, "set", res.resolving_set, "rules", res.rule_names())

# Two trees where the variants part ways. The oracle decides.
for text in [SEPARATING_INSTANCE, "J(J(U(x,y),D(p,q)),D(r,s))"]:
    tree = parse(text)
    expected, _ = oracle.smd_exact(evaluate(tree))
    got = {rule: smd_directed(tree, rule).smd for rule in RULE_VARIANTS}
    print(f"{text}: oracle {expected}, {got}")

# Per-node vectors of the six-slot recursion on the second tree
b = binarize(parse("J(J(U(x,y),D(p,q)),D(r,s))"))
table = CliqueTable(b)
for node in range(b.n_nodes):
    if b.kind(node):
        print(node, b.leaves_under(node), dict(zip(("m", "s", "i", "o", "si", "so"), table.values[node].tolist())))

# A small arbitration run: all join-rooted trees up to 6 leaves plus 50 random;
# the smallest tree that trips the four-slot prose-derived rule has 6 leaves
print(run_arbitration(max_leaves=6, seed=1, count=50).to_text(show=2))
