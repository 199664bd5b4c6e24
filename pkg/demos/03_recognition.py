"""From an edge list to a co-tree, and what happens when there is none."""
from cograph_smd import smd
from cograph_smd.cotree import recognize, serialize
from cograph_smd.graph import parse_edge_list

square = parse_edge_list(
    """
    undirected
    a b
    b c
    c d
    d a
    """
)
tree = recognize(square)
print("C4 ->", serialize(tree), "smd", smd(tree).smd)

path = parse_edge_list("undirected\na b\nb c\nc d\n")
print("P4 ->", recognize(path).describe())

# Directed input: a transitive tournament on three vertices plus a vertex
# joined both ways to all of them.
digraph = parse_edge_list(
    """
    directed
    x y
    x z
    y z
    w x
    x w
    w y
    y w
    w z
    z w
    """
)
tree = recognize(digraph)
res = smd(tree)
print("digraph ->", serialize(tree), "smd", res.smd, "set", res.resolving_set)

cycle = parse_edge_list("directed\na b\nb c\nc a\n")
print("3-cycle ->", recognize(cycle).describe())
