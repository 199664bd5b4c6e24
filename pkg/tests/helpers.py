"""Small graph builders shared by tests."""
from cograph_smd.graph import build_graph


def undirected(*edges: str, isolated: str = ""):
    """``undirected("ab", "bc")`` is the path a-b-c."""
    labels = sorted({x for e in edges for x in e} | set(isolated))
    return build_graph("undirected", labels, [tuple(e) for e in edges])


def directed(*arcs: str, isolated: str = ""):
    labels = sorted({x for e in arcs for x in e} | set(isolated))
    return build_graph("directed", labels, [tuple(e) for e in arcs])
