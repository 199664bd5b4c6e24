"""Strong metric dimension of undirected and directed co-graphs."""
from .cotree import (
    CoTree,
    CoTreeError,
    CoTreeSyntaxError,
    NotCograph,
    binarize,
    canonicalize,
    dir_join,
    evaluate,
    join,
    leaf,
    parse,
    recognize,
    recognize_directed,
    recognize_undirected,
    serialize,
    union,
)
from .directed import DEFAULT_RULE, RULE_VARIANTS, CliqueTable, CliqueVector, clique_vector, cross_edge_predicate, smd_directed
from .graph import Graph, GraphError, VertexClass, build_graph, parse_edge_list, read_edge_list
from .results import ConnectivityError, SmdResult
from .undirected import max_twinless_clique, smd_undirected, srg_diameter2

__version__ = "0.1.0"


def smd(t: CoTree, directed: bool | None = None, rule: str = DEFAULT_RULE) -> SmdResult:
    """Dispatch on the tree: directed joins (or ``directed=True``) select the
    directed recursion."""
    if directed is None:
        directed = t.is_directed
    return smd_directed(t, rule) if directed else smd_undirected(t)
