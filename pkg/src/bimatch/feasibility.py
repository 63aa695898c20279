"""Feasibility precheck: can every right vertex be covered?

The bidding loop does not terminate when some right vertex is uncoverable,
so solvers screen instances first.  Coverage is a pure cardinality question,
answered here by scipy's Hopcroft-Karp implementation on the unweighted
graph.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core import WeightedBipartiteGraph
from .errors import InfeasibleInstanceError


def maximum_matching_size(graph: WeightedBipartiteGraph) -> int:
    """Cardinality of a maximum matching, ignoring weights."""
    if graph.m == 0:
        return 0
    indptr = np.asarray(graph.adj_off, dtype=np.int32)
    indices = np.asarray(graph.adj_v, dtype=np.int32)
    data = np.ones(graph.m, dtype=np.int8)
    mat = csr_matrix((data, indices, indptr), shape=(graph.n, graph.s))
    row_of_col = maximum_bipartite_matching(mat, perm_type="row")
    return int(np.count_nonzero(row_of_col >= 0))


def is_feasible(graph: WeightedBipartiteGraph) -> bool:
    """True iff some matching covers all ``s`` right vertices."""
    if graph.s > graph.n:
        return False
    # A right vertex with no incident edge can never be covered.
    if graph.m < graph.s:
        return False
    return maximum_matching_size(graph) == graph.s


def feasibility_precheck(graph: WeightedBipartiteGraph) -> None:
    """Raise :class:`InfeasibleInstanceError` unless all of V is coverable."""
    if not is_feasible(graph):
        raise InfeasibleInstanceError(
            f"no matching covers all {graph.s} right vertices"
        )
