"""
Complete decoding of cycle codes: minimum-weight T-joins.

Given a graph and a vertex set T, a T-join is an edge set whose odd-degree
vertices are exactly T. The minimum one is the union of shortest paths along
a minimum-weight perfect matching of T in the shortest-path metric.
"""

from typing import Dict, Iterable, List, Set, Tuple, Union

import networkx as nx
import numpy as np

from ..core.exceptions import ParityError, ShapeMismatchError, UnknownVertexError
from ..core.logging import get_module_logger
from ..complexes.chain import ChainComplex
from ..complexes.simplicial import SimplicialComplex
from ..linalg.gf2 import BinaryMatrix, BitVector

logger = get_module_logger("decoders.tjoin")


def incidence_graph(source: Union[BinaryMatrix, ChainComplex, SimplicialComplex]) -> nx.Graph:
    """1-skeleton read off ∂_1, each edge carrying its column as ``index``.

    Zero columns are skipped; parallel columns keep the lowest index.
    """
    if isinstance(source, SimplicialComplex):
        source = source.chain
    bd1 = source.boundary(1) if isinstance(source, ChainComplex) else source
    g = nx.Graph(n_edges=bd1.n_cols)
    g.add_nodes_from(range(bd1.n_rows))
    csc = bd1.csr.tocsc()
    for j in range(bd1.n_cols):
        ends = csc.indices[csc.indptr[j] : csc.indptr[j + 1]]
        if ends.size == 0:
            continue
        if ends.size != 2:
            raise ShapeMismatchError(f"column {j} of ∂_1 has weight {ends.size}; not a graph edge")
        u, w = int(ends[0]), int(ends[1])
        if not g.has_edge(u, w):
            g.add_edge(u, w, index=j)
    return g


def _edge_count(graph: nx.Graph) -> int:
    return int(graph.graph.get("n_edges", graph.number_of_edges()))


def _edge_index(graph: nx.Graph) -> Dict[Tuple[int, int], int]:
    if all("index" in data for _, _, data in graph.edges(data=True)):
        lookup = {}
        for u, w, data in graph.edges(data=True):
            lookup[(u, w)] = lookup[(w, u)] = data["index"]
        return lookup
    ordered = sorted(tuple(sorted(e)) for e in graph.edges)
    lookup = {}
    for i, (u, w) in enumerate(ordered):
        lookup[(u, w)] = lookup[(w, u)] = i
    return lookup


def check_parity(graph: nx.Graph, odd: Iterable[int]) -> List[Set[int]]:
    """Odd vertices grouped by component; each group must have even size."""
    odd_set = set(odd)
    missing = sorted(v for v in odd_set if v not in graph)
    if missing:
        raise UnknownVertexError(f"odd vertices {missing} are not in the graph")
    groups = []
    for component in nx.connected_components(graph):
        group = odd_set & component
        if len(group) % 2:
            raise ParityError(
                f"component containing {min(component)} has {len(group)} odd vertices",
                component=sorted(component)[:10],
            )
        if group:
            groups.append(group)
    return groups


def tjoin_edges(graph: nx.Graph, odd: Iterable[int]) -> Set[int]:
    """Edge indices of a minimum-weight T-join for ``odd``."""
    index = _edge_index(graph)
    join: Set[int] = set()
    for group in check_parity(graph, odd):
        terminals = sorted(group)
        paths = {t: nx.single_source_shortest_path(graph, t) for t in terminals}
        metric = nx.Graph()
        for i, s in enumerate(terminals):
            for t in terminals[i + 1 :]:
                metric.add_edge(s, t, weight=len(paths[s][t]) - 1)
        matching = nx.min_weight_matching(metric)
        for s, t in matching:
            path = paths[s][t] if t in paths[s] else paths[t][s]
            join.symmetric_difference_update(index[(a, b)] for a, b in zip(path, path[1:]))
    return join


def tjoin_decode(graph: nx.Graph, odd_set: Iterable[int]) -> BitVector:
    """Minimum-weight edge set whose graph boundary is ``odd_set``.

    Raises ParityError when some component holds an odd number of them.
    """
    odd = list(odd_set)
    n_edges = _edge_count(graph)
    if not odd:
        return BitVector.zeros(n_edges)
    join = tjoin_edges(graph, odd)
    logger.debug(f"T-join: {len(odd)} odd vertices, {len(join)} edges")
    return BitVector.from_support(n_edges, sorted(join))


def tjoin_columns(graph: nx.Graph, syndromes: np.ndarray) -> np.ndarray:
    """Decode every column of a |V| x k syndrome array; returns |E| x k."""
    n_edges = _edge_count(graph)
    out = np.zeros((n_edges, syndromes.shape[1]), dtype=np.uint8)
    for a in range(syndromes.shape[1]):
        odd = np.flatnonzero(syndromes[:, a])
        if odd.size:
            out[:, a] = tjoin_decode(graph, odd.tolist()).bits
    return out
