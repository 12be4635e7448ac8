"""
Simplicial complexes over dense integer vertex ids.

Faces are strictly increasing vertex tuples, listed in lexicographic order
per dimension; the boundary of a p-face has weight exactly p + 1.
"""

from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from ..core.exceptions import ChainValidationError, InvalidGradeError, ShapeMismatchError, UnknownVertexError
from ..core.logging import get_module_logger
from ..linalg.gf2 import BinaryMatrix
from ..models.files import SimplicialComplexFile
from ..models.reports import DegreeStats, GradeDegree
from .chain import ChainComplex

logger = get_module_logger("complexes.simplicial")

Face = Tuple[int, ...]


class SimplicialComplex:
    """Downward-closed family of faces with its chain complex.

    ``faces_by_dim[p]`` lists the p-faces; grade 0 is always the full vertex
    set ``(0,), (1,), ...``.
    """

    def __init__(self, n_vertices: int, faces_by_dim: Sequence[Iterable[Sequence[int]]], check: bool = True):
        self.n_vertices = int(n_vertices)
        faces: List[List[Face]] = [[(v,) for v in range(self.n_vertices)]]
        for p, layer in enumerate(faces_by_dim[1:], start=1):
            faces.append(sorted(tuple(int(v) for v in f) for f in layer))
        self.faces_by_dim: Tuple[Tuple[Face, ...], ...] = tuple(tuple(layer) for layer in faces)
        if check:
            self._check()

    def _check(self) -> None:
        for p, layer in enumerate(self.faces_by_dim):
            previous: Optional[Face] = None
            for face in layer:
                if len(face) != p + 1:
                    raise ShapeMismatchError(f"{p}-face {face} must have {p + 1} vertices")
                if any(a >= b for a, b in zip(face, face[1:])):
                    raise ChainValidationError(f"face {face} is not strictly increasing", grade=p)
                if face[0] < 0 or face[-1] >= self.n_vertices:
                    raise UnknownVertexError(f"face {face} uses a vertex outside [0, {self.n_vertices})")
                if face == previous:
                    raise ChainValidationError(f"duplicate {p}-face {face}", grade=p)
                previous = face
            if p >= 2:
                lower = self.index(p - 1)
                for face in layer:
                    for sub in combinations(face, p):
                        if sub not in lower:
                            raise ChainValidationError(
                                f"{p}-face {face} is missing its face {sub}", grade=p
                            )

    # -- basic queries ----------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.faces_by_dim) - 1

    @property
    def face_counts(self) -> Tuple[int, ...]:
        return tuple(len(layer) for layer in self.faces_by_dim)

    def faces(self, p: int) -> Tuple[Face, ...]:
        if not 0 <= p <= self.dimension:
            raise InvalidGradeError(f"grade {p} outside [0, {self.dimension}]", grade=p)
        return self.faces_by_dim[p]

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    @property
    def edges(self) -> Tuple[Face, ...]:
        return self.faces(1) if self.dimension >= 1 else ()

    @property
    def triangles(self) -> Tuple[Face, ...]:
        return self.faces(2) if self.dimension >= 2 else ()

    def index(self, p: int) -> Dict[Face, int]:
        cache = self.__dict__.setdefault("_index_cache", {})
        if p not in cache:
            cache[p] = {face: i for i, face in enumerate(self.faces(p))}
        return cache[p]

    def boundary(self, p: int) -> BinaryMatrix:
        """∂_p as a |X_{p-1}| x |X_p| matrix, 1 <= p <= dimension."""
        cache = self.__dict__.setdefault("_boundary_cache", {})
        if p not in cache:
            if not 1 <= p <= self.dimension:
                raise InvalidGradeError(f"no ∂_{p} in a {self.dimension}-complex", grade=p)
            lower = self.index(p - 1)
            entries = [
                (lower[sub], j)
                for j, face in enumerate(self.faces(p))
                for sub in combinations(face, p)
            ]
            cache[p] = BinaryMatrix.from_entries(len(lower), len(self.faces(p)), entries)
        return cache[p]

    @cached_property
    def chain(self) -> ChainComplex:
        return ChainComplex(
            self.face_counts, tuple(self.boundary(p) for p in range(1, self.dimension + 1))
        )

    @cached_property
    def graph(self) -> nx.Graph:
        """The 1-skeleton."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def vertex_triangles(self) -> List[List[int]]:
        """Triangle indices containing each vertex."""
        incident: List[List[int]] = [[] for _ in self.vertices]
        for j, tri in enumerate(self.triangles):
            for v in tri:
                incident[v].append(j)
        return incident

    @cached_property
    def vertex_edges(self) -> List[List[int]]:
        """Edge indices containing each vertex."""
        incident: List[List[int]] = [[] for _ in self.vertices]
        for j, (u, w) in enumerate(self.edges):
            incident[u].append(j)
            incident[w].append(j)
        return incident

    # -- file model -------------------------------------------------------

    def to_file_model(self) -> SimplicialComplexFile:
        return SimplicialComplexFile(
            vertices=self.n_vertices,
            faces={str(p): [list(f) for f in self.faces_by_dim[p]] for p in range(1, self.dimension + 1)},
        )

    @classmethod
    def from_file_model(cls, model: SimplicialComplexFile) -> "SimplicialComplex":
        try:
            grades = {int(key): value for key, value in model.faces.items()}
        except ValueError as exc:
            raise ShapeMismatchError(f"face keys must be integers: {exc}") from exc
        top = max(grades, default=0)
        layers: List[Iterable[Sequence[int]]] = [[]]
        layers.extend(grades.get(p, []) for p in range(1, top + 1))
        return cls(model.vertices, layers)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n_vertices == other.n_vertices and self.faces_by_dim == other.faces_by_dim

    def __hash__(self) -> int:
        return hash((self.n_vertices, self.face_counts))

    def __repr__(self) -> str:
        return f"SimplicialComplex(face_counts={self.face_counts})"


def clique_complex(
    graph: Union[nx.Graph, Iterable[Tuple[int, int]]],
    max_dim: int,
    n_vertices: Optional[int] = None,
) -> SimplicialComplex:
    """All cliques with at most ``max_dim + 1`` vertices.

    ``nx.enumerate_all_cliques`` yields cliques by increasing size, so the
    enumeration stops at the first clique that is too large.
    """
    if isinstance(graph, nx.Graph):
        nodes = [int(v) for v in graph.nodes]
        edge_list = [(int(u), int(w)) for u, w in graph.edges]
        if n_vertices is None:
            n_vertices = (max(nodes) + 1) if nodes else 0
    else:
        edge_list = [(int(u), int(w)) for u, w in graph]
        if n_vertices is None:
            n_vertices = (max(max(e) for e in edge_list) + 1) if edge_list else 0

    g = nx.Graph()
    g.add_nodes_from(range(n_vertices))
    for u, w in edge_list:
        if not (0 <= u < n_vertices and 0 <= w < n_vertices):
            raise UnknownVertexError(f"edge ({u}, {w}) outside [0, {n_vertices})")
        if u != w:
            g.add_edge(u, w)

    layers: List[List[Face]] = [[] for _ in range(max_dim + 1)]
    for clique in nx.enumerate_all_cliques(g):
        if len(clique) > max_dim + 1:
            break
        layers[len(clique) - 1].append(tuple(sorted(clique)))
    for p, layer in enumerate(layers[2:], start=2):
        logger.debug(f"clique complex: {len(layer)} faces of dimension {p}")
    return SimplicialComplex(n_vertices, layers, check=False)


def link(X: SimplicialComplex, v: int) -> nx.Graph:
    """Graph on the neighbours of v, with an edge uw whenever {u, v, w} is a triangle."""
    if not 0 <= v < X.n_vertices:
        raise UnknownVertexError(f"vertex {v} not in complex with {X.n_vertices} vertices")
    g = nx.Graph()
    g.add_nodes_from(X.graph.neighbors(v))
    for j in X.vertex_triangles[v] if X.dimension >= 2 else []:
        u, w = (x for x in X.triangles[j] if x != v)
        g.add_edge(u, w)
    return g


def skeleton(X: SimplicialComplex, k: int) -> SimplicialComplex:
    """Faces of dimension <= k."""
    if not 0 <= k <= X.dimension:
        raise InvalidGradeError(f"skeleton grade {k} outside [0, {X.dimension}]", grade=k)
    return SimplicialComplex(X.n_vertices, X.faces_by_dim[: k + 1], check=False)


def degree_stats(X: SimplicialComplex) -> DegreeStats:
    """(min, max) number of (p+1)-faces containing a p-face, for p < dimension."""
    grades = []
    for p in range(X.dimension):
        weights = X.boundary(p + 1).row_weights()
        if weights.size == 0:
            grades.append(GradeDegree(grade=p, min_degree=0, max_degree=0))
            continue
        grades.append(GradeDegree(grade=p, min_degree=int(weights.min()), max_degree=int(weights.max())))
    return DegreeStats(grades=grades)


def chain_degree_stats(X: ChainComplex) -> DegreeStats:
    """Same statistics read off the boundary row weights of any chain complex."""
    grades = []
    for p in range(X.dimension):
        weights = X.boundary(p + 1).row_weights()
        lo, hi = (int(weights.min()), int(weights.max())) if weights.size else (0, 0)
        grades.append(GradeDegree(grade=p, min_degree=lo, max_degree=hi))
    return DegreeStats(grades=grades)


def fixture_torus(r: int, c: int) -> SimplicialComplex:
    """Diagonal triangulation of the r x c grid torus; vertex (i, j) has id i*c + j."""
    if r < 3 or c < 3:
        raise ShapeMismatchError(f"torus needs r, c >= 3, got ({r}, {c})")

    def vid(i: int, j: int) -> int:
        return (i % r) * c + (j % c)

    edges: Set[Face] = set()
    triangles: Set[Face] = set()
    for i in range(r):
        for j in range(c):
            a, right, down, diag = vid(i, j), vid(i, j + 1), vid(i + 1, j), vid(i + 1, j + 1)
            for e in ((a, right), (a, down), (a, diag)):
                edges.add(tuple(sorted(e)))
            triangles.add(tuple(sorted((a, right, diag))))
            triangles.add(tuple(sorted((a, down, diag))))
    return SimplicialComplex(r * c, [[], sorted(edges), sorted(triangles)])


def fixture_triangle() -> SimplicialComplex:
    """A single filled triangle."""
    return SimplicialComplex(3, [[], [(0, 1), (0, 2), (1, 2)], [(0, 1, 2)]])


def fixture_cone(n: int) -> SimplicialComplex:
    """Cone with apex n over the n-cycle 0..n-1."""
    if n < 4:
        raise ShapeMismatchError(f"cone base must be a cycle of length >= 4, got {n}")
    g = nx.cycle_graph(n)
    g.add_edges_from((v, n) for v in range(n))
    return clique_complex(g, max_dim=2)
