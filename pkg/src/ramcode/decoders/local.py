"""
Local coboundary decoding on 2-complexes.

Given a triangle syndrome f = δ_1(e), repeatedly pick a vertex v and a
subset y of the edges at v with |f + δ_1(y)| < |f|, add y to the correction
and continue until f vanishes or no local move improves. The single-edge
variant only tries |y| = 1.

Works on any 2-dimensional chain complex: vertices are the rows of ∂_1,
triangles the columns of ∂_2.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..core.config import settings
from ..core.exceptions import InconsistentSyndromeError, InvalidGradeError, ShapeMismatchError
from ..core.logging import get_module_logger
from ..complexes.chain import ChainComplex
from ..complexes.simplicial import SimplicialComplex
from ..linalg.gf2 import BitVector, iter_low_weight, span_certificate
from ..models.reports import (
    DecodeOutcome,
    DecodeStatus,
    LocalRadiusReport,
    TriangleProfile,
    VertexProfile,
)

logger = get_module_logger("decoders.local")

GAMMA = 1.0 / 192

ComplexLike = Union[ChainComplex, SimplicialComplex]


@lru_cache(maxsize=32)
def _half_subsets(degree: int) -> Tuple[np.ndarray, Tuple[Tuple[int, ...], ...]]:
    """All nonempty subsets of range(degree) with at most degree // 2 elements."""
    supports = tuple(iter_low_weight(degree, degree // 2, min_weight=1))
    dense = np.zeros((len(supports), degree), dtype=np.int32)
    for i, s in enumerate(supports):
        dense[i, list(s)] = 1
    return dense, supports


@dataclass(frozen=True)
class LocalMove:
    decrease: int
    vertex: int
    edges: Tuple[int, ...]

    def key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (-self.decrease, self.vertex, self.edges)


class LocalDecoder:
    """Incidence caches of a 2-complex plus the two greedy decoders."""

    def __init__(self, X: ComplexLike, max_degree: Optional[int] = None, check: bool = True):
        chain = X.chain if isinstance(X, SimplicialComplex) else X
        if chain.dimension != 2:
            raise InvalidGradeError(f"local decoding needs a 2-complex, got dimension {chain.dimension}")
        self.chain = chain
        self.max_degree = max_degree or settings.decoder.max_local_degree
        self.check = check
        self.n_vertices, self.n_edges, self.n_triangles = chain.face_counts
        d1, d2 = chain.boundary(1), chain.boundary(2)
        self._vertex_edges = d1.csr
        self._edge_vertices = d1.csr.tocsc()
        self._edge_triangles = d2.csr
        self._triangle_edges = d2.csr.tocsc()
        self._d2 = d2
        self._local: Dict[int, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    # -- incidence ------------------------------------------------------------

    def edges_at(self, v: int) -> np.ndarray:
        m = self._vertex_edges
        return m.indices[m.indptr[v] : m.indptr[v + 1]]

    def vertices_of(self, e: int) -> np.ndarray:
        m = self._edge_vertices
        return m.indices[m.indptr[e] : m.indptr[e + 1]]

    def triangles_at(self, e: int) -> np.ndarray:
        m = self._edge_triangles
        return m.indices[m.indptr[e] : m.indptr[e + 1]]

    def edges_of(self, t: int) -> np.ndarray:
        m = self._triangle_edges
        return m.indices[m.indptr[t] : m.indptr[t + 1]]

    def coboundary(self, e: BitVector) -> BitVector:
        """δ_1 e."""
        if e.length != self.n_edges:
            raise ShapeMismatchError(f"1-cochain length {e.length} != {self.n_edges} edges")
        return self._d2.T @ e

    def _neighbourhood(self, v: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(edges at v, triangles meeting them, edge x triangle incidence)."""
        if v not in self._local:
            edges = np.sort(self.edges_at(v))
            triangles = np.unique(np.concatenate([self.triangles_at(e) for e in edges])) if edges.size else np.zeros(0, dtype=np.int64)
            position = {int(t): j for j, t in enumerate(triangles)}
            incidence = np.zeros((edges.size, triangles.size), dtype=np.int32)
            for i, e in enumerate(edges):
                incidence[i, [position[int(t)] for t in self.triangles_at(e)]] = 1
            self._local[v] = (edges, triangles, incidence)
        return self._local[v]

    def _candidate_edges(self, f: np.ndarray) -> np.ndarray:
        tris = np.flatnonzero(f)
        if not tris.size:
            return np.zeros(0, dtype=np.int64)
        return np.unique(np.concatenate([self.edges_of(t) for t in tris]))

    # -- moves ----------------------------------------------------------------

    def best_vertex_move(self, f: np.ndarray) -> Optional[LocalMove]:
        """Largest weight decrease over (v, y), ties to lowest v then least y."""
        edges = self._candidate_edges(f)
        if not edges.size:
            return None
        vertices = np.unique(np.concatenate([self.vertices_of(e) for e in edges]))
        best: Optional[LocalMove] = None
        for v in vertices.tolist():
            local_edges, triangles, incidence = self._neighbourhood(v)
            degree = local_edges.size
            if degree > self.max_degree:
                raise _DegreeLimit(v, degree)
            subsets, supports = _half_subsets(degree)
            if not supports:
                continue
            f_local = f[triangles].astype(np.int32)
            flipped = (subsets @ incidence + f_local) % 2
            decrease = int(f_local.sum()) - flipped.sum(axis=1)
            top = int(decrease.max())
            if top <= 0 or (best is not None and top < best.decrease):
                continue
            choice = min(supports[i] for i in np.flatnonzero(decrease == top))
            move = LocalMove(top, v, tuple(int(local_edges[i]) for i in choice))
            if best is None or move.key() < best.key():
                best = move
        return best

    def best_edge_move(self, f: np.ndarray) -> Optional[LocalMove]:
        """Single edge with the largest weight decrease, ties to the lowest index."""
        best: Optional[LocalMove] = None
        for e in self._candidate_edges(f).tolist():
            triangles = self.triangles_at(e)
            decrease = 2 * int(f[triangles].sum()) - triangles.size
            if decrease <= 0:
                continue
            ends = self.vertices_of(e)
            move = LocalMove(decrease, int(ends.min()) if ends.size else -1, (e,))
            if best is None or move.key() < best.key():
                best = move
        return best

    # -- decoding -------------------------------------------------------------

    def _check_input(self, f: BitVector) -> None:
        if f.length != self.n_triangles:
            raise ShapeMismatchError(f"syndrome length {f.length} != {self.n_triangles} triangles")
        if not self.check or f.is_zero():
            return
        certificate = span_certificate(self._d2, f)
        if not certificate.certified:
            if certificate.exact:
                raise InconsistentSyndromeError("syndrome is not the coboundary of any 1-cochain")
            logger.debug("coboundary membership not certified locally; decoding anyway")

    def decode(self, f: BitVector, single_edge: bool = False) -> DecodeOutcome:
        self._check_input(f)
        syndrome = f.bits.copy()
        correction = np.zeros(self.n_edges, dtype=np.uint8)
        weights = [int(syndrome.sum())]
        moves: List[List[int]] = []
        name = "single_edge" if single_edge else "local"
        status = DecodeStatus.SUCCESS
        while syndrome.any():
            try:
                move = self.best_edge_move(syndrome) if single_edge else self.best_vertex_move(syndrome)
            except _DegreeLimit as exc:
                logger.warning(f"vertex {exc.vertex} has degree {exc.degree} > {self.max_degree}")
                status = DecodeStatus.BUDGET_EXCEEDED
                break
            if move is None:
                logger.debug(f"{name} decoder stalled at syndrome weight {weights[-1]}")
                status = DecodeStatus.STALLED
                break
            for e in move.edges:
                correction[e] ^= 1
                syndrome[self.triangles_at(e)] ^= 1
            weights.append(int(syndrome.sum()))
            moves.append([move.vertex, *move.edges])
        return DecodeOutcome.from_vector(
            BitVector(correction),
            status,
            iterations=len(moves),
            syndrome_weights=weights,
            diagnostics={"decoder": name, "moves": moves},
        )


class _DegreeLimit(Exception):
    def __init__(self, vertex: int, degree: int):
        super().__init__(vertex, degree)
        self.vertex = vertex
        self.degree = degree


def local_coboundary_decode(X: ComplexLike, f: BitVector, check: bool = True) -> DecodeOutcome:
    """Greedy vertex-neighbourhood decoding of a triangle syndrome."""
    return LocalDecoder(X, check=check).decode(f)


def single_edge_decode(X: ComplexLike, f: BitVector, check: bool = True) -> DecodeOutcome:
    """Greedy decoding that flips one edge per step."""
    return LocalDecoder(X, check=check).decode(f, single_edge=True)


def is_locally_minimal(X: ComplexLike, e: BitVector) -> bool:
    """|e + δ_0(v)| >= |e| for every vertex v."""
    chain = X.chain if isinstance(X, SimplicialComplex) else X
    bd1 = chain.boundary(1)
    if e.length != bd1.n_cols:
        raise ShapeMismatchError(f"1-cochain length {e.length} != {bd1.n_cols} edges")
    at_vertex = bd1.csr.astype(np.int64) @ e.bits.astype(np.int64)
    return bool(np.all(2 * at_vertex <= bd1.row_weights()))


def triangle_profile(X: ComplexLike, e: BitVector) -> TriangleProfile:
    """Counts of triangles with one, two and three edges in e, and their split per vertex."""
    decoder = LocalDecoder(X, check=False)
    if e.length != decoder.n_edges:
        raise ShapeMismatchError(f"1-cochain length {e.length} != {decoder.n_edges} edges")
    bits = e.bits
    counts = decoder._d2.csr.T.astype(np.int64) @ bits.astype(np.int64)
    per_vertex: Dict[int, List[int]] = {}
    for t in np.flatnonzero((counts == 1) | (counts == 2)).tolist():
        edges = decoder.edges_of(t)
        corners = np.unique(np.concatenate([decoder.vertices_of(x) for x in edges]))
        for v in corners.tolist():
            touching = sum(int(bits[x]) for x in edges if v in decoder.vertices_of(x))
            slot = per_vertex.setdefault(v, [0, 0, 0, 0])
            if counts[t] == 1:
                slot[0 if touching else 1] += 1
            else:
                slot[2 if touching == 1 else 3] += 1
    return TriangleProfile(
        t1=int(np.sum(counts == 1)),
        t2=int(np.sum(counts == 2)),
        t3=int(np.sum(counts == 3)),
        vertices=[
            VertexProfile(vertex=v, t1_good=s[0], t1_neutral=s[1], t2_bad=s[2], t2_neutral=s[3])
            for v, s in sorted(per_vertex.items())
        ],
    )


def designed_radius(X: ComplexLike, gamma: float = GAMMA) -> LocalRadiusReport:
    """floor(γ|E|/3) once |E| >= (q+1)Q/(4γ), else 0.

    Q is the largest vertex degree and q+1 the largest number of triangles
    at an edge.
    """
    chain = X.chain if isinstance(X, SimplicialComplex) else X
    n_edges = chain.face_counts[1]
    vertex_weights = chain.boundary(1).row_weights()
    edge_weights = chain.boundary(2).row_weights()
    q_vertex = int(vertex_weights.max()) if vertex_weights.size else 0
    q_edge = int(edge_weights.max()) if edge_weights.size else 0
    threshold = q_edge * q_vertex / (4 * gamma)
    radius = int(gamma * n_edges / 3) if n_edges >= threshold else 0
    return LocalRadiusReport(
        gamma=gamma,
        fraction_of_cosystole=4 * gamma / 3,
        n_edges=n_edges,
        vertex_degree=q_vertex,
        edge_triangle_degree=q_edge,
        size_threshold=threshold,
        radius=radius,
    )
