"""
Unit tests for T-join, local coboundary and product-code decoders.
"""

import itertools

import networkx as nx
import numpy as np
import pytest

from ramcode.core.exceptions import (
    InconsistentSyndromeError,
    ParityError,
    ShapeMismatchError,
    UnknownVertexError,
)
from ramcode.codes.classical import BipartiteCode, path_code
from ramcode.codes.product import build_product
from ramcode.complexes.chain import ChainComplex
from ramcode.decoders.local import (
    LocalDecoder,
    designed_radius,
    is_locally_minimal,
    local_coboundary_decode,
    single_edge_decode,
    triangle_profile,
)
from ramcode.decoders.product_decoders import CycleBasis, x_decode, x_decode_path, z_decode, z_reduce
from ramcode.decoders.tjoin import incidence_graph, tjoin_decode
from ramcode.linalg.gf2 import BinaryMatrix, BitVector, in_span
from ramcode.models.reports import DecodeStatus


def stalled_complex() -> ChainComplex:
    """One edge that bounds no triangle."""
    return ChainComplex((2, 1, 1), (BinaryMatrix.from_dense([[1], [1]]), BinaryMatrix.zeros(1, 1)))


class TestTJoin:
    """Test minimum-weight T-joins on small graphs."""

    def test_matches_brute_force(self, cone):
        bd1 = cone.boundary(1)
        n = bd1.n_cols
        best = {}
        for bits in itertools.product([0, 1], repeat=n):
            e = BitVector(np.array(bits, dtype=np.uint8))
            odd = tuple((bd1 @ e).support)
            best[odd] = min(best.get(odd, n + 1), e.weight)

        graph = incidence_graph(cone)
        for odd, weight in best.items():
            join = tjoin_decode(graph, list(odd))
            assert join.weight == weight
            assert (bd1 @ join).support == odd

    def test_empty_set(self, cone):
        assert tjoin_decode(incidence_graph(cone), []).is_zero()

    def test_odd_parity(self, cone):
        with pytest.raises(ParityError):
            tjoin_decode(incidence_graph(cone), [0])

    def test_unknown_vertex(self, cone):
        with pytest.raises(UnknownVertexError):
            tjoin_decode(incidence_graph(cone), [0, 99])

    def test_non_graph_column(self):
        with pytest.raises(ShapeMismatchError):
            incidence_graph(BinaryMatrix.from_dense([[1], [1], [1]]))


class TestTJoinOracle:
    """Compare T-joins with exhaustive search on random small graphs."""

    @pytest.mark.parametrize("seed", range(100))
    def test_random_graph(self, seed):
        rng = np.random.default_rng(seed)
        n_vertices = int(rng.integers(3, 9))
        n_edges = int(rng.integers(1, min(12, n_vertices * (n_vertices - 1) // 2) + 1))
        edges = sorted(nx.gnm_random_graph(n_vertices, n_edges, seed=seed).edges)
        bd1 = BinaryMatrix.from_entries(n_vertices, len(edges), [(v, j) for j, e in enumerate(edges) for v in e])

        words = ((np.arange(1 << len(edges))[:, None] >> np.arange(len(edges))) & 1).astype(np.int64)
        boundaries = words @ bd1.to_dense().T.astype(np.int64) % 2
        best = {}
        for word, boundary in zip(words, boundaries):
            odd = tuple(np.flatnonzero(boundary).tolist())
            best[odd] = min(best.get(odd, len(edges) + 1), int(word.sum()))

        graph = incidence_graph(bd1)
        for odd, weight in best.items():
            join = tjoin_decode(graph, list(odd))
            assert join.weight == weight
            assert (bd1 @ join).support == odd


class TestLocalDecoder:
    """Test the greedy coboundary decoders."""

    def test_single_edge_errors(self, torus):
        decoder = LocalDecoder(torus)
        for edge in range(0, 27, 4):
            e = BitVector.from_support(27, [edge])
            outcome = decoder.decode(decoder.coboundary(e))
            assert outcome.status == DecodeStatus.SUCCESS
            assert outcome.correction_vector() == e

    def test_syndrome_weight_decreases(self, torus):
        decoder = LocalDecoder(torus)
        rng = np.random.default_rng(9)
        for _ in range(20):
            e = BitVector.from_support(27, rng.choice(27, size=3, replace=False).tolist())
            outcome = decoder.decode(decoder.coboundary(e))
            weights = outcome.syndrome_weights
            assert all(a > b for a, b in zip(weights, weights[1:]))
            assert outcome.iterations == len(weights) - 1
            assert outcome.iterations <= weights[0]

    def test_single_edge_variant(self, torus):
        e = BitVector.from_support(27, [5])
        f = torus.chain.coboundary(1) @ e
        outcome = single_edge_decode(torus, f)
        assert outcome.succeeded
        assert outcome.correction_vector() == e
        assert outcome.syndrome_weights == [2, 0]

    def test_zero_syndrome(self, torus):
        outcome = local_coboundary_decode(torus, BitVector.zeros(18))
        assert outcome.succeeded
        assert outcome.iterations == 0
        assert outcome.correction == []

    def test_degree_limit(self, torus):
        decoder = LocalDecoder(torus, max_degree=4)
        f = decoder.coboundary(BitVector.from_support(27, [0]))
        assert decoder.decode(f).status == DecodeStatus.BUDGET_EXCEEDED

    def test_inconsistent_syndrome(self):
        with pytest.raises(InconsistentSyndromeError):
            LocalDecoder(stalled_complex()).decode(BitVector.from_string("1"))

    def test_stall_without_check(self):
        outcome = LocalDecoder(stalled_complex(), check=False).decode(BitVector.from_string("1"))
        assert outcome.status == DecodeStatus.STALLED

    def test_syndrome_length(self, torus):
        with pytest.raises(ShapeMismatchError):
            LocalDecoder(torus).decode(BitVector.zeros(17))


class TestLocalGeometry:
    """Test local minimality, triangle profiles and the designed radius."""

    def test_locally_minimal(self, torus):
        assert is_locally_minimal(torus, BitVector.from_support(27, [3]))
        assert is_locally_minimal(torus, BitVector.zeros(27))

    def test_not_locally_minimal(self, torus):
        star = np.flatnonzero(torus.boundary(1).to_dense()[0])[:5]
        assert not is_locally_minimal(torus, BitVector.from_support(27, star.tolist()))

    def test_triangle_profile(self, torus):
        edge = 0
        ends = np.flatnonzero(torus.boundary(1).to_dense()[:, edge]).tolist()
        profile = triangle_profile(torus, BitVector.from_support(27, [edge]))
        assert (profile.t1, profile.t2, profile.t3) == (2, 0, 0)
        by_vertex = {p.vertex: p for p in profile.vertices}
        for v in ends:
            assert by_vertex[v].t1_good == 2

    def test_coboundary_weight_bound(self, torus):
        decoder = LocalDecoder(torus)
        per_edge = int(torus.boundary(2).row_weights().max())
        rng = np.random.default_rng(2)
        for _ in range(20):
            e = BitVector(rng.integers(0, 2, 27, dtype=np.uint8))
            assert decoder.coboundary(e).weight <= per_edge * e.weight

    def test_designed_radius(self, torus):
        report = designed_radius(torus)
        assert report.radius == 0
        assert report.size_threshold == pytest.approx(576.0)
        assert report.fraction_of_cosystole == pytest.approx(1 / 144)
        assert designed_radius(torus, gamma=1.0).radius == 9


class TestCycleBasis:
    """Test the boundary/non-boundary split of Z_1."""

    def test_torus_basis(self, torus):
        basis = CycleBasis.from_complex(torus.chain)
        assert basis.n0 == 17
        assert basis.n1 == 2
        assert basis.is_trivial(basis.z0.row(0))
        assert not basis.is_trivial(basis.z1.row(0))

    def test_non_cycle_rejected(self, torus):
        basis = CycleBasis.from_complex(torus.chain)
        column = np.zeros((27, 1), dtype=np.uint8)
        column[0, 0] = 1
        with pytest.raises(InconsistentSyndromeError):
            basis.coordinates(column)


class TestXDecode:
    """Test X decoding on product codes."""

    def test_single_qubit_errors(self, torus_product):
        P = torus_product
        basis = CycleBasis.from_complex(P.X)
        for q in range(P.n):
            error = BitVector.from_support(P.n, [q])
            syndrome = P.sigma_x @ error
            outcome = x_decode(P, syndrome, basis=basis)
            correction = outcome.correction_vector()
            assert outcome.status == DecodeStatus.SUCCESS
            assert P.sigma_x @ correction == syndrome
            assert in_span(P.sigma_z, error + correction)

    def test_ea_errors_corrected_exactly(self, torus_product):
        P = torus_product
        error = BitVector.from_support(P.n, [P.layout.qubit_ea(4, 1)])
        assert x_decode(P, P.sigma_x @ error).correction_vector() == error

    def test_path_variant(self, torus_path3):
        P = torus_path3
        for q in range(P.n):
            error = BitVector.from_support(P.n, [q])
            syndrome = P.sigma_x @ error
            outcome = x_decode_path(P, syndrome)
            assert outcome.succeeded
            correction = outcome.correction_vector()
            assert P.sigma_x @ correction == syndrome
            assert in_span(P.sigma_z, error + correction)

    def test_path_variant_needs_path_code(self, triangle):
        P = build_product(triangle, BipartiteCode(path_code(2).h))
        with pytest.raises(ShapeMismatchError):
            x_decode_path(P, BitVector.zeros(P.layout.n_x_checks))

    def test_odd_va_syndrome(self, torus_path3):
        P = torus_path3
        syndrome = BitVector.from_support(P.layout.n_x_checks, [0])
        with pytest.raises(InconsistentSyndromeError):
            x_decode_path(P, syndrome)


class TestZDecode:
    """Test Z reduction and decoding on product codes."""

    def test_z_reduce(self, torus_product):
        P = torus_product
        rng = np.random.default_rng(11)
        for _ in range(5):
            error = BitVector(rng.integers(0, 2, P.n, dtype=np.uint8))
            reduced = z_reduce(P, error)
            ea, _ = P.layout.split_qubits(reduced)
            assert not ea[:, 0].any()
            assert in_span(P.sigma_x, error + reduced)
            assert P.sigma_z @ reduced == P.sigma_z @ error

    def test_single_qubit_errors(self, torus_product):
        P = torus_product
        for q in range(P.n):
            error = BitVector.from_support(P.n, [q])
            syndrome = P.sigma_z @ error
            outcome = z_decode(P, syndrome)
            correction = outcome.correction_vector()
            assert outcome.status == DecodeStatus.SUCCESS
            assert P.sigma_z @ correction == syndrome
            assert in_span(P.sigma_x, error + correction)

    def test_tb_errors_corrected_exactly(self, torus_product):
        P = torus_product
        error = BitVector.from_support(P.n, [P.layout.qubit_tb(7, 0)])
        assert z_decode(P, P.sigma_z @ error).correction_vector() == error

    def test_syndrome_length(self, torus_product):
        with pytest.raises(ShapeMismatchError):
            z_decode(torus_product, BitVector.zeros(35))
