"""
Unit tests for the product of a 2-complex with a classical code.
"""

import networkx as nx
import numpy as np
import pytest

from ramcode.core.exceptions import InvalidGradeError, ShapeMismatchError
from ramcode.codes.product import (
    ProductCode,
    ProductLayout,
    build_product,
    is_nontrivial_cycle,
    product_params,
    tensor_witness,
    weight_audit,
)
from ramcode.complexes.chain import cosystole, systole
from ramcode.codes.classical import random_regular_ldpc
from ramcode.complexes.simplicial import clique_complex, skeleton
from ramcode.linalg.gf2 import BitVector, in_span, sparse_rank
from ramcode.models.reports import Provenance


class TestLayout:
    """Test index bookkeeping."""

    def test_sizes(self):
        layout = ProductLayout(9, 27, 18, 2, 1)
        assert layout.n_qubits == 72
        assert layout.n_x_checks == 45
        assert layout.n_z_checks == 36

    def test_locate_qubit(self):
        layout = ProductLayout(9, 27, 18, 2, 1)
        assert layout.qubit_ea(5, 1) == 11
        assert layout.locate_qubit(11) == ("EA", 5, 1)
        assert layout.qubit_tb(3, 0) == 57
        assert layout.locate_qubit(57) == ("TB", 3, 0)
        with pytest.raises(ShapeMismatchError):
            layout.locate_qubit(72)

    def test_split_and_join(self):
        layout = ProductLayout(3, 3, 1, 2, 1)
        v = BitVector.from_support(layout.n_qubits, [1, 4, 6])
        ea, tb = layout.split_qubits(v)
        assert ea.shape == (3, 2)
        assert tb.shape == (1, 1)
        assert ea[0, 1] == 1 and ea[2, 0] == 1 and tb[0, 0] == 1
        assert layout.join_qubits(ea, tb) == v

    def test_split_length_checked(self):
        with pytest.raises(ShapeMismatchError):
            ProductLayout(3, 3, 1, 2, 1).split_qubits(BitVector.zeros(5))


class TestBuildProduct:
    """Test the assembled boundary maps."""

    def test_shapes(self, torus_product):
        P = torus_product
        assert P.n == 72
        assert P.sigma_x.shape == (45, 72)
        assert P.sigma_z.shape == (36, 72)

    def test_css_orthogonality(self, torus_product, triangle_product):
        for P in (torus_product, triangle_product):
            assert (P.sigma_x @ P.sigma_z.T).is_zero()
            assert P.css.is_orthogonal()

    def test_needs_two_complex(self, torus, path2):
        with pytest.raises(InvalidGradeError):
            build_product(skeleton(torus, 1), path2)

    def test_accepts_chain_complex(self, torus, path2, torus_product):
        P = build_product(torus.chain, path2)
        assert P.d1 == torus_product.d1
        assert P.simplicial is None

    def test_file_model_round_trip(self, torus_product):
        P = ProductCode.from_file_model(torus_product.to_file_model())
        assert P.d1 == torus_product.d1
        assert P.d2 == torus_product.d2
        assert P.simplicial == torus_product.simplicial


class TestParams:
    """Test [[N, K, D_X, D_Z]] computation."""

    def test_torus_product(self, torus_product):
        params = product_params(torus_product)
        assert params.n == 72
        assert params.k == 2
        assert params.d_x.value == 6
        assert params.d_x.provenance == Provenance.MEASURED
        assert params.predicted_d_x.value == 6
        assert params.predicted_d_x.provenance == Provenance.PREDICTED
        assert params.d_z.provenance == Provenance.MEASURED
        assert params.predicted_d_z.value == cosystole(torus_product.X, 1).value

    def test_measured_d_z_witness(self, torus_product):
        params = product_params(torus_product)
        w = BitVector.from_support(72, params.d_z.witness)
        assert (torus_product.sigma_z @ w).is_zero()
        assert not in_span(torus_product.sigma_x, w)

    def test_zero_rate(self, triangle_product):
        params = product_params(triangle_product)
        assert params.n == 7
        assert params.k == 0
        assert params.d_x.provenance == Provenance.UNDEFINED
        assert params.d_z.provenance == Provenance.UNDEFINED
        assert params.d_x.note == "K = 0"

    def test_budget_refusal_is_reported(self, torus_product):
        params = product_params(torus_product, budget=10)
        assert params.k == 2
        assert params.d_x.provenance == Provenance.UNDEFINED
        assert params.d_x.note.startswith("budget exceeded")


class TestDimension:
    """Test K = dim H_1(X) * k(Y) on random pairs."""

    @pytest.mark.parametrize("seed", range(20))
    def test_random_pair(self, seed):
        rng = np.random.default_rng(seed)
        n_vertices = int(rng.integers(4, 8))
        g = nx.gnm_random_graph(n_vertices, int(rng.integers(n_vertices, 2 * n_vertices)), seed=seed)
        g.add_edges_from([(0, 1), (1, 2), (0, 2)])
        X = clique_complex(g, max_dim=2)
        Y = random_regular_ldpc(int(rng.choice([6, 9, 12])), 2, 3, seed=seed)

        bd1, bd2 = X.chain.boundary(1), X.chain.boundary(2)
        h1 = bd1.n_cols - sparse_rank(bd1) - sparse_rank(bd2)
        k = Y.n_bits - sparse_rank(Y.h)
        assert build_product(X, Y).css.k == h1 * k


class TestWeightsAndWitness:
    """Test the weight audit and tensor witnesses."""

    def test_weight_audit(self, torus_product):
        report = weight_audit(torus_product)
        assert report.complex_w_x_row == 6
        assert report.complex_w_z_row == 3
        assert report.complex_w_z_col == 2
        assert report.product_w_x == 6
        assert report.product_w_z == 4
        assert report.bound_w_x == 6
        assert report.bound_w_z == 4
        assert report.passed is True

    def test_tensor_witness(self, torus, torus_product):
        cycle = systole(torus.chain, 1)
        w = tensor_witness(
            torus_product, BitVector.from_support(27, cycle.witness), BitVector.from_string("11")
        )
        assert w.weight == 6
        assert is_nontrivial_cycle(torus_product, w)

    def test_stabilizer_is_trivial(self, torus_product):
        assert not is_nontrivial_cycle(torus_product, torus_product.sigma_z.row(0))

    def test_tensor_witness_shapes(self, torus_product):
        with pytest.raises(ShapeMismatchError):
            tensor_witness(torus_product, BitVector.zeros(26), BitVector.zeros(2))

    def test_witness_lives_in_ea_block(self, torus_product):
        w = tensor_witness(torus_product, BitVector.from_support(27, [0]), BitVector.from_string("11"))
        ea, tb = torus_product.layout.split_qubits(w)
        assert np.array_equal(ea[0], [1, 1])
        assert not tb.any()
