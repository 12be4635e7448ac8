"""
Unit tests for classical component codes and their decoders.
"""

import pytest

from ramcode.core.exceptions import (
    DecoderRadiusError,
    InfeasibleDegreesError,
    RankDeficiencyError,
    ShapeMismatchError,
)
from ramcode.codes.classical import (
    BipartiteCode,
    CodeKind,
    bitflip_decode,
    check_radius,
    code_distance,
    decode_word,
    estimate_decoder_radius,
    majority_decode,
    minimum_weight_codeword,
    path_code,
    random_regular_ldpc,
    select_a_prime,
)
from ramcode.linalg.gf2 import BinaryMatrix, BitVector
from ramcode.models.reports import Provenance


class TestBipartiteCode:
    """Test code construction."""

    def test_path_code(self):
        code = path_code(4)
        assert code.h.shape == (3, 4)
        assert code.kind == CodeKind.PATH
        assert code.k == 1
        assert code.decoder_radius == 1
        assert code.h.row_support(1) == (1, 2)

    def test_path_code_too_short(self):
        with pytest.raises(ShapeMismatchError):
            path_code(1)

    def test_rank_deficient(self):
        with pytest.raises(RankDeficiencyError):
            BipartiteCode(BinaryMatrix.from_dense([[1, 1], [1, 1]]))

    def test_file_model_round_trip(self, path3):
        assert BipartiteCode.from_file_model(path3.to_file_model()) == path3

    def test_with_radius(self, hamming):
        assert hamming.with_radius(1).decoder_radius == 1
        assert hamming.decoder_radius == 0

    def test_radius_above_half_distance(self, hamming, path3):
        with pytest.raises(DecoderRadiusError):
            hamming.with_radius(2)
        with pytest.raises(DecoderRadiusError):
            path3.with_radius(2)
        with pytest.raises(DecoderRadiusError):
            BipartiteCode(hamming.h, decoder_radius=-1)

    def test_radius_checked_on_load(self, hamming):
        model = hamming.to_file_model().model_copy(update={"decoder_radius": 3})
        with pytest.raises(DecoderRadiusError):
            BipartiteCode.from_file_model(model)
        model = hamming.to_file_model().model_copy(update={"decoder_radius": 1})
        assert BipartiteCode.from_file_model(model).decoder_radius == 1

    def test_check_radius_needs_measured_distance(self, hamming):
        claimed = BipartiteCode(hamming.h, decoder_radius=3)
        check_radius(claimed, code_distance(BipartiteCode(BinaryMatrix.identity(3))))
        with pytest.raises(DecoderRadiusError):
            check_radius(claimed, code_distance(hamming))

    def test_select_a_prime(self, path3, hamming):
        assert select_a_prime(path3) == ([0, 1], [2])
        a_prime, a_second = select_a_prime(hamming)
        assert len(a_prime) == 3
        assert sorted(a_prime + a_second) == list(range(7))


class TestRandomLdpc:
    """Test the socket-permutation LDPC builder."""

    def test_deterministic(self):
        a = random_regular_ldpc(24, 3, 6, seed=5)
        b = random_regular_ldpc(24, 3, 6, seed=5)
        assert a.h == b.h
        assert a.kind == CodeKind.LDPC

    def test_degrees_bounded(self):
        code = random_regular_ldpc(24, 3, 6, seed=1)
        assert code.n_bits == 24
        assert code.n_checks <= 12
        assert code.h.col_weights().max() <= 3
        assert code.h.row_weights().max() <= 6

    def test_infeasible(self):
        with pytest.raises(InfeasibleDegreesError):
            random_regular_ldpc(10, 3, 4, seed=0)
        with pytest.raises(InfeasibleDegreesError):
            random_regular_ldpc(4, 4, 8, seed=0)


class TestDecoders:
    """Test bit-flip and majority decoding."""

    def test_hamming_single_errors(self, hamming):
        for i in range(7):
            error = BitVector.from_support(7, [i])
            assert hamming.decode(hamming.syndrome(error)) == error

    def test_bitflip_stall(self):
        code = BipartiteCode(BinaryMatrix.from_dense([[1, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 1]]))
        assert bitflip_decode(code, BitVector.from_string("100")) is None

    def test_bitflip_syndrome_length(self, hamming):
        with pytest.raises(ShapeMismatchError):
            bitflip_decode(hamming, BitVector.zeros(4))

    def test_majority_within_radius(self):
        code = path_code(5)
        for support in ([0], [4], [1, 3], [0, 4]):
            error = BitVector.from_support(5, support)
            assert majority_decode(code, code.syndrome(error)) == error

    def test_majority_returns_lighter_preimage(self):
        code = path_code(5)
        error = BitVector.from_support(5, [0, 1, 2])
        assert majority_decode(code, code.syndrome(error)) == BitVector.from_support(5, [3, 4])

    def test_majority_needs_path_shape(self, hamming):
        with pytest.raises(ShapeMismatchError):
            majority_decode(hamming, BitVector.zeros(3))

    def test_decode_word(self, path3):
        noisy = BitVector.from_string("101")
        error = decode_word(path3, noisy)
        assert error == BitVector.from_string("010")
        assert (path3.h @ (noisy + error)).is_zero()


class TestDistance:
    """Test distance oracles and radius estimates."""

    def test_hamming_distance(self, hamming):
        report = code_distance(hamming)
        assert report.value == 3
        assert report.provenance == Provenance.MEASURED
        assert len(report.witness) == 3

    def test_path_distance(self):
        assert code_distance(path_code(4)).value == 4
        assert minimum_weight_codeword(path_code(3)) == BitVector.from_string("111")

    def test_information_set_distance(self, hamming):
        report = code_distance(hamming, budget=8)
        assert report.value == 3
        assert report.mode == "information_set"

    def test_no_codewords(self):
        report = code_distance(BipartiteCode(BinaryMatrix.identity(3)))
        assert report.provenance == Provenance.UNDEFINED
        assert minimum_weight_codeword(BipartiteCode(BinaryMatrix.identity(3))) is None

    def test_decoder_radius(self):
        code = path_code(5)
        assert estimate_decoder_radius(code, trials=20, seed=1) == 2
        assert estimate_decoder_radius(code, trials=20, seed=1, distance=5) == 2
