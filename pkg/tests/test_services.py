"""
Tests for the service layer: storage, building, parameters, decoding and simulation.
"""

import json

import pytest

from ramcode.core.config import settings
from ramcode.core.exceptions import FileFormatError, ShapeMismatchError
from ramcode.codes.classical import (
    CodeKind,
    code_distance,
    estimate_decoder_radius,
    path_code,
    random_regular_ldpc,
)
from ramcode.codes.product import ProductCode, build_product
from ramcode.complexes.chain import ChainComplex, cosystole
from ramcode.complexes.simplicial import SimplicialComplex
from ramcode.linalg.gf2 import BinaryMatrix, BitVector
from ramcode.models.reports import DecodeOutcome, DecodeStatus, Provenance, TrialClass
from ramcode.services import (
    BuildService,
    DecodeService,
    DecodeSession,
    ErrorType,
    ParamsService,
    SimulationService,
    classify,
    parse_budget,
    parse_poly,
    trial_error,
)


class TestStorageService:
    """Test file round trips and format errors."""

    def test_complex_round_trip(self, storage, temp_dir, torus):
        path = storage.save_complex(temp_dir / "torus.json", torus)
        assert storage.load_complex(path) == torus
        assert not list(temp_dir.glob("*.tmp"))

    def test_chain_complex_round_trip(self, storage, temp_dir, torus):
        path = storage.save_complex(temp_dir / "chain.json", torus.chain)
        loaded = storage.load_complex(path)
        assert isinstance(loaded, ChainComplex)
        assert loaded == torus.chain

    def test_output_is_canonical(self, storage, temp_dir, torus):
        first = storage.save_complex(temp_dir / "a.json", torus).read_text()
        second = storage.save_complex(temp_dir / "b.json", torus).read_text()
        assert first == second
        assert first.endswith("\n")

    def test_code_formats(self, storage, temp_dir, hamming):
        code = path_code(4)
        assert storage.load_code(storage.save_code(temp_dir / "path.json", code)) == code
        loaded = storage.load_code(storage.save_code(temp_dir / "path.txt", code))
        assert loaded.kind == CodeKind.PATH
        custom = storage.load_code(storage.save_code(temp_dir / "hamming.txt", hamming))
        assert custom.kind == CodeKind.CUSTOM
        assert custom.h == hamming.h

    def test_product_round_trip(self, storage, temp_dir, torus_product):
        path = storage.save_product(temp_dir / "product.json", torus_product)
        loaded = storage.load_any(path)
        assert isinstance(loaded, ProductCode)
        assert loaded.d1 == torus_product.d1

    def test_vector_round_trip(self, storage, temp_dir):
        v = BitVector.from_support(10, [0, 7])
        assert storage.read_vector(storage.write_vector(temp_dir / "s.txt", v)) == v

    def test_matrix_round_trip(self, storage, temp_dir, hamming):
        assert storage.read_matrix(storage.write_matrix(temp_dir / "h.txt", hamming.h)) == hamming.h

    def test_missing_file(self, storage, temp_dir):
        with pytest.raises(FileFormatError):
            storage.load_any(temp_dir / "missing.json")

    def test_invalid_json(self, storage, temp_dir):
        (temp_dir / "bad.json").write_text("{not json")
        with pytest.raises(FileFormatError):
            storage.read_json(temp_dir / "bad.json")
        (temp_dir / "list.json").write_text("[1, 2]")
        with pytest.raises(FileFormatError):
            storage.read_json(temp_dir / "list.json")

    def test_schema_error(self, storage, temp_dir):
        (temp_dir / "odd.json").write_text(json.dumps({"vertices": 3, "faces": {"1": [[0]]}, "extra": 1}))
        with pytest.raises(FileFormatError):
            storage.load_complex(temp_dir / "odd.json")

    def test_unknown_object(self, storage, temp_dir):
        (temp_dir / "other.json").write_text(json.dumps({"hello": "world"}))
        with pytest.raises(FileFormatError):
            storage.load_any(temp_dir / "other.json")

    def test_malformed_vector(self, storage, temp_dir):
        (temp_dir / "v.txt").write_text("3\n5\n")
        with pytest.raises(FileFormatError):
            storage.read_vector(temp_dir / "v.txt")


class TestBuildService:
    """Test the builders behind the CLI."""

    def test_parse_poly(self):
        assert parse_poly("1,1,1") == (1, 1, 1)
        assert parse_poly(" 1, 0 ,1 ") == (1, 0, 1)
        with pytest.raises(ShapeMismatchError):
            parse_poly("1,x")
        with pytest.raises(ShapeMismatchError):
            parse_poly("")

    def test_torus(self):
        assert BuildService().torus(3, 4).face_counts == (12, 36, 24)

    def test_codes(self):
        service = BuildService()
        assert service.code("path", m=3) == path_code(3)
        ldpc = service.code("ldpc", n=12, dv=3, dc=6, seed=7)
        assert ldpc.kind == CodeKind.LDPC
        assert ldpc == service.code("ldpc", n=12, dv=3, dc=6, seed=7)

    def test_ldpc_carries_estimated_radius(self):
        code = BuildService().code("ldpc", n=24, dv=3, dc=6, seed=4, radius_trials=50)
        bare = random_regular_ldpc(24, 3, 6, seed=4)
        assert code.h == bare.h
        distance = code_distance(bare)
        assert code.decoder_radius <= (distance.value - 1) // 2
        assert code.decoder_radius == estimate_decoder_radius(bare, trials=50, seed=4, distance=distance.value)

    def test_code_arguments_checked(self):
        with pytest.raises(ShapeMismatchError):
            BuildService().code("path")
        with pytest.raises(ShapeMismatchError):
            BuildService().code("ldpc", n=12)
        with pytest.raises(ShapeMismatchError):
            BuildService().code("polar", m=3)

    def test_product(self, torus, path2):
        assert BuildService().product(torus, path2).n == 72


class TestParamsService:
    """Test parameter reports and inspection."""

    def test_parse_budget(self):
        assert parse_budget("2^22") == 2**22
        assert parse_budget("2**10") == 1024
        assert parse_budget(500) == 500
        assert parse_budget(" 77 ") == 77
        with pytest.raises(ShapeMismatchError):
            parse_budget("lots")
        with pytest.raises(ShapeMismatchError):
            parse_budget("0")

    def test_params_report(self, torus_product):
        report = ParamsService().params(torus_product, inputs={"code": "product.json"})
        assert (report.n, report.k) == (72, 2)
        assert report.d_x.value == 6
        assert report.weights.passed is True
        assert report.witness_check is True
        assert report.config.command == "params"
        assert report.config.inputs == {"code": "product.json"}

    def test_zero_rate_skips_witness(self, triangle_product):
        report = ParamsService().params(triangle_product)
        assert report.k == 0
        assert report.witness_check is None
        assert report.d_x.provenance == Provenance.UNDEFINED

    def test_witness_check(self, torus_product):
        assert ParamsService().witness_check(torus_product, budget=2**22) is True

    def test_inspect_simplicial(self, torus):
        report = ParamsService().inspect(torus, homology=True)
        assert report.kind == "simplicial"
        assert report.face_counts == [9, 27, 18]
        assert report.validation.ok
        assert report.homology == {"0": 1, "1": 2, "2": 1}
        assert report.cohomology == {"0": 1, "1": 2, "2": 1}

    def test_inspect_product(self, torus_product):
        report = ParamsService().inspect(torus_product)
        assert report.kind == "product"
        assert report.face_counts == [45, 72, 36]
        assert report.details["n"] == 72
        assert report.details["code_kind"] == "path"
        assert report.homology is None

    def test_inspect_chain(self, torus):
        assert ParamsService().inspect(torus.chain).kind == "chain"


class TestDecodeService:
    """Test decoder dispatch."""

    def test_session_maps(self, torus_product, torus):
        x = DecodeSession(torus_product, "x")
        assert x.syndrome_map == torus_product.sigma_x
        assert x.stabilizers == torus_product.sigma_z
        z = DecodeSession(torus_product, ErrorType.Z)
        assert z.syndrome_map == torus_product.sigma_z
        local = DecodeSession(torus, "local")
        assert local.syndrome_map.shape == (18, 27)
        assert local.n_errors == 27

    def test_type_object_mismatch(self, torus_product, torus):
        with pytest.raises(ShapeMismatchError):
            DecodeSession(torus, "x")
        with pytest.raises(ShapeMismatchError):
            DecodeSession(torus_product, "local")

    def test_syndrome_length(self, torus_product):
        with pytest.raises(ShapeMismatchError):
            DecodeSession(torus_product, "z").decode(BitVector.zeros(5))

    def test_decode(self, torus_product):
        error = BitVector.from_support(72, [3])
        outcome = DecodeService().decode(torus_product, "x", torus_product.sigma_x @ error)
        assert outcome.status == DecodeStatus.SUCCESS
        assert outcome.correction == [3]

    def test_classify(self, torus):
        session = DecodeSession(torus, "local")
        error = BitVector.from_support(27, [0])
        syndrome = session.syndrome(error)
        assert classify(session, error, syndrome, session.decode(syndrome)) == TrialClass.SUCCESS

    def test_equivalence_is_exact(self, torus, monkeypatch):
        monkeypatch.setattr(settings.linalg, "certificate_radius", 0)
        session = DecodeSession(torus, "local")
        stars = session.stabilizers
        assert session.is_equivalent(stars.row(0) + stars.row(1))
        assert not session.is_equivalent(BitVector.from_support(27, [0]))
        assert "stabilizer_basis" in session.__dict__

    def test_equivalence_without_dense_basis(self, torus, monkeypatch):
        monkeypatch.setattr(settings.linalg, "certificate_radius", 0)
        monkeypatch.setattr(settings.linalg, "dense_limit_mb", 0)
        session = DecodeSession(torus, "local")
        stars = session.stabilizers
        assert session.stabilizer_basis is None
        assert session.is_equivalent(stars.row(2) + stars.row(5))
        assert not session.is_equivalent(BitVector.from_support(27, [4]))

    def test_wrong_correction_is_a_failure(self, torus):
        session = DecodeSession(torus, "local")
        error = BitVector.from_support(27, [0])
        syndrome = session.syndrome(error)
        cocycle = BitVector.from_support(27, cosystole(torus.chain, 1).witness)
        outcome = DecodeOutcome.from_vector(error + cocycle, DecodeStatus.SUCCESS)
        assert session.syndrome(outcome.correction_vector()) == syndrome
        assert classify(session, error, syndrome, outcome) == TrialClass.EQUIVALENCE_FAILURE


class TestSimulationService:
    """Test seeded Monte Carlo runs."""

    def test_trial_error(self):
        a = trial_error(30, 3, seed=1, trial=4)
        assert a.weight == 3
        assert a == trial_error(30, 3, seed=1, trial=4)
        assert 1 <= trial_error(30, 3, seed=1, trial=5, up_to=True).weight <= 3

    def test_local_weight_one(self, torus):
        report = SimulationService().run(torus, "local", weight=1, trials=20, seed=3)
        assert report.successes == 20
        assert report.stall_rate == 0.0
        assert report.failures == []

    def test_z_weight_one(self, torus_product):
        report = SimulationService().run(torus_product, "z", weight=1, trials=20, seed=3)
        assert report.successes == 20

    def test_x_weight_one(self, torus_product):
        report = SimulationService().run(torus_product, "x", weight=1, trials=20, seed=3)
        assert report.stalls == 0
        assert report.equivalence_failures == 0
        assert report.successes == 20
        assert report.budget_exceeded == 0

    def test_reproducible(self, torus):
        service = SimulationService()
        first = service.run(torus, "single-edge", weight=2, trials=15, seed=9)
        second = service.run(torus, "single-edge", weight=2, trials=15, seed=9)
        assert first.to_json() == second.to_json()
        assert first.config.seed == 9

    def test_weight_must_be_positive(self, torus):
        with pytest.raises(ShapeMismatchError):
            SimulationService().run(torus, "local", weight=0, trials=1)


@pytest.mark.slow
class TestEndToEndDecoding:
    """Seeded decoding runs on larger products and the q = 2 quotient."""

    def test_x_decoding_torus_path5(self, torus):
        P = build_product(torus, path_code(5))
        report = SimulationService().run(P, "x", weight=2, trials=500, seed=7, up_to=True)
        assert report.successes == 500
        assert report.failures == []

    def test_z_decoding_lsv_path3(self, lsv_q2, path3):
        P = build_product(lsv_q2.complex, path3)
        report = SimulationService().run(P, "z", weight=2, trials=200, seed=7, up_to=True)
        assert report.equivalence_failures == 0
        assert report.successes + report.stalls + report.budget_exceeded == 200
        assert len(report.failures) == report.stalls + report.budget_exceeded

    def test_local_weight_one_lsv(self, lsv_q2):
        X = lsv_q2.complex
        session = DecodeSession(X, "local")
        # left translation is an automorphism, so the edges at vertex 0 meet every edge orbit
        at_origin = X.chain.boundary(1).csr[0].indices.tolist()
        edges = sorted(set(at_origin) | set(range(0, session.n_errors, 1009)))
        for edge in edges:
            error = BitVector.from_support(session.n_errors, [edge])
            outcome = session.decode(session.syndrome(error))
            assert outcome.status == DecodeStatus.SUCCESS
            assert session.is_equivalent(error + outcome.correction_vector())
            weights = outcome.syndrome_weights
            assert all(a > b for a, b in zip(weights, weights[1:]))
            assert outcome.iterations <= weights[0]
