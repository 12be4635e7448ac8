"""
Unit tests for chain complexes, (co)homology and (co)systoles.
"""

import pytest

from ramcode.core.exceptions import BudgetExceededError, ChainValidationError, InvalidGradeError, ShapeMismatchError
from ramcode.complexes.chain import (
    ChainComplex,
    boundary_supports,
    cocomplex,
    cohomology_dim,
    cosystole,
    css_extract,
    from_boundaries,
    from_classical_code,
    from_css_matrices,
    homology_dim,
    systole,
    validate,
)
from ramcode.linalg.gf2 import BinaryMatrix, BitVector, in_span
from ramcode.models.reports import Provenance


def broken_complex() -> ChainComplex:
    one = BinaryMatrix.identity(1)
    return ChainComplex((1, 1, 1), (one, one))


class TestChainComplex:
    """Test construction and validation."""

    def test_shapes_checked(self):
        with pytest.raises(ShapeMismatchError):
            ChainComplex((2, 3), (BinaryMatrix.zeros(3, 2),))
        with pytest.raises(ShapeMismatchError):
            ChainComplex((2, 3), ())

    def test_boundary_ends_are_zero_maps(self, torus):
        X = torus.chain
        assert X.boundary(0).shape == (0, 9)
        assert X.boundary(3).shape == (18, 0)
        assert X.coboundary(1) == X.boundary(2).T
        with pytest.raises(InvalidGradeError):
            X.boundary(4)

    def test_validate_ok(self, torus):
        assert validate(torus.chain).ok

    def test_validate_reports_first_face(self):
        report = validate(broken_complex())
        assert not report.ok
        assert report.grade == 2
        assert report.face == 0

    def test_ensure_valid_raises(self):
        with pytest.raises(ChainValidationError) as info:
            broken_complex().ensure_valid()
        assert info.value.grade == 2

    def test_file_model_round_trip(self, torus):
        X = torus.chain
        assert ChainComplex.from_file_model(X.to_file_model()) == X

    def test_from_boundaries(self, torus):
        X = torus.chain
        assert from_boundaries(list(X.boundaries)).face_counts == (9, 27, 18)

    def test_boundary_supports(self, triangle):
        assert boundary_supports(triangle.chain, 2) == [(0, 1, 2)]


class TestHomology:
    """Test (co)homology dimensions on fixtures."""

    def test_torus(self, torus):
        X = torus.chain
        assert [homology_dim(X, p) for p in range(3)] == [1, 2, 1]
        assert [cohomology_dim(X, p) for p in range(3)] == [1, 2, 1]

    def test_cone_is_acyclic(self, cone):
        X = cone.chain
        assert homology_dim(X, 1) == 0
        assert homology_dim(X, 2) == 0

    def test_bad_grade(self, torus):
        with pytest.raises(InvalidGradeError):
            homology_dim(torus.chain, 3)

    def test_cocomplex(self, torus):
        X = torus.chain
        Y = cocomplex(X)
        assert Y.face_counts == (18, 27, 9)
        assert Y.boundary(1) == X.boundary(2).T
        assert validate(Y).ok
        assert homology_dim(Y, 1) == cohomology_dim(X, 1)


class TestSystole:
    """Test the systole and cosystole oracles."""

    def test_torus_systole(self, torus):
        X = torus.chain
        report = systole(X, 1)
        assert report.value == 3
        assert report.provenance == Provenance.MEASURED
        witness = BitVector.from_support(27, report.witness)
        assert (X.boundary(1) @ witness).is_zero()
        assert not in_span(X.boundary(2).T, witness)

    def test_torus_cosystole(self, torus):
        X = torus.chain
        report = cosystole(X, 1)
        assert report.provenance == Provenance.MEASURED
        assert report.value == systole(cocomplex(X), 1).value
        witness = BitVector.from_support(27, report.witness)
        assert (X.coboundary(1) @ witness).is_zero()
        assert not in_span(X.coboundary(0).T, witness)

    def test_trivial_homology_is_undefined(self, triangle):
        report = systole(triangle.chain, 1)
        assert report.value is None
        assert report.provenance == Provenance.UNDEFINED

    def test_information_set_lower_bound(self, torus):
        report = systole(torus.chain, 1, budget=100)
        assert report.provenance == Provenance.LOWER_BOUNDED
        assert report.value == 2

    def test_capped_lower_bound(self, torus):
        report = systole(torus.chain, 1, budget=100, cap=1)
        assert report.provenance == Provenance.LOWER_BOUNDED
        assert report.value == 2
        assert report.mode == "capped"

    def test_budget_refusal(self, torus):
        with pytest.raises(BudgetExceededError):
            systole(torus.chain, 1, budget=10)
        with pytest.raises(BudgetExceededError):
            systole(torus.chain, 1, budget=100, cap=2)


class TestCss:
    """Test CSS extraction and its inverses."""

    def test_css_extract(self, torus):
        code = css_extract(torus.chain, 1)
        assert code.n == 27
        assert code.k == 2
        assert code.is_orthogonal()

    def test_from_css_matrices(self, torus):
        code = css_extract(torus.chain, 1)
        X = from_css_matrices(code.hx, code.hz)
        assert X.face_counts == (9, 27, 18)

    def test_from_css_matrices_rejects_non_orthogonal(self):
        hx = BinaryMatrix.from_dense([[1, 0]])
        hz = BinaryMatrix.from_dense([[1, 0]])
        with pytest.raises(ChainValidationError):
            from_css_matrices(hx, hz)

    def test_from_classical_code(self, path3):
        X = from_classical_code(path3.h)
        assert X.face_counts == (0, 3, 2)
        assert homology_dim(X, 1) == 1
        assert validate(X).ok
