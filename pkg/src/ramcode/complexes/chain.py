"""
Chain complexes over GF(2).

A complex of dimension d has face sets X_0..X_d and boundary maps
∂_p : C_p -> C_{p-1} stored as |X_{p-1}| x |X_p| matrices. ∂_0 and ∂_{d+1}
are explicit zero-shaped maps so every grade query is uniform; the
coboundary δ_p is the transpose of ∂_{p+1}.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import BudgetExceededError, ChainValidationError, InvalidGradeError, ShapeMismatchError
from ..core.logging import get_module_logger
from ..linalg.gf2 import (
    BinaryMatrix,
    BitVector,
    CosetSearcher,
    SearchMode,
    capped_candidates,
    complement_basis,
    iter_low_weight,
    kernel_matrix,
    min_weight_outside,
    pack_rows,
    rank,
)
from ..models.files import ChainComplexFile
from ..models.reports import DistanceReport, Provenance, ValidationReport

logger = get_module_logger("complexes.chain")


@dataclass(frozen=True)
class ChainComplex:
    """Graded face counts plus boundary maps ∂_1..∂_d."""

    face_counts: Tuple[int, ...]
    boundaries: Tuple[BinaryMatrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "face_counts", tuple(int(n) for n in self.face_counts))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if not self.face_counts:
            raise ShapeMismatchError("a chain complex needs at least one grade")
        if len(self.boundaries) != len(self.face_counts) - 1:
            raise ShapeMismatchError(
                f"{len(self.face_counts)} grades need {len(self.face_counts) - 1} boundary maps, "
                f"got {len(self.boundaries)}"
            )
        for p, bd in enumerate(self.boundaries, start=1):
            expected = (self.face_counts[p - 1], self.face_counts[p])
            if bd.shape != expected:
                raise ShapeMismatchError(f"∂_{p} has shape {bd.shape}, expected {expected}")

    @property
    def dimension(self) -> int:
        return len(self.face_counts) - 1

    def check_grade(self, p: int) -> None:
        if not 0 <= p <= self.dimension:
            raise InvalidGradeError(f"grade {p} outside [0, {self.dimension}]", grade=p)

    def n_faces(self, p: int) -> int:
        if 0 <= p <= self.dimension:
            return self.face_counts[p]
        return 0

    def boundary(self, p: int) -> BinaryMatrix:
        """∂_p for 0 <= p <= d + 1."""
        if p == 0:
            return BinaryMatrix.zeros(0, self.face_counts[0])
        if p == self.dimension + 1:
            return BinaryMatrix.zeros(self.face_counts[-1], 0)
        if not 1 <= p <= self.dimension:
            raise InvalidGradeError(f"no boundary map ∂_{p} in a {self.dimension}-complex", grade=p)
        return self.boundaries[p - 1]

    def coboundary(self, p: int) -> BinaryMatrix:
        """δ_p = ∂_{p+1}ᵀ, for -1 <= p <= d."""
        return self.boundary(p + 1).T

    def ensure_valid(self) -> "ChainComplex":
        report = validate(self)
        if not report.ok:
            raise ChainValidationError(report.message or "invalid complex", grade=report.grade, face=report.face)
        return self

    # -- file model -------------------------------------------------------

    def to_file_model(self) -> ChainComplexFile:
        return ChainComplexFile(
            dimension=self.dimension,
            face_counts=list(self.face_counts),
            boundaries=[[[r, c] for r, c in bd.entries] for bd in self.boundaries],
        )

    @classmethod
    def from_file_model(cls, model: ChainComplexFile) -> "ChainComplex":
        if len(model.face_counts) != model.dimension + 1:
            raise ShapeMismatchError(
                f"dimension {model.dimension} needs {model.dimension + 1} face counts"
            )
        maps = [
            BinaryMatrix.from_entries(
                model.face_counts[p - 1], model.face_counts[p], [(e[0], e[1]) for e in block]
            )
            for p, block in enumerate(model.boundaries, start=1)
        ]
        return cls(tuple(model.face_counts), tuple(maps))


@dataclass(frozen=True)
class CssCode:
    """CSS code read off grade p of a complex."""

    hx: BinaryMatrix
    hz: BinaryMatrix
    grade: int
    source: Optional[ChainComplex] = None

    def __post_init__(self) -> None:
        if self.hx.n_cols != self.hz.n_cols:
            raise ShapeMismatchError(f"H_X has {self.hx.n_cols} columns, H_Z has {self.hz.n_cols}")

    @property
    def n(self) -> int:
        return self.hx.n_cols

    @property
    def k(self) -> int:
        return self.n - rank(self.hx) - rank(self.hz)

    def is_orthogonal(self) -> bool:
        return (self.hz @ self.hx.T).is_zero()


def validate(X: ChainComplex) -> ValidationReport:
    """Check ∂_{p-1}∂_p = 0 for p = 2..d; report the first offending (p, face)."""
    for p in range(2, X.dimension + 1):
        product = X.boundary(p - 1) @ X.boundary(p)
        if not product.is_zero():
            face = int(product.csr.tocoo().col.min())
            message = f"∂_{p - 1}∂_{p} is nonzero on {p}-face {face}"
            logger.warning(message)
            return ValidationReport(ok=False, grade=p, face=face, message=message)
    return ValidationReport(ok=True)


def cocomplex(X: ChainComplex) -> ChainComplex:
    """The co-complex: grade i holds X_{d-i}, with boundary δ_{d-i}."""
    d = X.dimension
    return ChainComplex(
        tuple(reversed(X.face_counts)),
        tuple(X.boundary(d - i + 1).T for i in range(1, d + 1)),
    )


def homology_dim(X: ChainComplex, p: int) -> int:
    """dim ker ∂_p − rank ∂_{p+1}."""
    X.check_grade(p)
    return X.face_counts[p] - rank(X.boundary(p)) - rank(X.boundary(p + 1))


def cohomology_dim(X: ChainComplex, p: int) -> int:
    """dim ker δ_p − rank δ_{p-1}, computed on the coboundary matrices."""
    X.check_grade(p)
    return X.face_counts[p] - rank(X.coboundary(p)) - rank(X.coboundary(p - 1))


def _systole_full(searcher: CosetSearcher, reps: BinaryMatrix, cost: int) -> DistanceReport:
    rows = reps.rows()
    shift = BitVector.zeros(reps.n_cols)
    best: Optional[Tuple[int, BitVector]] = None
    for g in range(1, 1 << len(rows)):
        shift = shift + rows[(g & -g).bit_length() - 1]
        result = searcher.search_full(shift)
        if best is None or result.weight < best[0]:
            best = (result.weight, result.witness)
    return DistanceReport(
        value=best[0],
        provenance=Provenance.MEASURED,
        mode=SearchMode.FULL,
        witness=list(best[1].support),
        candidates=cost,
    )


def _systole_capped(
    X: ChainComplex, p: int, searcher: CosetSearcher, cap: int, budget: int
) -> DistanceReport:
    n = X.face_counts[p]
    cost = capped_candidates(n, cap)
    if cost > budget:
        raise BudgetExceededError(cost, budget, f"weight <= {cap} search over {n} {p}-faces")
    syndromes = pack_rows(X.boundary(p).T.to_dense())
    residuals = searcher.echelon.unit_residuals()
    count = 0
    for support in iter_low_weight(n, cap, min_weight=1):
        count += 1
        idx = list(support)
        if np.bitwise_xor.reduce(syndromes[idx], axis=0).any():
            continue
        if np.bitwise_xor.reduce(residuals[idx], axis=0).any():
            return DistanceReport(
                value=len(support),
                provenance=Provenance.MEASURED,
                mode=SearchMode.CAPPED,
                witness=list(support),
                candidates=count,
            )
    return DistanceReport(
        value=cap + 1,
        provenance=Provenance.LOWER_BOUNDED,
        mode=SearchMode.CAPPED,
        candidates=count,
        note=f"no non-trivial cycle of weight <= {cap}",
    )


def systole(
    X: ChainComplex, p: int, budget: Optional[int] = None, cap: Optional[int] = None
) -> DistanceReport:
    """Minimum weight of a p-cycle that is not a boundary.

    Tries, in order: full enumeration of the H_p cosets when
    (2^h − 1)·2^{dim B_p} fits the budget, the information-set search over
    Z_p, and the weight-bounded search when ``cap`` is given. Raises
    BudgetExceededError when none of them produce a value.
    """
    X.check_grade(p)
    budget = budget if budget is not None else settings.linalg.enumeration_budget
    cycles = kernel_matrix(X.boundary(p))
    boundaries = X.boundary(p + 1).T
    searcher = CosetSearcher(boundaries, budget=budget)
    h = cycles.n_rows - searcher.dim
    if h <= 0:
        return DistanceReport.undefined(f"H_{p} is trivial")

    full_cost = ((1 << h) - 1) * searcher.full_cost
    logger.debug(f"{p}-systole: dim Z={cycles.n_rows}, dim B={searcher.dim}, full cost {full_cost}")
    if full_cost <= budget:
        return _systole_full(searcher, complement_basis(boundaries, cycles), full_cost)

    result = min_weight_outside(cycles, boundaries, budget)
    if result.weight is not None:
        return DistanceReport(
            value=result.weight,
            provenance=Provenance.MEASURED,
            mode=SearchMode.INFORMATION_SET,
            witness=list(result.witness.support),
            candidates=result.candidates,
        )
    if cap is not None:
        return _systole_capped(X, p, searcher, cap, budget)
    if result.lower_bound and result.lower_bound > 1:
        return DistanceReport(
            value=result.lower_bound,
            provenance=Provenance.LOWER_BOUNDED,
            mode=SearchMode.INFORMATION_SET,
            candidates=result.candidates,
        )
    raise BudgetExceededError(full_cost, budget, f"{p}-systole enumeration")


def cosystole(
    X: ChainComplex, p: int, budget: Optional[int] = None, cap: Optional[int] = None
) -> DistanceReport:
    """S^p(X) = S_{d-p}(X*)."""
    X.check_grade(p)
    return systole(cocomplex(X), X.dimension - p, budget=budget, cap=cap)


def css_extract(X: ChainComplex, p: int) -> CssCode:
    """H_X = ∂_p (checks indexed by X_{p-1}), H_Z = δ_p (checks indexed by X_{p+1})."""
    X.check_grade(p)
    return CssCode(hx=X.boundary(p), hz=X.coboundary(p), grade=p, source=X)


def from_css_matrices(hx: BinaryMatrix, hz: BinaryMatrix) -> ChainComplex:
    """2-complex with ∂_1 = H_X and ∂_2 = H_Zᵀ."""
    if hx.n_cols != hz.n_cols:
        raise ShapeMismatchError(f"H_X has {hx.n_cols} columns, H_Z has {hz.n_cols}")
    X = ChainComplex((hx.n_rows, hx.n_cols, hz.n_rows), (hx, hz.T))
    return X.ensure_valid()


def from_classical_code(h: BinaryMatrix) -> ChainComplex:
    """The complex (∅, A, B) with ∂_2 = Hᵀ for a |B| x |A| check matrix H."""
    n_checks, n_bits = h.shape
    return ChainComplex((0, n_bits, n_checks), (BinaryMatrix.zeros(0, n_bits), h.T))


def boundary_supports(X: ChainComplex, p: int) -> List[Tuple[int, ...]]:
    """Support of ∂_p applied to each p-face."""
    bd = X.boundary(p).T
    return [bd.row_support(i) for i in range(bd.n_rows)]


def from_boundaries(boundaries: Sequence[BinaryMatrix]) -> ChainComplex:
    """Complex whose face counts are read off the boundary shapes."""
    if not boundaries:
        raise ShapeMismatchError("need at least one boundary map")
    counts = [boundaries[0].n_rows] + [bd.n_cols for bd in boundaries]
    return ChainComplex(tuple(counts), tuple(boundaries))
