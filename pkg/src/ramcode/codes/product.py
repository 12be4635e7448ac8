"""
Distance-balancing product of a 2-complex X = (X_0, X_1, X_2) with a
classical code Y = (A, B).

The product complex ℰX has
    ℰX_0 = X_0×A ∪ X_1×B,   ℰX_1 = X_1×A ∪ X_2×B,   ℰX_2 = X_2×A
and is enumerated row-major: (x, a) -> x*|A| + a first, then the ×B block
offset by its size. Qubits are ℰX_1; σ_X = ∂_1ℰ and σ_Z = (∂_2ℰ)ᵀ.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from ..core.exceptions import BudgetExceededError, InvalidGradeError, ShapeMismatchError
from ..core.logging import get_module_logger
from ..complexes.chain import ChainComplex, CssCode, cosystole, systole
from ..complexes.simplicial import SimplicialComplex
from ..linalg.gf2 import BinaryMatrix, BitVector, in_span, rank
from ..models.files import ChainComplexFile, ProductFile, SimplicialComplexFile
from ..models.reports import DistanceReport, Provenance, WeightReport
from .classical import BipartiteCode, code_distance

logger = get_module_logger("codes.product")


@dataclass(frozen=True)
class ProductLayout:
    """Index bookkeeping between ℰX and (X, Y)."""

    n_x0: int
    n_x1: int
    n_x2: int
    n_a: int
    n_b: int

    @property
    def n_ea(self) -> int:
        return self.n_x1 * self.n_a

    @property
    def n_tb(self) -> int:
        return self.n_x2 * self.n_b

    @property
    def n_va(self) -> int:
        return self.n_x0 * self.n_a

    @property
    def n_eb(self) -> int:
        return self.n_x1 * self.n_b

    @property
    def n_qubits(self) -> int:
        return self.n_ea + self.n_tb

    @property
    def n_x_checks(self) -> int:
        return self.n_va + self.n_eb

    @property
    def n_z_checks(self) -> int:
        return self.n_x2 * self.n_a

    def qubit_ea(self, x1: int, a: int) -> int:
        return x1 * self.n_a + a

    def qubit_tb(self, x2: int, b: int) -> int:
        return self.n_ea + x2 * self.n_b + b

    def locate_qubit(self, i: int) -> Tuple[str, int, int]:
        """Inverse of the qubit numbering: ("EA", x1, a) or ("TB", x2, b)."""
        if not 0 <= i < self.n_qubits:
            raise ShapeMismatchError(f"qubit {i} outside [0, {self.n_qubits})")
        if i < self.n_ea:
            return ("EA", *divmod(i, self.n_a))
        return ("TB", *divmod(i - self.n_ea, self.n_b))

    # -- block views --------------------------------------------------------

    def split_qubits(self, v: BitVector) -> Tuple[np.ndarray, np.ndarray]:
        """(|X_1| x |A| block, |X_2| x |B| block)."""
        self._expect(v, self.n_qubits)
        bits = v.bits
        return bits[: self.n_ea].reshape(self.n_x1, self.n_a), bits[self.n_ea :].reshape(self.n_x2, self.n_b)

    def join_qubits(self, ea: np.ndarray, tb: np.ndarray) -> BitVector:
        return BitVector(np.concatenate([np.asarray(ea).reshape(-1), np.asarray(tb).reshape(-1)]))

    def split_x_syndrome(self, s: BitVector) -> Tuple[np.ndarray, np.ndarray]:
        """(|X_0| x |A| block, |X_1| x |B| block)."""
        self._expect(s, self.n_x_checks)
        bits = s.bits
        return bits[: self.n_va].reshape(self.n_x0, self.n_a), bits[self.n_va :].reshape(self.n_x1, self.n_b)

    def z_syndrome_block(self, s: BitVector) -> np.ndarray:
        """|X_2| x |A| block."""
        self._expect(s, self.n_z_checks)
        return s.bits.reshape(self.n_x2, self.n_a)

    @staticmethod
    def _expect(v: BitVector, length: int) -> None:
        if v.length != length:
            raise ShapeMismatchError(f"vector length {v.length} != {length}")


@dataclass(frozen=True)
class ProductCode:
    """The product complex ℰX with its CSS code."""

    X: ChainComplex
    Y: BipartiteCode
    layout: ProductLayout
    d1: BinaryMatrix
    d2: BinaryMatrix
    simplicial: Optional[SimplicialComplex] = None

    @property
    def complex(self) -> ChainComplex:
        l = self.layout
        return ChainComplex((l.n_x_checks, l.n_qubits, l.n_z_checks), (self.d1, self.d2))

    @property
    def sigma_x(self) -> BinaryMatrix:
        return self.d1

    @property
    def sigma_z(self) -> BinaryMatrix:
        return self.d2.T

    @property
    def n(self) -> int:
        return self.layout.n_qubits

    @property
    def css(self) -> CssCode:
        return CssCode(hx=self.sigma_x, hz=self.sigma_z, grade=1, source=self.complex)

    def to_file_model(self) -> ProductFile:
        source: Union[SimplicialComplexFile, ChainComplexFile]
        source = self.simplicial.to_file_model() if self.simplicial is not None else self.X.to_file_model()
        return ProductFile(complex=source, code=self.Y.to_file_model())

    @classmethod
    def from_file_model(cls, model: ProductFile) -> "ProductCode":
        code = BipartiteCode.from_file_model(model.code)
        if isinstance(model.complex, SimplicialComplexFile):
            return build_product(SimplicialComplex.from_file_model(model.complex), code)
        return build_product(ChainComplex.from_file_model(model.complex), code)


def build_product(X: Union[ChainComplex, SimplicialComplex], Y: BipartiteCode) -> ProductCode:
    """Assemble ∂_1ℰ and ∂_2ℰ:

        ∂_1ℰ = [[∂_1 ⊗ I_A, 0], [I_{X_1} ⊗ H, ∂_2 ⊗ I_B]]
        ∂_2ℰ = [[∂_2 ⊗ I_A], [I_{X_2} ⊗ H]]
    """
    simplicial = X if isinstance(X, SimplicialComplex) else None
    chain = X.chain if isinstance(X, SimplicialComplex) else X
    if chain.dimension != 2:
        raise InvalidGradeError(f"product needs a 2-dimensional complex, got dimension {chain.dimension}")
    chain.ensure_valid()
    n_x0, n_x1, n_x2 = chain.face_counts
    layout = ProductLayout(n_x0, n_x1, n_x2, Y.n_bits, Y.n_checks)

    bd1, bd2, h = chain.boundary(1), chain.boundary(2), Y.h
    eye_a, eye_b = BinaryMatrix.identity(Y.n_bits), BinaryMatrix.identity(Y.n_checks)
    top = BinaryMatrix.hstack(
        [BinaryMatrix.kron(bd1, eye_a), BinaryMatrix.zeros(layout.n_va, layout.n_tb)]
    )
    bottom = BinaryMatrix.hstack(
        [BinaryMatrix.kron(BinaryMatrix.identity(n_x1), h), BinaryMatrix.kron(bd2, eye_b)]
    )
    d1 = BinaryMatrix.vstack([top, bottom])
    d2 = BinaryMatrix.vstack(
        [BinaryMatrix.kron(bd2, eye_a), BinaryMatrix.kron(BinaryMatrix.identity(n_x2), h)]
    )
    product = ProductCode(X=chain, Y=Y, layout=layout, d1=d1, d2=d2, simplicial=simplicial)
    product.complex.ensure_valid()
    logger.info(
        f"product code: N={layout.n_qubits}, X-checks={layout.n_x_checks}, Z-checks={layout.n_z_checks}"
    )
    return product


@dataclass(frozen=True)
class ProductParams:
    """N, K and the distance reports of a product code."""

    n: int
    k: int
    d_x: DistanceReport
    d_z: DistanceReport
    predicted_d_x: DistanceReport
    predicted_d_z: DistanceReport


def _predicted_d_x(P: ProductCode, budget: Optional[int]) -> DistanceReport:
    s1 = systole(P.X, 1, budget=budget)
    if s1.value is None or s1.provenance != Provenance.MEASURED:
        return DistanceReport.predicted(None, note="S_1(X) unavailable")
    d_y = code_distance(P.Y, budget=budget)
    if d_y.value is None or d_y.provenance != Provenance.MEASURED:
        return DistanceReport.predicted(None, note="d(Y) unavailable")
    return DistanceReport.predicted(s1.value * d_y.value, note=f"S_1(X)={s1.value} x d(Y)={d_y.value}")


def _predicted_d_z(P: ProductCode, budget: Optional[int]) -> DistanceReport:
    s1 = cosystole(P.X, 1, budget=budget)
    if s1.value is None or s1.provenance != Provenance.MEASURED:
        return DistanceReport.predicted(None, note="S^1(X) unavailable")
    return DistanceReport.predicted(s1.value, note=f"S^1(X)={s1.value}")


def _guarded(measure, prediction: DistanceReport) -> DistanceReport:
    try:
        return measure()
    except BudgetExceededError as exc:
        logger.warning(f"distance not measured: {exc.message}")
        note = f"budget exceeded: {exc.required} candidates needed"
        if prediction.value is None:
            return DistanceReport(provenance=Provenance.UNDEFINED, note=note)
        return DistanceReport(value=prediction.value, provenance=Provenance.PREDICTED, note=note)


def product_params(P: ProductCode, budget: Optional[int] = None, cap: Optional[int] = None) -> ProductParams:
    """K by ranks; D_X, D_Z by the (co)systole oracles of ℰX, with predictions alongside."""
    k = P.n - rank(P.sigma_x) - rank(P.sigma_z)
    predicted_x = _guarded(lambda: _predicted_d_x(P, budget), DistanceReport.predicted(None))
    predicted_z = _guarded(lambda: _predicted_d_z(P, budget), DistanceReport.predicted(None))
    if k == 0:
        undefined = DistanceReport.undefined("K = 0")
        return ProductParams(P.n, 0, undefined, undefined, predicted_x, predicted_z)
    d_x = _guarded(lambda: systole(P.complex, 1, budget=budget, cap=cap), predicted_x)
    d_z = _guarded(lambda: cosystole(P.complex, 1, budget=budget, cap=cap), predicted_z)
    return ProductParams(P.n, k, d_x, d_z, predicted_x, predicted_z)


def _max_or_zero(weights: np.ndarray) -> int:
    return int(weights.max()) if weights.size else 0


def weight_audit(P: ProductCode) -> WeightReport:
    """Row weights of σ_X, σ_Z against the bounds from H_X(X), H_Z(X) and H."""
    hx, hz, h = P.X.boundary(1), P.X.boundary(2).T, P.Y.h
    w_x_row = _max_or_zero(hx.row_weights())
    w_z_row = _max_or_zero(hz.row_weights())
    w_z_col = _max_or_zero(hz.col_weights())
    code_row = _max_or_zero(h.row_weights())
    code_col = _max_or_zero(h.col_weights())
    product_w_x = _max_or_zero(P.sigma_x.row_weights())
    product_w_z = _max_or_zero(P.sigma_z.row_weights())
    bound_x = max(w_x_row, code_row + w_z_col)
    bound_z = w_z_row + code_col
    passed = product_w_x <= bound_x and product_w_z <= bound_z
    if not passed:
        logger.warning(f"weight audit failed: W_X={product_w_x} (bound {bound_x}), W_Z={product_w_z} (bound {bound_z})")
    return WeightReport(
        complex_w_x_row=w_x_row,
        complex_w_z_row=w_z_row,
        complex_w_z_col=w_z_col,
        code_row=code_row,
        code_col=code_col,
        product_w_x=product_w_x,
        product_w_z=product_w_z,
        bound_w_x=bound_x,
        bound_w_z=bound_z,
        passed=passed,
    )


def tensor_witness(P: ProductCode, cycle: BitVector, codeword: BitVector) -> BitVector:
    """cycle ⊗ codeword placed in the X_1×A block."""
    if cycle.length != P.layout.n_x1 or codeword.length != P.layout.n_a:
        raise ShapeMismatchError("cycle must live on X_1 and codeword on A")
    ea = np.outer(cycle.bits, codeword.bits).astype(np.uint8)
    return P.layout.join_qubits(ea, np.zeros((P.layout.n_x2, P.layout.n_b), dtype=np.uint8))


def is_nontrivial_cycle(P: ProductCode, v: BitVector) -> bool:
    """σ_X v = 0 and v is not in the row space of σ_Z."""
    return (P.sigma_x @ v).is_zero() and not in_span(P.sigma_z, v)
