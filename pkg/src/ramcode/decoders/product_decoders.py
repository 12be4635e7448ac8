"""
Decoders for the product code ℰX.

X errors: T-join per Va component, then strip the classical codeword from
each non-trivial cycle coordinate. Z errors: recover the TB block by linear
inversion on A′, then decode each Ta column with a coboundary decoder of X.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..core.exceptions import InconsistentSyndromeError, ParityError, ShapeMismatchError
from ..core.logging import get_module_logger
from ..codes.classical import CodeKind, select_a_prime
from ..codes.product import ProductCode
from ..complexes.chain import ChainComplex
from ..linalg.gf2 import BinaryMatrix, BitVector, EchelonBasis, complement_basis, inverse, kernel_matrix, solve
from ..models.reports import DecodeOutcome, DecodeStatus
from .local import LocalDecoder
from .tjoin import incidence_graph, tjoin_columns

logger = get_module_logger("decoders.product")

ComponentDecoder = Callable[[BitVector], DecodeOutcome]


@dataclass
class CycleBasis:
    """Basis Z0 ∪ Z1 of the 1-cycles of X with span(Z0) = B_1(X)."""

    z0: BinaryMatrix
    z1: BinaryMatrix
    _echelon: EchelonBasis = field(repr=False)
    _boundaries: EchelonBasis = field(repr=False)

    @classmethod
    def from_complex(cls, X: ChainComplex) -> "CycleBasis":
        n = X.face_counts[1]
        z0 = complement_basis(BinaryMatrix.zeros(0, n), X.boundary(2).T)
        z1 = complement_basis(z0, kernel_matrix(X.boundary(1)))
        return cls(
            z0=z0,
            z1=z1,
            _echelon=EchelonBasis(BinaryMatrix.vstack([z0, z1]), track=True),
            _boundaries=EchelonBasis(z0),
        )

    @property
    def n0(self) -> int:
        return self.z0.n_rows

    @property
    def n1(self) -> int:
        return self.z1.n_rows

    def coordinates(self, cycles: np.ndarray) -> np.ndarray:
        """(n0 + n1) x k coefficients of the k columns of ``cycles``."""
        out = np.zeros((self.n0 + self.n1, cycles.shape[1]), dtype=np.uint8)
        for a in range(cycles.shape[1]):
            column = cycles[:, a]
            if not column.any():
                continue
            coeff = self._echelon.express(BitVector(column))
            if coeff is None:
                raise InconsistentSyndromeError(f"column {a} is not a cycle")
            out[:, a] = coeff.bits
        return out

    def homology_classes(self, cycles: np.ndarray) -> np.ndarray:
        """Residuals of the columns modulo B_1; equal rows mean homologous columns."""
        return self._boundaries.reduce_many(np.ascontiguousarray(cycles.T))

    def is_trivial(self, cycle: BitVector) -> bool:
        return self._boundaries.contains(cycle)


def _mod2(m: np.ndarray) -> np.ndarray:
    return (np.asarray(m, dtype=np.int64) % 2).astype(np.uint8)


def _first_step(P: ProductCode, syndrome: BitVector) -> Tuple[np.ndarray, BitVector]:
    """T-join every Va column; returns the EA guess and the residual syndrome."""
    layout = P.layout
    s_va, _ = layout.split_x_syndrome(syndrome)
    if layout.n_x0 == 0 or not s_va.any():
        y_ea = np.zeros((layout.n_x1, layout.n_a), dtype=np.uint8)
    else:
        try:
            y_ea = tjoin_columns(incidence_graph(P.X), s_va)
        except ParityError as exc:
            raise InconsistentSyndromeError(f"Va syndrome has odd parity: {exc.message}") from exc
    y = layout.join_qubits(y_ea, np.zeros((layout.n_x2, layout.n_b), dtype=np.uint8))
    return y_ea, syndrome + P.sigma_x @ y


def x_decode(P: ProductCode, syndrome: BitVector, basis: Optional[CycleBasis] = None) -> DecodeOutcome:
    """Correct X errors from a σ_X syndrome.

    ``basis`` may be passed in to reuse one cycle basis across calls.
    """
    layout = P.layout
    y_ea, residual = _first_step(P, syndrome)
    y = layout.join_qubits(y_ea, np.zeros((layout.n_x2, layout.n_b), dtype=np.uint8))
    weights = [syndrome.weight, residual.weight]
    if residual.is_zero():
        return DecodeOutcome.from_vector(y, DecodeStatus.SUCCESS, iterations=1, syndrome_weights=weights + [0])

    z = solve(P.sigma_x, residual)
    if z is None:
        raise InconsistentSyndromeError("syndrome is not in the image of σ_X")
    z_ea, z_tb = layout.split_qubits(z)
    basis = basis or CycleBasis.from_complex(P.X)
    coords = basis.coordinates(z_ea)[basis.n0 :]

    words = np.zeros_like(coords)
    stalled: List[int] = []
    for i, row in enumerate(coords):
        if not row.any():
            continue
        error = P.Y.decode_word(BitVector(row))
        if error is None:
            stalled.append(i)
            continue
        words[i] = row ^ error.bits
    z_ea = _mod2(z_ea.astype(np.int64) + basis.z1.to_dense().T.astype(np.int64) @ words)
    correction = y + layout.join_qubits(z_ea, z_tb)
    status = DecodeStatus.STALLED if stalled else DecodeStatus.SUCCESS
    if stalled:
        logger.debug(f"x_decode: classical decoder stalled on {len(stalled)} cycle rows")
    return DecodeOutcome.from_vector(
        correction,
        status,
        iterations=1 + int(coords.any(axis=1).sum()),
        syndrome_weights=weights + [(P.sigma_x @ correction + syndrome).weight],
        diagnostics={"tjoin_weight": int(y_ea.sum()), "stalled_rows": stalled},
    )


def x_decode_path(P: ProductCode, syndrome: BitVector) -> DecodeOutcome:
    """X decoding when Y is a path: choose the column shift that leaves a majority of trivial cycles."""
    if P.Y.kind != CodeKind.PATH:
        raise ShapeMismatchError("x_decode_path needs a path code as the classical factor")
    layout = P.layout
    y_ea, residual = _first_step(P, syndrome)
    s_va, s_eb = layout.split_x_syndrome(residual)
    if s_va.any():
        raise InconsistentSyndromeError("Va syndrome survived the T-join step")

    z = np.zeros((layout.n_x1, layout.n_a), dtype=np.uint8)
    for i in range(layout.n_b):
        z[:, i + 1] = z[:, i] ^ s_eb[:, i]
    classes = CycleBasis.from_complex(P.X).homology_classes(z)
    m = layout.n_a
    for i in range(m):
        trivial = int(np.all(classes == classes[i], axis=1).sum())
        if 2 * trivial > m:
            candidate = z ^ z[:, [i]]
            correction = layout.join_qubits(
                y_ea ^ candidate, np.zeros((layout.n_x2, layout.n_b), dtype=np.uint8)
            )
            return DecodeOutcome.from_vector(
                correction,
                DecodeStatus.SUCCESS,
                iterations=2,
                syndrome_weights=[syndrome.weight, residual.weight, 0],
                diagnostics={"shift": i, "trivial_columns": trivial},
            )
    logger.debug("x_decode_path: no column shift gives a trivial majority")
    return DecodeOutcome.from_vector(
        layout.join_qubits(y_ea, np.zeros((layout.n_x2, layout.n_b), dtype=np.uint8)),
        DecodeStatus.STALLED,
        iterations=2,
        syndrome_weights=[syndrome.weight, residual.weight],
    )


def _a_prime_inverse(P: ProductCode) -> Tuple[List[int], np.ndarray]:
    a_prime, _ = select_a_prime(P.Y)
    inv = inverse(P.Y.h.select_cols(a_prime))
    if inv is None:
        raise InconsistentSyndromeError("H restricted to A′ is singular")
    return a_prime, inv.to_dense().astype(np.int64)


def z_reduce(P: ProductCode, error: BitVector) -> BitVector:
    """Equivalent Z error (modulo the rows of σ_X) with nothing on X_1 × A′."""
    layout = P.layout
    e_ea, e_tb = layout.split_qubits(error)
    a_prime, inv = _a_prime_inverse(P)
    u = _mod2(e_ea[:, a_prime].astype(np.int64) @ inv)
    if not u.any():
        return error
    h = P.Y.h.to_dense().astype(np.int64)
    reduced_ea = _mod2(e_ea.astype(np.int64) + u.astype(np.int64) @ h)
    reduced_tb = _mod2(e_tb.astype(np.int64) + P.X.boundary(2).csr.T.astype(np.int64) @ u.astype(np.int64))
    return layout.join_qubits(reduced_ea, reduced_tb)


def z_decode(
    P: ProductCode, syndrome: BitVector, component_decoder: Optional[ComponentDecoder] = None
) -> DecodeOutcome:
    """Correct Z errors from a σ_Z syndrome.

    ``component_decoder`` maps a triangle syndrome of X to a 1-cochain; it
    defaults to local coboundary decoding on X.
    """
    layout = P.layout
    s = layout.z_syndrome_block(syndrome)
    a_prime, inv = _a_prime_inverse(P)
    h = P.Y.h.to_dense().astype(np.int64)
    t_block = _mod2(s[:, a_prime].astype(np.int64) @ inv)
    remaining = _mod2(s.astype(np.int64) + t_block.astype(np.int64) @ h)
    decoder = component_decoder or LocalDecoder(P.X).decode

    e_block = np.zeros((layout.n_x1, layout.n_a), dtype=np.uint8)
    iterations = 0
    status = DecodeStatus.SUCCESS
    failed: List[int] = []
    for a in range(layout.n_a):
        column = remaining[:, a]
        if not column.any():
            continue
        outcome = decoder(BitVector(column))
        iterations += outcome.iterations
        e_block[:, a] = outcome.correction_vector().bits
        if not outcome.succeeded:
            failed.append(a)
            if status == DecodeStatus.SUCCESS:
                status = DecodeStatus(outcome.status)
    correction = layout.join_qubits(e_block, t_block)
    if failed:
        logger.debug(f"z_decode: component decoder failed on columns {failed}")
    return DecodeOutcome.from_vector(
        correction,
        status,
        iterations=iterations,
        syndrome_weights=[syndrome.weight, int(remaining.sum()), (P.sigma_z @ correction + syndrome).weight],
        diagnostics={"tb_weight": int(t_block.sum()), "failed_columns": failed},
    )
