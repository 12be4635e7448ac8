"""
Decode service: dispatch a syndrome to the decoder for its error type.
"""

from enum import Enum
from functools import cached_property
from typing import Callable, Optional, Union

from ..core.exceptions import ShapeMismatchError
from ..core.logging import get_module_logger
from ..codes.product import ProductCode
from ..complexes.chain import ChainComplex
from ..complexes.simplicial import SimplicialComplex
from ..decoders.local import LocalDecoder
from ..decoders.product_decoders import CycleBasis, x_decode, x_decode_path, z_decode
from ..linalg.gf2 import BinaryMatrix, BitVector, EchelonBasis, dense_fits, in_span, span_certificate
from ..models.reports import DecodeOutcome

logger = get_module_logger("services.decode")

Decodable = Union[ProductCode, SimplicialComplex, ChainComplex]


class ErrorType(str, Enum):
    """Which decoder a syndrome goes to."""

    X = "x"
    X_PATH = "x-path"
    Z = "z"
    LOCAL = "local"
    SINGLE_EDGE = "single-edge"

    @property
    def on_product(self) -> bool:
        return self in (ErrorType.X, ErrorType.X_PATH, ErrorType.Z)


class DecodeSession:
    """A decoder bound to one code, with its caches built once."""

    def __init__(self, obj: Decodable, error_type: Union[ErrorType, str]):
        self.error_type = ErrorType(error_type)
        self.obj = obj
        if self.error_type.on_product and not isinstance(obj, ProductCode):
            raise ShapeMismatchError(f"--type {self.error_type.value} needs a product code file")
        if not self.error_type.on_product and isinstance(obj, ProductCode):
            raise ShapeMismatchError(f"--type {self.error_type.value} needs a complex file")
        self._decode = self._bind()

    def _bind(self) -> Callable[[BitVector], DecodeOutcome]:
        obj = self.obj
        if self.error_type == ErrorType.X:
            basis = CycleBasis.from_complex(obj.X)
            return lambda s: x_decode(obj, s, basis=basis)
        if self.error_type == ErrorType.X_PATH:
            return lambda s: x_decode_path(obj, s)
        if self.error_type == ErrorType.Z:
            component = LocalDecoder(obj.X)
            return lambda s: z_decode(obj, s, component.decode)
        local = LocalDecoder(obj)
        single = self.error_type == ErrorType.SINGLE_EDGE
        return lambda s: local.decode(s, single_edge=single)

    @property
    def syndrome_map(self) -> BinaryMatrix:
        """Error -> syndrome."""
        if self.error_type in (ErrorType.X, ErrorType.X_PATH):
            return self.obj.sigma_x
        if self.error_type == ErrorType.Z:
            return self.obj.sigma_z
        chain = self.obj.chain if isinstance(self.obj, SimplicialComplex) else self.obj
        return chain.coboundary(1)

    @property
    def stabilizers(self) -> BinaryMatrix:
        """Rows spanning the errors equivalent to zero."""
        if self.error_type in (ErrorType.X, ErrorType.X_PATH):
            return self.obj.sigma_z
        if self.error_type == ErrorType.Z:
            return self.obj.sigma_x
        chain = self.obj.chain if isinstance(self.obj, SimplicialComplex) else self.obj
        return chain.boundary(1)

    @cached_property
    def stabilizer_basis(self) -> Optional[EchelonBasis]:
        """Echelon form of the stabilizers, or None when the packed form is too large."""
        stabilizers = self.stabilizers
        if not dense_fits(stabilizers.n_rows, stabilizers.n_cols):
            return None
        return EchelonBasis(stabilizers)

    def is_equivalent(self, residual: BitVector) -> bool:
        """Exact test of residual in the stabilizer span.

        The echelon basis is built on the first inconclusive certificate.
        Above ``dense_limit_mb`` each test compares sparse ranks instead.
        """
        certificate = span_certificate(self.stabilizers, residual)
        if certificate.exact:
            return certificate.certified
        logger.debug("span certificate inconclusive, falling back to elimination")
        basis = self.stabilizer_basis
        if basis is None:
            return in_span(self.stabilizers, residual)
        return basis.contains(residual)

    @property
    def n_errors(self) -> int:
        return self.syndrome_map.n_cols

    def syndrome(self, error: BitVector) -> BitVector:
        return self.syndrome_map @ error

    def decode(self, syndrome: BitVector) -> DecodeOutcome:
        if syndrome.length != self.syndrome_map.n_rows:
            raise ShapeMismatchError(
                f"syndrome length {syndrome.length} != {self.syndrome_map.n_rows} for --type {self.error_type.value}"
            )
        return self._decode(syndrome)


class DecodeService:
    """Decodes a single syndrome."""

    def decode(self, obj: Decodable, error_type: Union[ErrorType, str], syndrome: BitVector) -> DecodeOutcome:
        session = DecodeSession(obj, error_type)
        outcome = session.decode(syndrome)
        logger.info(f"decode {session.error_type.value}: {outcome.status}, {outcome.iterations} iterations")
        return outcome
