"""
GF(2) linear algebra.
"""

from .gf2 import (
    BinaryMatrix,
    BitVector,
    CosetSearcher,
    CosetSearchResult,
    EchelonBasis,
    SearchMode,
    SpanCertificate,
    complement_basis,
    dense_fits,
    in_span,
    inverse,
    kernel_basis,
    kernel_matrix,
    min_weight_coset,
    rank,
    solve,
    span_certificate,
)

__all__ = [
    "BinaryMatrix",
    "BitVector",
    "CosetSearcher",
    "CosetSearchResult",
    "EchelonBasis",
    "SearchMode",
    "SpanCertificate",
    "complement_basis",
    "dense_fits",
    "in_span",
    "inverse",
    "kernel_basis",
    "kernel_matrix",
    "min_weight_coset",
    "rank",
    "solve",
    "span_certificate",
]
