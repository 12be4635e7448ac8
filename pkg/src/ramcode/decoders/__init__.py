"""
Decoders: T-joins, the product X/Z decoders and local coboundary decoding.
"""

from .local import (
    LocalDecoder,
    designed_radius,
    is_locally_minimal,
    local_coboundary_decode,
    single_edge_decode,
    triangle_profile,
)
from .product_decoders import CycleBasis, x_decode, x_decode_path, z_decode, z_reduce
from .tjoin import incidence_graph, tjoin_decode, tjoin_edges

__all__ = [
    "CycleBasis",
    "LocalDecoder",
    "designed_radius",
    "incidence_graph",
    "is_locally_minimal",
    "local_coboundary_decode",
    "single_edge_decode",
    "tjoin_decode",
    "tjoin_edges",
    "triangle_profile",
    "x_decode",
    "x_decode_path",
    "z_decode",
    "z_reduce",
]
