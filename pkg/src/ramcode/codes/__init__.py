"""
Classical component codes and the distance-balancing product.
"""

from .classical import (
    BipartiteCode,
    CodeKind,
    bitflip_decode,
    check_radius,
    code_distance,
    estimate_decoder_radius,
    majority_decode,
    path_code,
    random_regular_ldpc,
    select_a_prime,
)
from .product import (
    ProductCode,
    ProductLayout,
    ProductParams,
    build_product,
    is_nontrivial_cycle,
    product_params,
    tensor_witness,
    weight_audit,
)

__all__ = [
    "BipartiteCode",
    "CodeKind",
    "ProductCode",
    "ProductLayout",
    "ProductParams",
    "bitflip_decode",
    "build_product",
    "check_radius",
    "code_distance",
    "estimate_decoder_radius",
    "is_nontrivial_cycle",
    "majority_decode",
    "path_code",
    "product_params",
    "random_regular_ldpc",
    "select_a_prime",
    "tensor_witness",
    "weight_audit",
]
