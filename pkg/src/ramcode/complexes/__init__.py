"""
Chain complexes, simplicial complexes and quotient constructions.
"""

from .chain import (
    ChainComplex,
    CssCode,
    cocomplex,
    cohomology_dim,
    cosystole,
    css_extract,
    from_classical_code,
    from_css_matrices,
    homology_dim,
    systole,
    validate,
)
from .simplicial import (
    SimplicialComplex,
    clique_complex,
    degree_stats,
    fixture_cone,
    fixture_torus,
    fixture_triangle,
    link,
    skeleton,
)

__all__ = [
    "ChainComplex",
    "CssCode",
    "SimplicialComplex",
    "clique_complex",
    "cocomplex",
    "cohomology_dim",
    "cosystole",
    "css_extract",
    "degree_stats",
    "fixture_cone",
    "fixture_torus",
    "fixture_triangle",
    "from_classical_code",
    "from_css_matrices",
    "homology_dim",
    "link",
    "skeleton",
    "systole",
    "validate",
]
