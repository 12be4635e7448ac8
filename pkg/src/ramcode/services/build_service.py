"""
Build service: complexes, classical codes and product codes.
"""

from typing import Optional, Sequence, Tuple, Union

from ..core.config import settings
from ..core.exceptions import ShapeMismatchError
from ..core.logging import get_module_logger
from ..codes.classical import (
    BipartiteCode,
    code_distance,
    estimate_decoder_radius,
    path_code,
    random_regular_ldpc,
)
from ..codes.product import ProductCode, build_product
from ..complexes.chain import ChainComplex, validate
from ..complexes.lsv import build_quotient, build_structure, summarize_links
from ..complexes.simplicial import SimplicialComplex, degree_stats, fixture_torus
from ..models.reports import BuildReport, ExperimentConfig, GradeDegree, Provenance

logger = get_module_logger("services.build")


def parse_poly(text: str) -> Tuple[int, ...]:
    """``"1,1,1"`` -> (1, 1, 1), constant term first."""
    try:
        coeffs = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError as exc:
        raise ShapeMismatchError(f"bad polynomial {text!r}: {exc}") from exc
    if not coeffs:
        raise ShapeMismatchError("polynomial has no coefficients")
    return coeffs


class BuildService:
    """Builds the objects the CLI writes to disk."""

    def torus(self, r: int, c: int) -> SimplicialComplex:
        X = fixture_torus(r, c)
        logger.info(f"torus T({r},{c}): face counts {X.face_counts}")
        return X

    def lsv(
        self,
        q: int,
        d: int,
        e: int,
        poly: Sequence[int],
        max_size: Optional[int] = None,
        with_links: bool = True,
    ) -> Tuple[SimplicialComplex, BuildReport]:
        max_size = max_size or settings.lsv.max_group_size
        algebra = build_structure(q, d, e, poly)
        built = build_quotient(algebra, max_size)
        X = built.complex
        stats = degree_stats(X)
        report = BuildReport(
            config=ExperimentConfig(
                command="build lsv",
                parameters={"q": q, "d": d, "e": e, "poly": list(poly), "max_size": max_size},
                version=settings.version,
            ),
            group_size=X.n_vertices,
            generators=built.generators,
            face_counts=list(X.face_counts),
            vertex_degree=stats.for_grade(0),
            edge_triangle_degree=stats.for_grade(1) if X.dimension >= 2 else GradeDegree(grade=1, min_degree=0, max_degree=0),
            link=summarize_links(X) if with_links and X.dimension >= 2 else None,
            validation=validate(X.chain),
        )
        logger.info(f"LSV quotient q={q}, e={e}: {X.n_vertices} vertices, face counts {X.face_counts}")
        return X, report

    def code(
        self,
        kind: str,
        m: Optional[int] = None,
        n: Optional[int] = None,
        dv: Optional[int] = None,
        dc: Optional[int] = None,
        seed: Optional[int] = None,
        radius_trials: Optional[int] = None,
    ) -> BipartiteCode:
        if kind == "path":
            if m is None:
                raise ShapeMismatchError("path code needs --m")
            return path_code(m)
        if kind == "ldpc":
            if n is None or dv is None or dc is None:
                raise ShapeMismatchError("LDPC code needs --n, --dv and --dc")
            seed = seed if seed is not None else settings.simulation.seed
            return self.ldpc(n, dv, dc, seed, radius_trials)
        raise ShapeMismatchError(f"unknown code kind {kind!r}; expected 'path' or 'ldpc'")

    def ldpc(self, n: int, dv: int, dc: int, seed: int, radius_trials: Optional[int] = None) -> BipartiteCode:
        """Random LDPC code whose decoder radius is the empirical estimate, capped by d."""
        code = random_regular_ldpc(n, dv, dc, seed)
        distance = code_distance(code)
        measured = distance.value if distance.provenance == Provenance.MEASURED else None
        radius = estimate_decoder_radius(code, trials=radius_trials, seed=seed, distance=measured)
        logger.info(f"LDPC({n}, {dv}, {dc}) seed {seed}: k = {code.k}, d = {distance.value}, radius {radius}")
        return code.with_radius(radius, distance)

    def product(self, X: Union[SimplicialComplex, ChainComplex], Y: BipartiteCode) -> ProductCode:
        return build_product(X, Y)
