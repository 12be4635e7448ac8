"""
Parameter service: [[N, K, D_X, D_Z]] reports and file inspection.
"""

import re
from typing import Dict, Optional, Union

from ..core.config import settings
from ..core.exceptions import BudgetExceededError, ShapeMismatchError
from ..core.logging import get_module_logger
from ..codes.classical import minimum_weight_codeword
from ..codes.product import ProductCode, is_nontrivial_cycle, product_params, tensor_witness, weight_audit
from ..complexes.chain import ChainComplex, cohomology_dim, homology_dim, systole, validate
from ..complexes.simplicial import SimplicialComplex, chain_degree_stats, degree_stats
from ..linalg.gf2 import BitVector
from ..models.reports import ExperimentConfig, InspectReport, ParamsReport, Provenance

logger = get_module_logger("services.params")

_POWER = re.compile(r"^\s*(\d+)\s*(?:\^|\*\*)\s*(\d+)\s*$")


def parse_budget(text: Union[str, int, None]) -> int:
    """``"2^22"``, ``"2**22"`` or a plain integer."""
    if text is None:
        return settings.linalg.enumeration_budget
    if isinstance(text, int):
        value = text
    else:
        match = _POWER.match(text)
        try:
            value = int(match.group(1)) ** int(match.group(2)) if match else int(text.strip())
        except ValueError as exc:
            raise ShapeMismatchError(f"bad budget {text!r}; use an integer or a^b") from exc
    if value < 1:
        raise ShapeMismatchError(f"budget must be positive, got {value}")
    return value


class ParamsService:
    """Computes code parameters and summaries of stored objects."""

    def params(
        self,
        P: ProductCode,
        budget: Optional[int] = None,
        cap: Optional[int] = None,
        inputs: Optional[Dict[str, str]] = None,
        outputs: Optional[Dict[str, str]] = None,
    ) -> ParamsReport:
        budget = budget or settings.linalg.enumeration_budget
        result = product_params(P, budget=budget, cap=cap)
        report = ParamsReport(
            config=ExperimentConfig(
                command="params",
                parameters={"cap": cap},
                budget=budget,
                inputs=dict(inputs or {}),
                outputs=dict(outputs or {}),
                version=settings.version,
            ),
            n=result.n,
            k=result.k,
            d_x=result.d_x,
            d_z=result.d_z,
            predicted_d_x=result.predicted_d_x,
            predicted_d_z=result.predicted_d_z,
            weights=weight_audit(P),
            witness_check=self.witness_check(P, budget) if result.k else None,
        )
        logger.info(f"params: N={report.n}, K={report.k}, D_X={report.d_x.value}, D_Z={report.d_z.value}")
        return report

    def witness_check(self, P: ProductCode, budget: int) -> Optional[bool]:
        """Build z_X ⊗ z_Y from minimum-weight witnesses and test it is a non-trivial cycle."""
        try:
            cycle = systole(P.X, 1, budget=budget)
            codeword = minimum_weight_codeword(P.Y, budget)
        except BudgetExceededError as exc:
            logger.warning(f"tensor witness skipped: {exc.message}")
            return None
        if cycle.provenance != Provenance.MEASURED or cycle.witness is None or codeword is None:
            return None
        w = tensor_witness(P, BitVector.from_support(P.layout.n_x1, cycle.witness), codeword)
        return is_nontrivial_cycle(P, w)

    def inspect(
        self, obj: Union[ProductCode, SimplicialComplex, ChainComplex], homology: bool = False
    ) -> InspectReport:
        details: Dict[str, object] = {}
        if isinstance(obj, ProductCode):
            kind, chain = "product", obj.complex
            stats = chain_degree_stats(chain)
            audit = weight_audit(obj)
            details = {
                "n": obj.n,
                "code_kind": obj.Y.kind.value,
                "code_shape": list(obj.Y.h.shape),
                "w_x": audit.product_w_x,
                "w_z": audit.product_w_z,
            }
        elif isinstance(obj, SimplicialComplex):
            kind, chain = "simplicial", obj.chain
            stats = degree_stats(obj)
        else:
            kind, chain = "chain", obj
            stats = chain_degree_stats(obj)
        report = InspectReport(
            kind=kind,
            dimension=chain.dimension,
            face_counts=list(chain.face_counts),
            validation=validate(chain),
            degree_stats=stats,
            details=details,
        )
        if homology:
            grades = range(chain.dimension + 1)
            report.homology = {str(p): homology_dim(chain, p) for p in grades}
            report.cohomology = {str(p): cohomology_dim(chain, p) for p in grades}
        return report
