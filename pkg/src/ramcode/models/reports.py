"""
Report models for ramcode: decoder outcomes, distances, parameters and
Monte Carlo summaries.
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import Field

from ..linalg.gf2 import BitVector, SearchMode
from .base import BaseModel


class DecodeStatus(str, Enum):
    """Decoder outcome status."""

    SUCCESS = "success"
    STALLED = "stalled"
    BUDGET_EXCEEDED = "budget_exceeded"


class Provenance(str, Enum):
    """Where a reported distance comes from."""

    MEASURED = "measured"
    PREDICTED = "predicted"
    LOWER_BOUNDED = "lower_bounded"
    UNDEFINED = "undefined"


class TrialClass(str, Enum):
    """Classification of one simulated trial."""

    SUCCESS = "success"
    STALL = "stall"
    EQUIVALENCE_FAILURE = "equivalence_failure"
    BUDGET_EXCEEDED = "budget_exceeded"


class DecodeOutcome(BaseModel):
    """Result of a decoder run.

    ``correction`` is the support of the proposed correction; ``syndrome_weights``
    is the weight trace of the residual syndrome, starting with the input.
    """

    length: int = Field(ge=0, description="Length of the correction vector")
    correction: List[int] = Field(default_factory=list, description="Support of the correction")
    status: DecodeStatus = Field(description="Outcome status")
    iterations: int = Field(default=0, ge=0)
    syndrome_weights: List[int] = Field(default_factory=list)
    diagnostics: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_vector(
        cls,
        correction: BitVector,
        status: DecodeStatus,
        iterations: int = 0,
        syndrome_weights: Optional[List[int]] = None,
        diagnostics: Optional[Dict[str, Any]] = None,
    ) -> "DecodeOutcome":
        return cls(
            length=correction.length,
            correction=list(correction.support),
            status=status,
            iterations=iterations,
            syndrome_weights=list(syndrome_weights or []),
            diagnostics=dict(diagnostics or {}),
        )

    @property
    def succeeded(self) -> bool:
        return self.status == DecodeStatus.SUCCESS

    def correction_vector(self) -> BitVector:
        return BitVector.from_support(self.length, self.correction)


class DistanceReport(BaseModel):
    """A (co)systole or code distance with its provenance."""

    value: Optional[int] = Field(default=None, ge=0)
    provenance: Provenance
    mode: Optional[SearchMode] = Field(default=None, description="Search mode that produced the value")
    witness: Optional[List[int]] = Field(default=None, description="Support of a minimum-weight witness")
    candidates: Optional[int] = Field(default=None, ge=0)
    note: Optional[str] = None

    @classmethod
    def undefined(cls, note: str = "trivial homology") -> "DistanceReport":
        return cls(provenance=Provenance.UNDEFINED, note=note)

    @classmethod
    def predicted(cls, value: Optional[int], note: Optional[str] = None) -> "DistanceReport":
        if value is None:
            return cls(provenance=Provenance.UNDEFINED, note=note)
        return cls(value=value, provenance=Provenance.PREDICTED, note=note)


class ValidationReport(BaseModel):
    """Result of a boundary-composition check."""

    ok: bool
    grade: Optional[int] = Field(default=None, description="Grade p with a nonzero composition")
    face: Optional[int] = Field(default=None, description="First offending p-face")
    message: Optional[str] = None


class GradeDegree(BaseModel):
    """How many (p+1)-faces contain a p-face, over all p-faces."""

    grade: int = Field(ge=0)
    min_degree: int = Field(ge=0)
    max_degree: int = Field(ge=0)


class DegreeStats(BaseModel):
    """Per-grade incidence degrees of a complex."""

    grades: List[GradeDegree] = Field(default_factory=list)

    def for_grade(self, p: int) -> GradeDegree:
        for entry in self.grades:
            if entry.grade == p:
                return entry
        raise KeyError(p)


class WeightReport(BaseModel):
    """LDPC weight audit of a product code against its component bounds."""

    complex_w_x_row: int = Field(description="Max row weight of H_X of the complex")
    complex_w_z_row: int = Field(description="Max row weight of H_Z of the complex")
    complex_w_z_col: int = Field(description="Max column weight of H_Z of the complex")
    code_row: int = Field(description="Max row weight of the classical check matrix")
    code_col: int = Field(description="Max column weight of the classical check matrix")
    product_w_x: int
    product_w_z: int
    bound_w_x: int
    bound_w_z: int
    passed: bool


class ExperimentConfig(BaseModel):
    """Fully resolved parameters of one CLI invocation."""

    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    budget: Optional[int] = None
    inputs: Dict[str, str] = Field(default_factory=dict)
    outputs: Dict[str, str] = Field(default_factory=dict)
    version: str


class ParamsReport(BaseModel):
    """[[N, K, D_X, D_Z]] of a code, measured and predicted."""

    config: ExperimentConfig
    n: int
    k: int
    d_x: DistanceReport
    d_z: DistanceReport
    predicted_d_x: DistanceReport
    predicted_d_z: DistanceReport
    weights: Optional[WeightReport] = None
    witness_check: Optional[bool] = Field(
        default=None, description="Tensor witness verified as a non-trivial cycle"
    )


class SimulationReport(BaseModel):
    """Aggregated bounded-weight Monte Carlo run."""

    config: ExperimentConfig
    version: str
    trials: int
    successes: int
    stalls: int
    equivalence_failures: int
    budget_exceeded: int = 0
    mean_iterations: float
    stall_rate: float
    failures: List[int] = Field(default_factory=list, description="Trial indices that were not successes")


class InspectReport(BaseModel):
    """Summary of a complex or product file."""

    kind: str
    dimension: int
    face_counts: List[int]
    validation: ValidationReport
    degree_stats: DegreeStats
    homology: Optional[Dict[str, int]] = None
    cohomology: Optional[Dict[str, int]] = None
    details: Dict[str, Any] = Field(default_factory=dict)


class LinkSummary(BaseModel):
    """Structure shared by every vertex link of a built complex."""

    vertices: int
    regular_degree: Optional[int]
    bipartite: bool
    girth: Optional[int]
    uniform: bool = Field(description="Every link has the same structure")


class BuildReport(BaseModel):
    """Summary of a quotient complex build."""

    config: ExperimentConfig
    group_size: int
    generators: int
    face_counts: List[int]
    vertex_degree: GradeDegree
    edge_triangle_degree: GradeDegree
    link: Optional[LinkSummary] = None
    validation: ValidationReport


class VertexProfile(BaseModel):
    """Triangles around one vertex, split by how a 1-cochain meets them."""

    vertex: int
    t1_good: int = Field(description="One edge in the cochain, and it touches the vertex")
    t1_neutral: int = Field(description="One edge in the cochain, not touching the vertex")
    t2_bad: int = Field(description="Two edges in the cochain, one touching the vertex")
    t2_neutral: int = Field(description="Two edges in the cochain, both touching the vertex")


class TriangleProfile(BaseModel):
    """How the triangles of a complex meet a 1-cochain."""

    t1: int
    t2: int
    t3: int
    vertices: List[VertexProfile] = Field(default_factory=list)


class LocalRadiusReport(BaseModel):
    """Designed radius of local coboundary decoding on a complex."""

    gamma: float
    fraction_of_cosystole: float
    n_edges: int
    vertex_degree: int
    edge_triangle_degree: int
    size_threshold: float = Field(description="Edge count from which the radius applies")
    radius: int
