"""
Data models for ramcode.
"""

from .base import BaseModel
from .files import ChainComplexFile, CodeFile, ProductFile, SimplicialComplexFile
from .reports import (
    BuildReport,
    DecodeOutcome,
    DecodeStatus,
    DegreeStats,
    DistanceReport,
    ExperimentConfig,
    GradeDegree,
    InspectReport,
    LinkSummary,
    LocalRadiusReport,
    ParamsReport,
    Provenance,
    SimulationReport,
    TrialClass,
    TriangleProfile,
    ValidationReport,
    VertexProfile,
    WeightReport,
)

__all__ = [
    "BaseModel",
    "BuildReport",
    "ChainComplexFile",
    "CodeFile",
    "DecodeOutcome",
    "DecodeStatus",
    "DegreeStats",
    "DistanceReport",
    "ExperimentConfig",
    "GradeDegree",
    "InspectReport",
    "LinkSummary",
    "LocalRadiusReport",
    "ParamsReport",
    "ProductFile",
    "Provenance",
    "SimplicialComplexFile",
    "SimulationReport",
    "TrialClass",
    "TriangleProfile",
    "ValidationReport",
    "VertexProfile",
    "WeightReport",
]
