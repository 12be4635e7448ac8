"""
On-disk JSON schemas for complexes and product codes.
"""

from typing import Dict, List, Union

from pydantic import Field, field_validator

from .base import BaseModel


class ChainComplexFile(BaseModel):
    """Abstract chain complex: ``boundaries[p-1]`` lists the ``[r, c]`` entries of the p-th boundary."""

    dimension: int = Field(ge=0)
    face_counts: List[int]
    boundaries: List[List[List[int]]]

    @field_validator("boundaries")
    @classmethod
    def check_entries(cls, v: List[List[List[int]]]) -> List[List[List[int]]]:
        for block in v:
            for entry in block:
                # [r, c] or [r, c, 1]
                if len(entry) not in (2, 3) or (len(entry) == 3 and entry[2] % 2 != 1):
                    raise ValueError(f"bad boundary entry {entry}")
        return v


class SimplicialComplexFile(BaseModel):
    """Simplicial complex as vertex count plus sorted face lists keyed by dimension."""

    vertices: int = Field(ge=0)
    faces: Dict[str, List[List[int]]] = Field(default_factory=dict)


class CodeFile(BaseModel):
    """Classical check matrix with its decoder contract."""

    n_checks: int = Field(ge=0)
    n_bits: int = Field(ge=0)
    entries: List[List[int]]
    kind: str = Field(default="custom")
    decoder_radius: int = Field(default=0, ge=0)


class ProductFile(BaseModel):
    """A product code: its input complex and classical code."""

    complex: Union[SimplicialComplexFile, ChainComplexFile]
    code: CodeFile
