"""
Services used by the command-line interface.
"""

from .build_service import BuildService, parse_poly
from .decode_service import DecodeService, DecodeSession, ErrorType
from .params_service import ParamsService, parse_budget
from .simulation_service import SimulationService, classify, trial_error
from .storage import StorageService

__all__ = [
    "BuildService",
    "DecodeService",
    "DecodeSession",
    "ErrorType",
    "ParamsService",
    "SimulationService",
    "StorageService",
    "classify",
    "parse_budget",
    "parse_poly",
    "trial_error",
]
