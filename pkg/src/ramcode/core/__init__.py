"""
Core infrastructure: settings, logging and errors.
"""

from .config import Settings, settings
from .logging import get_module_logger, setup_logging

__all__ = ["Settings", "settings", "get_module_logger", "setup_logging"]
