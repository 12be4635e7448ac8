"""
Command-line interface for ramcode.
"""

from .main import app

__all__ = ["app"]
