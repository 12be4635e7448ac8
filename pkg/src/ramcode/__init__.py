"""
ramcode - quantum CSS/LDPC codes from chain complexes

Distance-balancing products of 2-complexes with classical codes, explicit
quotients of the Cartwright–Steger lattice, and their decoders.
"""

__version__ = "0.3.0"
__description__ = "Quantum CSS/LDPC codes from chain complexes"

# Core imports
from .core.config import Settings
from .core.logging import setup_logging

# Initialize logging
setup_logging()

__all__ = [
    "__version__",
    "__description__",
    "Settings",
    "setup_logging",
]
