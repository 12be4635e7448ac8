"""
Main application entry point for ramcode.
"""

import sys

from .cli import app
from .core.logging import get_module_logger

logger = get_module_logger("main")


def main():
    """Main application entry point."""
    try:
        app()
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        sys.exit(130)


if __name__ == "__main__":
    main()
