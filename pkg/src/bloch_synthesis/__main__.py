"""
CLI entry point for the synthesis tools.
Allows running the command line with: python -m bloch_synthesis
"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
