"""
Main entry point for the Möbius zero toolkit.
"""
import sys

from mobius_zero.cli import main

if __name__ == "__main__":
    sys.exit(main())
