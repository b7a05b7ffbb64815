#!/usr/bin/env python3
"""
Main entry point for the Artinlab CLI when run as a module.
"""

from artinlab.cli import main

if __name__ == "__main__":
    main()
