#!/usr/bin/env python3
"""
restrictcat entry point.

Runs the command-line interface, e.g. ``python main.py check fixtures/pfin2.json``.
"""

from restrictcat.cli import main

if __name__ == "__main__":
    main()
