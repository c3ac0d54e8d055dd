#!/usr/bin/env python3
"""
tlfree entry point: python run.py <subcommand> ...
"""
import sys

from tlfree_core.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
