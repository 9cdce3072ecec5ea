#!/usr/bin/env python3
"""
Persistence Quillen-McCord toolkit.

This is the main entry point: python main.py <command> [options].
"""

from cli.commands import main

if __name__ == "__main__":
    main()
