"""
Command-line package.

argparse subcommands over the domain and use cases, with pydantic reports.
"""

from .commands import build_parser, run_command
from .models import Report, RunConfig

__all__ = ["build_parser", "run_command", "Report", "RunConfig"]
