"""
Rendering adapters.

Static persistence diagrams written as standalone SVG files.
"""

from .diagram import diagram_points, render_diagram

__all__ = ["diagram_points", "render_diagram"]
