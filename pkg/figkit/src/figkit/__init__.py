"""Render sweep CSV files into the standard figure set.

Input is the fixed-schema CSV produced by the `su3dicke sweep` command;
no physics is computed here, only display.
"""

__version__ = "0.1.0"

from .render import FigureSpec, RenderError, render

__all__ = ["FigureSpec", "RenderError", "render", "__version__"]
