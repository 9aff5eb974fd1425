"""Phase-diagram rendering for portrait.json documents.

This package consumes only the JSON artifacts written by the ``olgdyn``
command-line tool; it has no dependency on the numerical library itself.
"""

from .render import render_portrait

__all__ = ["render_portrait"]
__version__ = "1.0.0"
