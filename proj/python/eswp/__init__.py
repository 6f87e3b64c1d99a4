"""Condensate bouncing on an evanescent standing-wave mirror.

Thin re-export of the compiled extension. Fields are exchanged as complex
numpy arrays of shape (nz, nx).
"""

from ._eswp import *  # noqa: F401,F403
from ._eswp import __version__  # noqa: F401
