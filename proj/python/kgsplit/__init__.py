"""Spectral splitting integrators for the nonlinear Klein-Gordon equation.

Thin wrapper over the compiled ``_core`` extension. Fields are exchanged as
complex128 numpy arrays shaped like the grid, spectral data in FFT order.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
