"""Resonances, transfer operators and period functions of Hecke triangle groups."""

from ._reslab import *  # noqa: F401,F403
from ._reslab import __version__  # noqa: F401
