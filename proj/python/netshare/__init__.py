"""Two-operator cellular rate analysis with spectrum and infrastructure sharing."""

from ._netshare import *  # noqa: F401,F403
from ._netshare import __version__  # noqa: F401
