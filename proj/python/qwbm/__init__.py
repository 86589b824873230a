"""Tree Bayesian networks, amplitude-estimation inference, and wafer-map
classification. Thin wrapper re-exporting the compiled core."""

from qwbm._core import *  # noqa: F401,F403
from qwbm import _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
