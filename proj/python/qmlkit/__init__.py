"""Statevector simulator, quantum-kernel SVMs, and a variational QNN classifier.

The compiled extension module carries the full API; this package simply
re-exports it.
"""

from qmlkit._core import *  # noqa: F401,F403
from qmlkit._core import __version__  # noqa: F401
