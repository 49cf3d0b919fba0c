"""Summability diagnostics for sequences of closed sets.

Thin python layer over the C++ core: Wijsman distance traces, Cesaro
submethod / deferred / strong means, statistical densities, ideal-convergence
verdicts, and the builtin scenario catalog.
"""

from ._summa import *  # noqa: F401,F403
from ._summa import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = (__doc__ or "") + "\n\n" + (_core_doc or "")
