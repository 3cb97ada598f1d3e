"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy fallback is
functionally identical. ``FOCKBUNDLE_BACKEND=python|compiled`` forces a
choice (the benchmark uses this to compare both).
"""

import os

from . import _core_py

_FORCE = os.environ.get("FOCKBUNDLE_BACKEND", "")

if _FORCE == "python":
    _impl = _core_py
elif _FORCE == "compiled":
    from . import _core as _impl
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _core_py

eval_terms = _impl.eval_terms
aberth = _impl.aberth


def backend_name():
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return _impl.BACKEND_NAME
