"""Select the compiled kernels when available, else the numpy fallback.

Set ``BEREZIN_LAB_PURE_PYTHON=1`` to force the fallback.
"""
import os

_impl = None
BACKEND = "python"
if os.environ.get("BEREZIN_LAB_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = None
if _impl is None:
    from . import _pykernels as _impl

jacobi_eigh = _impl.jacobi_eigh
kernel_forms = _impl.kernel_forms
prepare = _impl.prepare

HARDY = 0
BERGMAN = 1
