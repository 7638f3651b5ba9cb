"""Select the compiled kernels when available, else the pure-Python ones.

Set ``MULTIDEG_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("MULTIDEG_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

weyl_mono_mul = _impl.weyl_mono_mul
find_divisor = _impl.find_divisor
normal_form = _impl.normal_form
mul_terms = _impl.mul_terms

__all__ = ["BACKEND", "weyl_mono_mul", "find_divisor", "normal_form", "mul_terms"]
