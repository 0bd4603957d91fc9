"""Kernel selection.

The compiled kernel is preferred when it imported cleanly; setting
REALFORMS_KERNEL=pure forces the Python fallback (used by the benchmark
driver and as an escape hatch on platforms without a C compiler).
"""

import os

_choice = os.environ.get("REALFORMS_KERNEL", "").strip().lower()

if _choice in ("pure", "py", "python"):
    from . import _kernel_py as _kernel
elif _choice in ("c", "compiled", "cython"):
    from . import _kernel as _kernel  # type: ignore[no-redef]
else:
    try:
        from . import _kernel as _kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as _kernel  # type: ignore[no-redef]

Rational = _kernel.Rational
BACKEND = _kernel.BACKEND
mono_mul = _kernel.mono_mul
mono_divides = _kernel.mono_divides
mono_div = _kernel.mono_div
mono_lcm = _kernel.mono_lcm
mono_deg = _kernel.mono_deg
