"""Hot numerical kernels with a compiled core and a numpy fallback.

The compiled Cython extension is preferred; ``TWOCOPY_PURE_PYTHON=1``
forces the numpy implementation. Both backends expose identical
signatures and agree to within a few ulp.
"""

from __future__ import annotations

import os

if os.environ.get("TWOCOPY_PURE_PYTHON"):
    from . import _fallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _fallback as _impl

        BACKEND = "python"

purity = _impl.purity
partial_trace = _impl.partial_trace
reduced_purity = _impl.reduced_purity
two_copy_expect = _impl.two_copy_expect

__all__ = ["BACKEND", "purity", "partial_trace", "reduced_purity", "two_copy_expect"]
