"""Backend selection for the hot loops.

The compiled module is preferred; set ``RECCONV_PURE_PYTHON=1`` to force the
pure-Python fallback.
"""

import os

from recconv import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("RECCONV_PURE_PYTHON"):
    try:
        from recconv import _kernels_c as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        pass

CONVERGED = _kernels_py.CONVERGED
EXHAUSTED = _kernels_py.EXHAUSTED
BLOWUP = _kernels_py.BLOWUP

convolve = _impl.convolve
eval_terms = _impl.eval_terms
iterate = _impl.iterate
