"""Kernel backend selection.

The training inner loops exist twice: a compiled extension
(``filread._ckernels``) and a pure numpy fallback (``filread._pykernels``)
with identical semantics.  The compiled module is preferred when it
imports cleanly; otherwise the fallback is used transparently.

Set ``FILREAD_KERNELS=python`` to force the fallback, or
``FILREAD_KERNELS=cython`` to require the extension (ImportError if it
is unavailable).  ``BACKEND`` names whichever backend won.
"""

from __future__ import annotations

import os

from . import _pykernels
from ._pykernels import logreg_forward, logreg_loss_grad

__all__ = ["BACKEND", "logreg_fit", "svm_fit_binary",
           "logreg_forward", "logreg_loss_grad"]

_requested = os.environ.get("FILREAD_KERNELS", "").strip().lower()

if _requested == "python":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        _impl = _pykernels
        BACKEND = "python"

logreg_fit = _impl.logreg_fit
svm_fit_binary = _impl.svm_fit_binary
