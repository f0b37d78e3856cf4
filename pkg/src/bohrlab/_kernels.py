"""Backend selection for the hot evaluation kernels.

The compiled extension is used when it imports; set ``BOHRLAB_PURE=1`` to
force the numpy fallback.
"""
from __future__ import annotations

import os

from bohrlab import _pykernels

BACKEND = "python"
horner = _pykernels.horner
circle_values = _pykernels.circle_values

if os.environ.get("BOHRLAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from bohrlab import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        horner = _ckernels.horner
        circle_values = _ckernels.circle_values
