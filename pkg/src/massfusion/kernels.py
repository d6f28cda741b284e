"""Kernel backend selection.

Imports the compiled clause-mask kernels when the extension is available,
falling back to the pure-Python implementation otherwise.  Set
``MASSFUSION_KERNEL=pure`` (or ``compiled``) to force a backend; forcing
``compiled`` raises if the extension is missing.
"""

import os

_choice = os.environ.get("MASSFUSION_KERNEL", "").strip().lower()

if _choice == "pure":
    from . import _pykernels as _impl
elif _choice == "compiled":
    from . import _ckernels as _impl  # type: ignore[attr-defined]
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
absorb_masks = _impl.absorb_masks
intersect_canon = _impl.intersect_canon
union_canon = _impl.union_canon
