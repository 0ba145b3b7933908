"""Kernel selection.  The compiled module is used when it imports and
``FNMETRIC_PURE`` is unset; otherwise the pure-Python twin."""
import os

if os.environ.get("FNMETRIC_PURE"):
    from ._pykernels import *  # noqa: F401,F403
    from ._pykernels import BACKEND, ROT
else:
    try:
        from ._ckernels import *  # noqa: F401,F403
        from ._ckernels import BACKEND, ROT
    except ImportError:
        from ._pykernels import *  # noqa: F401,F403
        from ._pykernels import BACKEND, ROT
