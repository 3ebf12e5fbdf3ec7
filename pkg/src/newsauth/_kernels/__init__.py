"""Hot-kernel backend selection.

The compiled Cython extension is preferred when it was built; otherwise
the numpy implementations take over transparently.  Set
``NEWSAUTH_KERNELS=python`` or ``NEWSAUTH_KERNELS=compiled`` to force a
backend (the latter raises if the extension is unavailable).
"""

import os

from . import pykernels

_requested = os.environ.get("NEWSAUTH_KERNELS", "").strip().lower()

if _requested == "python":
    _impl = pykernels
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "NEWSAUTH_KERNELS=compiled but the extension is not built; "
                "reinstall with a C toolchain available"
            )
        _impl = pykernels

BACKEND = _impl.BACKEND
lstm_gates_forward = _impl.lstm_gates_forward
lstm_gates_backward = _impl.lstm_gates_backward
gbt_split_scan = _impl.gbt_split_scan


def available_backends():
    """Names of the backends importable in this installation."""
    names = ["python"]
    try:
        from . import _core  # noqa: F401
        names.insert(0, "compiled")
    except ImportError:
        pass
    return names


def get_backend(name: str):
    """Fetch a specific backend module (for tests and benchmarks)."""
    if name == "python":
        return pykernels
    if name == "compiled":
        from . import _core
        return _core
    raise ValueError(f"unknown kernel backend {name!r}")
