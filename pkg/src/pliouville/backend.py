"""Select the march kernel at import time.

The compiled extension is preferred; the pure-Python twin is used when
the extension is missing or when the environment variable
``PLIOUVILLE_PURE`` is set to a nonempty value other than ``0``.
"""

from __future__ import annotations

import os

from . import _march_py

_FORCE_PURE = os.environ.get("PLIOUVILLE_PURE", "").strip() not in ("", "0")

if not _FORCE_PURE:
    try:
        from . import _march as _impl
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _march_py
else:
    _impl = _march_py

march = _impl.march
BACKEND = _impl.BACKEND


def available_backends() -> tuple[str, ...]:
    names = ["pure"]
    try:
        from . import _march  # noqa: F401
        names.insert(0, "compiled")
    except ImportError:  # pragma: no cover
        pass
    return tuple(names)


def get_march(backend: str):
    """Fetch a specific kernel implementation ("compiled" or "pure")."""
    if backend == "pure":
        return _march_py.march
    if backend == "compiled":
        from . import _march
        return _march.march
    raise ValueError(f"unknown backend {backend!r}")
