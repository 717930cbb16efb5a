"""Kernel backend selection: compiled extension when available, numpy otherwise.

Set ``INSIGHTD_PURE_KERNELS=1`` to force the fallback (used by the
benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("INSIGHTD_PURE_KERNELS"):
    _impl = _pure
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND_NAME
lloyd = _impl.lloyd
dbscan_labels = _impl.dbscan_labels


def backends() -> dict[str, object]:
    """All importable backends by name (for benchmarks and tests)."""
    found: dict[str, object] = {_pure.BACKEND_NAME: _pure}
    try:
        from . import _ckernels

        found[_ckernels.BACKEND_NAME] = _ckernels
    except ImportError:
        pass
    return found
