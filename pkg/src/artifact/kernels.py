"""Kernel selection: compiled extension when built, numpy fallback otherwise.

Set ARTIFACT_PURE=1 to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if not os.environ.get("ARTIFACT_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

refine = _impl.refine
pair_sync_level = _impl.pair_sync_level
image_chain = _impl.image_chain
canonical_labels = _impl.canonical_labels
