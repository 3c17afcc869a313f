"""Backend selection for the hot Bell-Mermin kernels.

Prefers the compiled extension, falling back to the pure-Python twin when the
extension was not built.  Set ``ECSIM_KERNELS=python`` or
``ECSIM_KERNELS=compiled`` to force a backend (the latter raises if the
extension is unavailable).
"""

from __future__ import annotations

import importlib
import os

_MODULES = {
    "python": "ecsim._kernels_py",
    "compiled": "ecsim._kernels",
}


def load_backend(name: str):
    """Import and return one kernel backend module by name."""
    if name not in _MODULES:
        raise ValueError(f"unknown kernel backend {name!r}")
    return importlib.import_module(_MODULES[name])


def _select():
    forced = os.environ.get("ECSIM_KERNELS", "").strip().lower()
    if forced:
        return load_backend(forced)
    try:
        return load_backend("compiled")
    except ImportError:
        return load_backend("python")


_impl = _select()

BACKEND = _impl.BACKEND
MINUS_ALPHA_CUTOFF = _impl.MINUS_ALPHA_CUTOFF
ghz_parity_correlator = _impl.ghz_parity_correlator
fock_parity_correlator = _impl.fock_parity_correlator
ghz_threshold_correlator = _impl.ghz_threshold_correlator
mermin_parity = _impl.mermin_parity
mermin_threshold = _impl.mermin_threshold
