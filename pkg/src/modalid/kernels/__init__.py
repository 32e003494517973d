"""Backend selection for the backbone integration kernels.

Prefers the compiled extension; falls back to the pure-Python reference
when the extension is missing or the MODALID_PURE_PYTHON environment
variable is set to a non-empty value other than "0". Both backends are
bit-identical by construction (see reference.py / _core.pyx).
"""

import os

from . import reference

try:
    from . import _core
except ImportError:
    _core = None

_force_pure = os.environ.get("MODALID_PURE_PYTHON", "") not in ("", "0")
if _core is not None and not _force_pure:
    _active = _core
else:
    _active = reference

BACKEND = _active.BACKEND
integrate_chord = _active.integrate_chord
integrate_chained = _active.integrate_chained


def backends():
    """Name -> kernel module for every importable backend."""
    found = {"python": reference}
    if _core is not None:
        found["compiled"] = _core
    return found
