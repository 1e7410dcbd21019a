"""Backend selection for the skew-series kernel.

The compiled extension sl1d._core is preferred when importable; the
pure-Python twin sl1d._core_py is the fallback.  Set SL1D_KERNEL=py to
force the fallback, SL1D_KERNEL=c to require the compiled backend.
Both expose the same Kernel API and are cross-checked in the test suite.
"""

from __future__ import annotations

import os

from .errors import ConfigError

_FORCED = os.environ.get("SL1D_KERNEL", "").strip().lower()
if _FORCED not in ("", "py", "c"):
    raise ConfigError(f"SL1D_KERNEL must be 'py' or 'c', got {_FORCED!r}")

if _FORCED == "py":
    from . import _core_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _FORCED == "c":
            raise ConfigError(
                "SL1D_KERNEL=c but the compiled kernel is not built"
            ) from None
        from . import _core_py as _impl

        BACKEND = "python"


def make_kernel(tower, m, backend=None):
    """Kernel bound to a tower's tables at precision m.

    `backend` overrides the module-level selection ('py' or 'c'); the
    benchmark uses this to time both implementations side by side.
    """
    if backend is None:
        impl = _impl
    elif backend == "py":
        from . import _core_py as impl
    elif backend == "c":
        from . import _core as impl  # raises ImportError if not built
    else:
        raise ConfigError(f"unknown kernel backend {backend!r}")
    return impl.Kernel(
        tower.p,
        tower.ell,
        m,
        tower.Q,
        tower.exp,
        tower.log,
        tower.frob,
        tower._add_table,
        tower.neg_table,
    )
