"""Backend selection for the compute kernels.

The compiled extension is preferred when importable; the pure-Python twin
is the fallback and can be forced with CONJCAP_BACKEND=pure (CONJCAP_BACKEND=c
insists on the extension and raises if it is missing).  Both expose the
same functions and produce bitwise-identical results.
"""

from __future__ import annotations

import os

_choice = os.environ.get("CONJCAP_BACKEND", "").strip().lower()

if _choice == "pure":
    from . import _kernels_py as _impl
elif _choice == "c":
    from . import _kernels_c as _impl  # type: ignore[attr-defined]
elif _choice == "":
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl
else:
    raise ImportError(
        f"CONJCAP_BACKEND={_choice!r} not recognized; use 'c' or 'pure'"
    )

BACKEND = _impl.BACKEND_NAME
splitmix64_next = _impl.splitmix64_next
hbar_raw = _impl.hbar_raw
min_edge_value = _impl.min_edge_value
ascent_chunk = _impl.ascent_chunk
