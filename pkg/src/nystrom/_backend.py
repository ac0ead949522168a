"""Select the error-streaming kernel: compiled if importable, else Python."""
from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNELS = {"python": _kernels_py}
if _compiled is not None:
    KERNELS["cython"] = _compiled

default_kernel = _compiled if _compiled is not None else _kernels_py
BACKEND = default_kernel.BACKEND


def get_kernel(name=None):
    """Return the kernel module named ``name`` (``"cython"`` or ``"python"``)."""
    if name is None:
        return default_kernel
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(KERNELS)}") from None
