"""Backend selection for the numeric hot loops.

The compiled extension ``_kernels`` is used when it imports; otherwise, or when
``LACUNARY_LDP_PURE=1`` is set, the numpy implementations in ``_kernels_py``
take over.  Both expose the same four functions.
"""
import os

from . import _kernels_py

if os.environ.get("LACUNARY_LDP_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.NAME
transfer_apply = _impl.transfer_apply
add_folded_cos = _impl.add_folded_cos
exp_sum = _impl.exp_sum
count_at_least = _impl.count_at_least

BACKENDS = {_kernels_py.NAME: _kernels_py}
try:
    from . import _kernels as _compiled
    BACKENDS[_compiled.NAME] = _compiled
except ImportError:
    pass
