"""Hot-kernel dispatch: compiled Cython core when importable, numpy reference otherwise.

Set SKEWSF_PURE_PY=1 to force the reference implementation.
"""

import os

from . import _ref

_impl = _ref
if os.environ.get("SKEWSF_PURE_PY") != "1":
    try:
        from . import _core  # type: ignore[attr-defined]

        _impl = _core
    except ImportError:
        pass

IMPL_NAME = _impl.IMPL_NAME

digit_add_vec = _impl.digit_add_vec
lin_closure = _impl.lin_closure
mul_table = _impl.mul_table
gf2_mat_mul = _impl.gf2_mat_mul
gf2_mat_inv = _impl.gf2_mat_inv
spreadset_chunk_gf2 = _impl.spreadset_chunk_gf2


def implementations():
    """All importable kernel implementations, for tests and benchmarks."""
    impls = {"reference": _ref}
    try:
        from . import _core  # type: ignore[attr-defined]

        impls["compiled"] = _core
    except ImportError:
        pass
    return impls
