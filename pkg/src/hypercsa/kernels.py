"""Kernel dispatch: compiled extension when present, pure Python otherwise.

Set HYPERCSA_PURE=1 in the environment to force the pure lane (used by the
backend comparison benchmark and by the test matrix).
"""
import os

if os.environ.get("HYPERCSA_PURE"):
    from . import _purekernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _purekernels as _impl

        BACKEND = "python"

suffix_array_ints = _impl.suffix_array_ints
adjust_cycle_walk = _impl.adjust_cycle_walk
encode_gap_stream = _impl.encode_gap_stream
decode_gap_block = _impl.decode_gap_block
decode_gap_all = _impl.decode_gap_all
