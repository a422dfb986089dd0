"""Kernel selection: compiled extension when available, pure Python otherwise.

The compiled kernels work on int64, so they are only used when every
scaled value, partial sum, and encoded state key provably fits. Set the
environment variable ``NETCACHE_PURE=1`` to force the pure-Python kernels
(useful for benchmarking and for cross-checking the two implementations).
"""

from __future__ import annotations

import os

from . import _core_py as pure

try:
    from . import _core as compiled  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    compiled = None

_INT64_MAX = 2**62  # one bit of headroom below the real limit


def _force_pure() -> bool:
    return os.environ.get("NETCACHE_PURE", "") not in ("", "0")


def have_compiled() -> bool:
    return compiled is not None and not _force_pure()


def fits_compiled_capdp(caps, sizes, gains) -> bool:
    if len(caps) > 62:
        return False
    state_space = 1
    for cap in caps:
        state_space *= cap + 1
    if state_space > _INT64_MAX:
        return False
    total_gain = sum(sum(gi) for gi in gains)
    return total_gain < _INT64_MAX


def fits_compiled_brute(subsets, gains) -> bool:
    if len(subsets) > 62:
        return False
    if gains and len(gains[0]) > 62:
        return False
    total_gain = sum(sum(gu) for gu in gains)
    return total_gain < _INT64_MAX


def capdp(caps, sizes, gains, adj_masks):
    if have_compiled() and fits_compiled_capdp(caps, sizes, gains):
        return compiled.capdp(caps, sizes, gains, adj_masks)
    return pure.capdp(caps, sizes, gains, adj_masks)


def brute_force(subsets, adj_masks, gains):
    if have_compiled() and fits_compiled_brute(subsets, gains):
        return compiled.brute_force(subsets, adj_masks, gains)
    return pure.brute_force(subsets, adj_masks, gains)
