"""Backend selection for the enumeration kernels.

The compiled extension is preferred when it built; otherwise the
pure-Python twins take over.  Callers that exceed the 64-bit limits of
the compiled loops (very wide tables, >63 variables) are routed to the
pure twins regardless, whose Python integers are unbounded.
"""

from __future__ import annotations

from . import _kernels_py as _py

try:  # pragma: no cover - exercised only when the extension built
    from . import _kernels as _c  # type: ignore[attr-defined]
except ImportError:
    _c = None

BACKEND = "compiled" if _c is not None else "pure-python"


def backend() -> str:
    return BACKEND


def sat_lexmin(num_vars: int, pos_masks: list[int], neg_masks: list[int]) -> int:
    if _c is not None and num_vars <= 63:
        return _c.sat_lexmin(num_vars, pos_masks, neg_masks)
    return _py.sat_lexmin(num_vars, pos_masks, neg_masks)


def stable_lexmin(num_atoms, heads, pos_masks, neg_masks) -> int:
    if _c is not None and num_atoms <= 63:
        return _c.stable_lexmin(num_atoms, heads, pos_masks, neg_masks)
    return _py.stable_lexmin(num_atoms, heads, pos_masks, neg_masks)


def bn_positive(num_nodes, query_index, parent_bits, true_ok, false_ok) -> bool:
    small = num_nodes <= 63 and all(len(p) <= 6 for p in parent_bits)
    if _c is not None and small:
        return _c.bn_positive(num_nodes, query_index, parent_bits, true_ok, false_ok)
    return _py.bn_positive(num_nodes, query_index, parent_bits, true_ok, false_ok)


def csp01_lexmin(num_vars, scope_bits, allowed) -> int:
    small = num_vars <= 63 and all(len(b) <= 6 for b in scope_bits)
    if _c is not None and small:
        return _c.csp01_lexmin(num_vars, scope_bits, allowed)
    return _py.csp01_lexmin(num_vars, scope_bits, allowed)
