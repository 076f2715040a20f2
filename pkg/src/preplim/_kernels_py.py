"""Pure-Python twins of the compiled enumeration kernels.

Each function mirrors the signature and the exact results of its
counterpart in ``_kernels.pyx``; the compiled module is preferred at
import time when it built (see ``_accel``).  Bit layouts are chosen by
the caller; these loops only enumerate and test masks.
"""

from __future__ import annotations


def sat_lexmin(num_vars: int, pos_masks: list[int], neg_masks: list[int]) -> int:
    """First assignment mask (ascending scan) satisfying every clause, else -1.

    A clause is satisfied by mask ``m`` iff ``pos & m`` or ``neg & ~m`` is
    non-zero.
    """
    clauses = list(zip(pos_masks, neg_masks))
    for m in range(1 << num_vars):
        for pos, neg in clauses:
            if not (pos & m) and not (neg & ~m):
                break
        else:
            return m
    return -1


def _subset_precedes(a: int, b: int) -> bool:
    """Order on atom sets as sorted index tuples: the mask holding the
    lowest differing bit comes first."""
    low = (a ^ b) & -(a ^ b)
    return bool(a & low)


def stable_lexmin(
    num_atoms: int, heads: list[int], pos_masks: list[int], neg_masks: list[int]
) -> int:
    """Lexicographically least stable-model mask, or -1 if none exists.

    A candidate mask I is stable iff the least model of the reduct
    (rules whose neg mask misses I, positive bodies only) equals I.
    """
    rules = list(zip(heads, pos_masks, neg_masks))
    best = -1
    for cand in range(1 << num_atoms):
        active = [(h, p) for h, p, n in rules if not (n & cand)]
        derived = 0
        changed = True
        while changed:
            changed = False
            for head, pos in active:
                if not (derived & head) and (pos & derived) == pos:
                    derived |= head
                    changed = True
        if derived == cand and (best < 0 or _subset_precedes(cand, best)):
            best = cand
    return best


def bn_positive(
    num_nodes: int,
    query_index: int,
    parent_bits: list[list[int]],
    true_ok: list[int],
    false_ok: list[int],
) -> bool:
    """Does some complete instantiation set the query node true with every
    conditional-table factor positive?

    ``parent_bits[w]`` lists the bit positions of node w's parents;
    ``true_ok[w]`` / ``false_ok[w]`` are bitsets over parent-instantiation
    codes (first parent = most significant bit of the code) marking
    positive-probability rows.
    """
    qbit = 1 << query_index
    nodes = list(zip(parent_bits, true_ok, false_ok))
    for m in range(1 << num_nodes):
        if not (m & qbit):
            continue
        ok = True
        for w, (pbits, t_ok, f_ok) in enumerate(nodes):
            code = 0
            for pb in pbits:
                code = (code << 1) | ((m >> pb) & 1)
            allowed = t_ok if (m >> w) & 1 else f_ok
            if not (allowed >> code) & 1:
                ok = False
                break
        if ok:
            return True
    return False


def csp01_lexmin(num_vars: int, scope_bits: list[list[int]], allowed: list[int]) -> int:
    """First assignment mask of a Boolean constraint network, else -1.

    ``scope_bits[c]`` lists the bit positions of constraint c's scope and
    ``allowed[c]`` is a bitset over scope codes (first scope variable =
    most significant bit of the code).
    """
    cons = list(zip(scope_bits, allowed))
    for m in range(1 << num_vars):
        for bits, ok in cons:
            code = 0
            for b in bits:
                code = (code << 1) | ((m >> b) & 1)
            if not (ok >> code) & 1:
                break
        else:
            return m
    return -1
