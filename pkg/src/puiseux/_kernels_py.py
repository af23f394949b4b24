"""Pure-Python representability kernels.

Both functions work on integer weights (generators scaled by a common
denominator).  ``_ckernels`` is a compiled twin with identical semantics.
"""

from math import gcd

import numpy as np

FOUND = 1
EXHAUSTED = 0
BUDGET = -1


def suffix_reach(weights, target):
    """Table ``R`` with ``R[i, t] == 1`` iff ``t`` is a nonnegative integer
    combination of ``weights[i:]``.  Row ``len(weights)`` only reaches 0."""
    n = len(weights)
    table = np.zeros((n + 1, target + 1), dtype=np.uint8)
    table[n, 0] = 1
    for i in range(n - 1, -1, -1):
        w = int(weights[i])
        row = table[i]
        row[:] = table[i + 1]
        if w > target:
            continue
        # unbounded knapsack: sweep forward so row[t - w] already has weight w
        for t in range(w, target + 1):
            if not row[t] and row[t - w]:
                row[t] = 1
    return table


def dfs_search(weights, suffix_gcd, dominated, target, budget):
    """Coefficient search for ``target`` over ``weights`` in the given order.

    ``suffix_gcd[i]`` is gcd(weights[i:]) with ``suffix_gcd[n] == 0``.  When
    ``dominated[i]`` is set, raising the coefficient of weight i by one
    congruence step cannot help (the step is representable by the suffix), so
    only the smallest admissible coefficient is tried.

    Returns ``(status, coefficients, nodes)``.
    """
    n = len(weights)
    coeffs = [0] * n
    failed = set()
    nodes = 0

    def rec(i, r):
        nonlocal nodes
        if r == 0:
            for k in range(i, n):
                coeffs[k] = 0
            return FOUND
        if i == n:
            return EXHAUSTED
        nodes += 1
        if nodes > budget:
            return BUDGET
        if (i, r) in failed:
            return EXHAUSTED
        w = weights[i]
        rest = suffix_gcd[i + 1]
        if rest == 0:
            if r % w == 0:
                coeffs[i] = r // w
                return FOUND
            return EXHAUSTED
        g = gcd(w, rest)
        if r % g:
            return EXHAUSTED
        mod = rest // g
        c = (r // g) * pow(w // g, -1, mod) % mod if mod > 1 else 0
        while c * w <= r:
            coeffs[i] = c
            status = rec(i + 1, r - c * w)
            if status != EXHAUSTED:
                return status
            if dominated[i]:
                break
            c += mod
        failed.add((i, r))
        return EXHAUSTED

    if target < 0:
        return EXHAUSTED, None, 0
    status = rec(0, target)
    return status, (list(coeffs) if status == FOUND else None), nodes
