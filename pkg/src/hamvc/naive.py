"""Reference VC-dimension by direct definition chase.

Deliberately shares nothing with the optimized engine: plain tuples, plain
sets, every W of every size, no pruning and no bitsets. Only used to
cross-check :func:`hamvc.shatter.vc_dimension`.
"""

from itertools import combinations


def _dist(x, y):
    return sum(1 for a, b in zip(x, y) if a != b)


def naive_shatters(W, U, t):
    W = frozenset(W)
    traces = set()
    for u in U:
        traces.add(frozenset(w for w in W if _dist(u, w) == t))
    return len(traces) == 2 ** len(W)


def naive_vc_dimension(points, t):
    """Largest |W|, W ⊆ U, shattered by {n(u) ∩ U : u ∈ U}; -1 for empty U.

    Sizes with 2^k > |U| are skipped: 2^k distinct traces need 2^k distinct u.
    """
    U = sorted(set(tuple(p) for p in points))
    if not U:
        return -1
    nbr = {u: frozenset(v for v in U if _dist(u, v) == t) for u in U}
    best = 0
    k = 1
    while 2 ** k <= len(U):
        for W in combinations(U, k):
            Wset = frozenset(W)
            traces = {nbr[u] & Wset for u in U}
            if len(traces) == 2 ** k:
                best = k
                break
        k += 1
    return best
