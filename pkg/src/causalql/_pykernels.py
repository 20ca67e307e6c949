"""Pure-Python bitmask kernels.

Every set of elements is an ``int`` whose bit ``i`` stands for the element at
canonical index ``i``. Relations are passed as row lists: ``rows[i]`` is the
mask of elements related to element ``i``. These functions mirror the
compiled ``_ckernels`` module one to one and are used whenever the extension
is unavailable or a poset has more than 64 elements.
"""

from __future__ import annotations

BACKEND = "python"


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def ortho(rows, full, mask):
    out = full
    for i in _bits(mask):
        out &= rows[i]
        if not out:
            break
    return out


def biortho(rows, full, mask):
    return ortho(rows, full, ortho(rows, full, mask))


def hull(up, down, mask):
    """Convex hull: elements lying above some member and below some member."""
    above = below = 0
    for i in _bits(mask):
        above |= up[i]
        below |= down[i]
    return above & below


def causal_closure(events, pre, post, up, down, mask):
    # rules applied round-robin (i), (ii), (iii), (iv) until nothing changes
    while True:
        start = mask
        for e, pm in zip(events, pre):
            if pm & ~mask == 0:
                mask |= 1 << e
        for e, qm in zip(events, post):
            if qm & ~mask == 0:
                mask |= 1 << e
        for e, pm, qm in zip(events, pre, post):
            if mask >> e & 1:
                mask |= pm | qm
        mask |= hull(up, down, mask)
        if mask == start:
            return mask


def closed_sweep(rows, n):
    full = (1 << n) - 1
    return sorted({biortho(rows, full, a) for a in range(1 << n)})


def closure_mismatch(rows, n, events, pre, post, up, down):
    """First subset (in counting order) whose two closures differ, else -1."""
    full = (1 << n) - 1
    for a in range(1 << n):
        if causal_closure(events, pre, post, up, down, a) != biortho(rows, full, a):
            return a
    return -1


def max_cliques(adj, within):
    """Maximal cliques of the graph ``adj`` restricted to ``within``.

    Bron-Kerbosch with Tomita pivoting. ``adj`` rows must not contain the
    vertex itself.
    """
    out = []
    stack = [(0, within, 0)]
    while stack:
        r, p, x = stack.pop()
        if not p:
            if not x:
                out.append(r)
            continue
        pivot = max(_bits(p | x), key=lambda u: (p & adj[u]).bit_count())
        for v in _bits(p & ~adj[pivot]):
            bit = 1 << v
            stack.append((r | bit, p & adj[v], x & adj[v]))
            p &= ~bit
            x |= bit
    out.sort()
    return out


def all_cliques(adj, within):
    """Every clique (including the empty one) of ``adj`` inside ``within``."""
    out = []
    stack = [(0, within)]
    while stack:
        r, p = stack.pop()
        out.append(r)
        for v in _bits(p):
            bit = 1 << v
            p &= ~bit
            stack.append((r | bit, p & adj[v]))
    out.sort()
    return out


def ortho_table(rows, n):
    """``ortho`` of every subset, indexed by subset mask."""
    full = (1 << n) - 1
    table = [full] * (1 << n)
    for a in range(1, 1 << n):
        low = a & -a
        table[a] = table[a ^ low] & rows[low.bit_length() - 1]
    return table


def causal_table(n, events, pre, post, up, down):
    """``causal_closure`` of every subset, indexed by subset mask."""
    return [causal_closure(events, pre, post, up, down, a) for a in range(1 << n)]
