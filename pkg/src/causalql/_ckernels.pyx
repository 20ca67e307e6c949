# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels (posets of at most 64 elements).

Same signatures and results as ``causalql._pykernels``.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport uint64_t

cdef extern from *:
    int ctz "__builtin_ctzll"(unsigned long long) nogil
    int popcount "__builtin_popcountll"(unsigned long long) nogil

BACKEND = "cython"

cdef enum:
    MAXN = 64


cdef struct Rel:
    int n
    uint64_t rows[MAXN]


cdef struct Net:
    int n_events
    int events[MAXN]
    uint64_t pre[MAXN]
    uint64_t post[MAXN]
    uint64_t up[MAXN]
    uint64_t down[MAXN]


cdef void _load(list src, uint64_t* dst) except *:
    cdef Py_ssize_t i
    if len(src) > MAXN:
        raise ValueError("compiled kernels handle at most 64 elements")
    for i in range(len(src)):
        dst[i] = <uint64_t>src[i]


cdef inline uint64_t _ortho(uint64_t* rows, uint64_t full, uint64_t mask) nogil:
    cdef uint64_t out = full
    while mask and out:
        out &= rows[ctz(mask)]
        mask &= mask - 1
    return out


cdef inline uint64_t _hull(uint64_t* up, uint64_t* down, uint64_t mask) nogil:
    cdef uint64_t above = 0, below = 0
    cdef int i
    while mask:
        i = ctz(mask)
        above |= up[i]
        below |= down[i]
        mask &= mask - 1
    return above & below


cdef uint64_t _causal(Net* net, uint64_t mask) nogil:
    cdef uint64_t start
    cdef int k, e
    while True:
        start = mask
        for k in range(net.n_events):
            if net.pre[k] & ~mask == 0:
                mask |= (<uint64_t>1) << net.events[k]
        for k in range(net.n_events):
            if net.post[k] & ~mask == 0:
                mask |= (<uint64_t>1) << net.events[k]
        for k in range(net.n_events):
            e = net.events[k]
            if (mask >> e) & 1:
                mask |= net.pre[k] | net.post[k]
        mask |= _hull(net.up, net.down, mask)
        if mask == start:
            return mask


cdef inline uint64_t _full(int n) nogil:
    if n >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


cdef void _load_net(Net* net, list events, list pre, list post, list up, list down) except *:
    cdef Py_ssize_t k
    net.n_events = len(events)
    if net.n_events > MAXN:
        raise ValueError("compiled kernels handle at most 64 elements")
    for k in range(net.n_events):
        net.events[k] = events[k]
    _load(pre, net.pre)
    _load(post, net.post)
    _load(up, net.up)
    _load(down, net.down)


def ortho(list rows, full, mask):
    cdef Rel rel
    _load(rows, rel.rows)
    return _ortho(rel.rows, <uint64_t>full, <uint64_t>mask)


def biortho(list rows, full, mask):
    cdef Rel rel
    _load(rows, rel.rows)
    cdef uint64_t f = <uint64_t>full
    return _ortho(rel.rows, f, _ortho(rel.rows, f, <uint64_t>mask))


def hull(list up, list down, mask):
    cdef uint64_t u[MAXN]
    cdef uint64_t d[MAXN]
    _load(up, u)
    _load(down, d)
    return _hull(u, d, <uint64_t>mask)


def causal_closure(list events, list pre, list post, list up, list down, mask):
    cdef Net net
    _load_net(&net, events, pre, post, up, down)
    return _causal(&net, <uint64_t>mask)


def closed_sweep(list rows, int n):
    if n > 32:
        raise ValueError("subset sweep limited to 32 elements")
    cdef Rel rel
    _load(rows, rel.rows)
    cdef uint64_t full = _full(n), a, c
    cdef uint64_t total = (<uint64_t>1) << n
    seen = set()
    a = 0
    while a < total:
        c = _ortho(rel.rows, full, _ortho(rel.rows, full, a))
        seen.add(c)
        a += 1
    return sorted(seen)


def closure_mismatch(list rows, int n, list events, list pre, list post, list up, list down):
    if n > 32:
        raise ValueError("subset sweep limited to 32 elements")
    cdef Rel rel
    cdef Net net
    _load(rows, rel.rows)
    _load_net(&net, events, pre, post, up, down)
    cdef uint64_t full = _full(n), a
    cdef uint64_t total = (<uint64_t>1) << n
    cdef long long hit = -1
    with nogil:
        a = 0
        while a < total:
            if _causal(&net, a) != _ortho(rel.rows, full, _ortho(rel.rows, full, a)):
                hit = <long long>a
                break
            a += 1
    return hit


cdef void _bk(uint64_t* adj, uint64_t r, uint64_t p, uint64_t x, list out) except *:
    cdef uint64_t cand, px, bit
    cdef int u, v, best = -1, score, top = -1
    if p == 0:
        if x == 0:
            out.append(r)
        return
    px = p | x
    while px:
        u = ctz(px)
        score = popcount(p & adj[u])
        if score > top:
            top = score
            best = u
        px &= px - 1
    cand = p & ~adj[best]
    while cand:
        v = ctz(cand)
        bit = (<uint64_t>1) << v
        _bk(adj, r | bit, p & adj[v], x & adj[v], out)
        p &= ~bit
        x |= bit
        cand &= cand - 1


def max_cliques(list adj, within):
    cdef Rel rel
    _load(adj, rel.rows)
    out = []
    _bk(rel.rows, 0, <uint64_t>within, 0, out)
    out.sort()
    return out


cdef void _all(uint64_t* adj, uint64_t r, uint64_t p, list out) except *:
    cdef uint64_t bit
    cdef int v
    out.append(r)
    while p:
        v = ctz(p)
        bit = (<uint64_t>1) << v
        p &= ~bit
        _all(adj, r | bit, p & adj[v], out)


def all_cliques(list adj, within):
    cdef Rel rel
    _load(adj, rel.rows)
    out = []
    _all(rel.rows, 0, <uint64_t>within, out)
    out.sort()
    return out


def ortho_table(list rows, int n):
    if n > 32:
        raise ValueError("subset sweep limited to 32 elements")
    cdef Rel rel
    _load(rows, rel.rows)
    cdef uint64_t total = (<uint64_t>1) << n, a, low
    cdef uint64_t* table
    out = [0] * total
    table = <uint64_t*>PyMem_Malloc(total * sizeof(uint64_t))
    if table == NULL:
        raise MemoryError()
    try:
        table[0] = _full(n)
        a = 1
        while a < total:
            low = a & (~a + 1)
            table[a] = table[a ^ low] & rel.rows[ctz(a)]
            a += 1
        for a in range(total):
            out[a] = table[a]
    finally:
        PyMem_Free(table)
    return out


def causal_table(int n, list events, list pre, list post, list up, list down):
    if n > 32:
        raise ValueError("subset sweep limited to 32 elements")
    cdef Net net
    _load_net(&net, events, pre, post, up, down)
    cdef uint64_t total = (<uint64_t>1) << n, a
    out = [0] * total
    for a in range(total):
        out[a] = _causal(&net, a)
    return out
