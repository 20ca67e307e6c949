"""The causal order of a net: li/co relations, cuts, lines and density.

Sets of elements are exchanged as ``frozenset`` of names; internally every
set is a bitmask over the canonical element order of the :class:`Poset`.
"""

from __future__ import annotations

from typing import NamedTuple

from . import kernels
from .net import CONDITION, EVENT, UnknownElementError

ElementSet = frozenset


class NotACosetError(ValueError):
    pass


class Poset:
    """Finite poset with element kinds and an immediate-successor relation.

    ``up[i]`` / ``down[i]`` are the masks of elements above / below element
    ``i`` (both reflexive). ``succ[i]`` / ``pred[i]`` hold the generating
    arcs (the flow relation when derived from a net).
    """

    def __init__(self, elements, kinds, succ):
        self.elements = tuple(elements)
        self.n = len(self.elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != self.n:
            raise ValueError("duplicate element names")
        self.kinds = {x: kinds[x] for x in self.elements}
        self.full = (1 << self.n) - 1

        self.succ = [0] * self.n
        self.pred = [0] * self.n
        for x, ys in succ.items():
            i = self.index[x]
            for y in ys:
                j = self.index[y]
                self.succ[i] |= 1 << j
                self.pred[j] |= 1 << i

        self.up = _reach(self.succ, self.n)
        self.down = _reach(self.pred, self.n)
        for i in range(self.n):
            if (self.up[i] & self.down[i]) != 1 << i:
                raise ValueError(f"relation is cyclic at {self.elements[i]!r}")

        self.li_rows = [self.up[i] | self.down[i] for i in range(self.n)]
        self.co_rows = [self.full & ~r for r in self.li_rows]
        self.li_adj = [r & ~(1 << i) for i, r in enumerate(self.li_rows)]
        self.conditions_mask = self.mask(x for x in self.elements if self.kinds[x] == CONDITION)
        self.events_mask = self.mask(x for x in self.elements if self.kinds[x] == EVENT)
        self.kern = kernels.select(self.n)

    @classmethod
    def from_covers(cls, elements, covers, kinds=None):
        """Synthetic poset generated by ``covers`` (pairs ``x < y``).

        Elements default to kind ``condition``; used for posets that do not
        come from a causal net.
        """
        kinds = kinds or dict.fromkeys(elements, CONDITION)
        succ = {x: set() for x in elements}
        for x, y in covers:
            succ[x].add(y)
        return cls(elements, kinds, succ)

    def __len__(self):
        return self.n

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"Poset({list(self.elements)})"

    # mask <-> names

    def idx(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElementError(x) from None

    def mask(self, names):
        m = 0
        for x in names:
            m |= 1 << self.idx(x)
        return m

    def names(self, mask):
        return frozenset(self.elements[i] for i in _bits(mask))

    def ordered(self, names):
        """Names sorted in canonical element order."""
        return sorted(names, key=self.idx)

    def key(self, mask):
        """Sort key giving the canonical order of sets (lexicographic on indices)."""
        return tuple(_bits(mask))

    def leq(self, x, y):
        return bool(self.up[self.idx(x)] >> self.idx(y) & 1)


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _reach(step, n):
    """Reflexive-transitive closure of ``step`` given as successor masks."""
    reach = [None] * n
    order = _topo(step, n)
    for i in reversed(order):
        m = 1 << i
        for j in _bits(step[i]):
            m |= reach[j]
        reach[i] = m
    return reach


def _topo(step, n):
    indeg = [0] * n
    for i in range(n):
        for j in _bits(step[i]):
            indeg[j] += 1
    queue = [i for i in range(n) if indeg[i] == 0]
    order = []
    while queue:
        i = queue.pop()
        order.append(i)
        for j in _bits(step[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    if len(order) != n:
        raise ValueError("relation is cyclic")
    return order


def derive_poset(net):
    """``(X, F*)`` for a validated net."""
    return Poset(net.elements, net.kinds, net.post)


def leq(poset, x, y):
    return poset.leq(x, y)


def li(poset, x, y):
    return bool(poset.li_rows[poset.idx(x)] >> poset.idx(y) & 1)


def co(poset, x, y):
    return not li(poset, x, y)


def interval(poset, x, y):
    i, j = poset.idx(x), poset.idx(y)
    return poset.names(poset.up[i] & poset.down[j])


def is_convex(poset, s):
    m = poset.mask(s)
    return poset.kern.hull(poset.up, poset.down, m) == m


class FinitenessReport(NamedTuple):
    interval_finite: bool
    degree_finite: bool
    max_degree: int
    max_interval: int


def finiteness_report(poset):
    """Local-finiteness diagnostics; both flags hold trivially on finite posets.

    ``max_degree`` is the largest preset or postset size, ``max_interval`` the
    largest ``|[x, y]|`` over comparable pairs.
    """
    max_degree = max((max(p.bit_count(), s.bit_count())
                      for p, s in zip(poset.pred, poset.succ)), default=0)
    max_interval = 0
    for i in range(poset.n):
        for j in _bits(poset.up[i]):
            max_interval = max(max_interval, (poset.up[i] & poset.down[j]).bit_count())
    return FinitenessReport(True, True, max_degree, max_interval)


def _within(poset, within):
    return poset.full if within is None else poset.mask(within)


def cut_masks(poset, within=None):
    masks = poset.kern.max_cliques(poset.co_rows, _within(poset, within))
    return sorted(masks, key=poset.key)


def line_masks(poset, within=None):
    masks = poset.kern.max_cliques(poset.li_adj, _within(poset, within))
    return sorted(masks, key=poset.key)


def enumerate_cuts(poset, within=None):
    """Maximal antichains (maximal cliques of co ∪ id) inside ``within``."""
    return [poset.names(m) for m in cut_masks(poset, within)]


def enumerate_lines(poset, within=None):
    """Maximal chains (maximal cliques of li) inside ``within``."""
    return [poset.names(m) for m in line_masks(poset, within)]


def is_coset_mask(poset, m):
    return all(poset.co_rows[i] & m == m & ~(1 << i) for i in _bits(m))


def is_chain_mask(poset, m):
    return all(poset.li_rows[i] & m == m for i in _bits(m))


def is_coset(poset, s):
    return is_coset_mask(poset, poset.mask(s))


def is_B_coset(poset, s):
    m = poset.mask(s)
    return m & ~poset.conditions_mask == 0 and is_coset_mask(poset, m)


def is_cut_mask(poset, m):
    if not is_coset_mask(poset, m):
        return False
    # maximal: every outside element is li-related to some member
    outside = poset.full & ~m
    return all(poset.li_rows[i] & m for i in _bits(outside)) if m else poset.n == 0


def is_line_mask(poset, m):
    if not m or not is_chain_mask(poset, m):
        return False
    return all(poset.co_rows[i] & m for i in _bits(poset.full & ~m))


def is_cut(poset, s):
    return is_cut_mask(poset, poset.mask(s))


def is_line(poset, s):
    return is_line_mask(poset, poset.mask(s))


def is_B_cut(poset, c):
    """A cut made of conditions only."""
    m = poset.mask(c)
    return m & ~poset.conditions_mask == 0 and is_cut_mask(poset, m)


def extend_mask_to_cut(poset, m):
    if not is_coset_mask(poset, m):
        raise NotACosetError(f"{sorted(poset.names(m))} is not a coset")
    for i in range(poset.n):
        if not m >> i & 1 and poset.co_rows[i] & m == m:
            m |= 1 << i
    return m


def extend_to_cut(poset, s):
    """Greedy completion of a coset to a cut, scanning elements in canonical order."""
    return poset.names(extend_mask_to_cut(poset, poset.mask(s)))


class KDensity(NamedTuple):
    dense: bool
    witness: tuple[frozenset, frozenset] | None

    def __bool__(self):
        return self.dense


def is_K_dense(poset):
    """Whether every cut meets every line.

    Returns the first non-meeting (cut, line) pair in canonical order as the
    witness. A meeting in more than one point would break the poset axioms
    and raises ``AssertionError``.
    """
    cuts = cut_masks(poset)
    lines = line_masks(poset)
    for c in cuts:
        for l in lines:
            hit = c & l
            if not hit:
                return KDensity(False, (poset.names(c), poset.names(l)))
            assert hit & (hit - 1) == 0, "cut and line share more than one element"
    return KDensity(True, None)
