"""Causal closure and the biorthogonal closure over the co relation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import kernels
from .net import UnknownElementError

DEFAULT_SWEEP_BOUND = 16

PHI = "phi"
BIORTHO = "biortho"
GIVEN = "given"


class BoundExceededError(ValueError):
    def __init__(self, size, bound):
        super().__init__(f"subset sweep over {size} elements exceeds the bound of {bound}")
        self.size = size
        self.bound = bound


@dataclass(frozen=True)
class ClosedSet:
    members: frozenset
    provenance: str = GIVEN


def _event_data(poset):
    cached = getattr(poset, "_event_data", None)
    if cached is None:
        events = [i for i in range(poset.n) if poset.events_mask >> i & 1]
        cached = (events, [poset.pred[i] for i in events], [poset.succ[i] for i in events])
        poset._event_data = cached
    return cached


def ortho_mask(poset, m):
    return poset.kern.ortho(poset.co_rows, poset.full, m)


def biortho_mask(poset, m):
    return poset.kern.biortho(poset.co_rows, poset.full, m)


def causal_closure_mask(poset, m):
    events, pre, post = _event_data(poset)
    return poset.kern.causal_closure(events, pre, post, poset.up, poset.down, m)


def ortho(poset, a):
    """Elements concurrent with every member of ``a``; ``ortho(∅)`` is everything."""
    return poset.names(ortho_mask(poset, poset.mask(a)))


def biortho(poset, a):
    return ClosedSet(poset.names(biortho_mask(poset, poset.mask(a))), BIORTHO)


def is_closed(poset, a):
    m = poset.mask(a)
    return biortho_mask(poset, m) == m


def _check_net(net, poset):
    if tuple(net.elements) != poset.elements:
        raise ValueError("poset was not derived from this net")


def causal_closure(net, poset, a):
    """Least causally closed superset of ``a``, computed as a fixpoint.

    Rule (iv) is applied through the convex hull: an element lying above one
    member and below another sits in the interval between two li-related
    members.
    """
    _check_net(net, poset)
    return ClosedSet(poset.names(causal_closure_mask(poset, poset.mask(a))), PHI)


class CausalCheck(NamedTuple):
    closed: bool
    clause: str | None = None
    witness: tuple = ()

    def __bool__(self):
        return self.closed


def is_causally_closed(net, poset, a):
    """Check the four clauses in order and name the first one violated.

    The witness is the offending event for clauses (i)-(iii) and the pair
    ``(x, y)`` whose interval leaks for clause (iv).
    """
    _check_net(net, poset)
    m = poset.mask(a)
    events, pre, post = _event_data(poset)
    names = poset.elements
    for e, pm in zip(events, pre):
        if pm & ~m == 0 and not m >> e & 1:
            return CausalCheck(False, "i", (names[e],))
    for e, qm in zip(events, post):
        if qm & ~m == 0 and not m >> e & 1:
            return CausalCheck(False, "ii", (names[e],))
    for e, pm, qm in zip(events, pre, post):
        if m >> e & 1 and (pm | qm) & ~m:
            return CausalCheck(False, "iii", (names[e],))
    members = [i for i in range(poset.n) if m >> i & 1]
    for x in members:
        for y in members:
            if poset.up[x] >> y & 1 and (poset.up[x] & poset.down[y]) & ~m:
                return CausalCheck(False, "iv", (names[x], names[y]))
    return CausalCheck(True)


def border(net, a):
    """Members of ``a`` joined by an arc (either direction) to an element outside ``a``."""
    a = frozenset(a)
    for x in a:
        if x not in net.kinds:
            raise UnknownElementError(x)
    return frozenset(x for x in a
                     if (net.pre[x] | net.post[x]) - a)


class CoincidenceReport(NamedTuple):
    coincide: bool
    checked: int
    counterexample: tuple[frozenset, frozenset, frozenset] | None = None

    def __bool__(self):
        return self.coincide


def closures_coincide(net, poset, bound=DEFAULT_SWEEP_BOUND):
    """Compare the causal and biorthogonal closures on every subset.

    The counterexample, if any, is the first subset in counting order of its
    bitmask, reported as ``(A, causal_closure(A), A'')``. Coincidence needs
    K-density and also events with nonempty pre- and postsets: an event with
    an empty preset satisfies clause (i) vacuously and so lies in every
    causally closed set, including the closure of the empty set.
    """
    _check_net(net, poset)
    _check_bound(poset, bound)
    events, pre, post = _event_data(poset)
    hit = poset.kern.closure_mismatch(poset.co_rows, poset.n, events, pre, post,
                                      poset.up, poset.down)
    total = 1 << poset.n
    if hit < 0:
        return CoincidenceReport(True, total)
    return CoincidenceReport(
        False, hit + 1,
        (poset.names(hit),
         poset.names(causal_closure_mask(poset, hit)),
         poset.names(biortho_mask(poset, hit))))


def _check_bound(poset, bound):
    if poset.n > min(bound, kernels.SWEEP_LIMIT):
        raise BoundExceededError(poset.n, bound)


def closed_sets_sweep(poset, bound=DEFAULT_SWEEP_BOUND):
    """All biorthogonally closed sets, found by closing every subset."""
    _check_bound(poset, bound)
    return poset.kern.closed_sweep(poset.co_rows, poset.n)


def ortho_table(poset, bound=DEFAULT_SWEEP_BOUND):
    """``A'`` for every subset, as a list indexed by the subset's bitmask."""
    _check_bound(poset, bound)
    return poset.kern.ortho_table(poset.co_rows, poset.n)


def biortho_table(poset, bound=DEFAULT_SWEEP_BOUND):
    table = ortho_table(poset, bound)
    return [table[t] for t in table]


def causal_table(poset, bound=DEFAULT_SWEEP_BOUND):
    """Causal closure of every subset, indexed by bitmask."""
    _check_bound(poset, bound)
    events, pre, post = _event_data(poset)
    return poset.kern.causal_table(poset.n, events, pre, post, poset.up, poset.down)
