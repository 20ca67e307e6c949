"""Small nets and posets for tests, benchmarks and demos."""

from __future__ import annotations

import random

from .net import NetDescription, validate_net
from .order import Poset

EXAMPLE_NET = {
    "conditions": ["p", "q", "r", "s"],
    "events": ["e"],
    "arcs": [["p", "e"], ["q", "e"], ["e", "r"], ["e", "s"]],
}


def description(doc):
    return NetDescription(tuple(doc["conditions"]), tuple(doc["events"]),
                          tuple(tuple(a) for a in doc["arcs"]))


def example_net():
    """Two conditions synchronised by one event that produces two conditions."""
    return validate_net(description(EXAMPLE_NET))


def chain_net(length=1):
    """``b0 -> e0 -> b1 -> ... -> b<length>``."""
    conds = [f"b{i}" for i in range(length + 1)]
    events = [f"e{i}" for i in range(length)]
    arcs = []
    for i, e in enumerate(events):
        arcs += [(conds[i], e), (e, conds[i + 1])]
    return validate_net(NetDescription(tuple(conds), tuple(events), tuple(arcs)))


def random_causal_net(rng, max_elements=12, max_pre=2, max_post=2):
    """A random causal net in which every event has pre- and postconditions.

    Events are added one at a time; each consumes some open conditions
    (produced earlier, not yet consumed) or fresh initial ones, and produces
    fresh conditions. Generation stops when the element budget runs out or
    at random.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    conds, events, arcs = [], [], []
    open_conds = []

    def fresh():
        name = f"b{len(conds)}"
        conds.append(name)
        return name

    while True:
        used = len(conds) + len(events)
        n_post = rng.randint(1, max_post)
        n_pre = rng.randint(1, max_pre)
        reuse = min(len(open_conds), rng.randint(0, n_pre))
        if used + 1 + n_post + (n_pre - reuse) > max_elements:
            if events:
                break
            n_pre = n_post = 1
            reuse = 0
            if used + 3 > max_elements:
                raise ValueError("budget too small for one event")
        e = f"e{len(events)}"
        events.append(e)
        rng.shuffle(open_conds)
        pre = [open_conds.pop() for _ in range(reuse)]
        pre += [fresh() for _ in range(n_pre - reuse)]
        post = [fresh() for _ in range(n_post)]
        arcs += [(b, e) for b in pre] + [(e, b) for b in post]
        open_conds += post
        if rng.random() < 0.15:
            break
    return validate_net(NetDescription(tuple(conds), tuple(events), tuple(arcs)))


def random_causal_nets(count, seed=0, max_elements=12):
    rng = random.Random(seed)
    return [random_causal_net(rng, max_elements) for _ in range(count)]


def n_poset():
    """The four-element 'N' poset ``a < c > b < d``: not K-dense."""
    return Poset.from_covers("abcd", [("a", "c"), ("b", "c"), ("b", "d")])


def random_poset(rng, n=6, density=0.3):
    """Random poset on ``x0..x<n-1>``: each pair ``i < j`` is a cover with probability ``density``."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    names = [f"x{i}" for i in range(n)]
    covers = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)
              if rng.random() < density]
    return Poset.from_covers(names, covers)
