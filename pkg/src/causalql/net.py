"""Finite causal nets: parsing, axiom validation and local structure."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

CONDITION = "condition"
EVENT = "event"

# checked in this order; the first failure is reported
AXIOMS = ("disjointness", "isolated", "arc_kind", "branching", "acyclicity")


class NetError(Exception):
    """Base class for everything raised while reading or validating a net."""


class NetSyntaxError(NetError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class DuplicateNameError(NetError):
    def __init__(self, name):
        super().__init__(f"element {name!r} is declared more than once")
        self.name = name


class NetValidationError(NetError):
    """A violated axiom; ``code`` is one of :data:`AXIOMS`."""

    def __init__(self, code, message, witness=()):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.witness = tuple(witness)


class UnknownElementError(NetError, KeyError):
    def __init__(self, name):
        super().__init__(f"unknown element {name!r}")
        self.name = name

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class NetDescription:
    """The literal content of a net document, not yet validated."""

    conditions: tuple[str, ...]
    events: tuple[str, ...]
    arcs: tuple[tuple[str, str], ...]

    def to_json(self):
        return {
            "conditions": list(self.conditions),
            "events": list(self.events),
            "arcs": [list(a) for a in self.arcs],
        }


@dataclass(frozen=True)
class Net:
    """A validated causal net.

    Elements are kept in canonical order: conditions before events, each
    group sorted by name.
    """

    description: NetDescription
    elements: tuple[str, ...]
    kinds: Mapping[str, str]
    flow: frozenset[tuple[str, str]]
    pre: Mapping[str, frozenset[str]] = field(repr=False)
    post: Mapping[str, frozenset[str]] = field(repr=False)

    @property
    def conditions(self):
        return frozenset(x for x, k in self.kinds.items() if k == CONDITION)

    @property
    def events(self):
        return frozenset(x for x, k in self.kinds.items() if k == EVENT)

    def __contains__(self, name):
        return name in self.kinds

    def __len__(self):
        return len(self.elements)


def parse_net(text):
    """Parse a JSON net document into a :class:`NetDescription`.

    Only the shape of the document is checked here (names, list structure,
    duplicates within a list); the causal-net axioms are left to
    :func:`validate_net`.
    """
    if not text or not text.strip():
        raise NetSyntaxError("empty document", 1, 1)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise NetSyntaxError("top level must be an object")
    unknown = set(doc) - {"conditions", "events", "arcs"}
    if unknown:
        raise NetSyntaxError(f"unexpected keys {sorted(unknown)}")

    def names(key):
        value = doc.get(key, [])
        if not isinstance(value, list):
            raise NetSyntaxError(f"{key!r} must be a list of names")
        seen = set()
        for name in value:
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise NetSyntaxError(f"invalid element name {name!r} in {key!r}")
            if name in seen:
                raise DuplicateNameError(name)
            seen.add(name)
        return tuple(value)

    conditions = names("conditions")
    events = names("events")
    raw_arcs = doc.get("arcs", [])
    if not isinstance(raw_arcs, list):
        raise NetSyntaxError("'arcs' must be a list of [source, target] pairs")
    arcs = []
    for arc in raw_arcs:
        if (not isinstance(arc, list) or len(arc) != 2
                or not all(isinstance(n, str) and NAME_RE.match(n) for n in arc)):
            raise NetSyntaxError(f"malformed arc {arc!r}")
        arcs.append((arc[0], arc[1]))
    return NetDescription(conditions, events, tuple(arcs))


def load_net(path):
    """Read, parse and validate a net file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return validate_net(parse_net(text))


def validate_net(desc):
    """Check both net definitions and return the validated :class:`Net`.

    Raises :class:`NetValidationError` naming the first violated axiom in the
    order of :data:`AXIOMS`.
    """
    conds, evs = set(desc.conditions), set(desc.events)
    clash = sorted(conds & evs)
    if clash:
        raise NetValidationError(
            "disjointness", f"{clash[0]!r} is both a condition and an event", clash)
    universe = conds | evs
    flow = frozenset(desc.arcs)

    touched = {x for arc in flow for x in arc}
    isolated = sorted(universe - touched)
    if isolated:
        raise NetValidationError(
            "isolated", f"{isolated[0]!r} has no incident arc", isolated)

    for src, dst in sorted(flow):
        for name in (src, dst):
            if name not in universe:
                raise NetValidationError(
                    "arc_kind", f"arc ({src}, {dst}) mentions undeclared {name!r}", (src, dst))
        if (src in conds) == (dst in conds):
            kind = "conditions" if src in conds else "events"
            raise NetValidationError(
                "arc_kind", f"arc ({src}, {dst}) joins two {kind}", (src, dst))

    pre = {x: set() for x in universe}
    post = {x: set() for x in universe}
    for src, dst in flow:
        post[src].add(dst)
        pre[dst].add(src)

    for b in sorted(conds):
        if len(pre[b]) > 1 or len(post[b]) > 1:
            side = "inputs" if len(pre[b]) > 1 else "outputs"
            raise NetValidationError(
                "branching", f"condition {b!r} has several {side}", (b,))

    cycle = _find_cycle(sorted(universe), post)
    if cycle:
        raise NetValidationError(
            "acyclicity", "flow relation has a cycle through " + " -> ".join(cycle), cycle)

    kinds = {x: CONDITION for x in conds}
    kinds.update({x: EVENT for x in evs})
    elements = tuple(sorted(conds)) + tuple(sorted(evs))
    return Net(
        description=desc,
        elements=elements,
        kinds=MappingProxyType(kinds),
        flow=flow,
        pre=MappingProxyType({x: frozenset(v) for x, v in pre.items()}),
        post=MappingProxyType({x: frozenset(v) for x, v in post.items()}),
    )


def _find_cycle(order, succ):
    white, grey, black = 0, 1, 2
    colour = dict.fromkeys(order, white)
    for root in order:
        if colour[root] != white:
            continue
        path = [root]
        stack = [iter(sorted(succ[root]))]
        colour[root] = grey
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                colour[path.pop()] = black
                stack.pop()
            elif colour[nxt] == grey:
                return tuple(path[path.index(nxt):]) + (nxt,)
            elif colour[nxt] == white:
                colour[nxt] = grey
                path.append(nxt)
                stack.append(iter(sorted(succ[nxt])))
    return ()


def preset(net, x):
    if x not in net.kinds:
        raise UnknownElementError(x)
    return net.pre[x]


def postset(net, x):
    if x not in net.kinds:
        raise UnknownElementError(x)
    return net.post[x]


def is_simple(net):
    """True iff no two distinct elements share both preset and postset."""
    seen = set()
    for x in net.elements:
        key = (net.pre[x], net.post[x])
        if key in seen:
            return False
        seen.add(key)
    return True
