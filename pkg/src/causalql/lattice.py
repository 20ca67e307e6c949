"""The ortholattice of biorthogonally closed sets and its quantum-logic checks.

Lattice elements are closed sets. The public functions take and return
``frozenset`` of element names; the checks work on bitmasks and element
indices internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

from . import kernels
from .closure import DEFAULT_SWEEP_BOUND, biortho_mask, closed_sets_sweep, ortho_mask
from .order import cut_masks, is_line_mask, line_masks

EXHAUSTIVE_FAMILY_LIMIT = 64
DEFAULT_FAMILY_BOUND = 4


class NotAMemberError(ValueError):
    pass


class BlockError(ValueError):
    pass


class NotALineError(ValueError):
    pass


class NotABCutError(ValueError):
    pass


class Lattice:
    """``L(N)`` ordered by inclusion, bottom first and top last.

    Elements are sorted by size, then canonically; ``masks[i]`` is the
    bitmask of element ``i`` and ``orth[i]`` the index of its orthocomplement.
    """

    def __init__(self, poset, masks):
        self.poset = poset
        self.masks = sorted(set(masks), key=lambda m: (m.bit_count(), poset.key(m)))
        self.pos = {m: i for i, m in enumerate(self.masks)}
        if self.masks[0] != 0 or self.masks[-1] != poset.full:
            raise ValueError("closed-set family must contain the empty set and X")
        self.orth = [self.pos[ortho_mask(poset, m)] for m in self.masks]
        self.bottom = 0
        self.top = len(self.masks) - 1
        self._joins = {}

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a):
        try:
            return self.poset.mask(a) in self.pos
        except KeyError:
            return False

    @property
    def elements(self):
        return [self.poset.names(m) for m in self.masks]

    def name(self, i):
        return self.poset.names(self.masks[i])

    def label(self, i):
        return self.poset.ordered(self.name(i))

    def index(self, a):
        try:
            return self.pos[self.poset.mask(a)]
        except KeyError:
            raise NotAMemberError(f"{sorted(a)} is not a closed set") from None

    # index-level operations

    def leq(self, i, j):
        return self.masks[i] & ~self.masks[j] == 0

    def meet_i(self, i, j):
        return self.pos[self.masks[i] & self.masks[j]]

    def join_i(self, i, j):
        key = (i, j) if i <= j else (j, i)
        k = self._joins.get(key)
        if k is None:
            k = self.pos[biortho_mask(self.poset, self.masks[i] | self.masks[j])]
            self._joins[key] = k
        return k

    def join_all(self, idxs):
        m = 0
        for i in idxs:
            m |= self.masks[i]
        return self.pos[biortho_mask(self.poset, m)]

    def orthogonal_i(self, i, j):
        return self.masks[i] & ~self.masks[self.orth[j]] == 0


@dataclass
class CheckReport:
    """Outcome of a law sweep: how many instances were checked and the first failure."""

    name: str
    passed: bool
    checked: int
    violation: dict | None = None
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def to_json(self):
        out = {"check": self.name, "passed": self.passed, "checked": self.checked}
        if self.violation is not None:
            out["violation"] = self.violation
        if self.notes:
            out["notes"] = self.notes
        return out


def _fail(lat, name, checked, law, *idxs, notes=None):
    return CheckReport(name, False, checked,
                       {"law": law, "elements": [lat.label(i) for i in idxs]},
                       notes or [])


def build_lattice(net, poset, sweep_check=False, bound=DEFAULT_SWEEP_BOUND):
    """Closed sets of ``poset`` obtained by closing every coset.

    On K-dense nets every closed set is the closure of one of its B-cuts, so
    coset closures are the whole family. Elsewhere the family is completed
    under orthocomplement and intersection, which reaches every closed set
    since each one is an intersection of sets ``{x}'``. ``lat.completed``
    counts the sets added by that step.

    With ``sweep_check`` the family is compared against the closures of all
    ``2^|X|`` subsets, raising ``AssertionError`` on any difference.
    """
    if net is not None and tuple(net.elements) != poset.elements:
        raise ValueError("poset was not derived from this net")
    cosets = poset.kern.all_cliques(poset.co_rows, poset.full)
    closed = {0, poset.full}
    closed.update(biortho_mask(poset, c) for c in cosets)
    found = len(closed)
    closed.update([ortho_mask(poset, m) for m in closed])
    frontier = set(closed)
    while frontier:
        fresh = {a & b for a in frontier for b in closed} - closed
        fresh |= {ortho_mask(poset, m) for m in fresh} - closed
        closed |= fresh
        frontier = fresh
    lat = Lattice(poset, closed)
    lat.completed = len(closed) - found
    if sweep_check:
        swept = closed_sets_sweep(poset, bound)
        if set(swept) != set(lat.masks):
            extra = sorted(set(swept) ^ set(lat.masks), key=poset.key)
            raise AssertionError(
                f"closed-set families differ on {[poset.ordered(poset.names(m)) for m in extra]}")
    return lat


def meet(lat, a, b):
    return lat.name(lat.meet_i(lat.index(a), lat.index(b)))


def join(lat, a, b):
    return lat.name(lat.join_i(lat.index(a), lat.index(b)))


def ortho_c(lat, a):
    return lat.name(lat.orth[lat.index(a)])


def are_orthogonal(lat, a, b):
    return lat.orthogonal_i(lat.index(a), lat.index(b))


def check_ortholattice(lat):
    """Involution, antitonicity, complement laws and both De Morgan identities."""
    n = len(lat)
    o = lat.orth
    checked = 0
    for i in range(n):
        checked += 1
        if o[o[i]] != i:
            return _fail(lat, "ortholattice", checked, "involution", i)
        if lat.meet_i(i, o[i]) != lat.bottom:
            return _fail(lat, "ortholattice", checked, "x ∧ x' = 0", i)
        if lat.join_i(i, o[i]) != lat.top:
            return _fail(lat, "ortholattice", checked, "x ∨ x' = 1", i)
    for i in range(n):
        for j in range(n):
            checked += 1
            if lat.leq(i, j) and not lat.leq(o[j], o[i]):
                return _fail(lat, "ortholattice", checked, "antitone", i, j)
            if o[lat.join_i(i, j)] != lat.meet_i(o[i], o[j]):
                return _fail(lat, "ortholattice", checked, "(x ∨ y)' = x' ∧ y'", i, j)
            if o[lat.meet_i(i, j)] != lat.join_i(o[i], o[j]):
                return _fail(lat, "ortholattice", checked, "(x ∧ y)' = x' ∨ y'", i, j)
    return CheckReport("ortholattice", True, checked)


def check_orthomodular(lat):
    """``x ≤ y ⇒ y = x ∨ (y ∧ x')`` over all comparable pairs."""
    checked = 0
    for i in range(len(lat)):
        for j in range(len(lat)):
            if not lat.leq(i, j):
                continue
            checked += 1
            if lat.join_i(i, lat.meet_i(j, lat.orth[i])) != j:
                return _fail(lat, "orthomodular", checked, "y = x ∨ (y ∧ x')", i, j)
    return CheckReport("orthomodular", True, checked)


class Compatibility(NamedTuple):
    compatible: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.compatible


def _compat_witness(lat, i, j):
    below_i = [k for k in range(len(lat)) if lat.leq(k, i)]
    below_j = [k for k in range(len(lat)) if lat.leq(k, j)]
    for z in below_i:
        if not lat.leq(z, j):
            continue
        for x1 in below_i:
            if not lat.orthogonal_i(x1, z) or lat.join_i(x1, z) != i:
                continue
            for y1 in below_j:
                if (lat.orthogonal_i(y1, z) and lat.orthogonal_i(y1, x1)
                        and lat.join_i(y1, z) == j):
                    return (x1, z, y1)
    return None


def compatible_i(lat, i, j):
    return _compat_witness(lat, i, j) is not None


def are_compatible(lat, a, b):
    """Search for mutually orthogonal ``x1, z, y1`` with ``a = x1 ∨ z`` and ``b = y1 ∨ z``.

    Only elements below ``a`` or ``b`` can take part in a witness, so the
    search is restricted to those.
    """
    w = _compat_witness(lat, lat.index(a), lat.index(b))
    if w is None:
        return Compatibility(False)
    return Compatibility(True, tuple(lat.name(k) for k in w))


def commute_i(lat, i, j):
    return lat.join_i(lat.meet_i(i, j), lat.meet_i(i, lat.orth[j])) == i


def compatible_by_commutation(lat, a, b):
    """Orthomodular characterization ``a = (a ∧ b) ∨ (a ∧ b')``."""
    return commute_i(lat, lat.index(a), lat.index(b))


def compatibility_matrix(lat):
    n = len(lat)
    return [[compatible_i(lat, i, j) for j in range(n)] for i in range(n)]


def check_compatibility_agreement(lat):
    """Witness search and the commutation identity must agree on every pair."""
    comp = compatibility_matrix(lat)
    checked = 0
    for i in range(len(lat)):
        for j in range(len(lat)):
            checked += 1
            if comp[i][j] != commute_i(lat, i, j):
                return _fail(lat, "compatibility", checked, "witness ⇔ commutation", i, j)
    return CheckReport("compatibility", True, checked)


def check_regular(lat):
    """``x comp (y ∨ z)`` for every pairwise-compatible triple."""
    comp = compatibility_matrix(lat)
    n = len(lat)
    checked = 0
    for x in range(n):
        for y in range(n):
            if not comp[x][y]:
                continue
            for z in range(n):
                if comp[x][z] and comp[y][z]:
                    checked += 1
                    if not comp[x][lat.join_i(y, z)]:
                        return _fail(lat, "regular", checked, "x comp (y ∨ z)", x, y, z)
    return CheckReport("regular", True, checked)


@dataclass(frozen=True)
class TwoValuedState:
    assignment: dict
    source_line: frozenset

    def __call__(self, a):
        return self.assignment[frozenset(a)]


def line_state(lat, line):
    """The crossing indicator of ``line``: 1 on closed sets it meets, 0 elsewhere."""
    poset = lat.poset
    lm = poset.mask(line)
    if not is_line_mask(poset, lm):
        raise NotALineError(f"{poset.ordered(line)} is not a line")
    return TwoValuedState({lat.name(i): int(bool(m & lm)) for i, m in enumerate(lat.masks)},
                          frozenset(line))


def _bounded_cliques(adj, n, bound):
    out = []

    def grow(clique, cand):
        out.append(clique)
        if len(clique) == bound:
            return
        for v in range(n):
            if cand >> v & 1:
                cand &= ~(1 << v)
                grow(clique + (v,), cand & adj[v])

    grow((), (1 << n) - 1)
    return out


def _greedy_maximal(adj, n):
    families = []
    for start in range(n):
        fam, cand = [start], adj[start]
        for v in range(n):
            if cand >> v & 1:
                fam.append(v)
                cand &= adj[v]
        families.append(tuple(sorted(fam)))
    return sorted(set(families))


def orthogonal_families(lat, family_bound=None):
    """Families of pairwise-orthogonal elements (as index tuples), empty family included.

    Exhaustive when ``family_bound`` is None and the lattice has at most 64
    elements; otherwise families up to ``family_bound`` members plus one
    greedily completed maximal family per starting element.
    """
    n = len(lat)
    adj = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and lat.orthogonal_i(i, j):
                adj[i] |= 1 << j
    if family_bound is None and n <= EXHAUSTIVE_FAMILY_LIMIT:
        kern = kernels.select(n)
        return [tuple(i for i in range(n) if c >> i & 1)
                for c in kern.all_cliques(adj, (1 << n) - 1)]
    bound = family_bound or DEFAULT_FAMILY_BOUND
    fams = set(_bounded_cliques(adj, n, bound))
    fams.update(_greedy_maximal(adj, n))
    return sorted(fams, key=lambda f: (len(f), f))


def verify_state(lat, state, family_bound=None):
    """``s(1) = 1`` and ``s(⋁ a_i) = Σ s(a_i)`` over orthogonal families."""
    values = [state.assignment[lat.name(i)] for i in range(len(lat))]
    if values[lat.top] != 1:
        return _fail(lat, "two-valued state", 1, "s(1) = 1", lat.top)
    checked = 1
    for fam in orthogonal_families(lat, family_bound):
        checked += 1
        if values[lat.join_all(fam)] != sum(values[i] for i in fam):
            return _fail(lat, "two-valued state", checked, "s(⋁ a_i) = Σ s(a_i)", *fam)
    return CheckReport("two-valued state", True, checked)


def check_line_crossing_xor(lat, poset=None):
    """Every line meets exactly one of ``A`` and ``A'`` for every closed ``A``."""
    poset = poset or lat.poset
    checked = 0
    for lm in line_masks(poset):
        for i, m in enumerate(lat.masks):
            checked += 1
            if bool(m & lm) == bool(lat.masks[lat.orth[i]] & lm):
                rep = _fail(lat, "line crossing", checked, "λ ∩ A ≠ ∅ ⇔ λ ∩ A' = ∅", i)
                rep.violation["line"] = poset.ordered(poset.names(lm))
                return rep
    return CheckReport("line crossing", True, checked)


def check_bcut_generates(lat, net=None, poset=None):
    """Every B-cut of a nonempty closed set generates that set under ``(.)''``."""
    poset = poset or lat.poset
    checked = 0
    notes = []
    for i, m in enumerate(lat.masks):
        if m == 0:
            continue
        bcuts = [c for c in cut_masks(poset, poset.names(m))
                 if c & ~poset.conditions_mask == 0]
        if not bcuts:
            notes.append({"skipped": lat.label(i), "reason": "no B-cut"})
            continue
        for c in bcuts:
            checked += 1
            if biortho_mask(poset, c) != m:
                rep = _fail(lat, "B-cut generation", checked, "A = τ''", i, notes=notes)
                rep.violation["cut"] = poset.ordered(poset.names(c))
                return rep
    return CheckReport("B-cut generation", True, checked, notes=notes)


@dataclass
class BooleanBlock:
    atoms: list
    carrier: list
    closed: bool
    distributive: bool

    def to_json(self, poset):
        return {
            "atoms": [poset.ordered(a) for a in self.atoms],
            "carrier": [poset.ordered(c) for c in self.carrier],
            "closed": self.closed,
            "distributive": self.distributive,
        }


def _block(lat, atom_idx):
    for a, b in combinations(atom_idx, 2):
        if not lat.orthogonal_i(a, b):
            raise BlockError(f"{lat.label(a)} and {lat.label(b)} are not orthogonal")
    if lat.join_all(atom_idx) != lat.top:
        raise BlockError("atoms do not join to the top element")
    carrier = sorted({lat.join_all(sub)
                      for r in range(len(atom_idx) + 1)
                      for sub in combinations(atom_idx, r)})
    members = set(carrier)
    closed = all(lat.orth[x] in members for x in carrier) and all(
        lat.meet_i(x, y) in members and lat.join_i(x, y) in members
        for x in carrier for y in carrier)
    distributive = all(
        lat.meet_i(x, lat.join_i(y, z)) == lat.join_i(lat.meet_i(x, y), lat.meet_i(x, z))
        and lat.join_i(x, lat.meet_i(y, z)) == lat.meet_i(lat.join_i(x, y), lat.join_i(x, z))
        for x in carrier for y in carrier for z in carrier)
    return BooleanBlock([lat.name(a) for a in atom_idx], [lat.name(c) for c in carrier],
                        closed, distributive)


def boolean_from_bcut(lat, cut):
    """Boolean block whose atoms are the closures ``{b}''`` of the conditions of a B-cut."""
    poset = lat.poset
    cm = poset.mask(cut)
    if cm not in cut_masks(poset) or cm & ~poset.conditions_mask:
        raise NotABCutError(f"{poset.ordered(cut)} is not a B-cut")
    atoms = sorted({lat.pos[biortho_mask(poset, 1 << poset.idx(b))] for b in cut})
    return _block(lat, atoms)


def boolean_from_partition(lat, parts):
    """Boolean block with the given pairwise-orthogonal closed sets as atoms."""
    idx = sorted({lat.index(p) for p in parts} - {lat.bottom})
    if not idx:
        raise BlockError("no nonzero parts")
    return _block(lat, idx)


def hasse(lat):
    """Cover pairs ``(a, b)``: ``a ⊂ b`` with nothing strictly between."""
    n = len(lat)
    out = []
    for i in range(n):
        for j in range(n):
            if i == j or not lat.leq(i, j):
                continue
            if not any(k not in (i, j) and lat.leq(i, k) and lat.leq(k, j) for k in range(n)):
                out.append((i, j))
    return [(lat.name(i), lat.name(j)) for i, j in out]


def to_dot(lat):
    """Hasse diagram in DOT syntax, one node per element, edges point upwards."""
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(len(lat)):
        label = "{" + ",".join(lat.label(i)) + "}"
        lines.append(f'  n{i} [label="{label}"];')
    for a, b in hasse(lat):
        lines.append(f"  n{lat.index(a)} -> n{lat.index(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
