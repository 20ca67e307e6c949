"""Propositional formulas interpreted over closed sets, with truth given by a line.

Concrete syntax::

    formula := implies
    implies := or ("->" implies)?        right associative
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "!" unary | atom | "(" formula ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Union

from .lattice import NotALineError, compatible_i
from .order import is_line_mask, line_masks


class FormulaSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundAtomError(KeyError):
    def __str__(self):
        return f"atom {self.args[0]!r} is not bound"


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or, Implies]

_TOKEN = re.compile(r"\s*(?:(->)|([!&|()])|([A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = "op" if m.group(1) or m.group(2) else "atom"
        tokens.append((kind, m.group(1) or m.group(2) or m.group(3), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            found = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise FormulaSyntaxError(f"expected {value!r}, found {found}", tok[2])
        self.i += 1
        return tok

    def implies(self):
        left = self.or_()
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def or_(self):
        node = self.and_()
        while self.peek()[1] == "|":
            self.take()
            node = Or(node, self.and_())
        return node

    def and_(self):
        node = self.unary()
        while self.peek()[1] == "&":
            self.take()
            node = And(node, self.unary())
        return node

    def unary(self):
        kind, value, pos = self.peek()
        if value == "!":
            self.take()
            return Not(self.unary())
        if value == "(":
            self.take()
            node = self.implies()
            self.take(")")
            return node
        if kind == "atom":
            self.take()
            return Atom(value)
        found = repr(value) if kind != "end" else "end of input"
        raise FormulaSyntaxError(f"expected a formula, found {found}", pos)


def parse_formula(text):
    parser = _Parser(text)
    node = parser.implies()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected {value!r}", pos)
    return node


_PREC = {Implies: 1, Or: 2, And: 3, Not: 4, Atom: 5}
_SYMBOL = {Implies: "->", Or: "|", And: "&"}


def format_formula(f):
    """Render with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = format_formula(f.operand)
        return "!" + (inner if _PREC[type(f.operand)] >= _PREC[Not] else f"({inner})")
    prec = _PREC[type(f)]
    left, right = format_formula(f.left), format_formula(f.right)
    # & and | associate left, -> associates right
    lp, rp = _PREC[type(f.left)], _PREC[type(f.right)]
    if isinstance(f, Implies):
        left_paren, right_paren = lp <= prec, rp < prec
    else:
        left_paren, right_paren = lp < prec, rp <= prec
    if left_paren:
        left = f"({left})"
    if right_paren:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def atoms(f):
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Not):
        return atoms(f.operand)
    return atoms(f.left) | atoms(f.right)


def _interpret_i(f, h, lat):
    if isinstance(f, Atom):
        try:
            return h[f.name]
        except KeyError:
            raise UnboundAtomError(f.name) from None
    if isinstance(f, Not):
        return lat.orth[_interpret_i(f.operand, h, lat)]
    a = _interpret_i(f.left, h, lat)
    b = _interpret_i(f.right, h, lat)
    if isinstance(f, And):
        return lat.meet_i(a, b)
    if isinstance(f, Or):
        return lat.join_i(a, b)
    return lat.join_i(lat.orth[a], b)


def _binding_indices(lat, binding):
    return {name: lat.index(a) for name, a in binding.items()}


def interpret(f, binding, lat):
    """The closed set assigned to ``f``; ``binding`` maps atom names to closed sets."""
    return lat.name(_interpret_i(f, _binding_indices(lat, binding), lat))


@dataclass(frozen=True)
class Interpretation:
    binding: Mapping[str, frozenset]
    line: frozenset


def satisfies(interp, f, lat):
    """True iff the line of ``interp`` meets the closed set of ``f``."""
    poset = lat.poset
    lm = poset.mask(interp.line)
    if not is_line_mask(poset, lm):
        raise NotALineError(f"{poset.ordered(interp.line)} is not a line")
    value = _interpret_i(f, _binding_indices(lat, interp.binding), lat)
    return bool(lat.masks[value] & lm)


CLAUSES = {
    "1": "J ⊨ f ∧ g iff J ⊨ f and J ⊨ g",
    "2": "J ⊨ ¬f iff not J ⊨ f",
    "3": "J ⊨ f ∨ g iff i(f) comp i(g) and (J ⊨ f or J ⊨ g)",
    "4": "J ⊨ f → g iff i(f) ⊆ i(g)",
}


@dataclass
class LawReport:
    """Per clause and direction: instances checked, passed, and counterexamples.

    Direction ``"=>"`` reads the clause left to right (satisfaction of the
    compound implies the right-hand side), ``"<="`` the converse.
    """

    counts: dict = field(default_factory=dict)
    counterexamples: dict = field(default_factory=dict)

    def holds(self, clause, direction):
        return not self.counterexamples.get((clause, direction))

    def to_json(self):
        return {
            f"{c} {d}": {"checked": n, "passed": p,
                         "counterexamples": self.counterexamples.get((c, d), [])}
            for (c, d), (n, p) in sorted(self.counts.items())
        }


def _formulas(atom_names, h, lat, depth):
    """Smallest representative formula for each value reachable within ``depth``."""
    reps = {}
    for name in atom_names:
        reps.setdefault(h[name], Atom(name))
    for _ in range(depth):
        current = list(reps.items())
        new = {}
        for v, f in current:
            new.setdefault(lat.orth[v], Not(f))
        for (v, f), (w, g) in product(current, repeat=2):
            new.setdefault(lat.meet_i(v, w), And(f, g))
            new.setdefault(lat.join_i(v, w), Or(f, g))
            new.setdefault(lat.join_i(lat.orth[v], w), Implies(f, g))
        for v, f in new.items():
            reps.setdefault(v, f)
    return reps


def formula_bindings(lat, atom_names=("f", "g", "h"), depth=3):
    """Yield ``(binding, {value: formula})`` for every binding of the atoms.

    The formulas have depth below ``depth`` so that the compounds built from
    two of them stay within ``depth``. Formulas with equal interpretation are
    represented once since satisfaction only sees the interpreted set.
    """
    for combo in product(range(len(lat)), repeat=len(atom_names)):
        h = dict(zip(atom_names, combo))
        yield h, _formulas(atom_names, h, lat, depth - 1)


def check_satisfaction_laws(lat, poset=None, sample=None):
    """Test the four satisfaction clauses in both directions over all lines.

    ``sample`` is an iterable of ``(binding, {value: formula})`` as produced
    by :func:`formula_bindings` (the default). Each distinct pair of
    interpreted values is checked once per line; counterexamples keep the
    formulas and binding that first produced them.
    """
    poset = poset or lat.poset
    lines = line_masks(poset)
    sample = formula_bindings(lat) if sample is None else sample
    report = LawReport()
    for key in [(c, d) for c in CLAUSES for d in ("=>", "<=")]:
        report.counts[key] = [0, 0]
    seen_single, seen_pair = set(), set()

    def record(clause, direction, ok, lm, explain):
        entry = report.counts[(clause, direction)]
        entry[0] += 1
        if ok:
            entry[1] += 1
        else:
            detail = explain()
            detail["line"] = poset.ordered(poset.names(lm))
            report.counterexamples.setdefault((clause, direction), []).append(detail)

    def describe(h, **formulas):
        used = set().union(*(atoms(f) for f in formulas.values()))
        out = {k: format_formula(f) for k, f in formulas.items()}
        out["binding"] = {a: lat.label(h[a]) for a in sorted(used)}
        return out

    def explain(h, op, f, v, g=None, w=None):
        if g is None:
            return lambda: {**describe(h, operand=f, formula=op(f)),
                            "i(operand)": lat.label(v)}
        return lambda: {**describe(h, left=f, right=g, formula=op(f, g)),
                        "i(left)": lat.label(v), "i(right)": lat.label(w)}

    crosses = [[bool(m & lm) for m in lat.masks] for lm in lines]
    compat = {}
    for h, reps in sample:
        for v, f in reps.items():
            if v in seen_single:
                continue
            seen_single.add(v)
            nv = lat.orth[v]
            why = explain(h, Not, f, v)
            for lm, cross in zip(lines, crosses):
                record("2", "=>", not cross[nv] or not cross[v], lm, why)
                record("2", "<=", cross[v] or cross[nv], lm, why)
        for (v, f), (w, g) in product(reps.items(), repeat=2):
            if (v, w) in seen_pair:
                continue
            seen_pair.add((v, w))
            meet_vw = lat.meet_i(v, w)
            join_vw = lat.join_i(v, w)
            imp_vw = lat.join_i(lat.orth[v], w)
            if (v, w) not in compat:
                compat[v, w] = compat[w, v] = compatible_i(lat, v, w)
            comp = compat[v, w]
            subset = lat.leq(v, w)
            why_and = explain(h, And, f, v, g, w)
            why_or = explain(h, Or, f, v, g, w)
            why_imp = explain(h, Implies, f, v, g, w)
            for lm, cross in zip(lines, crosses):
                both = cross[v] and cross[w]
                record("1", "=>", not cross[meet_vw] or both, lm, why_and)
                record("1", "<=", not both or cross[meet_vw], lm, why_and)
                either = comp and (cross[v] or cross[w])
                record("3", "=>", not cross[join_vw] or either, lm, why_or)
                record("3", "<=", not either or cross[join_vw], lm, why_or)
                record("4", "=>", not cross[imp_vw] or subset, lm, why_imp)
                record("4", "<=", not subset or cross[imp_vw], lm, why_imp)
    report.counts = {k: tuple(v) for k, v in report.counts.items()}
    return report
