import json

import pytest
from hypothesis import given, settings, strategies as st

from causalql.generators import EXAMPLE_NET, chain_net, description, example_net
from causalql.net import (
    AXIOMS,
    DuplicateNameError,
    NetDescription,
    NetSyntaxError,
    NetValidationError,
    UnknownElementError,
    is_simple,
    parse_net,
    postset,
    preset,
    validate_net,
)


def doc(conditions, events, arcs):
    return json.dumps({"conditions": conditions, "events": events, "arcs": arcs})


def test_parse_example():
    d = parse_net(json.dumps(EXAMPLE_NET))
    assert len(d.conditions) == 4 and len(d.events) == 1 and len(d.arcs) == 4
    assert d.arcs[0] == ("p", "e")


@pytest.mark.parametrize("text", ["", "   \n"])
def test_parse_empty_is_syntax_error(text):
    with pytest.raises(NetSyntaxError):
        parse_net(text)


def test_parse_reports_position():
    with pytest.raises(NetSyntaxError) as exc:
        parse_net('{"conditions": ["p",\n ]}')
    assert exc.value.line == 2


def test_parse_duplicate_condition():
    with pytest.raises(DuplicateNameError) as exc:
        parse_net(doc(["p", "p"], ["e"], [["p", "e"]]))
    assert exc.value.name == "p"


@pytest.mark.parametrize("bad", [
    '["p"]',
    doc(["1p"], [], []),
    doc(["p"], ["e"], [["p"]]),
    doc(["p"], ["e"], [["p", 3]]),
    '{"conditions": ["p"], "extra": 1}',
])
def test_parse_rejects_malformed(bad):
    with pytest.raises(NetSyntaxError):
        parse_net(bad)


def test_parse_does_not_validate():
    d = parse_net(doc(["b"], ["e"], [["b", "e"], ["e", "b"]]))
    assert d.arcs == (("b", "e"), ("e", "b"))


def test_validate_example():
    net = validate_net(description(EXAMPLE_NET))
    assert net.elements == ("p", "q", "r", "s", "e")
    assert net.conditions == {"p", "q", "r", "s"}
    assert net.events == {"e"}


@pytest.mark.parametrize("conds, events, arcs, code", [
    (["x", "b"], ["x"], [("b", "x")], "disjointness"),
    (["a", "b", "c"], ["e"], [("a", "e"), ("e", "b")], "isolated"),
    (["b"], [], [], "isolated"),
    (["a", "b"], ["e"], [("a", "b"), ("a", "e"), ("e", "b")], "arc_kind"),
    (["a"], ["e", "f"], [("e", "f"), ("a", "e")], "arc_kind"),
    (["a"], ["e"], [("a", "e"), ("e", "zz")], "arc_kind"),
    (["b"], ["e1", "e2"], [("e1", "b"), ("e2", "b")], "branching"),
    (["b"], ["e1", "e2"], [("b", "e1"), ("b", "e2")], "branching"),
    (["b"], ["e"], [("b", "e"), ("e", "b")], "acyclicity"),
])
def test_validate_rejections(conds, events, arcs, code):
    with pytest.raises(NetValidationError) as exc:
        validate_net(NetDescription(tuple(conds), tuple(events), tuple(arcs)))
    assert exc.value.code == code


def test_first_axiom_wins():
    # both a cycle and a branching condition: branching is checked first
    d = NetDescription(("b", "c"), ("e1", "e2"),
                       (("b", "e1"), ("e1", "b"), ("e1", "c"), ("e2", "c")))
    with pytest.raises(NetValidationError) as exc:
        validate_net(d)
    assert exc.value.code == "branching"
    assert AXIOMS.index("branching") < AXIOMS.index("acyclicity")


def test_cycle_witness_is_a_cycle():
    d = NetDescription(("a", "b"), ("e", "f"),
                       (("a", "e"), ("e", "b"), ("b", "f"), ("f", "a")))
    with pytest.raises(NetValidationError) as exc:
        validate_net(d)
    w = exc.value.witness
    assert w[0] == w[-1] and len(w) == 5


def test_preset_postset(net):
    assert preset(net, "e") == {"p", "q"}
    assert preset(net, "p") == frozenset()
    assert preset(net, "r") == {"e"}
    assert postset(net, "e") == {"r", "s"}
    assert postset(net, "s") == frozenset()
    assert postset(net, "q") == {"e"}
    with pytest.raises(UnknownElementError):
        preset(net, "zz")


def test_is_simple():
    assert is_simple(chain_net(1))
    d = NetDescription(("a1", "b1", "a2", "b2"), ("e1", "e2"),
                       (("a1", "e1"), ("e1", "b1"), ("a2", "e2"), ("e2", "b2")))
    assert is_simple(validate_net(d))


def test_is_simple_false_for_shared_neighbourhoods():
    # p and q both have preset ∅ and postset {e}
    assert not is_simple(example_net())
    d = NetDescription(("a", "b", "c"), ("e",), (("a", "e"), ("b", "e"), ("e", "c")))
    assert not is_simple(validate_net(d))


arc_lists = st.lists(st.tuples(st.sampled_from("abcXYZ"), st.sampled_from("abcXYZ")), max_size=8)


@settings(max_examples=200, deadline=None)
@given(arc_lists)
def test_valid_nets_satisfy_axioms(arcs):
    conds = ("a", "b", "c")
    events = ("X", "Y", "Z")
    used = {x for a in arcs for x in a}
    d = NetDescription(tuple(c for c in conds if c in used), tuple(e for e in events if e in used),
                       tuple(arcs))
    try:
        net = validate_net(d)
    except NetValidationError as exc:
        assert exc.code in AXIOMS
        return
    for b in net.conditions:
        assert len(net.pre[b]) <= 1 and len(net.post[b]) <= 1
    # a topological order exists: repeatedly remove sources
    remaining = set(net.elements)
    while remaining:
        sources = {x for x in remaining if not (net.pre[x] & remaining)}
        assert sources
        remaining -= sources
