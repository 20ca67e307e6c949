import random

import pytest

from causalql.generators import n_poset, random_causal_net, random_poset
from causalql.lattice import (
    BlockError,
    NotABCutError,
    NotALineError,
    NotAMemberError,
    are_compatible,
    are_orthogonal,
    boolean_from_bcut,
    boolean_from_partition,
    build_lattice,
    check_bcut_generates,
    check_compatibility_agreement,
    check_line_crossing_xor,
    check_ortholattice,
    check_orthomodular,
    check_regular,
    compatible_by_commutation,
    hasse,
    join,
    line_state,
    meet,
    ortho_c,
    orthogonal_families,
    to_dot,
    verify_state,
)
from causalql.order import Poset, derive_poset, enumerate_lines
from oracles import Oracle, lattice_oracle

S = frozenset
X = S("pqrse")
E = S()


def test_example_elements(lat):
    assert lat.elements == [E, S("p"), S("q"), S("r"), S("s"), X]


def test_chain_lattice(chain):
    _, _, lat = chain
    assert lat.elements == [E, S({"b0", "e0", "b1"})]
    assert len(hasse(lat)) == 1


def test_operations(lat):
    assert join(lat, {"p"}, {"r"}) == X
    assert meet(lat, {"p"}, {"r"}) == E
    assert ortho_c(lat, {"p"}) == {"q"}
    for a in lat.elements:
        assert meet(lat, a, ortho_c(lat, a)) == E
        assert join(lat, a, ortho_c(lat, a)) == X
    with pytest.raises(NotAMemberError):
        join(lat, {"p", "q"}, {"r"})


def test_orthogonality(lat):
    assert are_orthogonal(lat, {"p"}, {"q"})
    assert all(are_orthogonal(lat, E, a) for a in lat.elements)
    assert not are_orthogonal(lat, {"p"}, {"r"})


def test_compatibility(lat):
    assert are_compatible(lat, {"p"}, {"q"}) == (True, (S("p"), E, S("q")))
    assert not are_compatible(lat, {"p"}, {"r"})
    for a in lat.elements:
        ok, (x1, z, y1) = are_compatible(lat, a, a)
        assert ok and z == a and x1 == y1 == E


def test_law_checks_example(lat, chain):
    for l in (lat, chain[2]):
        assert check_ortholattice(l)
        assert check_orthomodular(l)
        assert check_regular(l)
        assert check_compatibility_agreement(l)


def test_line_states(lat, poset):
    s = line_state(lat, {"q", "e", "s"})
    assert [s(a) for a in lat.elements] == [0, 0, 1, 0, 1, 1]
    s = line_state(lat, {"p", "e", "r"})
    assert [s(a) for a in lat.elements] == [0, 1, 0, 1, 0, 1]
    for line in enumerate_lines(poset):
        st = line_state(lat, line)
        assert st(X) == 1 and st(E) == 0
        assert verify_state(lat, st)
    with pytest.raises(NotALineError):
        line_state(lat, {"q", "e"})


def test_orthogonal_families(lat):
    fams = orthogonal_families(lat)
    assert () in fams
    # {p} ∨ {q} = X, so s({p}) + s({q}) = 1 for every line state
    assert (1, 2) in fams
    bounded = orthogonal_families(lat, family_bound=1)
    assert set(bounded) >= {(), (1,), (5,)}


def test_bad_state_is_caught(lat):
    s = line_state(lat, {"q", "e", "s"})
    broken = type(s)({**s.assignment, S("p"): 1}, s.source_line)
    rep = verify_state(lat, broken)
    assert not rep and rep.violation["law"].startswith("s(")


def test_xor_and_bcut(lat, poset):
    assert check_line_crossing_xor(lat, poset).checked == 24
    rep = check_bcut_generates(lat)
    assert rep
    assert rep.checked == 4 + 2  # four atoms with their single-condition cuts, plus {p,q} and {r,s}


def test_bcut_generation_skips_sets_without_b_cut():
    # synthetic poset: an event concurrent with a condition
    p = Poset.from_covers("ab", [], kinds={"a": "event", "b": "condition"})
    lat = build_lattice(None, p)
    rep = check_bcut_generates(lat)
    assert rep.checked == 1
    assert rep.notes == [{"skipped": ["a"], "reason": "no B-cut"},
                         {"skipped": ["a", "b"], "reason": "no B-cut"}]


def test_boolean_blocks(lat, chain):
    b = boolean_from_bcut(lat, {"p", "q"})
    assert b.atoms == [S("p"), S("q")]
    assert b.carrier == [E, S("p"), S("q"), X]
    assert b.closed and b.distributive
    b2 = boolean_from_bcut(lat, {"r", "s"})
    assert b2.atoms == [S("r"), S("s")] and len(b2.carrier) == 4
    cnet, cposet, clat = chain
    b3 = boolean_from_bcut(clat, {"b0"})
    assert b3.atoms == [clat.elements[-1]] and len(b3.carrier) == 2
    assert boolean_from_partition(lat, [{"p"}, {"q"}]) == b
    assert boolean_from_partition(lat, [X]).carrier == [E, X]
    with pytest.raises(BlockError):
        boolean_from_partition(lat, [{"p"}, {"r"}])
    with pytest.raises(BlockError):
        boolean_from_partition(lat, [{"p"}])
    with pytest.raises(NotABCutError):
        boolean_from_bcut(lat, {"e"})
    with pytest.raises(NotABCutError):
        boolean_from_bcut(lat, {"p"})


def test_hasse_and_dot(lat):
    covers = hasse(lat)
    assert len(covers) == 8
    assert all(a != E or b in (S("p"), S("q"), S("r"), S("s")) for a, b in covers)
    assert not any(b == E for _, b in covers)
    dot = to_dot(lat)
    assert dot.count("[label=") == 6 and dot.count("->") == 8
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")


@pytest.mark.parametrize("seed", range(15))
def test_against_oracle(seed):
    net = random_causal_net(random.Random(500 + seed), max_elements=9)
    p = derive_poset(net)
    lat = build_lattice(net, p, sweep_check=True)
    o = Oracle(net.description)
    closed = o.closed_sets()
    assert set(lat.elements) == closed
    ojoin, oorth, ocomp = lattice_oracle(closed, o.ortho)
    els = lat.elements
    for a in els:
        assert ortho_c(lat, a) == o.ortho(a)
        for b in els:
            assert join(lat, a, b) == ojoin(a, b)
            assert are_orthogonal(lat, a, b) == oorth(a, b)
    sample = els[:6]
    for a in sample:
        for b in sample:
            assert are_compatible(lat, a, b).compatible == ocomp(a, b)


@pytest.mark.parametrize("seed", range(15))
def test_compatibility_characterizations_agree(seed):
    net = random_causal_net(random.Random(seed), max_elements=11)
    p = derive_poset(net)
    lat = build_lattice(net, p)
    assert check_compatibility_agreement(lat)
    assert check_regular(lat)


def test_synthetic_posets_are_ortholattices():
    # closed sets over co always form an ortholattice, dense or not
    for seed in range(30):
        p = random_poset(seed, 7, 0.35)
        lat = build_lattice(None, p, sweep_check=True)
        assert check_ortholattice(lat)


def test_n_poset_lattice():
    p = n_poset()
    lat = build_lattice(None, p, sweep_check=True)
    assert check_ortholattice(lat)
    # the line {b, c} misses the closed set {a,d}-side; the report must run either way
    rep = check_line_crossing_xor(lat)
    assert rep.checked > 0
    assert compatible_by_commutation(lat, lat.elements[0], lat.elements[-1])
