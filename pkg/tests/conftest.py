import random

import pytest

from causalql import build_lattice, derive_poset
from causalql.generators import chain_net, example_net, random_causal_net

GENERATED_SEED = 2012
GENERATED_COUNT = 60


def generated_nets(count=GENERATED_COUNT, seed=GENERATED_SEED, max_elements=12):
    rng = random.Random(seed)
    return [random_causal_net(rng, max_elements) for _ in range(count)]


@pytest.fixture(scope="session")
def net():
    return example_net()


@pytest.fixture(scope="session")
def poset(net):
    return derive_poset(net)


@pytest.fixture(scope="session")
def lat(net, poset):
    return build_lattice(net, poset)


@pytest.fixture(scope="session")
def chain():
    n = chain_net(1)
    p = derive_poset(n)
    return n, p, build_lattice(n, p)


@pytest.fixture(scope="session")
def corpus():
    """(net, poset, lattice) for the example net plus the generated nets."""
    out = []
    for n in [example_net(), chain_net(1), chain_net(3)] + generated_nets():
        p = derive_poset(n)
        out.append((n, p, build_lattice(n, p)))
    return out


def pytest_terminal_summary(terminalreporter):
    reports = [r for r in terminalreporter.stats.get("passed", []) + terminalreporter.stats.get("failed", [])
               if "test_acceptance.py" in r.nodeid and r.when == "call"]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(reports, key=lambda r: r.nodeid):
        name = r.nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if r.passed else 'FAIL'}  {name}")
