import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from causalql import _pykernels, kernels
from causalql.closure import _event_data
from causalql.generators import random_causal_net, random_poset
from causalql.order import derive_poset

BACKENDS = kernels.backends()
compiled = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert kernels.select(65) is _pykernels


@compiled
@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_backends_agree_on_nets(seed):
    c, p = BACKENDS["cython"], BACKENDS["python"]
    net = random_causal_net(random.Random(seed), max_elements=12)
    P = derive_poset(net)
    events, pre, post = _event_data(P)
    for fn in ("max_cliques", "all_cliques"):
        for rows in (P.co_rows, P.li_adj):
            assert getattr(c, fn)(rows, P.full) == getattr(p, fn)(rows, P.full)
    assert c.ortho_table(P.co_rows, P.n) == p.ortho_table(P.co_rows, P.n)
    assert c.closed_sweep(P.co_rows, P.n) == p.closed_sweep(P.co_rows, P.n)
    assert c.causal_table(P.n, events, pre, post, P.up, P.down) == \
        p.causal_table(P.n, events, pre, post, P.up, P.down)
    assert c.closure_mismatch(P.co_rows, P.n, events, pre, post, P.up, P.down) == \
        p.closure_mismatch(P.co_rows, P.n, events, pre, post, P.up, P.down) == -1
    rng = random.Random(seed)
    for _ in range(20):
        m = rng.getrandbits(P.n)
        assert c.ortho(P.co_rows, P.full, m) == p.ortho(P.co_rows, P.full, m)
        assert c.biortho(P.co_rows, P.full, m) == p.biortho(P.co_rows, P.full, m)
        assert c.hull(P.up, P.down, m) == p.hull(P.up, P.down, m)
        assert c.causal_closure(events, pre, post, P.up, P.down, m) == \
            p.causal_closure(events, pre, post, P.up, P.down, m)


@compiled
@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.integers(1, 64), st.floats(0.0, 0.6))
def test_backends_agree_on_wide_posets(seed, n, density):
    c, p = BACKENDS["cython"], BACKENDS["python"]
    P = random_poset(seed, n, density)
    assert c.max_cliques(P.li_adj, P.full) == p.max_cliques(P.li_adj, P.full)
    m = random.Random(seed).getrandbits(n)
    assert c.biortho(P.co_rows, P.full, m) == p.biortho(P.co_rows, P.full, m)


def test_large_posets_use_python():
    P = random_poset(1, 70, 0.05)
    assert P.kern is _pykernels
    assert P.names(P.full) == set(P.elements)


def test_forced_fallback():
    env = dict(os.environ, CAUSALQL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import causalql; print(causalql.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
