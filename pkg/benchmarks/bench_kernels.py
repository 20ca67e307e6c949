"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--elements 16] [--repeat 3]
"""

import argparse
import random
import timeit

from causalql import kernels
from causalql.closure import _event_data
from causalql.generators import random_causal_net
from causalql.order import derive_poset


def pick_net(size, seed=0):
    rng = random.Random(seed)
    best = None
    for _ in range(500):
        net = random_causal_net(rng, max_elements=size)
        if best is None or len(net) > len(best):
            best = net
        if len(best) == size:
            break
    return best


def cases(poset):
    events, pre, post = _event_data(poset)
    n, rows = poset.n, poset.co_rows
    return {
        "closure_mismatch (all subsets)":
            lambda k: k.closure_mismatch(rows, n, events, pre, post, poset.up, poset.down),
        "closed_sweep (all subsets)": lambda k: k.closed_sweep(rows, n),
        "ortho_table": lambda k: k.ortho_table(rows, n),
        "causal_table": lambda k: k.causal_table(n, events, pre, post, poset.up, poset.down),
        "max_cliques co+li": lambda k: (k.max_cliques(rows, poset.full),
                                        k.max_cliques(poset.li_adj, poset.full)),
        "all_cliques (cosets)": lambda k: k.all_cliques(rows, poset.full),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--elements", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    net = pick_net(args.elements, args.seed)
    poset = derive_poset(net)
    backends = kernels.backends()
    print(f"net: {len(net.conditions)} conditions, {len(net.events)} events "
          f"({poset.n} elements, 2^{poset.n} subsets)")
    print(f"backends: {', '.join(backends)}\n")
    header = f"{'kernel':34}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, fn in cases(poset).items():
        results = {b: fn(k) for b, k in backends.items()}
        assert len({repr(r) for r in results.values()}) == 1, f"backends disagree on {name}"
        times = {b: min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
                 for b, k in backends.items()}
        row = f"{name:34}" + "".join(f"{t * 1e3:10.2f}ms" for t in times.values())
        if len(times) == 2:
            row += f"{times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
