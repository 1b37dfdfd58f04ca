"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_core.py [--repeat N]

Each kernel runs on the same inputs in both backends; outputs are checked
for equality before timings are reported.
"""

import argparse
import random
import timeit

from deltaraag import _pycore

try:
    from deltaraag import _core
except ImportError:
    _core = None


def _rows(rng, n, width):
    return [rng.getrandbits(width) for _ in range(n)]


def _unipotent(rng, n):
    full = (1 << n) - 1
    return tuple((1 << i) | ((rng.getrandbits(n) >> (i + 1)) << (i + 1)) & full for i in range(n))


def cases(rng):
    from deltaraag.graphs import _cells, all_graphs

    rref_in = [_rows(rng, 300, 400) for _ in range(5)]
    umul_in = [(_unipotent(rng, 48), _unipotent(rng, 48)) for _ in range(50)]
    graphs = [g for g in all_graphs(7) if g.n == 7][::10]
    canon_in = [(g.n, list(g.adj), _cells(g)) for g in graphs]
    return {
        "rref 300x400": (lambda k: [k.rref(r) for r in rref_in]),
        "rank 300x400": (lambda k: [k.rank(r) for r in rref_in]),
        "umul U48 x50": (lambda k: [k.umul(a, b) for a, b in umul_in]),
        f"canon_search n=7 x{len(canon_in)}": (lambda k: [k.canon_search(*c) for c in canon_in]),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled extension not built; only the Python backend is available")
    rng = random.Random(args.seed)
    print(f"{'kernel':<28}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, run in cases(rng).items():
        t_py = min(timeit.repeat(lambda: run(_pycore), number=1, repeat=args.repeat)) * 1e3
        if _core is None:
            print(f"{name:<28}{t_py:>14.2f}{'-':>14}{'-':>10}")
            continue
        assert run(_core) == run(_pycore), f"backends disagree on {name}"
        t_c = min(timeit.repeat(lambda: run(_core), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<28}{t_py:>14.2f}{t_c:>14.2f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
