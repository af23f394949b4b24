"""Compare the compiled and pure-Python representability kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each workload runs through both backends on identical inputs; the results
are checked for equality before timings are reported.
"""

import argparse
import json
import random
import timeit
from fractions import Fraction
from math import gcd

import numpy as np

from puiseux import _kernels_py
from puiseux.families import build_family
from puiseux.fgmonoid import truncate

try:
    from puiseux import _ckernels
except ImportError:
    _ckernels = None


def _suffix_gcd(weights):
    sg = [0] * (len(weights) + 1)
    for i in range(len(weights) - 1, -1, -1):
        sg[i] = gcd(weights[i], sg[i + 1])
    return sg


def workloads():
    rng = random.Random(0)
    out = []
    for n, top, target in ((4, 60, 5_000), (8, 200, 50_000), (12, 900, 200_000)):
        w = sorted(rng.sample(range(7, top), n))
        out.append((f"reach n={n} T={target}", "reach", (w, target)))
    # weights of real truncations, scaled to integers
    for tag, params, depth, q in (("af-not-nf", {"l": 1}, 8, Fraction(977, 2 * 3 * 7 * 13)),
                                  ("grams", {}, 10, Fraction(1, 3) + Fraction(5, 56)),
                                  ("pow-denom", {"p": 3}, 10, Fraction(1, 2) + Fraction(2, 3**9))):
        P = truncate(build_family(tag, **params), depth)
        plan = P._plan
        T = int(q * P.common_denominator)
        out.append((f"dfs {tag} depth={depth}", "dfs",
                     (list(plan.weights), list(plan.suffix_gcd), list(plan.dominated), T)))
    # largest non-representable targets: the search has to exhaust the tree
    for w, T in (([211, 223, 227, 229, 233, 239], 3613),
                 ([1009, 1013, 1019, 1021, 1031], 95857),
                 ([5003, 5009, 5011, 5021], 2796681)):
        out.append((f"dfs exhaust n={len(w)} T={T}", "dfs", (w, _suffix_gcd(w), [0] * len(w), T)))
    return out


def run(mod, kind, args):
    if kind == "reach":
        return mod.suffix_reach(*args)
    return mod.dfs_search(*args, 10**7)


def same(kind, a, b):
    if kind == "reach":
        return np.array_equal(np.asarray(a), np.asarray(b))
    return a == b  # status, certificate and node count


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . first")
    rows = []
    for name, kind, wargs in workloads():
        ref = run(_kernels_py, kind, wargs)
        got = run(_ckernels, kind, wargs)
        if not same(kind, ref, got):
            raise SystemExit(f"backends disagree on {name}")
        t_py = min(timeit.repeat(lambda: run(_kernels_py, kind, wargs), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: run(_ckernels, kind, wargs), number=1, repeat=args.repeat))
        rows.append({"workload": name, "python_s": t_py, "compiled_s": t_c, "speedup": t_py / t_c})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':32s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for r in rows:
        print(f"{r['workload']:32s} {r['python_s']*1e3:9.2f}ms {r['compiled_s']*1e3:9.2f}ms "
              f"{r['speedup']:7.1f}x")


if __name__ == "__main__":
    main()
