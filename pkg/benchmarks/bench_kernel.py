"""Benchmark the compiled kernel against the pure-Python fallback.

Times the three hot operations behind every enumeration: the skew-series
product, orbit closure under conjugation, and the full conjugacy-class
partition of a congruence quotient.  Run after `pip install -e .`:

    python benchmarks/bench_kernel.py [--q 3 --ell 2 --m 4]
"""

import argparse
import random
import time

from sl1d.gf import FieldTower
from sl1d.kernel import make_kernel
from sl1d.orbits import ActingGroup, acting_generators
from sl1d import construction


def available_backends():
    out = ["py"]
    try:
        make_kernel(FieldTower(3, 1, 2), 2, backend="c")
        out.append("c")
    except Exception:
        pass
    return out


def bench_mul(kern, codes, reps):
    t0 = time.perf_counter()
    n = 0
    for _ in range(reps):
        for a, b in codes:
            kern.mul(a, b)
            n += 1
    return n / (time.perf_counter() - t0)


def bench_orbit(kern, seeds, gens, ginvs):
    t0 = time.perf_counter()
    total = 0
    for s in seeds:
        total += len(kern.orbit(s, gens, ginvs, 10**6))
    return total, time.perf_counter() - t0


def bench_classes(tower, m, backend):
    t0 = time.perf_counter()
    G = construction.build_quotient_group(tower, m)
    G.kern = make_kernel(tower, m, backend=backend)
    G.conjugacy_classes()
    return G.class_count(), time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--ell", type=int, default=2)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--reps", type=int, default=30)
    args = ap.parse_args()

    p = args.q  # prime q only for the default benchmark grid
    tower = FieldTower(p, 1, args.ell)
    m = args.m
    rng = random.Random(0)
    codes = [(rng.randrange(tower.Q**m), rng.randrange(tower.Q**m))
             for _ in range(2000)]
    gens = acting_generators(tower, m, ActingGroup.G)
    seeds = [rng.randrange(1, tower.Q**m) for _ in range(30)]

    print(f"tower F_{p} <= F_{p} <= F_{tower.Q}, precision m = {m}")
    rates = {}
    for backend in available_backends():
        kern = make_kernel(tower, m, backend=backend)
        ginvs = [kern.inv(g) for g in gens]
        rate = bench_mul(kern, codes, args.reps)
        osize, otime = bench_orbit(kern, seeds, gens, ginvs)
        csize, ctime = bench_classes(tower, m, backend)
        rates[backend] = (rate, otime, ctime)
        print(f"  [{backend:>2}] mul: {rate/1e3:8.1f} k ops/s   "
              f"orbit closure ({osize} elems): {otime*1e3:7.1f} ms   "
              f"classes ({csize}): {ctime*1e3:7.1f} ms")
    if len(rates) == 2:
        pr, po, pc = rates["py"]
        cr, co, cc = rates["c"]
        print(f"  speedup: mul {cr/pr:4.1f}x,  orbit {po/co:4.1f}x,  "
              f"classes {pc/cc:4.1f}x")


if __name__ == "__main__":
    main()
