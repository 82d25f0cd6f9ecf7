"""Compare the compiled and pure-Python polygon kernels.

    python3 benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 3]
"""

import argparse
import random
import time

from isocurve import kernel


def random_polygon(rng, m, spread=10**6):
    return [rng.randint(-spread, spread) for _ in range(m)], [rng.randint(-spread, spread) for _ in range(m)]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 100, 200])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = kernel.available_backends()
    names = sorted(backends)
    if len(names) < 2:
        print("only the pure-Python kernel is available; build the extension with `pip install -e .`")
    rng = random.Random(args.seed)
    print(f"{'kernel':<20}{'m':>6}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for m in args.sizes:
        xs, ys = random_polygon(rng, m)
        for label, call in (
            ("crossing_pairs", lambda b: b.crossing_pairs(xs, ys)),
            ("generic_violations", lambda b: b.generic_violations(xs, ys)),
        ):
            results = {n: call(backends[n]) for n in names}
            first = results[names[0]]
            assert all(r == first for r in results.values()), f"kernels disagree on {label}, m={m}"
            times = {n: best_of(lambda: call(backends[n]), args.repeat) for n in names}
            row = f"{label:<20}{m:>6}" + "".join(f"{times[n]:>11.4f}s" for n in names)
            if "python" in times and len(names) > 1:
                fast = min(t for n, t in times.items() if n != "python")
                row += f"{times['python'] / fast:>11.1f}x"
            print(row)


if __name__ == "__main__":
    main()
