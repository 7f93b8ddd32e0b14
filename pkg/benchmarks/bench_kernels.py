"""Compiled vs pure-Python kernels: matrix powering and group-ring convolution.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit

from unitlift import kernels
from unitlift.groups import cyclic, symmetric


def _cases():
    rng = random.Random(0)
    for n, m, e in ((3, 27, 8), (8, 2 ** 16, 2 ** 15 - 1), (16, 3 ** 20, 3 ** 19 - 1), (32, 5 ** 20, 5 ** 10)):
        a = [rng.randrange(m) for _ in range(n * n)]
        yield f"matpow n={n} m={m} e={e}", "matpow_mod", (a, e, n, m)
    for g, m in ((cyclic(5), 25), (symmetric(4), 3 ** 10), (cyclic(60), 2 ** 40)):
        x = [rng.randrange(m) for _ in range(g.order)]
        y = [rng.randrange(m) for _ in range(g.order)]
        yield f"convolve |G|={g.order} m={m}", "convolve_mod", (x, y, g.flat_table, g.order, m)


def _value(name, out):
    # matpow_mod also returns its multiplication count
    return list(out if name == "convolve_mod" else out[0])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if kernels.compiled is None:
        print("compiled extension not built; only the Python kernels are available")
    print("| case | python (ms) | compiled (ms) | speed-up |")
    print("|---|---:|---:|---:|")
    for label, name, call in _cases():
        py = getattr(kernels.python, name)
        t_py = min(timeit.repeat(lambda: py(*call), number=1, repeat=args.repeat)) * 1e3
        if kernels.compiled is None:
            print(f"| {label} | {t_py:.3f} | - | - |")
            continue
        cy = getattr(kernels.compiled, name)
        if _value(name, py(*call)) != _value(name, cy(*call)):
            raise SystemExit(f"kernels disagree on {label}")
        t_cy = min(timeit.repeat(lambda: cy(*call), number=1, repeat=args.repeat)) * 1e3
        print(f"| {label} | {t_py:.3f} | {t_cy:.3f} | {t_py / t_cy:.1f}x |")


if __name__ == "__main__":
    main()
