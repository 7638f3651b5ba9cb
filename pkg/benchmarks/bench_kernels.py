"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Part 1 times the raw kernels in-process on random Weyl monomials.  Part 2
runs whole hypergeometric pipelines in a subprocess per backend, since the
backend is fixed at import time.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from multideg import _kernels_py

try:
    from multideg import _kernels
except ImportError:
    _kernels = None

PIPELINES = [
    ("ex3 beta=(1,2)", [[1, 1, 1, 1], [0, 1, 3, 4]], [1, 2]),
    ("ex4 beta=(2,10)", [[1, 1, 1, 1, 1], [0, 2, 4, 7, 9]], [2, 10]),
    ("ex6 beta=(-1,2)", [[-2, -1, 0, 1], [1, 1, 2, 2]], [-1, 2]),
]

CHILD = """
import sys, time
from multideg import hypergeom, kernels
A, beta = eval(sys.argv[1]), eval(sys.argv[2])
t = time.perf_counter()
hypergeom.analyze(A, beta, seed=0)
print(kernels.BACKEND, time.perf_counter() - t)
"""


def random_monos(rng, count, n=3):
    # layout x(n) dx(n) comp
    out = []
    for _ in range(count):
        out.append(tuple(rng.randint(0, 4) for _ in range(2 * n)) + (0,))
    return out


def bench_mul(mod, monos, pairs, rounds):
    t = time.perf_counter()
    for _ in range(rounds):
        for a, b in zip(monos, monos[1:]):
            mod.weyl_mono_mul(a, b, pairs)
    return time.perf_counter() - t


def run_child(A, beta, pure):
    env = dict(os.environ)
    env.pop("MULTIDEG_PURE_PYTHON", None)
    if pure:
        env["MULTIDEG_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", CHILD, repr(A), repr(beta)], env=env, capture_output=True, text=True, check=True
    ).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-pipelines", action="store_true")
    args = ap.parse_args()

    rng = random.Random("bench")
    n = 3
    pairs = [(i, n + i, ()) for i in range(n)]
    monos = random_monos(rng, 400, n)
    print("weyl_mono_mul, 400 products x 20 rounds")
    tp = min(bench_mul(_kernels_py, monos, pairs, 20) for _ in range(args.repeat))
    print(f"  python  {tp:8.3f} s")
    if _kernels is None:
        print("  cython  (not built)")
    else:
        tc = min(bench_mul(_kernels, monos, pairs, 20) for _ in range(args.repeat))
        print(f"  cython  {tc:8.3f} s   speedup {tp / tc:5.2f}x")

    if args.skip_pipelines:
        return
    print("full hypergeometric pipeline (best of %d)" % args.repeat)
    for name, A, beta in PIPELINES:
        best = {}
        for pure in (True, False):
            for _ in range(args.repeat):
                backend, sec = run_child(A, beta, pure)
                best[backend] = min(best.get(backend, sec), sec)
        line = f"  {name:18s} python {best['python']:7.2f} s"
        if "cython" in best:
            line += f"   cython {best['cython']:7.2f} s   speedup {best['python'] / best['cython']:5.2f}x"
        print(line)


if __name__ == "__main__":
    main()
