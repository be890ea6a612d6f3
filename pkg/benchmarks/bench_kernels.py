"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Micro-benchmarks call both kernel modules directly; the end-to-end rows run
the F2 problem in a subprocess with and without HOLOSOL_PURE_PYTHON.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from holosol import _pykernels

try:
    from holosol import _ckernels
except ImportError:
    _ckernels = None


def _rand_poly(rng, n, terms, top):
    return {tuple(rng.randint(0, top) for _ in range(2 * n)): rng.randint(-9, 9) or 1
            for _ in range(terms)}


def micro_cases():
    rng = random.Random(7)
    p, q = _rand_poly(rng, 2, 12, 4), _rand_poly(rng, 2, 12, 4)
    m1, m2 = (3, 2, 4, 1), (4, 3, 2, 2)
    v = {(k, mono): c for k in range(3) for mono, c in _rand_poly(rng, 2, 6, 3).items()}
    rows = [[rng.randint(-20, 20) for _ in range(40)] for _ in range(30)]
    return {
        "mono_mul": lambda k: k.mono_mul(m1, m2, 2, False),
        "poly_mul": lambda k: k.poly_mul(p, q, 2, False),
        "poly_mul (homogenized)": lambda k: k.poly_mul(
            {m + (0,): c for m, c in p.items()}, {m + (0,): c for m, c in q.items()}, 2, True),
        "vec_lmul": lambda k: k.vec_lmul(p, v, 2, False),
        "int_rref 30x40": lambda k: k.int_rref([list(r) for r in rows], 40),
    }


E2E = """
import time
from holosol import BACKEND, compute_b, read_problem, solve_ext
from holosol.resolution import build_resolution
pb = read_problem({path!r})
t = time.perf_counter()
for _ in range({repeat}):
    build_resolution(pb.generators, pb.weight, 3)
    compute_b(pb.generators, pb.weight)
    solve_ext(pb.to_spec(1, 8))
print(BACKEND, (time.perf_counter() - t) / {repeat})
"""


def end_to_end(repeat):
    from importlib.resources import files

    path = str(files("holosol") / "data" / "appell_f2.toml")
    out = {}
    for pure in ("0", "1"):
        env = dict(os.environ, HOLOSOL_PURE_PYTHON=pure)
        res = subprocess.run([sys.executable, "-c", E2E.format(path=path, repeat=repeat)],
                             env=env, capture_output=True, text=True, check=True)
        backend, secs = res.stdout.split()
        out[backend] = float(secs)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the pure-Python timings are shown")
    print(f"{'kernel':26s} {'python (us)':>12s} {'cython (us)':>12s} {'speedup':>8s}")
    for name, fn in micro_cases().items():
        times = {}
        for label, mod in (("python", _pykernels), ("cython", _ckernels)):
            if mod is None:
                continue
            t = min(timeit.repeat(lambda: fn(mod), number=args.number, repeat=args.repeat))
            times[label] = t / args.number * 1e6
        if "cython" in times:
            assert fn(_pykernels) == fn(_ckernels), name
            print(f"{name:26s} {times['python']:12.1f} {times['cython']:12.1f} "
                  f"{times['python'] / times['cython']:7.2f}x")
        else:
            print(f"{name:26s} {times['python']:12.1f}")
    e2e = end_to_end(args.repeat)
    line = "  ".join(f"{k}: {v * 1e3:.1f} ms" for k, v in sorted(e2e.items()))
    print(f"F2 resolution + b-function + Ext^1 to order 8: {line}")


if __name__ == "__main__":
    main()
