"""Compare the compiled and pure-Python kernels on the hot loops.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit
from fractions import Fraction as F

from recconv import _kernels_py

try:
    from recconv import _kernels_c
except ImportError:
    _kernels_c = None


def workloads():
    rng = random.Random(0)
    a = [F(rng.randint(-99, 99), rng.randint(1, 50)) for _ in range(200)]
    b = [F(rng.randint(-99, 99), rng.randint(1, 50)) for _ in range(200)]
    yield "convolve 200x200", lambda m: m.convolve(a, b, 200)

    # linear orbit with growing denominators, never certified
    exps = [(1, 0), (0, 1)]
    coeffs = [F(1, 3), F(2, 5)]
    yield "iterate linear L=2, 2000 steps", lambda m: m.iterate(
        exps, coeffs, [F(1), F(2)], F(0), True, 2000, 1 << 30
    )

    # the quadratic family with a1 = 1/2, a2 = -1/3, a3 = 1/5, d = 1/7
    fam_exps = [(1, 0, 0), (0, 0, 1), (0, 2, 0), (1, 0, 1), (0, 0, 0)]
    fam_coeffs = [F(1, 2), F(-1, 2), F(-1, 3), F(1, 5), F(1, 7)]
    yield "iterate quadratic family, 4096-bit cap", lambda m: m.iterate(
        fam_exps, fam_coeffs, [F(1, 2), F(1, 3), F(1, 4)], F(1), True, 1000, 4096
    )


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _kernels_py)]
    if _kernels_c is not None:
        backends.append(("compiled", _kernels_c))
    else:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'workload':42} " + " ".join(f"{n:>12}" for n, _ in backends) + "   speedup")
    for name, fn in workloads():
        results = [fn(m) for _, m in backends]
        assert all(r == results[0] for r in results), f"backends disagree on {name}"
        times = [min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat)) for _, m in backends]
        speed = f"{times[0] / times[1]:8.1f}x" if len(times) > 1 else ""
        print(f"{name:42} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()
