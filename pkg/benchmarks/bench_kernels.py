"""Time the numba and numpy kernel backends against each other.

    python benchmarks/bench_kernels.py [--repeat 5]

Numba times exclude the first (compiling) call.  Results are checked for
equality before timing.
"""

from __future__ import annotations

import argparse
import random
import time

from eiscong import _kernels


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = random.Random(1)
    size = 40
    mod = 7 ** 9
    stir = [[rng.randrange(mod) if j <= i else 0 for j in range(size)] for i in range(size)]
    w = [rng.randrange(mod) for _ in range(size)]
    coeffs = [rng.randrange(mod) for _ in range(200)]
    return {
        "divisor_power_sieve n=20000 p=31 W=3": lambda: _kernels.divisor_power_sieve(20000, 29793, 31, 3, True),
        "divisor_power_sieve n=2000 p=13 W=8": lambda: _kernels.divisor_power_sieve(2000, 10**6 + 1, 13, 8, False),
        "triangular_matvec 40x40 mod 7^9": lambda: _kernels.triangular_matvec(stir, w, mod),
        "horner_mod deg 200 mod 7^9": lambda: _kernels.horner_mod(coeffs, 123456, mod),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':42s} {'numba':>10s} {'numpy':>10s} {'speed-up':>9s}")
    for name, fn in cases().items():
        times, results = {}, {}
        for backend in ("numba", "numpy"):
            _kernels.set_backend(backend)
            results[backend] = fn()  # warm-up, compiles under numba
            times[backend] = _best(fn, args.repeat)
        assert results["numba"] == results["numpy"], name
        ratio = times["numpy"] / times["numba"]
        print(f"{name:42s} {times['numba'] * 1e3:8.2f}ms {times['numpy'] * 1e3:8.2f}ms {ratio:8.1f}x")


if __name__ == "__main__":
    main()
