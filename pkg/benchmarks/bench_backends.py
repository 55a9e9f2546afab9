#!/usr/bin/env python3
"""Time the compiled census kernel against the pure-Python fallback.

Usage:
    python benchmarks/bench_backends.py [--sweep-to N] [--census N ...]

The sweep benchmark is the hot path that matters: r_b for every odd
modulus up to the bound via the incremental-square walk.  The census
benchmark times single full-census calls.  The pure backend gets a
proportionally smaller sweep so the script stays interactive; rates are
what should be compared.
"""

import argparse
import time

from qrcensus import _purekernel

try:
    from qrcensus import _speedups
except ImportError:
    _speedups = None


def moduli_per_second(impl, hi):
    t0 = time.perf_counter()
    impl.small_residue_counts(3, hi)
    elapsed = time.perf_counter() - t0
    n_moduli = (hi - 1) // 2
    return n_moduli, elapsed, n_moduli / elapsed


def census_seconds(impl, n, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        impl.census_tallies(n)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sweep-to", type=int, default=50001,
                        help="sweep bound for the compiled backend (default 50001)")
    parser.add_argument("--pure-sweep-to", type=int, default=10001,
                        help="sweep bound for the pure backend (default 10001)")
    parser.add_argument("--census", type=int, nargs="*",
                        default=[9967, 100003, 1000003],
                        help="moduli for single-census timings")
    args = parser.parse_args()

    impls = [("pure", _purekernel)]
    if _speedups is not None:
        impls.append(("compiled", _speedups))
    else:
        print("compiled backend not built; showing pure backend only")

    # equal bounds for the head-to-head (work per modulus grows with n,
    # so rates at different bounds would not be comparable)
    print(f"{'backend':<10} {'sweep bound':>12} {'moduli':>9} "
          f"{'seconds':>9} {'moduli/s':>12}")
    elapsed_at_common = {}
    for name, impl in impls:
        n_moduli, elapsed, rate = moduli_per_second(impl, args.pure_sweep_to)
        elapsed_at_common[name] = elapsed
        print(f"{name:<10} {args.pure_sweep_to:>12} {n_moduli:>9} "
              f"{elapsed:>9.3f} {rate:>12.0f}")
    if _speedups is not None:
        n_moduli, elapsed, rate = moduli_per_second(_speedups, args.sweep_to)
        print(f"{'compiled':<10} {args.sweep_to:>12} {n_moduli:>9} "
              f"{elapsed:>9.3f} {rate:>12.0f}")
        print(f"\nsame-bound sweep speedup (compiled/pure at "
              f"{args.pure_sweep_to}): "
              f"x{elapsed_at_common['pure'] / elapsed_at_common['compiled']:.1f}")

    print(f"\n{'backend':<10} {'census n':>10} {'seconds':>10}")
    for n in args.census:
        for name, impl in impls:
            print(f"{name:<10} {n:>10} {census_seconds(impl, n):>10.4f}")


if __name__ == "__main__":
    main()
