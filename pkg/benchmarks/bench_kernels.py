"""Time the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--order N] [--radii R] [--theta T] [--repeat K]
"""
import argparse
import timeit

import numpy as np

from bohrlab import _pykernels

try:
    from bohrlab import _ckernels
except ImportError:
    _ckernels = None


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=256)
    ap.add_argument("--radii", type=int, default=50)
    ap.add_argument("--theta", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    coeffs = (rng.standard_normal(args.order + 1) + 1j * rng.standard_normal(args.order + 1)) * 0.9 ** np.arange(args.order + 1)
    radii = np.linspace(0.0, 0.9, args.radii)
    z = 0.9 * np.exp(2j * np.pi * rng.random(args.radii * args.theta))

    backends = {"numpy": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled kernels unavailable; timing numpy only")

    ref_grid = _pykernels.circle_values(coeffs, radii, args.theta)
    ref_pts = _pykernels.horner(coeffs, z)
    print(f"order={args.order} grid={args.radii}x{args.theta} repeat={args.repeat}")
    print(f"{'backend':8s} {'circle_values [ms]':>20s} {'horner [ms]':>14s} {'max |diff|':>12s}")
    for name, mod in backends.items():
        t_grid = min(timeit.repeat(lambda: mod.circle_values(coeffs, radii, args.theta),
                                   number=1, repeat=args.repeat))
        t_pts = min(timeit.repeat(lambda: mod.horner(coeffs, z), number=1, repeat=args.repeat))
        diff = max(np.max(np.abs(mod.circle_values(coeffs, radii, args.theta) - ref_grid)),
                   np.max(np.abs(mod.horner(coeffs, z) - ref_pts)))
        print(f"{name:8s} {1e3 * t_grid:20.3f} {1e3 * t_pts:14.3f} {diff:12.2e}")


if __name__ == "__main__":
    main()
