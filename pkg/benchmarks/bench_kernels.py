"""Benchmark the azimuthal superposition kernel: numba vs pure numpy.

Usage: python benchmarks/bench_kernels.py [--points N] [--n-phi M] [--repeats R]
"""
import argparse
import math
import time

import numpy as np

from twistatom import _kernels
from twistatom.photon import polarization_vector


def build_inputs(n_points, n_phi, m_gamma=4, seed=0):
    rng = np.random.default_rng(seed)
    kappa = 5e-4
    x = rng.uniform(-8.0 / kappa, 8.0 / kappa, n_points)
    y = rng.uniform(-8.0 / kappa, 8.0 / kappa, n_points)
    phi = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    eps = np.array([polarization_vector(0.2, p, 1) for p in phi])
    weights = ((-1j) ** m_gamma * np.exp(1j * m_gamma * phi)
               * math.sqrt(kappa / (2.0 * math.pi)) / n_phi).astype(complex)
    return x, y, kappa, weights, np.cos(phi), np.sin(phi), eps


def time_fn(fn, args, repeats):
    fn(*args)  # warm-up (includes JIT compilation for the numba path)
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=66049)  # 257 x 257
    parser.add_argument("--n-phi", type=int, default=256)
    parser.add_argument("--repeats", type=int, default=5)
    opts = parser.parse_args()

    args = build_inputs(opts.points, opts.n_phi)
    t_numpy = time_fn(_kernels.superposition_sum_numpy, args, opts.repeats)
    print(f"numpy fallback : {t_numpy * 1e3:9.2f} ms "
          f"({opts.points} points x {opts.n_phi} azimuthal nodes)")

    if _kernels.HAS_NUMBA:
        t_numba = time_fn(_kernels._superposition_numba, args, opts.repeats)
        diff = np.max(np.abs(_kernels._superposition_numba(*args)
                             - _kernels.superposition_sum_numpy(*args)))
        print(f"numba kernel   : {t_numba * 1e3:9.2f} ms "
              f"(speedup {t_numpy / t_numba:.1f}x, max |diff| {diff:.2e})")
    else:
        print("numba kernel   : unavailable "
              "(not installed or TWISTATOM_DISABLE_NUMBA set)")


if __name__ == "__main__":
    main()
