#!/usr/bin/env python3
"""Benchmark the hot kernels: numba-compiled vs fallback paths.

Runs in one process with numba enabled (the default) and times both the
compiled implementation and the fallback that VGPN_NUMBA=0 would select
(vectorized numpy for inflation and batch intersection, the interpreted loop
for A*).  Usage:  python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from vgpn import kernels

if not kernels.JIT_ENABLED:
    raise SystemExit("run with numba enabled (unset VGPN_NUMBA) to compare paths")


def timeit(func, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - start)
    return best


def fmt(seconds):
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:8.2f} ms"
    return f"{seconds:8.3f} s "


def bench(name, jit_func, fallback_name, fallback_func, args, repeats):
    jit_func(*args)  # compile outside the timed region
    t_jit = timeit(jit_func, *args, repeats=repeats)
    t_fb = timeit(fallback_func, *args, repeats=repeats)
    print(f"{name:<28} numba {fmt(t_jit)}   {fallback_name:<12} {fmt(t_fb)}"
          f"   speedup {t_fb / t_jit:7.1f}x")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    rng = np.random.default_rng(1)

    print("kernel benchmarks (best of", args.repeats, "runs)\n")

    occ = (rng.random((256, 256)) < 0.15).astype(np.uint8)
    bench("inflate 256x256 r=4.5", kernels._inflate_impl, "numpy",
          kernels._inflate_numpy, (occ, 4.5), args.repeats)
    bench("inflate 256x256 r=4.5", kernels._inflate_impl, "interpreted",
          kernels._inflate_loop, (occ, 4.5), args.repeats)

    maze = (rng.random((256, 256)) < 0.25).astype(np.uint8)
    maze[0, :2] = 0
    maze[-1, -2:] = 0
    astar_args = (maze, 0, 0, 255, 255)
    bench("astar 256x256", kernels._astar_impl, "interpreted",
          kernels._astar_loop, astar_args, args.repeats)

    n = 200_000
    eyes = rng.uniform(-1, 1, (n, 3)) + [0, 0, 1.6]
    wrists = eyes + rng.uniform(-0.6, 0.6, (n, 3))
    rot = np.eye(3)
    trans = np.zeros(3)
    ray_args = (eyes, wrists, rot, trans, 0.0)
    bench(f"batch_ray_ground n={n}", kernels._batch_ray_ground_impl, "numpy",
          kernels._batch_ray_ground_numpy, ray_args, args.repeats)
    bench(f"batch_ray_ground n={n}", kernels._batch_ray_ground_impl,
          "interpreted", kernels._batch_ray_ground_loop, ray_args, args.repeats)


if __name__ == "__main__":
    main()
