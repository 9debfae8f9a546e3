"""Compare the numba and pure-numpy kernel builds.

    python3 benchmarks/bench_kernels.py [--points 2000] [--steps 100000] [--repeat 3]

Times batch evaluation of sin_pq/cos_pq and the RK4 trajectory for each main
exponent pair, reports compile time separately, and checks that both builds
agree.
"""

import argparse
import time

import numpy as np

from pqtrig import _accel, _kernels
from pqtrig.gtrig import ParamPair

PAIRS = [(2.0, 2.0), (2.0, 6.0), (1.2, 6.0), (1.2, 2.0)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--steps", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    builds = {"numpy": _kernels.numpy_kernels}
    if _accel.HAVE_NUMBA:
        builds["numba"] = _kernels.numba_kernels
    else:
        print("numba not installed; timing the numpy build only")

    kernels = {}
    for name, make in builds.items():
        t0 = time.perf_counter()
        k = make()
        k["constants"](2.0, 6.0)
        k["sincos_batch"](2.0, 6.0, 0.1, 0.1, np.zeros(1))
        k["rk4"](2.0, 6.0, 1e-3, 2)
        kernels[name] = k
        print(f"{name:6s} build + first call: {time.perf_counter() - t0:7.3f} s")

    print(f"\n{'pair':10s} {'kernel':8s} " + " ".join(f"{n:>10s}" for n in kernels) + "   speedup  max|diff|")
    for pq in PAIRS:
        params = ParamPair(*pq)
        consts = (params.p, params.q, params.x_cut, params.g_half)
        xs = np.linspace(-2 * params.pi, 2 * params.pi, args.points)
        h = 2 * params.pi / args.steps
        jobs = {
            "sincos": lambda k: k["sincos_batch"](*consts, xs),
            "rk4": lambda k: k["rk4"](params.p, params.q, h, args.steps),
        }
        for job, call in jobs.items():
            row = {name: best_of(lambda: call(k), args.repeat) for name, k in kernels.items()}
            times = " ".join(f"{row[n][0] * 1e3:8.2f}ms" for n in kernels)
            line = f"{str(params):10s} {job:8s} {times}"
            if "numba" in row:
                speedup = row["numpy"][0] / row["numba"][0]
                diff = max(np.max(np.abs(a - b)) for a, b in zip(row["numpy"][1], row["numba"][1]))
                line += f"   {speedup:6.1f}x  {diff:.1e}"
            print(line)


if __name__ == "__main__":
    main()
