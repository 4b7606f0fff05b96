"""Time the kernel row sums and full beta evaluations on both backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

The numba kernels are compiled (or loaded from cache) before timing.
"""

import argparse
import os
import time

import numpy as np

from brylinski import _accel
from brylinski.beta import beta_double_layer
from brylinski.curves import circle
from brylinski.surfaces import torus


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    m, n = 2048, 128
    D = rng.normal(size=(m, n, 3))
    NP = rng.normal(size=(m, 3))
    NX = rng.normal(size=(m, n, 3))
    W = rng.uniform(size=(m, n))

    cases = {
        f"double_layer_rows {m}x{n}": lambda: _accel.double_layer_rows(D, NP, NX, W, 2.5 + 1j),
        f"single_layer_rows {m}x{n}": lambda: _accel.single_layer_rows(D, W, 2.5 + 1j),
        "beta circle s=3 n=2048": lambda: beta_double_layer(circle(1), 3, nodes=2048),
        "beta torus s=3 n=16": lambda: beta_double_layer(torus(2, 1), 3, nodes=16),
    }
    backends = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])
    timings = {}
    for name in backends:
        os.environ["BRYLINSKI_BACKEND"] = name
        for fn in cases.values():
            fn()  # warm-up (JIT compile or cache load)
        timings[name] = {label: _best(fn, args.repeat) for label, fn in cases.items()}

    print(f"{'case':32s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for label in cases:
        row = f"{label:32s}" + "".join(f"{timings[b][label]:11.4f}s" for b in backends)
        if len(backends) == 2:
            row += f"{timings['numpy'][label] / timings['numba'][label]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
