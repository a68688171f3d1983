"""Compare the compiled and pure-numpy kernels.

    python benchmarks/bench_kernels.py [--states 200] [--repeat 3]

Times the RK4 dissipator over a stack of random Bell-diagonal states
(unit decoherence time at the default step) and the measurement-grid scan
used by the optimizer, then checks that both backends agree.
"""

import argparse
import sys
import time

import numpy as np

from corrdyn import _kernels
from corrdyn.channels import DEFAULT_STEPS_PER_UNIT, ChannelSpec
from corrdyn.states import to_density_matrix
from corrdyn.validation import random_states


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--states", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if _kernels.compiled_backend is None:
        print("compiled kernels are not built; only the numpy fallback is available")
        return 1
    backends = {"cython": _kernels.compiled_backend, "numpy": _kernels.python_backend}

    rng = np.random.default_rng(0)
    stack = np.array([to_density_matrix(s) for s in random_states(rng, args.states)])
    ops = ChannelSpec("phase").jump_operators()
    dt, nsteps = 1.0 / DEFAULT_STEPS_PER_UNIT, DEFAULT_STEPS_PER_UNIT
    thetas = np.linspace(0, np.pi / 2, 32)
    phis = 2 * np.pi * np.arange(32) / 32

    cases = {
        f"rk4_dissipator ({args.states} states x {nsteps} steps)":
            lambda b: b.rk4_dissipator(stack, ops, 0.5, dt, nsteps),
        f"conditional_entropy_grid (32x32 grid x {args.states} states)":
            lambda b: [b.conditional_entropy_grid(r, thetas, phis) for r in stack],
    }
    print(f"{'kernel':<58} {'cython s':>10} {'numpy s':>10} {'speedup':>8} {'max diff':>10}")
    for name, run in cases.items():
        timings, outputs = {}, {}
        for label, backend in backends.items():
            timings[label], outputs[label] = best_of(args.repeat, lambda: run(backend))
        diff = float(np.max(np.abs(np.asarray(outputs["cython"]) - np.asarray(outputs["numpy"]))))
        print(f"{name:<58} {timings['cython']:>10.3f} {timings['numpy']:>10.3f} "
              f"{timings['numpy'] / timings['cython']:>7.1f}x {diff:>10.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
