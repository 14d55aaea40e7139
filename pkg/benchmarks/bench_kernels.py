"""Times the compiled scoring kernels against the NumPy fallback.

Run:  python benchmarks/bench_kernels.py

Matrix sizes mirror real use: a 5 s clip against a 10 s reference at
~98 frames/s gives a ~490x980 similarity matrix; sweeps call pnorm_pr
once per (pair, p) cell, which is the hot loop. The cosine matrix itself
is a BLAS matmul in both backends and is timed for context only.
"""

import time

import numpy as np

from audiobertscore import _kernels_py

try:
    from audiobertscore import _kernels
except ImportError:
    _kernels = None

SIZES = ((98, 196), (490, 980), (490, 3000))
P_VALUES = (2.0, 106.0, 1e6)
REPEATS = 20


def best_of(fn, repeats=REPEATS):
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        timings.append(time.perf_counter() - start)
    return min(timings) * 1e3  # ms


def main():
    rng = np.random.default_rng(0)
    backends = [("numpy", _kernels_py)]
    if _kernels is not None:
        backends.append(("compiled", _kernels))
    else:
        print("compiled extension not available; timing the fallback only")

    header = "%-22s %-10s" % ("case", "ms/call")
    for name, _ in backends:
        header += " %-12s" % name
    if len(backends) == 2:
        header += " speedup"
    print(header)
    print("-" * len(header))

    for rows, cols in SIZES:
        m = np.ascontiguousarray(rng.uniform(-1.0, 1.0, size=(rows, cols)))

        cases = [("max_pr %dx%d" % (rows, cols), lambda mod, mm=m: mod.max_pr(mm))]
        for p in P_VALUES:
            cases.append(
                (
                    "pnorm_pr p=%g %dx%d" % (p, rows, cols),
                    lambda mod, mm=m, pp=p: mod.pnorm_pr(mm, pp, False),
                )
            )
        for label, call in cases:
            timings = [best_of(lambda mod=mod: call(mod)) for _, mod in backends]
            line = "%-22s %-10s" % (label, "")
            for t in timings:
                line += " %-12.3f" % t
            if len(timings) == 2 and timings[1] > 0:
                line += " %.2fx" % (timings[0] / timings[1])
            print(line)

        # context: the similarity matrix itself is BLAS in both backends
        gen = rng.normal(size=(rows, 768))
        ref = rng.normal(size=(cols, 768))
        gen /= np.linalg.norm(gen, axis=1)[:, None]
        ref /= np.linalg.norm(ref, axis=1)[:, None]
        t = best_of(lambda: gen @ ref.T, repeats=5)
        print("%-22s %-10s %-12.3f (BLAS, shared)" % ("cosine %dx%d" % (rows, cols), "", t))
        print()


if __name__ == "__main__":
    main()
