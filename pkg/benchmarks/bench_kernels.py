"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--states 400 1000 2000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from artifact import _pykernels

try:
    from artifact import _ckernels
except ImportError:
    _ckernels = None


def machine(S, n, rng, sync=True):
    d = rng.integers(0, S, (S, n)).astype(np.int64)
    if sync:
        # letter 0 funnels everything through a shrinking chain so the level is long
        d[:, 0] = np.maximum(np.arange(S) - 1, 0)
    d.setflags(write=False)
    return d


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--states", type=int, nargs="+", default=[200, 500, 1000])
    ap.add_argument("--letters", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    rng = np.random.default_rng(0)
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'kernel':<16}{'states':>8}" + "".join(f"{b:>12}" for b, _ in backends) + f"{'speedup':>10}")
    for S in a.states:
        d = machine(S, a.letters, rng)
        init = rng.integers(0, 3, S)
        jobs = {
            "pair_sync_level": lambda k: k.pair_sync_level(d),
            "refine": lambda k: k.refine(d, init),
            "image_chain": lambda k: k.image_chain(d, np.arange(S)),
        }
        for name, job in jobs.items():
            ts = [best(lambda k=k: job(k), a.repeat) for _, k in backends]
            ref = [job(k) for _, k in backends]
            if len(ref) == 2 and name == "pair_sync_level":
                assert ref[0] == ref[1]
            speed = f"{ts[0] / ts[1]:>9.1f}x" if len(ts) == 2 else ""
            print(f"{name:<16}{S:>8}" + "".join(f"{t * 1e3:>10.1f}ms" for t in ts) + speed)


if __name__ == "__main__":
    main()
