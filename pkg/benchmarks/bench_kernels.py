"""Numba kernels versus the pure-Python fallback on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each mode runs in a fresh interpreter because the switch is read at import.
JIT timings exclude the first (compiling) call.
"""
import argparse
import json
import os
import random
import subprocess
import sys
import time


def workloads():
    from localdom import exact, gen
    from localdom.cuts import enumerate_cut_sets
    from localdom.config import AlgorithmConfig

    rng = random.Random(0)
    dense = [gen.generate(gen.GeneratorSpec("type1", 25, {"density": 0.3}, seed=s)) for s in range(4)]
    sparse = [gen.generate(gen.GeneratorSpec("strip", 40, seed=s)) for s in range(2)]
    small = [gen.generate(gen.GeneratorSpec("outerplanar", 12, seed=s)) for s in range(3)]
    cfg = AlgorithmConfig(r1=3, r2=4)
    return {
        "mds_size": lambda: [exact.mds_size(g) for g in dense],
        "mvc_size": lambda: [exact.mvc_size(g) for g in dense],
        "cut_sets": lambda: [enumerate_cut_sets(g, cfg) for g in sparse],
        "k2t_minor": lambda: [gen.certify_class(g) for g in small],
    }, rng


def worker(repeat):
    from localdom._jit import JIT_ENABLED

    jobs, _ = workloads()
    out = {"jit": JIT_ENABLED}
    for name, job in jobs.items():
        job()  # warm-up (compilation or cache load)
        best = float("inf")
        for _ in range(repeat):
            t = time.perf_counter()
            job()
            best = min(best, time.perf_counter() - t)
        out[name] = best
    print(json.dumps(out))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        worker(args.repeat)
        return
    res = {}
    for flag in ("0", "1"):
        env = dict(os.environ, LOCALDOM_DISABLE_JIT=flag)
        proc = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(args.repeat)],
                              env=env, capture_output=True, text=True, check=True)
        res[flag] = json.loads(proc.stdout.strip().splitlines()[-1])
    print(f"{'workload':<12}{'numba s':>12}{'python s':>12}{'speed-up':>10}")
    for name in res["0"]:
        if name == "jit":
            continue
        a, b = res["0"][name], res["1"][name]
        print(f"{name:<12}{a:>12.4f}{b:>12.4f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
