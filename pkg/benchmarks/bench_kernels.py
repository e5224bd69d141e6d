"""Timing comparison of the compiled kernels against the pure fallback.

Both implementations are imported side by side, so one run reports both
columns regardless of which backend the package itself selected.  The
optional --end-to-end mode also times the full level-67 pipeline in two
subprocesses, one with QSTAR_FORCE_PURE=1.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from qstar import _kernels_py

try:
    from qstar import _kernels
except ImportError:
    _kernels = None

ROW_67 = (9, -14, 9, -6, 6, -4, 1)  # constant term first


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads():
    rng = random.Random(2718)
    small = [rng.randrange(-(10**6), 10**6) for _ in range(120)]
    large = [rng.randrange(-(10**6), 10**6) for _ in range(1200)]
    wide = [rng.randrange(-(10**50), 10**50) for _ in range(300)]
    squares = [rng.randrange(1, 10**12) ** 2 for _ in range(2000)]
    squares += [n + 1 for n in squares]  # same count of near-misses

    def conv(mod, a, b):
        return lambda: mod.convolve(a, b, len(a))

    def search(mod, height):
        return lambda: mod.search_sextic(ROW_67, height)

    def roots(mod):
        def run():
            for n in squares:
                mod.perfect_square_root(n)

        return run

    yield "convolve len=120", lambda m: conv(m, small, small)
    yield "convolve len=1200", lambda m: conv(m, large, large)
    yield "convolve len=300 (50-digit)", lambda m: conv(m, wide, wide)
    yield "search_sextic height=100", lambda m: search(m, 100)
    yield "search_sextic height=1000", lambda m: search(m, 1000)
    yield "perfect_square_root x4000", lambda m: roots(m)


def run_micro(repeat: int) -> None:
    print(f"{'workload':32s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, make in workloads():
        pure = best_of(make(_kernels_py), repeat)
        if _kernels is None:
            print(f"{name:32s} {pure * 1e3:9.3f}ms {'-':>10s} {'-':>8s}")
            continue
        fast = best_of(make(_kernels), repeat)
        print(
            f"{name:32s} {pure * 1e3:9.3f}ms {fast * 1e3:9.3f}ms "
            f"{pure / fast:7.1f}x"
        )


def run_end_to_end() -> None:
    cmd = [sys.executable, "-m", "qstar.cli", "pipeline", "67"]
    outputs = {}
    for label, force in (("compiled", None), ("pure", "1")):
        env = dict(os.environ)
        env.pop("QSTAR_FORCE_PURE", None)
        if force:
            env["QSTAR_FORCE_PURE"] = force
        t0 = time.perf_counter()
        proc = subprocess.run(cmd, capture_output=True, text=True, env=env)
        elapsed = time.perf_counter() - t0
        if proc.returncode != 0:
            raise SystemExit(f"{label} pipeline failed: {proc.stderr}")
        outputs[label] = proc.stdout
        print(f"pipeline 67 [{label:8s}] {elapsed:7.3f}s")
    if outputs["compiled"] != outputs["pure"]:
        raise SystemExit("backends disagree: pipeline output differs")
    print("pipeline output byte-identical across backends")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="trials per cell")
    parser.add_argument(
        "--end-to-end",
        action="store_true",
        help="also time the full level-67 pipeline per backend",
    )
    args = parser.parse_args()
    if args.repeat < 1:
        parser.error("--repeat must be >= 1")
    if _kernels is None:
        print("compiled extension not built; pure column only", file=sys.stderr)
    run_micro(args.repeat)
    if args.end_to_end:
        run_end_to_end()


if __name__ == "__main__":
    main()
