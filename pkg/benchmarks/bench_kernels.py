"""Time residue enumeration with the Python and compiled backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from divstrata import kernels

# (n, basis rows k, ambient rank m); each basis spans n^k residues
CASES = [
    (5, 6, 12),
    (5, 8, 12),
    (7, 6, 15),
    (3, 11, 15),
]


def basis(n, k, m):
    return [[int(j == i) + (i + 2) * int(j == (i + k) % m) for j in range(m)] for i in range(k)]


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'n':>3} {'k':>3} {'m':>3} {'residues':>10} " + " ".join(f"{b:>10}" for b in backends) + "  speedup")
    for n, k, m in CASES:
        B = [[x % n for x in row] for row in basis(n, k, m)]
        times, sizes = [], set()
        for b in backends:
            t, out = timed(lambda b=b: kernels.residue_codes(B, n, m, backend=b), args.repeat)
            times.append(t)
            sizes.add(len(out))
        assert len(sizes) == 1, "backends disagree"
        speed = f"{times[0] / times[-1]:7.1f}x" if len(times) > 1 else "      -"
        print(f"{n:>3} {k:>3} {m:>3} {sizes.pop():>10} " + " ".join(f"{t:>9.3f}s" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()
