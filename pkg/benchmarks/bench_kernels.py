"""Time the sweep kernels on each available backend.

    python3 benchmarks/bench_kernels.py --fields 7:4 3:9 --repeat 3
"""

import argparse
import statistics
import time

from jsum import kernels
from jsum.fieldtab import build_field, multiplication_matrix


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def parse_field(text):
    p, _, r = text.partition(":")
    return int(p), int(r or 1)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fields", nargs="+", type=parse_field, default=[(7, 4), (3, 9), (7, 6)],
                    help="p:r pairs")
    ap.add_argument("--e", type=int, default=None, help="character order (default: largest of 50, 18, 2 dividing q-1)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    print(f"{'q':>8} {'kernel':<18}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for p, r in args.fields:
        field = build_field(p, r)
        q = field.q
        e = args.e or next(d for d in (50, 18, 2) if (q - 1) % d == 0)
        mm = multiplication_matrix(field.gamma, field.modulus, p)
        jobs = {
            "fill_index": lambda b: kernels.fill_index(mm, p, r, q, backend=b),
            f"cycnums e={e}": lambda b: kernels.cycnum_counts(field.index, p, q, e, args.threads, b),
            f"jacobi e={e}": lambda b: kernels.jacobi_histogram(field.index, p, q, e, 1, 3, args.threads, b),
        }
        for name, job in jobs.items():
            best = {b: best_of(lambda: job(b), args.repeat)[0] for b in backends}
            row = f"{q:>8} {name:<18}" + "".join(f"{best[b] * 1e3:>10.2f}ms" for b in backends)
            if len(backends) > 1:
                row += f"{best['python'] / best['cython']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
