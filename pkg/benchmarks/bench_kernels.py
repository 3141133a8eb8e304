"""Compare the numba and pure-numpy decomposition kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--max-box 2000000]

Runs both backends on cycle-shaped divisors of growing multiplicity, checks
that they agree, and prints the best-of-N wall time for each.
"""

import argparse
import time

from curveconn import _kernels
from curveconn.connectivity import connectedness_number
from curveconn.generators import gen_cycle
from curveconn.structure import genus_spectrum


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--max-box", type=int, default=2_000_000)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or CURVECONN_DISABLE_NUMBA set): numpy timings only")
    else:
        # compile outside the timed region
        cfg, d = gen_cycle(3)
        connectedness_number(d, backend="numba")
        genus_spectrum(d, backend="numba")

    print(f"{'instance':<22}{'box':>10}{'op':>10}{'numpy ms':>12}{'numba ms':>12}{'speedup':>9}")
    for n, m in [(4, 3), (5, 4), (6, 5), (6, 7), (7, 6), (8, 5)]:
        cfg, base = gen_cycle(n)
        d = base.scaled(m)
        box = (m + 1) ** n
        if box > args.max_box:
            continue
        for op, call in (("conn", lambda b: connectedness_number(d, backend=b, workers=1).conn),
                         ("genus", lambda b: genus_spectrum(d, backend=b).max_pa)):
            t_np, v_np = best_of(lambda: call("numpy"), args.repeat)
            row = f"{f'I{n} x{m}':<22}{box:>10}{op:>10}{t_np * 1e3:>12.2f}"
            if _kernels.HAVE_NUMBA:
                t_nb, v_nb = best_of(lambda: call("numba"), args.repeat)
                assert v_np == v_nb, (op, v_np, v_nb)
                row += f"{t_nb * 1e3:>12.2f}{t_np / t_nb:>8.1f}x"
            print(row)


if __name__ == "__main__":
    main()
