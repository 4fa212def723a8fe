"""Check every admissible triple at the smallest admissible root order and report
which thetas vanish there, split into degenerate and non-degenerate triples.

    python scripts/nonvanishing_sweep.py --max-sum 16 --extra-orders 1
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from spider_theta import netforms as nf
from spider_theta.errors import PrecisionExhausted
from spider_theta.qscalar import RootContext


@dataclass
class SweepConfig:
    max_sum: int = 16
    precision_bits: int = 128
    extra_orders: int = 1  # also test N + 4, N + 8, ...


def admissible(max_sum: int):
    for s in range(0, max_sum + 1, 2):
        for a in range(s + 1):
            for b in range(s + 1 - a):
                t = (a, b, s - a - b)
                if nf.admissible_generic(t):
                    yield t


def check(t, N: int, bits: int) -> str:
    try:
        r = nf.check_nonvanishing(t, RootContext(N, bits, bits))
    except PrecisionExhausted:
        return "undecided"
    if r.nonzero:
        return "nonzero"
    return "zero" if r.exact_zero else "undecided"


def run(cfg: SweepConfig) -> dict:
    t0 = time.perf_counter()
    zeros, undecided, total = [], [], 0
    later_zero = []
    for t in admissible(cfg.max_sum):
        total += 1
        N = nf.smallest_level_order(t)
        status = check(t, N, cfg.precision_bits)
        if status == "zero":
            zeros.append((t, N))
        elif status == "undecided":
            undecided.append((t, N))
        for j in range(1, cfg.extra_orders + 1):
            if check(t, N + 4 * j, cfg.precision_bits) != "nonzero":
                later_zero.append((t, N + 4 * j))
    degenerate = [z for z in zeros if nf.is_degenerate(z[0])]
    other = [z for z in zeros if not nf.is_degenerate(z[0])]
    print(f"{total} admissible triples with a+b+c <= {cfg.max_sum}")
    print(f"vanishing at the smallest order: {len(zeros)} ({len(degenerate)} degenerate, {len(other)} not)")
    for t, N in other:
        print(f"  non-degenerate zero {t} at N={N}")
    print(f"undecided at {cfg.precision_bits} bits: {len(undecided)}")
    print(f"not certified at a larger order: {later_zero if later_zero else 'none'}")
    print(f"{time.perf_counter() - t0:.2f}s")
    return {"zeros": zeros, "undecided": undecided, "later": later_zero}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-sum", type=int, default=SweepConfig.max_sum)
    ap.add_argument("--precision-bits", type=int, default=SweepConfig.precision_bits)
    ap.add_argument("--extra-orders", type=int, default=SweepConfig.extra_orders)
    a = ap.parse_args()
    run(SweepConfig(a.max_sum, a.precision_bits, a.extra_orders))


if __name__ == "__main__":
    main()
