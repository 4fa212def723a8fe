"""Compare the web-reduction oracle with the closed form triple by triple.

For each admissible triple it prints whether the two agree exactly after the
(-1)^b sign, whether their q = 1 limits agree, and the oracle cost.

    python scripts/oracle_vs_closed_form.py --max-sum 8
"""

from __future__ import annotations

import argparse
import itertools
import time
from dataclasses import dataclass

from spider_theta import netforms as nf
from spider_theta.qscalar import limit_q1
from spider_theta.webcalc import Reducer, ReductionConfig, theta_oracle


@dataclass
class CompareConfig:
    max_sum: int = 8
    term_budget: int = 10**6
    check_symmetry: bool = True


def run(cfg: CompareConfig) -> list[tuple]:
    red = Reducer(ReductionConfig(term_budget=cfg.term_budget))
    rows = []
    for s in range(0, cfg.max_sum + 1, 2):
        for a in range(s + 1):
            for b in range(s + 1 - a):
                t = (a, b, s - a - b)
                if not nf.admissible_generic(t):
                    continue
                t0 = time.perf_counter()
                steps0 = red.stats.steps
                oracle = theta_oracle(*t, reducer=red)
                dt = time.perf_counter() - t0
                closed = nf.diagram_sign(t) * nf.theta(t)
                shape = nf.tri_to_net(t)
                exact = oracle == closed
                classical = limit_q1(oracle) == limit_q1(closed)
                sym = ""
                if cfg.check_symmetry:
                    same = all(theta_oracle(*u, reducer=red) == oracle for u in set(itertools.permutations(t)))
                    sym = " symmetric" if same else " NOT symmetric"
                rows.append((t, shape.p, exact, classical))
                print(f"{t} p={shape.p}: exact {'ok' if exact else 'MISMATCH'}, q=1 {'ok' if classical else 'MISMATCH'},"
                      f"{sym} {red.stats.steps - steps0} steps {dt:.2f}s")
    bad = [r for r in rows if not r[2]]
    print(f"{len(rows) - len(bad)}/{len(rows)} exact; mismatches all have p >= 2: {all(r[1] >= 2 for r in bad)}")
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-sum", type=int, default=CompareConfig.max_sum)
    ap.add_argument("--term-budget", type=int, default=CompareConfig.term_budget)
    ap.add_argument("--no-symmetry", action="store_true")
    a = ap.parse_args()
    run(CompareConfig(a.max_sum, a.term_budget, not a.no_symmetry))


if __name__ == "__main__":
    main()
