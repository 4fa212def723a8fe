"""Time the brute-force oracle on growing triples and record its term high-water mark.

    python scripts/oracle_scaling.py 4,4,4 5,5,2 6,4,4
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from spider_theta.webcalc import Reducer, ReductionConfig, theta_oracle


@dataclass
class ScalingConfig:
    triples: list[tuple[int, int, int]] = field(default_factory=lambda: [(2, 2, 2), (3, 3, 2), (4, 4, 4), (5, 5, 2)])
    term_budget: int = 10**7
    fresh_reducer: bool = True


def run(cfg: ScalingConfig) -> None:
    shared = Reducer(ReductionConfig(term_budget=cfg.term_budget))
    for t in cfg.triples:
        red = Reducer(ReductionConfig(term_budget=cfg.term_budget)) if cfg.fresh_reducer else shared
        t0 = time.perf_counter()
        theta_oracle(*t, reducer=red)
        print(f"{t}: {time.perf_counter() - t0:.2f}s, {red.stats.steps} steps, "
              f"{red.stats.terms_generated} terms, high water {red.stats.high_water}", flush=True)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("triples", nargs="*", help="comma-separated labels, e.g. 4,4,4")
    ap.add_argument("--term-budget", type=int, default=ScalingConfig.term_budget)
    ap.add_argument("--shared-cache", action="store_true")
    a = ap.parse_args()
    cfg = ScalingConfig(term_budget=a.term_budget, fresh_reducer=not a.shared_cache)
    if a.triples:
        cfg.triples = [tuple(int(x) for x in s.split(",")) for s in a.triples]
    run(cfg)


if __name__ == "__main__":
    main()
