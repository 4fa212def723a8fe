"""Write admissibility tables for a range of levels.

    python scripts/make_table.py --max-sum 12 --levels 0 1 2 3 --out-dir tables
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from spider_theta import cli


@dataclass
class TableConfig:
    max_sum: int = 12
    levels: list[int] = field(default_factory=lambda: [0, 1, 2, 3])
    fmt: str = "json"
    out_dir: Path = Path("tables")


def run(cfg: TableConfig) -> list[Path]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for k in cfg.levels:
        path = cfg.out_dir / f"theta_k{k}_S{cfg.max_sum}.{cfg.fmt}"
        rows = [cli.table_row(t, k) for t in cli.table_triples(cfg.max_sum)]
        meta = {"max_sum": cfg.max_sum, "k": k, "N": 4 * k + 12, "precision_bits": cli.precision_bits()}
        path.write_text(cli.render_table(rows, cfg.fmt, meta))
        survivors = sum(r.admissible_level and r.nonzero_certified for r in rows)
        print(f"k={k} N={4 * k + 12}: {len(rows)} rows, {survivors} level-admissible and certified nonzero -> {path}")
        written.append(path)
    return written


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-sum", type=int, default=TableConfig.max_sum)
    ap.add_argument("--levels", type=int, nargs="+", default=[0, 1, 2, 3])
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--out-dir", type=Path, default=TableConfig.out_dir)
    a = ap.parse_args()
    run(TableConfig(a.max_sum, a.levels, a.format, a.out_dir))


if __name__ == "__main__":
    main()
