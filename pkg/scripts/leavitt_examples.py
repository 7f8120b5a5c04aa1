"""Tabulate K_0..K_N of the one-vertex, n-loop graph over several fields."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from lpak.graph import Graph
from lpak.groups import parse_field
from lpak.ktheory import UnsupportedKGroup, k_group


@dataclass
class Config:
    loops: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5, 9])
    fields: list[str] = field(default_factory=lambda: ["fq:2", "fq:5", "algclosed:0", "algclosed:2", "nf:1,0"])
    max_n: int = 6


def table(cfg: Config) -> list[str]:
    lines = []
    for spec in cfg.fields:
        fld = parse_field(spec)
        lines.append(f"== {spec}")
        lines.append("loops | " + " | ".join(f"K_{n}" for n in range(cfg.max_n + 1)))
        for n_loops in cfg.loops:
            g = Graph.from_edges(["v"], [("v", "v", n_loops)])
            cells = []
            for n in range(cfg.max_n + 1):
                try:
                    cells.append(str(k_group(g, fld, n).group))
                except UnsupportedKGroup:
                    cells.append("-")
            lines.append(f"{n_loops:>5} | " + " | ".join(cells))
    return lines


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--loops", type=int, nargs="+", default=Config().loops)
    p.add_argument("--fields", nargs="+", default=Config().fields)
    p.add_argument("--max-n", type=int, default=Config().max_n)
    a = p.parse_args()
    print("\n".join(table(Config(a.loops, a.fields, a.max_n))))


if __name__ == "__main__":
    main()
