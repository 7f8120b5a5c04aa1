"""Recover the singular-vertex count from K-group ranks over number fields."""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from lpak.classify import (
    RANK,
    number_field_family,
    predicted_f_value,
    singular_count_number_field,
    valid_number_field_indices,
)
from lpak.graph import partition_vertices
from lpak.groups import NumberField
from lpak.ktheory import k0
from lpak.sampling import random_simple_infinite_graph


@dataclass
class Config:
    graphs: int = 200
    seed: int = 1
    places: tuple[tuple[int, int], ...] = ((1, 0), (0, 1), (2, 1), (3, 2))
    max_n: int = 14


def run(cfg: Config) -> list[str]:
    rng = random.Random(cfg.seed)
    sample = [random_simple_infinite_graph(rng) for _ in range(cfg.graphs)]
    lines = ["(r1,r2)  indices               recovered/total"]
    for r1, r2 in cfg.places:
        f = NumberField(r1, r2)
        idx = valid_number_field_indices(f, cfg.max_n)
        ok = total = 0
        for g in sample:
            s = len(partition_vertices(g).singular)
            for n in idx:
                family, k = number_field_family(n)
                value = predicted_f_value(g, f, n, RANK)
                ok += singular_count_number_field(r1, r2, k, k0(g).free_rank, value, family) == s
                total += 1
        lines.append(f"({r1},{r2})    {str(idx):20}  {ok}/{total}")
    return lines


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--graphs", type=int, default=Config.graphs)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    print("\n".join(run(Config(graphs=a.graphs, seed=a.seed))))


if __name__ == "__main__":
    main()
