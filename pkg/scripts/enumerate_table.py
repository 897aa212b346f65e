"""Counts of skeletons, valid data and descent heights for g1 x g1 with lambdas (1, -1)."""

import argparse
import time
from collections import Counter
from dataclasses import dataclass, field

from manintriples import (build_algebra, complete_skeleton, construct_triple, descent_chain,
                          diagonal_setting, enumerate_skeletons, identity_pairing, make_form,
                          validate)
from manintriples.bddata import LagrangianError


@dataclass
class TableConfig:
    pairs: list[tuple[str, int]] = field(
        default_factory=lambda: [("A", 1), ("A", 2), ("B", 2), ("G", 2)])
    diagonal: list[tuple[str, int]] = field(
        default_factory=lambda: [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2)])
    budget: int = 10**6


def pair_row(letter: str, rank: int, budget: int) -> str:
    start = time.perf_counter()
    g = build_algebra([(letter, rank)] * 2)
    b = make_form(g, "complex", [1, -1])
    sks = enumerate_skeletons(g, b, budget=budget)
    heights = Counter()
    valid = 0
    for sk in sks:
        try:
            d = complete_skeleton(g, b, sk)
        except LagrangianError:
            continue
        if validate(g, b, d).ok:
            valid += 1
            heights[descent_chain(g, b, construct_triple(g, b, d)).height] += 1
    hs = " ".join(f"h{k}={v}" for k, v in sorted(heights.items()))
    return (f"{letter}{rank} x {letter}{rank:<3} skeletons={len(sks):<5} valid={valid:<5} "
            f"{hs:<20} {time.perf_counter() - start:6.2f}s")


def diagonal_row(letter: str, rank: int, budget: int) -> str:
    start = time.perf_counter()
    g, b = diagonal_setting([(letter, rank)])
    sks = enumerate_skeletons(g, b, budget=budget, fixed_A=identity_pairing(g, b))
    return f"{letter}{rank:<3} classes={len(sks):<5} {time.perf_counter() - start:6.2f}s"


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--skip-pairs", action="store_true")
    p.add_argument("--budget", type=int, default=TableConfig.budget)
    args = p.parse_args()
    cfg = TableConfig(budget=args.budget)
    if not args.skip_pairs:
        print("full enumeration")
        for letter, rank in cfg.pairs:
            print("  " + pair_row(letter, rank, cfg.budget))
    print("diagonal (A = identity)")
    for letter, rank in cfg.diagonal:
        print("  " + diagonal_row(letter, rank, cfg.budget))


if __name__ == "__main__":
    main()
