"""Sweep twists over all valid data of a split real form and tally the reality verdicts."""

import argparse
import itertools
from collections import Counter
from dataclasses import dataclass

from manintriples import (build_algebra, complete_skeleton, construct_triple,
                          enumerate_skeletons, make_context, normalize_twist, reality_conditions,
                          realify, validate)
from manintriples.realforms import direct_j_stability, trivial_off_gamma0
from manintriples.scalars import I, ONE
from manintriples.triples import WeylTwist

UNITS = (ONE, -ONE, I, -I)


@dataclass
class SweepConfig:
    types: tuple[tuple[str, int], ...] = (("A", 1),)
    lambdas: tuple[int, ...] = (1,)


def sweep(cfg: SweepConfig) -> Counter:
    ctx = make_context(build_algebra(list(cfg.types)), cfg.lambdas)
    g, b = ctx.g, ctx.form
    tally = Counter()
    for sk in enumerate_skeletons(g, b):
        d = complete_skeleton(g, b, sk)
        if not validate(g, b, d).ok:
            continue
        tally["data"] += 1
        for values in itertools.product(UNITS, repeat=g.rank):
            t = WeylTwist.of(values)
            rep = reality_conditions(ctx, d, t)
            tri = construct_triple(g, b, d, t)
            tally["twists"] += 1
            # the conditions must agree with the direct check on every input
            tally["agree"] += rep.ok == direct_j_stability(ctx, tri).ok
            if not rep.ok:
                tally[f"fails condition {next(c.number for c in rep.conditions if not c.ok)}"] += 1
                continue
            tally["real"] += 1
            tally["realified ok"] += realify(ctx, tri).report.ok
            norm = normalize_twist(ctx, d, t)
            tally["exact"] += norm.exact
            tally["u* = +-1"] += all(x * x == ONE for x in norm.u_star.values)
            tally["u* != 1 off Gamma_0"] += bool(trivial_off_gamma0(ctx, d, norm.u_star))
    return tally


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--types", default="A1", help="comma separated, e.g. A1,A1")
    p.add_argument("--lambdas", default="1", help="comma separated nonzero integers")
    args = p.parse_args()
    types = tuple((t[0], int(t[1:])) for t in args.types.split(","))
    lams = tuple(int(x) for x in args.lambdas.split(","))
    for key, value in sorted(sweep(SweepConfig(types, lams)).items()):
        print(f"{key:<24} {value}")


if __name__ == "__main__":
    main()
