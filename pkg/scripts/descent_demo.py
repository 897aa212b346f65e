"""Print the descent chain of a height-2 triple on sl3 x sl3."""

from manintriples import build_algebra, complete_skeleton, construct_triple, descent_chain, make_form
from manintriples.bddata import Skeleton
from manintriples.triples import ambient_space, antecedent_data


def label(beta) -> str:
    return "(" + ",".join(map(str, beta)) + ")"


def show(amap) -> str:
    return ", ".join(f"{label(a)}->{label(c)}" for a, c in amap) or "-"


def main() -> None:
    g = build_algebra([("A", 2), ("A", 2)])
    b = make_form(g, "complex", [1, -1])
    sk = Skeleton((((0, 0, 1, 0), (-1, 0, 0, 0)),), (((0, 0, 1, 0), (0, -1, 0, 0)),))
    data = complete_skeleton(g, b, sk)
    t = construct_triple(g, b, data)
    res = descent_chain(g, b, t)
    print(f"height {res.height}, f0 contained in every level: {res.f0_contained}")
    d = data
    for k, (level, rep) in enumerate(zip(res.levels, res.reports)):
        dim = ambient_space(g, level.ambient).dim
        print(f"level {k}: dim g_k = {dim:2d}  dim i_k = {level.i.dim:2d}  "
              f"verified = {rep.ok}  A = {show(d.A)}  A' = {show(d.A_p)}")
        if k < res.height:
            d = antecedent_data(g, d)[0]


if __name__ == "__main__":
    main()
