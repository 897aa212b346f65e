import random

import pytest
from hypothesis import given, settings, strategies as st

from manintriples.bddata import (Skeleton, complete_skeleton, enumerate_skeletons, make_data,
                                 validate)
from manintriples.forms import COMPLEX, REAL, evaluate, make_form, real_of_complex
from manintriples.liealg import build_algebra, is_subalgebra
from manintriples.linalg import Subspace
from manintriples.realforms import (RealityError, chain_involution, complexify_form,
                                    compute_u, direct_j_stability, fixes_data, flip, flip_root,
                                    flip_twist, make_context, normalize_twist, real_points,
                                    reality_conditions, realify, trivial_off_gamma0)
from manintriples.scalars import I, ONE, Scalar
from manintriples.triples import WeylTwist, construct_triple

SWAP_SL2 = (((0, 1), (-1, 0)),)
SWAP_SL3 = (((0, 0, 1, 0), (0, -1, 0, 0)), ((0, 0, 0, 1), (-1, 0, 0, 0)))
IDENTITY_SL3 = (((0, 0, 1, 0), (-1, 0, 0, 0)), ((0, 0, 0, 1), (0, -1, 0, 0)))


@pytest.fixture(scope="module")
def ctx_sl2():
    return make_context(build_algebra([("A", 1)]), [1])


@pytest.fixture(scope="module")
def ctx_sl3():
    return make_context(build_algebra([("A", 2)]), [1])


def test_complexified_lambdas():
    g1 = build_algebra([("A", 1)])
    assert complexify_form(make_form(g1, REAL, [1])).lambdas == (ONE, Scalar(-1))
    assert complexify_form(make_form(g1, REAL, [I])).lambdas == (I, I)
    with pytest.raises(ValueError):
        complexify_form(make_form(g1, COMPLEX, [1]))


def test_context_needs_real_lambdas():
    with pytest.raises(RealityError):
        make_context(build_algebra([("A", 1)]), [I])


scalars = st.builds(Scalar, st.integers(-3, 3), st.integers(-3, 3))


@settings(max_examples=25)
@given(st.lists(scalars, min_size=8, max_size=8), st.lists(scalars, min_size=3, max_size=3))
def test_j_is_conjugate_linear_involution(ctx_sl3, v, c):
    ctx = ctx_sl3
    x = tuple(v) + (Scalar(0),) * (ctx.g.dim - 8)
    assert ctx.j(ctx.j(x)) == x
    assert ctx.j(tuple(I * a for a in x)) == tuple(-I * a for a in ctx.j(x))
    y = tuple(c) + (Scalar(0),) * (ctx.g1.dim - 3)
    assert ctx.j(ctx.eta(y)) == ctx.eta(y)


def test_fixed_points_of_j_are_eta_image(ctx_sl2):
    ctx = ctx_sl2
    n = ctx.g.dim
    fixed = real_points(ctx, Subspace.full(n))
    assert fixed.dim == 2 * ctx.g1.dim
    image = Subspace.span([ctx.eta(ctx.g1.unit(k)) for k in range(ctx.g1.dim)]
                          + [ctx.eta(tuple(I * a for a in ctx.g1.unit(k)))
                             for k in range(ctx.g1.dim)], n)
    assert all(ctx.j(r) == r for r in
               [ctx.eta(ctx.g1.unit(k)) for k in range(ctx.g1.dim)])
    assert image.dim == n


@settings(max_examples=25)
@given(st.lists(scalars, min_size=3, max_size=3), st.lists(scalars, min_size=3, max_size=3))
def test_complexified_form_on_eta(ctx_sl2, a, b):
    ctx = ctx_sl2
    x, y = tuple(a), tuple(b)
    lhs = evaluate(ctx.form, ctx.eta(x), ctx.eta(y))
    real = evaluate(ctx.form_real, real_of_complex(x), real_of_complex(y))
    assert lhs == Scalar(0, 2) * real


def test_flip_examples():
    assert flip_root((1, 0, 0, -1)) == (0, -1, 1, 0)
    assert flip((1, 2)) == (2, 1)
    t = WeylTwist.of([1, 2, I, 3])
    assert flip(t) == flip_twist(t) == WeylTwist.of([I, 3, 1, 2])


@given(st.lists(scalars.filter(bool), min_size=4, max_size=4))
def test_u_of_flip(values):
    t = WeylTwist.of(values)
    u, uf = compute_u(t), compute_u(flip_twist(t))
    assert all(a == b.conjugate().inverse() for a, b in zip(uf.values, u.values))


def test_u_example():
    assert compute_u(WeylTwist.of([I, 1])) == WeylTwist.of([-I, -I])


def test_real_datum_passes(ctx_sl2):
    g, b = ctx_sl2.g, ctx_sl2.form
    d = complete_skeleton(g, b, Skeleton(SWAP_SL2, ()))
    assert reality_conditions(ctx_sl2, d).ok
    t = construct_triple(g, b, d)
    assert direct_j_stability(ctx_sl2, t).ok
    real = realify(ctx_sl2, t)
    assert real.report.ok and real.i.dim == 3 and real.i_p.dim == 3
    assert real.i.field == REAL


def test_condition_four_twist(ctx_sl2):
    g, b = ctx_sl2.g, ctx_sl2.form
    d = complete_skeleton(g, b, Skeleton(SWAP_SL2, ()))
    t = WeylTwist.of([I, 1])
    rep = reality_conditions(ctx_sl2, d, t)
    assert [c.ok for c in rep.conditions] == [True, True, True, False, True]
    assert not direct_j_stability(ctx_sl2, construct_triple(g, b, d, t)).ok
    with pytest.raises(RealityError):
        realify(ctx_sl2, construct_triple(g, b, d, t))


def test_condition_three_coxeter_center(ctx_sl3):
    g, b = ctx_sl3.g, ctx_sl3.form
    # graph of the Coxeter element s1 s2 on the Cartan: Lagrangian, not j-stable
    row = lambda *c: tuple(Scalar(x) for x in c) + (Scalar(0),) * (g.dim - 4)
    i_a_p = Subspace.span([row(1, 0, 0, 1), row(0, 1, -1, -1)], g.dim)
    d = make_data(IDENTITY_SL3, (), Subspace.zero(g.dim), i_a_p)
    assert validate(g, b, d).ok
    rep = reality_conditions(ctx_sl3, d)
    assert [c.ok for c in rep.conditions] == [True, True, False, True, True]
    assert rep[3].witness == "i_a_p"
    assert not direct_j_stability(ctx_sl3, construct_triple(g, b, d)).ok


def test_flip_incompatible(ctx_sl3):
    g, b = ctx_sl3.g, ctx_sl3.form
    d = complete_skeleton(g, b, Skeleton((((0, 0, 1, 0), (0, -1, 0, 0)),), ()))
    assert validate(g, b, d).ok
    rep = reality_conditions(ctx_sl3, d)
    assert not rep[1].ok


def test_realify_abelian():
    g1 = build_algebra([], 1)
    ctx = make_context(g1, [], [[1]])
    g, b = ctx.g, ctx.form
    d = make_data((), (), Subspace.span([[1, 1]], 2), Subspace.span([[1, -1]], 2))
    assert validate(g, b, d).ok and reality_conditions(ctx, d).ok
    real = realify(ctx, construct_triple(g, b, d))
    assert real.report.ok
    assert real.i == Subspace.span([[1, 0]], 2, REAL)
    assert real.i_p == Subspace.span([[0, 1]], 2, REAL)


def test_realified_subalgebras_are_closed(ctx_sl3):
    ctx = ctx_sl3
    g, b = ctx.g, ctx.form
    d = complete_skeleton(g, b, Skeleton(SWAP_SL3, ()))
    t = construct_triple(g, b, d)
    real = realify(ctx, t)
    assert real.report.ok and real.report.by_name("transversal").ok
    assert is_subalgebra(g, t.i) and ctx.is_j_stable(t.i)


def test_chain_swap_normalizes_to_one(ctx_sl3):
    ctx = ctx_sl3
    g, b = ctx.g, ctx.form
    d = complete_skeleton(g, b, Skeleton(SWAP_SL3, ()))
    t = WeylTwist.of([1, 1, Scalar(0, -2), Scalar(0, 2)])
    assert reality_conditions(ctx, d, t).ok
    inv = chain_involution(ctx, d)
    assert inv.involutive
    norm = normalize_twist(ctx, d, t)
    assert norm.exact and norm.u_star == WeylTwist.identity(g)
    assert fixes_data(norm.t_prime, d)
    t1 = construct_triple(g, b, d, t)
    t2 = construct_triple(g, b, d, norm.t_star)
    assert (t1.i, t1.i_p) == (t2.i, t2.i_p)


def test_normalize_identity(ctx_sl2):
    g, b = ctx_sl2.g, ctx_sl2.form
    d = complete_skeleton(g, b, Skeleton(SWAP_SL2, ()))
    norm = normalize_twist(ctx_sl2, d)
    assert norm.exact and norm.t_star == WeylTwist.identity(g)


def test_normalize_rejects_unreal(ctx_sl2):
    g, b = ctx_sl2.g, ctx_sl2.form
    d = complete_skeleton(g, b, Skeleton(SWAP_SL2, ()))
    with pytest.raises(RealityError):
        normalize_twist(ctx_sl2, d, WeylTwist.of([I, 1]))


TWISTS = [Scalar(1), Scalar(-1), I, -I, Scalar(2), Scalar(1, 1)]


@pytest.mark.parametrize("types, lams", [([("A", 1)], [1]), ([("A", 2)], [1]),
                                         ([("A", 1), ("A", 1)], [1, -1])])
def test_conditions_match_direct_stability(types, lams):
    ctx = make_context(build_algebra(types), lams)
    g, b = ctx.g, ctx.form
    rng = random.Random(3)
    seen_real = 0
    for sk in enumerate_skeletons(g, b):
        d = complete_skeleton(g, b, sk)
        if not validate(g, b, d).ok:
            continue
        for _ in range(3):
            t = WeylTwist.of([rng.choice(TWISTS) for _ in range(g.rank)])
            rep = reality_conditions(ctx, d, t)
            tri = construct_triple(g, b, d, t)
            assert rep.ok == direct_j_stability(ctx, tri).ok
            if rep.ok:
                seen_real += 1
                assert realify(ctx, tri).report.ok
                norm = normalize_twist(ctx, d, t)
                assert all(x * x == ONE for x in norm.u_star.values)
                if norm.exact:
                    again = construct_triple(g, b, d, norm.t_star)
                    assert (again.i, again.i_p) == (tri.i, tri.i_p)
                assert isinstance(trivial_off_gamma0(ctx, d, norm.u_star), tuple)
    assert seen_real > 0
