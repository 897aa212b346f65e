import itertools

import pytest
from hypothesis import given, settings, strategies as st

from manintriples.liealg import (RootSystemError, basis_bracket, borel, bracket, build_algebra,
                                 build_root_system, cartan_matrix, cartan_subalgebra, coroot,
                                 is_subalgebra, killing_form, nilradical_of, normalizer,
                                 root_value, span, weight_projection)
from manintriples.linalg import Subspace, add, scale
from manintriples.scalars import ZERO, Scalar
from manintriples.triples import parabolic_from_indices

from oracles import weyl_closure

TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2),
         ("F", 4), ("E", 6)]


@pytest.mark.parametrize("letter, rank", TYPES)
def test_roots_match_reflection_closure(letter, rank):
    c = cartan_matrix(letter, rank)
    rs = build_root_system(c)
    assert set(rs.roots) == set(weyl_closure(c))


@pytest.mark.parametrize("letter, rank, count", [("A", 1, 2), ("A", 2, 6), ("G", 2, 12),
                                                 ("B", 2, 8), ("F", 4, 48), ("E", 6, 72)])
def test_root_counts(letter, rank, count):
    assert len(build_root_system(cartan_matrix(letter, rank)).roots) == count


@pytest.mark.parametrize("letter, rank", TYPES[:8])
def test_coroots_match_reflection_closure(letter, rank):
    c = cartan_matrix(letter, rank)
    rs = build_root_system(c)
    oracle = weyl_closure(c)
    for beta in rs.roots:
        assert rs.coroot_coefficients(beta) == oracle[beta]


def test_bad_types():
    with pytest.raises(RootSystemError):
        cartan_matrix("H", 3)
    with pytest.raises(RootSystemError):
        cartan_matrix("E", 5)


def test_sl2_relations():
    g = build_algebra([("A", 1)])
    assert g.dim == 3
    x, y, h = g.x((1,)), g.x((-1,)), g.h(0)
    assert bracket(g, x, y) == h
    assert bracket(g, h, x) == scale(2, x)
    assert bracket(g, h, y) == scale(-2, y)
    assert bracket(g, x, x) == g.zero()


def test_abelian():
    g = build_algebra([], 2)
    assert g.dim == 2
    assert bracket(g, g.z(0), g.z(1)) == g.zero()


def test_cross_ideal_brackets_vanish():
    g = build_algebra([("A", 1), ("A", 1)])
    assert g.dim == 6
    first, second = g.ideal_basis
    for i in first:
        for j in second:
            assert not any(basis_bracket(g, i, j))


def test_sl3_sign_convention():
    g = build_algebra([("A", 2)])
    assert bracket(g, g.x((1, 0)), g.x((0, 1))) == g.x((1, 1))
    assert bracket(g, g.x((0, 1)), g.x((1, 0))) == scale(-1, g.x((1, 1)))


@pytest.mark.parametrize("types", [[("A", 2)], [("B", 2)], [("G", 2)], [("A", 1), ("A", 1)]])
def test_cartan_action(types):
    g = build_algebra(types)
    for beta in g.roots.roots:
        for i in range(g.rank):
            expected = scale(g.roots.pairing(beta, i), g.x(beta))
            assert bracket(g, g.h(i), g.x(beta)) == expected


def test_killing_sl2():
    g = build_algebra([("A", 1)])
    k = killing_form(g)
    h, x, y = 0, g.root_index[(1,)], g.root_index[(-1,)]
    assert k[h][h] == 8
    assert k[x][y] == 4
    assert k[x][x] == 0


def test_killing_sl3_cartan_block():
    g = build_algebra([("A", 2)])
    k = killing_form(g)
    c = g.roots.cartan
    assert [[k[i][j] for j in range(2)] for i in range(2)] == [
        [6 * c[i][j] for j in range(2)] for i in range(2)]


def test_killing_block_diagonal_and_center():
    g = build_algebra([("A", 1), ("A", 2)], 1)
    k = killing_form(g)
    first, second = g.ideal_basis
    assert all(k[i][j] == 0 for i in first for j in second)
    z = g.center_index(0)
    assert all(k[z][j] == 0 for j in range(g.dim))


def test_coroots():
    g = build_algebra([("A", 1)])
    assert root_value(g, (1,), coroot(g, (1,))) == 2
    g3 = build_algebra([("A", 2)])
    assert coroot(g3, (1, 1)) == add(g3.h(0), g3.h(1))
    for beta in g3.roots.roots:
        assert coroot(g3, tuple(-c for c in beta)) == scale(-1, coroot(g3, beta))
        assert root_value(g3, beta, coroot(g3, beta)) == 2


def test_coroot_is_bracket_of_root_vectors():
    g = build_algebra([("B", 2)])
    for beta in g.roots.roots:
        if g.roots.positive(beta):
            neg = tuple(-c for c in beta)
            assert bracket(g, g.x(beta), g.x(neg)) == coroot(g, beta)


def test_subspace_ops_in_sl2_pair():
    g = build_algebra([("A", 1), ("A", 1)])
    diag = span(g, [add(g.unit(a), g.unit(b)) for a, b in zip(*g.ideal_basis)])
    anti = span(g, [add(g.unit(a), scale(-1, g.unit(b))) for a, b in zip(*g.ideal_basis)])
    assert diag.intersect(anti).dim == 0
    assert is_subalgebra(g, diag)
    assert not is_subalgebra(g, anti)


def test_is_subalgebra_sl2():
    g = build_algebra([("A", 1)])
    assert is_subalgebra(g, borel(g))
    assert not is_subalgebra(g, span(g, [g.x((1,)), g.x((-1,))]))


def test_nilradical_examples():
    g = build_algebra([("A", 1)])
    assert nilradical_of(g, borel(g)) == span(g, [g.x((1,))])
    g2 = build_algebra([("A", 1), ("A", 1)])
    diag = span(g2, [add(g2.unit(a), g2.unit(b)) for a, b in zip(*g2.ideal_basis)])
    assert nilradical_of(g2, diag).dim == 0


def test_normalizer_examples():
    g = build_algebra([("A", 1)])
    n = span(g, [g.x((1,))])
    assert normalizer(g, n) == borel(g)
    assert normalizer(g, Subspace.zero(g.dim)) == Subspace.full(g.dim)


@pytest.mark.parametrize("types", [[("A", 2)], [("B", 2)], [("A", 3)]])
def test_parabolic_is_normalizer_of_its_nilradical(types):
    g = build_algebra(types)
    for k in range(g.rank + 1):
        for levi in itertools.combinations(range(g.rank), k):
            par = parabolic_from_indices(g, levi)
            n = nilradical_of(g, par.p)
            assert n == par.n
            assert normalizer(g, n) == par.p


def test_weight_projection_sl2():
    g = build_algebra([("A", 1)])
    n = span(g, [g.x((1,))])
    comp, project = weight_projection(g, n)
    assert comp == span(g, [g.h(0), g.x((-1,))])
    for v in comp.rows:
        assert project(v) == v
    assert not any(project(g.x((1,))))


def test_weight_projection_gives_levi_component():
    g = build_algebra([("A", 2)])
    par = parabolic_from_indices(g, [0])
    comp, project = weight_projection(g, par.n, within=par.p)
    assert comp == par.l
    for v in par.p.rows:
        levi_part = tuple(c if (g.weight(k) is None or g.weight(k) in par.levi_roots) else ZERO
                          for k, c in enumerate(v))
        assert project(v) == levi_part


@settings(max_examples=30)
@given(st.sampled_from([[("A", 2)], [("B", 2)], [("G", 2)]]), st.data())
def test_bracket_bilinear(types, data):
    g = build_algebra(types)
    coef = st.lists(st.integers(-2, 2), min_size=g.dim, max_size=g.dim)
    x = tuple(Scalar(c) for c in data.draw(coef))
    y = tuple(Scalar(c) for c in data.draw(coef))
    z = tuple(Scalar(c) for c in data.draw(coef))
    assert bracket(g, add(x, y), z) == add(bracket(g, x, z), bracket(g, y, z))
    assert bracket(g, x, y) == scale(-1, bracket(g, y, x))


def test_cartan_subalgebra_dimension():
    g = build_algebra([("A", 2)], 1)
    assert cartan_subalgebra(g).dim == 3
