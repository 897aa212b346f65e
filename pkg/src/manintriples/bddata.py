"""Generalized Belavin-Drinfeld data: validation, chains, enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .forms import COMPLEX, InvariantForm, evaluate, make_form, split_plus_minus
from .liealg import (ChevalleyAlgebra, Root, build_algebra, cartan_subalgebra, coroot, neg,
                     root_value, span)
from .linalg import Subspace, Vector, add, combine, kernel, scale
from .scalars import Scalar, gaussian_sqrt

RootMap = tuple[tuple[Root, Root], ...]


class BDDataError(ValueError):
    """Structurally malformed data (not a bijection, roots outside the simple sets)."""


class BudgetExceeded(RuntimeError):
    pass


class LagrangianError(ValueError):
    pass


@dataclass(frozen=True)
class SigmaSets:
    sigma_plus: tuple[Root, ...]
    sigma_minus: tuple[Root, ...]


def sigma_sets(alg: ChevalleyAlgebra, form: InvariantForm) -> SigmaSets:
    sp = split_plus_minus(alg, form)
    plus, minus = [], []
    for i, s in enumerate(alg.b0_simple_roots):
        k = alg.roots.ideal_of_simple(i)
        if k in sp.plus_ideals:
            plus.append(s)
        else:
            minus.append(neg(s))
    return SigmaSets(tuple(plus), tuple(minus))


def _as_map(pairs: Iterable[tuple[Sequence[int], Sequence[int]]]) -> RootMap:
    return tuple(sorted((tuple(a), tuple(b)) for a, b in pairs))


@dataclass(frozen=True)
class Skeleton:
    """The finite part of a datum: the two partial bijections A and A'."""

    A: RootMap
    A_p: RootMap

    @property
    def gamma_plus(self) -> tuple[Root, ...]:
        return tuple(a for a, _ in self.A)

    @property
    def gamma_minus(self) -> tuple[Root, ...]:
        return tuple(sorted(b for _, b in self.A))

    @property
    def gamma_plus_p(self) -> tuple[Root, ...]:
        return tuple(a for a, _ in self.A_p)

    @property
    def gamma_minus_p(self) -> tuple[Root, ...]:
        return tuple(sorted(b for _, b in self.A_p))


@dataclass(frozen=True)
class GeneralizedBDData:
    A: RootMap
    A_p: RootMap
    i_a: Subspace
    i_a_p: Subspace

    @property
    def skeleton(self) -> Skeleton:
        return Skeleton(self.A, self.A_p)

    @property
    def gamma_plus(self) -> tuple[Root, ...]:
        return self.skeleton.gamma_plus

    @property
    def gamma_minus(self) -> tuple[Root, ...]:
        return self.skeleton.gamma_minus

    @property
    def gamma_plus_p(self) -> tuple[Root, ...]:
        return self.skeleton.gamma_plus_p

    @property
    def gamma_minus_p(self) -> tuple[Root, ...]:
        return self.skeleton.gamma_minus_p

    def amap(self, primed: bool = False) -> dict[Root, Root]:
        return dict(self.A_p if primed else self.A)

    def gamma(self, primed: bool = False) -> tuple[Root, ...]:
        m = self.A_p if primed else self.A
        return tuple(sorted({a for a, _ in m} | {b for _, b in m}))


def make_data(A: Iterable[tuple[Sequence[int], Sequence[int]]] | dict,
              A_p: Iterable[tuple[Sequence[int], Sequence[int]]] | dict,
              i_a: Subspace, i_a_p: Subspace,
              sigma: SigmaSets | None = None) -> GeneralizedBDData:
    a = _as_map(A.items() if isinstance(A, dict) else A)
    ap = _as_map(A_p.items() if isinstance(A_p, dict) else A_p)
    for m in (a, ap):
        dom = [x for x, _ in m]
        img = [y for _, y in m]
        if len(set(dom)) != len(dom) or len(set(img)) != len(img):
            raise BDDataError("A and A' must be bijections")
        if sigma is not None:
            if not set(dom) <= set(sigma.sigma_plus):
                raise BDDataError(f"domain {dom} not inside sigma_plus")
            if not set(img) <= set(sigma.sigma_minus):
                raise BDDataError(f"image {img} not inside sigma_minus")
    return GeneralizedBDData(a, ap, i_a, i_a_p)


# ---------------------------------------------------------------------------
# Spaces attached to the data


def levi_center(alg: ChevalleyAlgebra, gamma: Iterable[Root]) -> Subspace:
    """a: elements of j0 killed by every root of ``gamma``."""
    j0 = cartan_subalgebra(alg)
    gamma = list(gamma)
    if not gamma:
        return j0
    basis = list(j0.rows)
    eqs = [[root_value(alg, g, b) for b in basis] for g in gamma]
    sols = kernel(eqs, len(basis))
    return span(alg, (combine(s, basis, alg.dim) for s in sols))


def f_space(alg: ChevalleyAlgebra, amap: RootMap) -> Subspace:
    """span{H_alpha + H_{A alpha}}."""
    return span(alg, (add(coroot(alg, a), coroot(alg, b)) for a, b in amap))


# ---------------------------------------------------------------------------
# Chains


@dataclass(frozen=True)
class ChainStructure:
    dom: tuple[Root, ...]
    image: tuple[Root, ...]
    successor: tuple[tuple[Root, Root], ...]
    orbits: tuple[tuple[Root, ...], ...]
    cycles: tuple[tuple[Root, ...], ...]
    exits: tuple[tuple[Root, bool], ...]

    @property
    def all_exit(self) -> bool:
        return not self.cycles


def chain_map(data: GeneralizedBDData | Skeleton) -> ChainStructure:
    """C = A^-1 A' on dom C = {alpha in Gamma'_+ : A' alpha in Gamma_-}."""
    a = dict(data.A)
    a_inv = {v: k for k, v in a.items()}
    succ: dict[Root, Root] = {}
    for x, y in data.A_p:
        if y in a_inv:
            succ[x] = a_inv[y]
    dom = tuple(sorted(succ))
    image = tuple(sorted(set(succ.values())))
    nodes = sorted(set(dom) | set(image))
    has_pred = set(succ.values())
    orbits: list[tuple[Root, ...]] = []
    covered: set[Root] = set()
    for s in nodes:
        if s in has_pred:
            continue
        path = [s]
        cur = s
        while cur in succ:
            cur = succ[cur]
            path.append(cur)
        orbits.append(tuple(path))
        covered.update(path)
    cycles: list[tuple[Root, ...]] = []
    for s in nodes:
        if s in covered:
            continue
        cyc = [s]
        cur = succ[s]
        while cur != s:
            cyc.append(cur)
            cur = succ[cur]
        covered.update(cyc)
        cycles.append(tuple(cyc))
    in_cycle = {x for c in cycles for x in c}
    exits = tuple((x, x not in in_cycle) for x in dom)
    return ChainStructure(dom, image, tuple(sorted(succ.items())), tuple(orbits),
                          tuple(cycles), exits)


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class ConditionResult:
    number: int
    name: str
    ok: bool
    witness: object = None


@dataclass(frozen=True)
class ValidationReport:
    conditions: tuple[ConditionResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions)

    def first_failure(self) -> ConditionResult | None:
        return next((c for c in self.conditions if not c.ok), None)

    def __getitem__(self, number: int) -> ConditionResult:
        return self.conditions[number - 1]


CONDITION_NAMES = {
    1: "form compatibility of A",
    2: "form compatibility of A'",
    3: "exit condition",
    4: "Lagrangian centers",
    5: "transversality",
}


def _check_form_compat(alg: ChevalleyAlgebra, form: InvariantForm, amap: RootMap,
                       strict_killing: bool) -> tuple[bool, object]:
    for (a, aa), (b, ab) in itertools.combinations_with_replacement(amap, 2):
        lhs = evaluate(form, coroot(alg, aa), coroot(alg, ab))
        rhs = -evaluate(form, coroot(alg, a), coroot(alg, b))
        if lhs != rhs:
            return False, (a, b)
        if strict_killing:
            for x, y, ax, ay in ((a, b, aa, ab), (b, a, ab, aa)):
                if root_value(alg, ax, coroot(alg, ay)) != root_value(alg, x, coroot(alg, y)):
                    return False, (x, y)
    return True, None


def _check_center(alg: ChevalleyAlgebra, form: InvariantForm, gamma: Sequence[Root],
                  i_a: Subspace, label: str) -> tuple[bool, object]:
    a = levi_center(alg, gamma)
    for v in i_a.rows:
        if not a.contains(v):
            return False, {"side": label, "outside_a": v}
    if 2 * i_a.dim != a.dim:
        return False, {"side": label, "dim_i_a": i_a.dim, "dim_a": a.dim}
    rows = i_a.rows
    for p in range(len(rows)):
        for q in range(p, len(rows)):
            if evaluate(form, rows[p], rows[q]):
                return False, {"side": label, "non_isotropic_pair": (p, q)}
    return True, None


def validate(alg: ChevalleyAlgebra, form: InvariantForm, data: GeneralizedBDData,
             strict_killing: bool = False) -> ValidationReport:
    results = []
    ok, w = _check_form_compat(alg, form, data.A, strict_killing)
    results.append(ConditionResult(1, CONDITION_NAMES[1], ok, w))
    ok, w = _check_form_compat(alg, form, data.A_p, strict_killing)
    results.append(ConditionResult(2, CONDITION_NAMES[2], ok, w))
    ch = chain_map(data)
    results.append(ConditionResult(3, CONDITION_NAMES[3], ch.all_exit,
                                   ch.cycles[0] if ch.cycles else None))
    ok, w = _check_center(alg, form, data.gamma(False), data.i_a, "unprimed")
    if ok:
        ok, w = _check_center(alg, form, data.gamma(True), data.i_a_p, "primed")
    results.append(ConditionResult(4, CONDITION_NAMES[4], ok, w))
    left = f_space(alg, data.A).sum(data.i_a)
    right = f_space(alg, data.A_p).sum(data.i_a_p)
    meet = left.intersect(right)
    results.append(ConditionResult(5, CONDITION_NAMES[5], meet.dim == 0,
                                   meet.rows[0] if meet.dim else None))
    return ValidationReport(tuple(results))


# ---------------------------------------------------------------------------
# Enumeration


def partial_bijections(sigma: SigmaSets) -> Iterator[RootMap]:
    """All bijections between equal-size subsets, in a fixed order."""
    sp, sm = sigma.sigma_plus, sigma.sigma_minus
    for k in range(min(len(sp), len(sm)) + 1):
        for dom in itertools.combinations(sp, k):
            for img in itertools.combinations(sm, k):
                for perm in itertools.permutations(img):
                    yield _as_map(zip(dom, perm))


def compatible_maps(alg: ChevalleyAlgebra, form: InvariantForm, sigma: SigmaSets,
                    strict_killing: bool = False,
                    budget: int | None = None) -> list[RootMap]:
    out = []
    count = 0
    for m in partial_bijections(sigma):
        count += 1
        if budget is not None and count > budget:
            raise BudgetExceeded(f"more than {budget} candidate maps")
        if _check_form_compat(alg, form, m, strict_killing)[0]:
            out.append(m)
    return out


def enumerate_skeletons(alg: ChevalleyAlgebra, form: InvariantForm,
                        budget: int | None = 100000,
                        fixed_A: RootMap | None = None,
                        strict_killing: bool = False) -> list[Skeleton]:
    """All (A, A') passing conditions 1-3, optionally with A held fixed."""
    sigma = sigma_sets(alg, form)
    maps = compatible_maps(alg, form, sigma, strict_killing, budget)
    firsts = [fixed_A] if fixed_A is not None else maps
    if budget is not None and len(firsts) * len(maps) > budget:
        raise BudgetExceeded(f"{len(firsts) * len(maps)} candidate pairs exceed budget {budget}")
    out = []
    for a in firsts:
        for ap in maps:
            sk = Skeleton(a, ap)
            if chain_map(sk).all_exit:
                out.append(sk)
    return out


def diagonal_setting(types: Sequence[tuple[str, int]]) -> tuple[ChevalleyAlgebra, InvariantForm]:
    """g1 x g1 with lambda = (1, -1) and b0 flipped on the g- copy."""
    n = len(types)
    lams = [1] * n + [-1] * n
    # lambda = 1 lies in C-, so the first copy is g-
    flips = [True] * n + [False] * n
    alg = build_algebra(list(types) * 2, 0, flips)
    return alg, make_form(alg, COMPLEX, lams)


def identity_pairing(alg: ChevalleyAlgebra, form: InvariantForm) -> RootMap:
    """For g = g1 x g1 with opposite lambdas: match the i-th simple root of g+ with that of g-."""
    sigma = sigma_sets(alg, form)
    if len(sigma.sigma_plus) != len(sigma.sigma_minus):
        raise BDDataError("the two sides have different ranks")

    def local(beta: Root) -> int:
        return next(i for i, c in enumerate(beta) if c)

    plus = sorted(sigma.sigma_plus, key=local)
    minus = sorted(sigma.sigma_minus, key=local)
    return _as_map(zip(plus, minus))


# ---------------------------------------------------------------------------
# Lagrangian subspaces of a


def _orthogonal_basis(form: InvariantForm, basis: list[Vector]) -> list[tuple[Vector, Scalar]]:
    """Diagonalize the form on span(basis); raises when it is degenerate."""
    vecs = list(basis)
    out: list[tuple[Vector, Scalar]] = []
    while vecs:
        pick = next((k for k, v in enumerate(vecs) if evaluate(form, v, v)), None)
        if pick is None:
            pair = next(((p, q) for p in range(len(vecs)) for q in range(p + 1, len(vecs))
                         if evaluate(form, vecs[p], vecs[q])), None)
            if pair is None:
                raise LagrangianError("form is degenerate on a")
            p, q = pair
            vecs[p] = add(vecs[p], vecs[q])
            pick = p
        v = vecs.pop(pick)
        n = evaluate(form, v, v)
        out.append((v, n))
        vecs = [add(w, scale(-evaluate(form, w, v) / n, v)) for w in vecs]
        vecs = [w for w in vecs if any(w)]
    return out


def _matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in _matchings(rest):
            yield [(first, items[k])] + m


def lagrangian_candidates(alg: ChevalleyAlgebra, form: InvariantForm,
                          a: Subspace, limit: int = 256) -> Iterator[Subspace]:
    """Lagrangian subspaces of (a, B) built from hyperbolic pairs, in a fixed order."""
    if a.dim % 2:
        raise LagrangianError(f"a has odd dimension {a.dim}")
    if a.dim == 0:
        yield Subspace.zero(alg.dim)
        return
    diag = _orthogonal_basis(form, list(a.rows))
    if len(diag) != a.dim:
        raise LagrangianError("form is degenerate on a")
    produced = 0
    seen: set[tuple] = set()
    for matching in _matchings(list(range(len(diag)))):
        roots = []
        for p, q in matching:
            s = gaussian_sqrt(-diag[p][1] / diag[q][1])
            if s is None:
                break
            roots.append(s)
        else:
            for signs in itertools.product((1, -1), repeat=len(matching)):
                vecs = [add(diag[p][0], scale(sg * s, diag[q][0]))
                        for (p, q), s, sg in zip(matching, roots, signs)]
                sub = Subspace.span(vecs, alg.dim)
                if sub.rows in seen:
                    continue
                seen.add(sub.rows)
                yield sub
                produced += 1
                if produced >= limit:
                    return
    if not produced:
        for found in _split_lagrangians(form, list(a.rows)):
            sub = Subspace.span(found, alg.dim)
            if sub.rows in seen:
                continue
            seen.add(sub.rows)
            yield sub
            produced += 1
            if produced >= limit:
                return
    if not produced:
        raise LagrangianError("no Lagrangian subspace of a with Gaussian-rational coordinates")


def _isotropic_vectors(form: InvariantForm, basis: list[Vector], bound: int) -> Iterator[Vector]:
    """Integer combinations of ``basis`` with B(v, v) = 0, by growing box size."""
    k = len(basis)
    gram = [[evaluate(form, u, v) for v in basis] for u in basis]
    for r in range(1, bound + 1):
        for c in itertools.product(range(-r, r + 1), repeat=k):
            if max(abs(x) for x in c) != r or next(x for x in c if x) < 0:
                continue
            q = sum((gram[p][q] * (c[p] * c[q]) for p in range(k) for q in range(k)
                     if c[p] and c[q]), Scalar(0))
            if not q:
                yield combine(c, basis, len(basis[0]))


def _split_lagrangians(form: InvariantForm, basis: list[Vector],
                       bound: int = 3) -> Iterator[list[Vector]]:
    """Lagrangians of a nondegenerate space by splitting off hyperbolic planes.

    By Witt cancellation any isotropic vector extends to a Lagrangian when one
    exists, so the search is only ever for single isotropic vectors.
    """
    if not basis:
        yield []
        return
    if len(basis) == 2:
        diag = _orthogonal_basis(form, basis)
        s = gaussian_sqrt(-diag[0][1] / diag[1][1])
        if s is not None:
            yield [add(diag[0][0], scale(s, diag[1][0]))]
            yield [add(diag[0][0], scale(-s, diag[1][0]))]
        return
    for v in _isotropic_vectors(form, basis, bound):
        w = next((u for u in basis if evaluate(form, v, u)), None)
        if w is None:
            raise LagrangianError("form is degenerate on a")
        # complement of the hyperbolic plane span(v, w)
        eqs = [[evaluate(form, x, u) for u in basis] for x in (v, w)]
        rest = [combine(c, basis, len(basis[0])) for c in kernel(eqs, len(basis))]
        extended = False
        for tail in _split_lagrangians(form, rest, bound):
            extended = True
            yield [v] + tail
        if not extended:
            # the complement has no Lagrangian, so neither has the whole space
            return


def canonical_lagrangian_center(alg: ChevalleyAlgebra, form: InvariantForm,
                                gamma: Iterable[Root],
                                accept: Callable[[Subspace], bool] | None = None) -> Subspace:
    """First Lagrangian subspace of a (optionally the first one ``accept`` likes)."""
    a = levi_center(alg, gamma)
    first = None
    for cand in lagrangian_candidates(alg, form, a):
        if first is None:
            first = cand
        if accept is None or accept(cand):
            return cand
    assert first is not None
    return first


def complete_skeleton(alg: ChevalleyAlgebra, form: InvariantForm,
                      sk: Skeleton) -> GeneralizedBDData:
    """Attach Lagrangian centers to a skeleton, preferring a transversal pair."""
    g = sorted({x for p in sk.A for x in p})
    gp = sorted({x for p in sk.A_p for x in p})
    a = levi_center(alg, g)
    ap = levi_center(alg, gp)
    f = f_space(alg, sk.A)
    fp = f_space(alg, sk.A_p)
    first = None
    for ia in lagrangian_candidates(alg, form, a):
        left = f.sum(ia)
        for iap in lagrangian_candidates(alg, form, ap):
            if first is None:
                first = (ia, iap)
            if left.intersect(fp.sum(iap)).dim == 0:
                return GeneralizedBDData(sk.A, sk.A_p, ia, iap)
    assert first is not None
    return GeneralizedBDData(sk.A, sk.A_p, first[0], first[1])
