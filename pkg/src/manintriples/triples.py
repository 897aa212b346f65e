"""Manin triples attached to generalized Belavin-Drinfeld data.

Standard parabolics are described by a set of simple-root indices ``J``
together with an orientation (containing b0 or its opposite b0').  Every
reductive subalgebra met during descent is of the form
``j0 + sum of root spaces supported on I`` for an index set ``I``; such a
set is called the *ambient* of a computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .bddata import (GeneralizedBDData, RootMap, SigmaSets, f_space, levi_center, validate,
                     ValidationReport)
from .forms import (COMPLEX, InvariantForm, complex_of_real, isotropy_witness, real_of_complex,
                    split_plus_minus)
from .liealg import (ChevalleyAlgebra, Root, bracket, bracket_span, cartan_subalgebra,
                     coroot, neg, nilradical_of, normalizer, root_add,
                     root_sub, span, subalgebra_witness)
from .linalg import Subspace, Vector, add, combine, direct_sum_ok, scale, solve
from .scalars import ONE, ZERO, Number, Scalar


class ValidationFailure(ValueError):
    def __init__(self, report: ValidationReport) -> None:
        bad = report.first_failure()
        super().__init__(f"condition {bad.number} ({bad.name}) fails: {bad.witness!r}")
        self.report = report


class TauError(ValueError):
    pass


class DescentError(RuntimeError):
    pass


class NotLagrangianError(ValueError):
    def __init__(self, message: str, witness: object) -> None:
        super().__init__(message)
        self.witness = witness


class GraphFormError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Index-set helpers


def support(beta: Root) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(beta) if c)


def roots_on(alg: ChevalleyAlgebra, indices: Iterable[int]) -> tuple[Root, ...]:
    idx = frozenset(indices)
    return tuple(b for b in alg.roots.roots if support(b) <= idx)


def full_ambient(alg: ChevalleyAlgebra) -> frozenset[int]:
    return frozenset(range(alg.rank))


def ambient_space(alg: ChevalleyAlgebra, ambient: Iterable[int]) -> Subspace:
    rs = roots_on(alg, ambient)
    return span(alg, [alg.x(b) for b in rs] + list(cartan_subalgebra(alg).rows))


def sigma_in(alg: ChevalleyAlgebra, form: InvariantForm, ambient: Iterable[int]) -> SigmaSets:
    sp = split_plus_minus(alg, form)
    amb = frozenset(ambient)
    plus, minus = [], []
    for i, s in enumerate(alg.b0_simple_roots):
        if i not in amb:
            continue
        if alg.roots.ideal_of_simple(i) in sp.plus_ideals:
            plus.append(s)
        else:
            minus.append(neg(s))
    return SigmaSets(tuple(plus), tuple(minus))


# ---------------------------------------------------------------------------
# Twists


@dataclass(frozen=True)
class WeylTwist:
    """Element t of J0 given by its values on the simple roots alpha_1..alpha_n."""

    values: tuple[Scalar, ...]

    @staticmethod
    def identity(alg: ChevalleyAlgebra) -> WeylTwist:
        return WeylTwist((ONE,) * alg.rank)

    @staticmethod
    def of(values: Sequence[Number]) -> WeylTwist:
        vals = tuple(Scalar.of(v) for v in values)
        if any(not v for v in vals):
            raise ValueError("twist values must be nonzero")
        return WeylTwist(vals)

    def char(self, beta: Sequence[int]) -> Scalar:
        """t^beta."""
        out = ONE
        for v, c in zip(self.values, beta):
            if c:
                out = out * v ** c
        return out

    def __mul__(self, other: WeylTwist) -> WeylTwist:
        return WeylTwist(tuple(a * b for a, b in zip(self.values, other.values)))


# ---------------------------------------------------------------------------
# Parabolics


@dataclass(frozen=True)
class Parabolic:
    levi_indices: frozenset[int]
    opposite: bool
    ambient: frozenset[int]
    p: Subspace
    l: Subspace
    m: Subspace
    a: Subspace
    n: Subspace
    levi_roots: tuple[Root, ...]
    nil_roots: tuple[Root, ...]


def parabolic_from_indices(alg: ChevalleyAlgebra, levi_indices: Iterable[int],
                           opposite: bool = False,
                           ambient: Iterable[int] | None = None) -> Parabolic:
    amb = full_ambient(alg) if ambient is None else frozenset(ambient)
    J = frozenset(levi_indices)
    if not J <= amb:
        raise ValueError("Levi indices outside the ambient")
    amb_roots = roots_on(alg, amb)
    levi_roots = tuple(b for b in amb_roots if support(b) <= J)
    nil_roots = tuple(b for b in amb_roots
                      if support(b) - J and alg.b0_positive(b) != opposite)
    j0 = cartan_subalgebra(alg)
    l = span(alg, [alg.x(b) for b in levi_roots] + list(j0.rows))
    n = span(alg, [alg.x(b) for b in nil_roots])
    m = span(alg, [alg.x(b) for b in levi_roots] +
             [coroot(alg, alg.roots.simple_roots[i]) for i in sorted(J)])
    gamma = [alg.roots.simple_roots[i] for i in sorted(J)]
    a = levi_center(alg, gamma)
    if not (direct_sum_ok([m, a]) and m.sum(a) == l):
        raise AssertionError("Levi factor does not split as m + a")
    return Parabolic(J, opposite, amb, l.sum(n), l, m, a, n, levi_roots, nil_roots)


def standard_parabolic(alg: ChevalleyAlgebra, gamma_plus: Iterable[Root],
                       gamma_minus: Iterable[Root], opposite: bool = False,
                       ambient: Iterable[int] | None = None,
                       sigma: SigmaSets | None = None) -> Parabolic:
    """Parabolic containing b0 (or b0' if ``opposite``) and the Levi of Gamma."""
    gp, gm = list(gamma_plus), list(gamma_minus)
    if sigma is not None:
        if not set(gp) <= set(sigma.sigma_plus) or not set(gm) <= set(sigma.sigma_minus):
            raise ValueError("Gamma entries must lie in the simple sets")
    idx: set[int] = set()
    for g in gp + gm:
        s = support(g)
        if len(s) != 1 or abs(g[next(iter(s))]) != 1:
            raise ValueError(f"{g} is not a simple root")
        idx |= s
    return parabolic_from_indices(alg, idx, opposite, ambient)


# ---------------------------------------------------------------------------
# tau


def _coeff(alg: ChevalleyAlgebra, r: Root, s: Root) -> int:
    """N with [X_r, X_s] = N X_{r+s}."""
    target = alg.root_index[root_add(r, s)]
    for k, c in alg.table[alg.root_index[r]][alg.root_index[s]]:
        if k == target:
            return c
    return 0


def build_tau(alg: ChevalleyAlgebra, amap: RootMap | dict[Root, Root],
              twist: WeylTwist | None = None) -> list[tuple[Vector, Vector]]:
    """Basis pairs (x, tau x) of m+ for the isomorphism fixed by A and the twist.

    The twisted generators are t^g X_g and t^-g Y_g, so on root vectors
    tau(X_g) = t^{Ag} / t^g X_{Ag} for g in Gamma_+.
    """
    a = dict(amap)
    if not a:
        return []
    t = twist or WeylTwist.identity(alg)
    gens = sorted(a)
    # Cartan compatibility: alpha(H_beta) = A alpha(H_{A beta})
    for g1 in gens:
        for g2 in gens:
            v1 = _root_on_coroot(alg, g1, g2)
            v2 = _root_on_coroot(alg, a[g1], a[g2])
            if v1 != v2:
                raise TauError(f"Cartan integers differ on the pair {g1}, {g2}")
    idx = sorted({i for g in gens for i in support(g)})
    sign = {next(iter(support(g))): (1 if sum(g) > 0 else -1) for g in gens}
    by_index = {next(iter(support(g))): g for g in gens}

    def expand(beta: Root) -> dict[Root, int]:
        return {by_index[i]: beta[i] * sign[i] for i in idx if beta[i]}

    def image_root(beta: Root) -> Root:
        out = tuple(0 for _ in beta)
        for g, c in expand(beta).items():
            out = root_add(out, tuple(c * x for x in a[g]))
        return out

    m_roots = [b for b in alg.roots.roots if support(b) <= set(idx)]
    pos = [b for b in m_roots if all(c >= 0 for c in expand(b).values())]
    pos.sort(key=lambda b: (sum(expand(b).values()), b))
    pos_set = set(pos)
    images: dict[Root, Vector] = {}
    for sgn in (1, -1):
        for beta in pos:
            b = beta if sgn == 1 else neg(beta)
            if sum(expand(beta).values()) == 1:
                g = beta
                if sgn == 1:
                    images[b] = scale(t.char(a[g]) / t.char(g), alg.x(a[g]))
                else:
                    images[b] = scale(t.char(g) / t.char(a[g]), alg.x(neg(a[g])))
                continue
            for g in gens:
                rest = root_sub(beta, g)
                if rest not in pos_set:
                    continue
                g_s, r_s = (g, rest) if sgn == 1 else (neg(g), neg(rest))
                c = _coeff(alg, g_s, r_s)
                images[b] = scale(Scalar(1) / c, bracket(alg, images[g_s], images[r_s]))
                break
            else:
                raise TauError(f"no bracket word found for {b}")
    pairs: list[tuple[Vector, Vector]] = []
    for g in gens:
        pairs.append((coroot(alg, g), coroot(alg, a[g])))
    for beta in pos:
        pairs.append((alg.x(beta), images[beta]))
    for beta in pos:
        pairs.append((alg.x(neg(beta)), images[neg(beta)]))
    _check_homomorphism(alg, pairs)
    return pairs


def coroot_coeffs(alg: ChevalleyAlgebra, beta: Root) -> tuple[int, ...]:
    return alg.roots.coroot_coefficients(beta)


def _root_on_coroot(alg: ChevalleyAlgebra, alpha: Root, beta: Root) -> int:
    """alpha(H_beta)."""
    return sum(c * alg.roots.pairing(alpha, i) for i, c in enumerate(coroot_coeffs(alg, beta)))


def _check_homomorphism(alg: ChevalleyAlgebra, pairs: list[tuple[Vector, Vector]]) -> None:
    cols_x = [x for x, _ in pairs]
    for p in range(len(pairs)):
        for q in range(p + 1, len(pairs)):
            br = bracket(alg, pairs[p][0], pairs[q][0])
            coeffs = solve(cols_x, br)
            if coeffs is None:
                raise TauError("m+ basis is not closed under brackets")
            lhs = combine(coeffs, [y for _, y in pairs], alg.dim)
            rhs = bracket(alg, pairs[p][1], pairs[q][1])
            if lhs != rhs:
                raise TauError("tau is not a homomorphism on the generated algebra")


def tau_graph(alg: ChevalleyAlgebra, pairs: list[tuple[Vector, Vector]]) -> Subspace:
    return span(alg, (add(x, y) for x, y in pairs))


# ---------------------------------------------------------------------------
# Triples


@dataclass(frozen=True)
class SideWitness:
    parabolic: Parabolic
    h: Subspace
    i_a: Subspace
    tau_pairs: tuple[tuple[Vector, Vector], ...]


@dataclass(frozen=True)
class ManinTriple:
    alg: ChevalleyAlgebra
    form: InvariantForm
    i: Subspace
    i_p: Subspace
    ambient: frozenset[int]
    data: GeneralizedBDData | None = None
    twist: WeylTwist | None = None
    twist_p: WeylTwist | None = None
    side: SideWitness | None = None
    side_p: SideWitness | None = None


def construct_triple(alg: ChevalleyAlgebra, form: InvariantForm, data: GeneralizedBDData,
                     twist: WeylTwist | None = None, twist_p: WeylTwist | None = None,
                     ambient: Iterable[int] | None = None,
                     check: bool = True) -> ManinTriple:
    """T_{BD, tW}: i = h + i_a + n and i' = h' + i_a' + n'.

    ``twist_p`` defaults to ``twist``.  With ``check`` the datum must pass all
    five conditions first.
    """
    amb = full_ambient(alg) if ambient is None else frozenset(ambient)
    if check:
        report = validate(alg, form, data)
        if not report.ok:
            raise ValidationFailure(report)
    twist = twist or WeylTwist.identity(alg)
    twist_p = twist_p or twist
    sides = []
    for primed, t in ((False, twist), (True, twist_p)):
        amap = data.A_p if primed else data.A
        gp = [x for x, _ in amap]
        gm = [y for _, y in amap]
        par = standard_parabolic(alg, gp, gm, opposite=primed, ambient=amb)
        pairs = build_tau(alg, amap, t)
        h = tau_graph(alg, pairs)
        ia = data.i_a_p if primed else data.i_a
        sides.append(SideWitness(par, h, ia, tuple(pairs)))
    i = sides[0].h.sum(sides[0].i_a).sum(sides[0].parabolic.n)
    ip = sides[1].h.sum(sides[1].i_a).sum(sides[1].parabolic.n)
    return ManinTriple(alg, form, i, ip, amb, data, twist, twist_p, sides[0], sides[1])


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: object = None


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def by_name(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def _bracket_kind(form: InvariantForm, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    if form.kind == COMPLEX:
        return bracket(form.alg, x, y)
    return real_of_complex(bracket(form.alg, complex_of_real(x), complex_of_real(y)))


def _subalgebra_witness_kind(form: InvariantForm, v: Subspace) -> tuple[int, int] | None:
    rows = v.rows
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if not v.contains(_bracket_kind(form, rows[a], rows[b])):
                return (a, b)
    return None


def verify_triple(alg: ChevalleyAlgebra, form: InvariantForm, i: Subspace, i_p: Subspace,
                  ambient: Subspace | None = None) -> VerificationReport:
    """Check the Manin axioms directly from the two subspaces.

    For real forms, ``i`` and ``i_p`` are real subspaces of the realification.
    ``ambient`` restricts the axioms to a subalgebra (used during descent).
    """
    checks = []
    if ambient is not None:
        inside = i.is_subspace_of(ambient) and i_p.is_subspace_of(ambient)
        checks.append(Check("inside_ambient", inside))
    for label, v in (("i", i), ("i_p", i_p)):
        w = _subalgebra_witness_kind(form, v)
        checks.append(Check(f"{label}_subalgebra", w is None, w))
    for label, v in (("i", i), ("i_p", i_p)):
        w = isotropy_witness(form, v)
        checks.append(Check(f"{label}_isotropic", w is None, w))
    meet = i.intersect(i_p)
    checks.append(Check("transversal", meet.dim == 0, meet.rows[0] if meet.dim else None))
    total = ambient.dim if ambient is not None else (
        alg.dim if form.kind == COMPLEX else 2 * alg.dim)
    checks.append(Check("dimension", i.dim + i_p.dim == total,
                        None if i.dim + i_p.dim == total else (i.dim, i_p.dim, total)))
    return VerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# Analysis of a Lagrangian subalgebra


@dataclass(frozen=True)
class LagrangianReport:
    standard: str | None
    n: Subspace
    p: Subspace
    parabolic: Parabolic | None
    h: Subspace | None
    i_a: Subspace | None
    decomposition_ok: bool


def _levi_indices(alg: ChevalleyAlgebra, p: Subspace, amb: frozenset[int],
                  opposite: bool) -> frozenset[int]:
    out = set()
    for i in amb:
        s = alg.b0_simple_roots[i]
        back = s if opposite else neg(s)
        if p.contains(alg.x(back)):
            out.add(i)
    return frozenset(out)


def analyze_lagrangian(alg: ChevalleyAlgebra, form: InvariantForm, i: Subspace,
                       ambient: Iterable[int] | None = None) -> LagrangianReport:
    """Nilradical, normalizer and standard position of a Lagrangian subalgebra."""
    amb = full_ambient(alg) if ambient is None else frozenset(ambient)
    return _analyze(alg, form, i, amb)


@lru_cache(maxsize=512)
def _analyze(alg: ChevalleyAlgebra, form: InvariantForm, i: Subspace,
             amb: frozenset[int]) -> LagrangianReport:
    amb_space = ambient_space(alg, amb)
    w = isotropy_witness(form, i)
    if w is not None:
        raise NotLagrangianError("subspace is not isotropic", w)
    if 2 * i.dim != amb_space.dim:
        raise NotLagrangianError("wrong dimension for a Lagrangian", (i.dim, amb_space.dim))
    sw = subalgebra_witness(alg, i)
    if sw is not None:
        raise NotLagrangianError("not a subalgebra", sw)
    n = nilradical_of(alg, i)
    p = normalizer(alg, n, within=amb_space)
    standard = None
    for opposite, label in ((False, "b0"), (True, "b0_opposite")):
        bor = span(alg, [alg.x(b) for b in roots_on(alg, amb)
                         if alg.b0_positive(b) != opposite] + list(cartan_subalgebra(alg).rows))
        if bor.is_subspace_of(p):
            standard = label
            break
    if standard is None:
        return LagrangianReport(None, n, p, None, None, None, False)
    opp = standard == "b0_opposite"
    J = _levi_indices(alg, p, amb, opp)
    par = parabolic_from_indices(alg, J, opp, amb)
    if par.p != p or par.n != n:
        return LagrangianReport(standard, n, p, par, None, None, False)
    h = i.intersect(par.m)
    ia = i.intersect(par.a)
    ok = direct_sum_ok([h, ia, n]) and h.sum(ia).sum(n) == i
    return LagrangianReport(standard, n, p, par, h, ia, ok)


# ---------------------------------------------------------------------------
# Extraction of the data


def recover_root_map(alg: ChevalleyAlgebra, form: InvariantForm, i: Subspace,
                     par: Parabolic) -> dict[Root, Root]:
    """Read A off f = i meet j0 meet m, allowing images of either sign."""
    sp = split_plus_minus(alg, form)
    j0 = cartan_subalgebra(alg)
    f = i.intersect(j0).intersect(par.m)
    plus_idx = [k for k in sorted(par.levi_indices)
                if alg.roots.ideal_of_simple(k) in sp.plus_ideals]
    minus_idx = [k for k in sorted(par.levi_indices)
                 if alg.roots.ideal_of_simple(k) not in sp.plus_ideals]
    if f.dim != len(plus_idx) or len(plus_idx) != len(minus_idx):
        raise GraphFormError(f"f has dimension {f.dim}, expected {len(plus_idx)}")
    plus_set = set(plus_idx)
    out: dict[Root, Root] = {}
    cols = [tuple(v[k] if k in plus_set else ZERO for k in range(alg.dim)) for v in f.rows]
    minus_roots = [b for b in par.levi_roots if alg.roots.ideal_of_simple(
        next(iter(support(b)))) in sp.minus_ideals]
    for k in plus_idx:
        alpha = alg.b0_simple_roots[k]
        target = coroot(alg, alpha)
        c = solve(cols, target)
        if c is None:
            raise GraphFormError(f"H_{alpha} is not the g+ part of an element of f")
        elt = combine(c, f.rows, alg.dim)
        rest = tuple(ZERO if q in plus_set else x for q, x in enumerate(elt))
        match = [d for d in minus_roots if coroot(alg, d) == rest]
        if len(match) != 1:
            raise GraphFormError(f"f is not a graph of coroots at {alpha}")
        out[alpha] = match[0]
    return out


def extract_bd(alg: ChevalleyAlgebra, form: InvariantForm, triple: ManinTriple | tuple[Subspace, Subspace],
               ambient: Iterable[int] | None = None) -> GeneralizedBDData:
    if isinstance(triple, ManinTriple):
        i, ip = triple.i, triple.i_p
        amb = triple.ambient if ambient is None else frozenset(ambient)
    else:
        i, ip = triple
        amb = full_ambient(alg) if ambient is None else frozenset(ambient)
    sigma = sigma_in(alg, form, amb)
    maps = []
    centers = []
    for sub, want in ((i, "b0"), (ip, "b0_opposite")):
        rep = analyze_lagrangian(alg, form, sub, amb)
        if rep.standard != want and not (rep.parabolic is not None and
                                         rep.parabolic.levi_indices == amb):
            raise GraphFormError(f"subalgebra is not under a parabolic containing {want}")
        par = rep.parabolic
        if want == "b0_opposite" and par.opposite is False:
            par = parabolic_from_indices(alg, par.levi_indices, True, amb)
        amap = recover_root_map(alg, form, sub, par)
        for x, y in amap.items():
            if x not in sigma.sigma_plus or y not in sigma.sigma_minus:
                raise GraphFormError(f"recovered pair {x} -> {y} leaves the simple sets")
        maps.append(tuple(sorted(amap.items())))
        centers.append(sub.intersect(par.a))
    return GeneralizedBDData(maps[0], maps[1], centers[0], centers[1])


# ---------------------------------------------------------------------------
# Sign preservation


@dataclass(frozen=True)
class SignReport:
    ok: bool
    witness: Root | None = None
    side: str | None = None


def _extend(alg: ChevalleyAlgebra, amap: dict[Root, Root], beta: Root) -> Root:
    out = tuple(0 for _ in beta)
    for g, img in amap.items():
        k = next(iter(support(g)))
        c = beta[k] * (1 if sum(g) > 0 else -1)
        if c:
            out = root_add(out, tuple(c * x for x in img))
    return out


def check_root_map_signs(alg: ChevalleyAlgebra, amap: dict[Root, Root]) -> Root | None:
    """First alpha in the span of the domain with alpha and A alpha of different sign."""
    idx = {next(iter(support(g))) for g in amap}
    for beta in alg.roots.roots:
        if not support(beta) <= idx or not support(beta):
            continue
        img = _extend(alg, amap, beta)
        if not alg.roots.is_root(img):
            return beta
        # positive w.r.t. b0 on g+ must go to positive w.r.t. b0' on g-
        if alg.b0_positive(beta) == alg.b0_positive(img):
            return beta
    return None


def check_sign_preservation(alg: ChevalleyAlgebra, form: InvariantForm,
                            triple: ManinTriple) -> SignReport:
    """Signs of alpha and A alpha agree for the maps read off the triple."""
    for sub, want, label in ((triple.i, False, "unprimed"), (triple.i_p, True, "primed")):
        rep = analyze_lagrangian(alg, form, sub, triple.ambient)
        par = rep.parabolic
        if par is None:
            return SignReport(False, None, label)
        if par.opposite != want:
            par = parabolic_from_indices(alg, par.levi_indices, want, triple.ambient)
        amap = recover_root_map(alg, form, sub, par)
        w = check_root_map_signs(alg, amap)
        if w is not None:
            return SignReport(False, w, label)
    return SignReport(True)


# ---------------------------------------------------------------------------
# Descent


@dataclass(frozen=True)
class Antecedent:
    triple: ManinTriple
    parabolic: Parabolic
    parabolic_p: Parabolic
    h: Subspace
    h_p: Subspace
    side_conditions_ok: bool


def antecedent(alg: ChevalleyAlgebra, form: InvariantForm, triple: ManinTriple) -> Antecedent:
    """i1 = p^{n'}(h~ meet p') and i1' = p^{n}(h~' meet p) on l meet l'."""
    amb = triple.ambient
    pars = []
    for sub, opposite in ((triple.i, False), (triple.i_p, True)):
        rep = analyze_lagrangian(alg, form, sub, amb)
        if rep.parabolic is None:
            raise DescentError("subalgebra is not in standard position")
        par = rep.parabolic
        if par.opposite != opposite:
            if par.levi_indices != amb:
                raise DescentError("subalgebra is under the wrong Borel")
            par = parabolic_from_indices(alg, par.levi_indices, opposite, amb)
        pars.append(par)
    par, par_p = pars
    h = triple.i.intersect(par.m)
    h_p = triple.i_p.intersect(par_p.m)
    side_ok = par.n.intersect(h_p).dim == 0 and par_p.n.intersect(h).dim == 0
    if not side_ok:
        raise DescentError("n meets h' or n' meets h")

    def kill(v: Vector, roots: Sequence[Root]) -> Vector:
        drop = {alg.root_index[b] for b in roots}
        return tuple(ZERO if k in drop else c for k, c in enumerate(v))

    ht = triple.i.intersect(par.l)
    ht_p = triple.i_p.intersect(par_p.l)
    i1 = span(alg, (kill(v, par_p.nil_roots) for v in ht.intersect(par_p.p).rows))
    i1_p = span(alg, (kill(v, par.nil_roots) for v in ht_p.intersect(par.p).rows))
    new_amb = par.levi_indices & par_p.levi_indices
    new = ManinTriple(alg, form, i1, i1_p, new_amb)
    return Antecedent(new, par, par_p, h, h_p, side_ok)


@dataclass(frozen=True)
class DescentResult:
    levels: tuple[ManinTriple, ...]
    steps: tuple[Antecedent, ...]
    height: int
    f0_contained: bool
    reports: tuple[VerificationReport, ...]


def descent_chain(alg: ChevalleyAlgebra, form: InvariantForm, triple: ManinTriple,
                  max_steps: int | None = None) -> DescentResult:
    levels = [triple]
    steps: list[Antecedent] = []
    j0 = cartan_subalgebra(alg)
    f0 = triple.i.intersect(j0)
    reports = [verify_triple(alg, form, triple.i, triple.i_p, ambient_space(alg, triple.ambient))]
    guard = max_steps if max_steps is not None else alg.rank + 1
    cur = triple
    while roots_on(alg, cur.ambient):
        if len(steps) >= guard:
            raise DescentError("descent did not terminate")
        ante = antecedent(alg, form, cur)
        nxt = ante.triple
        if ambient_space(alg, nxt.ambient).dim >= ambient_space(alg, cur.ambient).dim:
            raise DescentError("dimension did not drop during descent")
        steps.append(ante)
        levels.append(nxt)
        reports.append(verify_triple(alg, form, nxt.i, nxt.i_p, ambient_space(alg, nxt.ambient)))
        cur = nxt
    f0_ok = all(f0.is_subspace_of(t.i) for t in levels)
    return DescentResult(tuple(levels), tuple(steps), len(steps), f0_ok, tuple(reports))


def antecedent_data(alg: ChevalleyAlgebra, data: GeneralizedBDData
                    ) -> tuple[GeneralizedBDData, frozenset[int]]:
    """The datum BD1 on l meet l' and the index set of l meet l'."""
    a, ap = dict(data.A), dict(data.A_p)
    gam = set(data.gamma(False))
    gam_p = set(data.gamma(True))
    amb = frozenset(i for g in gam & gam_p for i in support(g))
    out = []
    for amap, ia, fmap in ((a, data.i_a, data.A), (ap, data.i_a_p, data.A_p)):
        restricted = {x: y for x, y in amap.items()
                      if x in gam and x in gam_p and y in gam and y in gam_p}
        g1 = sorted(set(restricted) | set(restricted.values()))
        a1 = levi_center(alg, g1)
        t1 = f_space(alg, fmap).intersect(a1)
        out.append((tuple(sorted(restricted.items())), ia.sum(t1)))
    return GeneralizedBDData(out[0][0], out[1][0], out[0][1], out[1][1]), amb


# ---------------------------------------------------------------------------
# Structural oracles for the antecedent


def sigma_map(alg: ChevalleyAlgebra, triple: ManinTriple, primed: bool = False):
    """The involution of m swapping x and tau x."""
    side = triple.side_p if primed else triple.side
    pairs = side.tau_pairs
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    cols = xs + ys

    def apply(v: Sequence[Scalar]) -> Vector:
        c = solve(cols, v)
        if c is None:
            raise ValueError("vector outside m")
        k = len(xs)
        return add(combine(c[:k], ys, alg.dim), combine(c[k:], xs, alg.dim))

    return apply


def levi_oracle(alg: ChevalleyAlgebra, triple: ManinTriple) -> Subspace:
    """Derived algebra of (m meet m') meet sigma(m meet m')."""
    m = triple.side.parabolic.m
    mp = triple.side_p.parabolic.m
    mm = m.intersect(mp)
    sig = sigma_map(alg, triple)
    moved = span(alg, (sig(v) for v in mm.rows))
    core = mm.intersect(moved)
    return bracket_span(alg, core, core)


def nilradical_formula(alg: ChevalleyAlgebra, triple: ManinTriple) -> Subspace:
    """Root spaces predicted for the nilradical of the antecedent's i."""
    data = triple.data
    a = dict(data.A)
    idx_plus = {next(iter(support(g))) for g in a}
    r_plus = [b for b in alg.roots.roots if support(b) and support(b) <= idx_plus]
    gamma_p_minus_idx = {next(iter(support(y))) for _, y in data.A_p}
    gamma_p_plus_idx = {next(iter(support(x))) for x, _ in data.A_p}
    out = []
    for alpha in r_plus:
        img = _extend(alg, a, alpha)
        in_rp_plus = support(alpha) <= gamma_p_plus_idx
        img_in_rp_minus = support(img) <= gamma_p_minus_idx
        if alg.b0_positive(alpha):
            if in_rp_plus and not img_in_rp_minus:
                out.append(alg.x(alpha))
        else:
            if not in_rp_plus and img_in_rp_minus:
                out.append(alg.x(img))
    return span(alg, out)
