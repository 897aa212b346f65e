"""Real Manin triples on g1 through their complexifications on g1 x g1.

The real form of g1 is the split form spanned by the Chevalley basis, so
complex conjugation acts coefficientwise.  ``eta(X) = (X, conj X)`` embeds
g1 in g = g1 x g1 as the fixed set of ``j(X, Y) = (conj Y, conj X)``.
Roots of g are written in coordinates (first factor, second factor) and the
flip exchanges the two halves.  On g the Borel b0 is b1 x b1.

With lambda and -conj(lambda) on the two copies, B_C(eta X, eta X') equals
2i B(X, X'); the constant does not affect isotropy or the split of g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bddata import (ConditionResult, GeneralizedBDData, RootMap, chain_map, sigma_sets)
from .forms import COMPLEX, REAL, InvariantForm, make_form
from .liealg import ChevalleyAlgebra, Root, build_algebra, neg
from .linalg import Subspace, Vector, kernel
from .scalars import ONE, Scalar, gaussian_with_norm
from .triples import ManinTriple, VerificationReport, WeylTwist, verify_triple


class RealityError(ValueError):
    pass


def _ideal_cartans(alg: ChevalleyAlgebra) -> list[tuple[tuple[int, ...], ...]]:
    cart = alg.roots.cartan
    return [tuple(tuple(cart[a][b] for b in comp) for a in comp) for comp in alg.roots.components]


def double_algebra(g1: ChevalleyAlgebra) -> ChevalleyAlgebra:
    """g1 x g1: ideals of the first copy first, then the center of each copy."""
    mats = _ideal_cartans(g1)
    return build_algebra(mats + mats, 2 * g1.center_dim)


def complexify_form(form: InvariantForm, g: ChevalleyAlgebra | None = None) -> InvariantForm:
    """B_C on g1 x g1: lambda K on the first copy and -conj(lambda) K on the second.

    The center Gram matrix G becomes G on the first copy and -conj(G) on the second.
    """
    if form.kind != REAL:
        raise ValueError("complexify_form expects a real-kind form")
    g = g if g is not None else double_algebra(form.alg)
    lams = tuple(form.lambdas) + tuple(-lam.conjugate() for lam in form.lambdas)
    c = form.alg.center_dim
    zero = Scalar(0)
    gram = [[zero] * (2 * c) for _ in range(2 * c)]
    for p in range(c):
        for q in range(c):
            gram[p][q] = form.center_gram[p][q]
            gram[c + p][c + q] = -form.center_gram[p][q].conjugate()
    return make_form(g, COMPLEX, lams, gram)


@dataclass(frozen=True)
class RealificationContext:
    g1: ChevalleyAlgebra
    g: ChevalleyAlgebra
    form_real: InvariantForm
    form: InvariantForm
    # basis index of g1 -> (index in the first copy, index in the second copy)
    placement: tuple[tuple[int, int], ...]

    @property
    def half_rank(self) -> int:
        return self.g1.rank

    def conj(self, x: Sequence[Scalar]) -> Vector:
        return tuple(c.conjugate() for c in x)

    def eta(self, x: Sequence[Scalar]) -> Vector:
        out = [Scalar(0)] * self.g.dim
        for k, c in enumerate(x):
            p, q = self.placement[k]
            out[p] = c
            out[q] = c.conjugate()
        return tuple(out)

    def factors(self, v: Sequence[Scalar]) -> tuple[Vector, Vector]:
        return (tuple(v[p] for p, _ in self.placement), tuple(v[q] for _, q in self.placement))

    def j(self, v: Sequence[Scalar]) -> Vector:
        x, y = self.factors(v)
        out = [Scalar(0)] * self.g.dim
        for k, (p, q) in enumerate(self.placement):
            out[p] = y[k].conjugate()
            out[q] = x[k].conjugate()
        return tuple(out)

    def j_space(self, v: Subspace) -> Subspace:
        return Subspace.span((self.j(r) for r in v.rows), self.g.dim)

    def is_j_stable(self, v: Subspace) -> bool:
        return self.j_space(v) == v


def make_context(g1: ChevalleyAlgebra, lambdas: Sequence[Scalar | int | Fraction],
                 center_gram: Sequence[Sequence[Scalar | int | Fraction]] | None = None
                 ) -> RealificationContext:
    """Split-form setting for B = sum Im(lambda_s K_s) + Im(G) with real nonzero lambdas."""
    lams = [Scalar.of(x) for x in lambdas]
    if any(lam.im or not lam for lam in lams):
        raise RealityError("the split-form setting needs real nonzero lambdas")
    form_real = make_form(g1, REAL, lams, center_gram)
    g = double_algebra(g1)
    r = g1.rank
    placement = [(k, k + r) for k in range(r)]
    for beta in g1.roots.roots:
        k1 = g.root_index[tuple(beta) + (0,) * r]
        k2 = g.root_index[(0,) * r + tuple(beta)]
        placement.append((k1, k2))
    c = g1.center_dim
    placement += [(g.center_index(k), g.center_index(c + k)) for k in range(c)]
    return RealificationContext(g1, g, form_real, complexify_form(form_real, g), tuple(placement))


# ---------------------------------------------------------------------------
# Flip and the character u


def flip_root(beta: Sequence[int]) -> Root:
    n = len(beta) // 2
    return tuple(beta[n:]) + tuple(beta[:n])


def flip_twist(t: WeylTwist) -> WeylTwist:
    n = len(t.values) // 2
    return WeylTwist(t.values[n:] + t.values[:n])


def flip(x: Sequence[int] | WeylTwist) -> Root | WeylTwist:
    """Exchange the two factors of a root or of a torus element."""
    if isinstance(x, WeylTwist):
        return flip_twist(x)
    return flip_root(x)


def compute_u(t: WeylTwist) -> WeylTwist:
    """u = conj(t) (t^f)^-1, stored by its values on the simple roots."""
    tf = flip_twist(t)
    return WeylTwist(tuple(a.conjugate() / b for a, b in zip(t.values, tf.values)))


# ---------------------------------------------------------------------------
# Reality conditions


@dataclass(frozen=True)
class RealityReport:
    conditions: tuple[ConditionResult, ...]
    u: WeylTwist

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions)

    def __getitem__(self, number: int) -> ConditionResult:
        return self.conditions[number - 1]


REALITY_NAMES = {
    1: "flip compatibility of A",
    2: "flip compatibility of A'",
    3: "j-stable centers",
    4: "u constant along A",
    5: "u constant along A'",
}


def _minus_flip(beta: Root) -> Root:
    return neg(flip_root(beta))


def _flip_compatible(amap: RootMap) -> tuple[bool, object]:
    fwd = dict(amap)
    inv = {v: k for k, v in fwd.items()}
    if {_minus_flip(a) for a in fwd} != set(inv):
        return False, {"not_a_bijection_onto_gamma_minus": tuple(sorted(fwd))}
    for a, b in fwd.items():
        # (A a)^f = A^-1(a^f), i.e. -(A a)^f = A^-1(-a^f)
        if _minus_flip(b) != inv[_minus_flip(a)]:
            return False, a
    return True, None


def _u_constant(u: WeylTwist, amap: RootMap) -> tuple[bool, object]:
    for a, b in amap:
        if u.char(a) != u.char(b):
            return False, a
    return True, None


def reality_conditions(ctx: RealificationContext, data: GeneralizedBDData,
                       t: WeylTwist | None = None) -> RealityReport:
    t = t or WeylTwist.identity(ctx.g)
    u = compute_u(t)
    res = []
    for n, amap in ((1, data.A), (2, data.A_p)):
        ok, w = _flip_compatible(amap)
        res.append(ConditionResult(n, REALITY_NAMES[n], ok, w))
    bad = [label for label, v in (("i_a", data.i_a), ("i_a_p", data.i_a_p))
           if not ctx.is_j_stable(v)]
    res.append(ConditionResult(3, REALITY_NAMES[3], not bad, bad[0] if bad else None))
    for n, amap in ((4, data.A), (5, data.A_p)):
        ok, w = _u_constant(u, amap)
        res.append(ConditionResult(n, REALITY_NAMES[n], ok, w))
    return RealityReport(tuple(res), u)


@dataclass(frozen=True)
class JStability:
    i: bool
    i_p: bool

    @property
    def ok(self) -> bool:
        return self.i and self.i_p


def direct_j_stability(ctx: RealificationContext, triple: ManinTriple) -> JStability:
    return JStability(ctx.is_j_stable(triple.i), ctx.is_j_stable(triple.i_p))


# ---------------------------------------------------------------------------
# Realification


def real_points(ctx: RealificationContext, w: Subspace) -> Subspace:
    """{X in g1 : eta(X) in w}, as a real subspace with coordinates (re, im)."""
    n = ctx.g1.dim
    rows = []
    for c in w.annihilator().rows:
        re_row, im_row = [], []
        for part in (0, 1):
            for p, q in ctx.placement:
                if part == 0:
                    coef = c[p] + c[q]
                else:
                    coef = (c[p] - c[q]) * Scalar(0, 1)
                re_row.append(Scalar(coef.re))
                im_row.append(Scalar(coef.im))
        rows.append(re_row)
        rows.append(im_row)
    sols = kernel(rows, 2 * n) if rows else [
        tuple(Scalar(1 if a == b else 0) for b in range(2 * n)) for a in range(2 * n)]
    return Subspace.span(sols, 2 * n, REAL)


@dataclass(frozen=True)
class RealTriple:
    i: Subspace
    i_p: Subspace
    report: VerificationReport


def realify(ctx: RealificationContext, triple: ManinTriple) -> RealTriple:
    stab = direct_j_stability(ctx, triple)
    if not stab.ok:
        raise RealityError(f"not j-stable: {stab}")
    i = real_points(ctx, triple.i)
    ip = real_points(ctx, triple.i_p)
    return RealTriple(i, ip, verify_triple(ctx.g1, ctx.form_real, i, ip))


# ---------------------------------------------------------------------------
# Chains and their involution


@dataclass(frozen=True)
class ChainInvolution:
    chains: tuple[tuple[Root, ...], ...]
    check: tuple[tuple[int, int], ...]  # chain index -> chain index
    gamma0: frozenset[Root]
    forced: frozenset[Root]  # Gamma_+ union Gamma'_+

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.check)

    @property
    def involutive(self) -> bool:
        m = self.mapping
        return all(m[m[k]] == k for k in m)

    def chain_of(self, beta: Root) -> int:
        return next(k for k, c in enumerate(self.chains) if beta in c)


def chain_involution(ctx: RealificationContext, data: GeneralizedBDData) -> ChainInvolution:
    """Chains partition Sigma_+; the check map sends a chain C to the chain of
    {A^-1(-beta^f) : beta in C, Gamma_+} and {A'^-1(-beta^f) : beta in C, Gamma'_+}.

    The same formula is used for chains outside Gamma_0; a chain meeting
    neither Gamma_+ nor Gamma'_+ is its own image.
    """
    for amap in (data.A, data.A_p):
        ok, w = _flip_compatible(amap)
        if not ok:
            raise RealityError(f"flip compatibility fails at {w}")
    ch = chain_map(data)
    if ch.cycles:
        raise RealityError(f"C has a cycle {ch.cycles[0]}")
    gamma0 = frozenset(ch.dom) | frozenset(ch.image)
    sigma_plus = sigma_sets(ctx.g, ctx.form).sigma_plus
    chains = [tuple(o) for o in ch.orbits]
    chains += [(s,) for s in sigma_plus if s not in gamma0]
    chains.sort()
    a_inv = {v: k for k, v in data.A}
    ap_inv = {v: k for k, v in data.A_p}
    dom_a = {k for k, _ in data.A}
    dom_ap = {k for k, _ in data.A_p}
    index = {b: k for k, c in enumerate(chains) for b in c}
    out = []
    for k, c in enumerate(chains):
        image = {a_inv[_minus_flip(b)] for b in c if b in dom_a}
        image |= {ap_inv[_minus_flip(b)] for b in c if b in dom_ap}
        if not image:
            out.append((k, k))
            continue
        target = {index[b] for b in image}
        if len(target) != 1 or set(chains[next(iter(target))]) != image:
            raise RealityError(f"the image of chain {c} is not a chain")
        out.append((k, next(iter(target))))
    return ChainInvolution(tuple(chains), tuple(out), gamma0, frozenset(dom_a | dom_ap))


def chain_u_report(ctx: RealificationContext, data: GeneralizedBDData,
                   t: WeylTwist) -> tuple[bool, bool]:
    """(u constant on chains, u on the paired chain is conj(u))."""
    u = compute_u(t)
    inv = chain_involution(ctx, data)
    const = all(len({u.char(b) for b in c}) == 1 for c in inv.chains)
    paired = True
    for k, m in inv.check:
        if k == m and not inv.forced & set(inv.chains[k]):
            continue
        if u.char(inv.chains[m][0]) != u.char(inv.chains[k][0]).conjugate():
            paired = False
    return const, paired


# ---------------------------------------------------------------------------
# Normalization u^2 = 1


@dataclass(frozen=True)
class Normalization:
    t_star: WeylTwist | None
    t_prime: WeylTwist | None
    u_star: WeylTwist
    exact: bool
    obstruction: tuple[tuple[Root, str, Scalar], ...]
    representatives: tuple[Root, ...]


def _simple_index(beta: Root) -> int:
    (k,) = [i for i, c in enumerate(beta) if c]
    return k


def normalize_twist(ctx: RealificationContext, data: GeneralizedBDData,
                    t: WeylTwist | None = None) -> Normalization:
    """t* = t' t with (u*)^2 = 1 and the same triple as t.

    On a chain D of Sigma_+ t' takes a constant value y_D.  Its value on a
    flipped root beta^f is forced to 1 / y_E by t'^alpha = t'^{A alpha} when
    beta lies in Gamma_+ or Gamma'_+ (E is the paired chain) and is free
    otherwise.  For a pair D != D-check, y_D = 1 and y_{D-check} = 1/u_D give
    u* = 1.  A self-paired chain needs |y_D|^2 = 1/|u_D|, giving
    u* = sign(u_D); when no Gaussian rational has that norm, ``t_star`` is
    None and the obstruction lists the norms needed.  ``u_star`` is exact in
    every case.
    """
    t = t or WeylTwist.identity(ctx.g)
    rep = reality_conditions(ctx, data, t)
    if not rep.ok:
        bad = next(c for c in rep.conditions if not c.ok)
        raise RealityError(f"condition {bad.number} ({bad.name}) fails: {bad.witness!r}")
    u = rep.u
    inv = chain_involution(ctx, data)
    pair = inv.mapping
    y: dict[int, Scalar] = {}
    ustar_chain: dict[int, Scalar] = {}
    obstruction = []
    reps = []
    for k, c in enumerate(inv.chains):
        if k in y or any(k == o for o, _ in obstruction):
            continue
        alpha = c[0]
        reps.append(alpha)
        ua = u.char(alpha)
        m = pair[k]
        if m != k:
            y[k], y[m] = ONE, ua.inverse()
            ustar_chain[k] = ustar_chain[m] = ONE
            continue
        if not inv.forced & set(c):
            y[k] = ONE
            ustar_chain[k] = ONE
            continue
        if ua.im:
            raise RealityError(f"u is not real on the self-paired chain of {alpha}")
        ustar_chain[k] = Scalar(1 if ua.re > 0 else -1)
        root = gaussian_with_norm(1 / abs(ua.re))
        if root is None:
            obstruction.append((alpha, "norm", Scalar(1 / abs(ua.re))))
            continue
        y[k] = root
    n = ctx.g.rank
    half = n // 2
    ustar = [ONE] * n
    for k, c in enumerate(inv.chains):
        for b in c:
            ustar[_simple_index(b)] = ustar_chain[k]
            ustar[(_simple_index(b) + half) % n] = ustar_chain[k].conjugate().inverse()
    u_star = WeylTwist(tuple(ustar))
    if obstruction:
        return Normalization(None, None, u_star, False, tuple(obstruction), tuple(reps))
    tp = [ONE] * n
    for k, c in enumerate(inv.chains):
        for b in c:
            i = _simple_index(b)
            tp[i] = y[k]
            if b in inv.forced:
                tp[(i + half) % n] = y[pair[k]].inverse()
            else:
                tp[(i + half) % n] = u.char(b) * y[k].conjugate()
    t_prime = WeylTwist(tuple(tp))
    t_star = t_prime * t
    if compute_u(t_star) != u_star:
        raise RealityError("normalized u does not match the predicted signs")
    if not fixes_data(t_prime, data):
        raise RealityError("normalizing factor changes the triple")
    return Normalization(t_star, t_prime, u_star, True, (), tuple(reps))


def fixes_data(t_prime: WeylTwist, data: GeneralizedBDData) -> bool:
    """t'^alpha = t'^{A alpha} on Gamma_+ and likewise for A'."""
    return all(t_prime.char(a) == t_prime.char(b) for amap in (data.A, data.A_p) for a, b in amap)


def trivial_off_gamma0(ctx: RealificationContext, data: GeneralizedBDData,
                       u_star: WeylTwist) -> tuple[Root, ...]:
    """Roots of Sigma_+ outside Gamma_0 where u* is not 1."""
    inv = chain_involution(ctx, data)
    return tuple(b for c in inv.chains for b in c
                 if b not in inv.gamma0 and u_star.char(b) != ONE)
