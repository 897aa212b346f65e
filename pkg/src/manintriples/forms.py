"""Invariant forms K_lambda and B_lambda = Im(lambda K), and the C+/C- split."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .liealg import ChevalleyAlgebra, cartan_subalgebra, killing_form, span
from .linalg import Subspace, Vector, rank
from .scalars import ZERO, Number, Scalar

COMPLEX = "complex"
REAL = "real"


class DegenerateFormError(ValueError):
    pass


@lru_cache(maxsize=64)
def _killing(alg: ChevalleyAlgebra) -> tuple[tuple[Scalar, ...], ...]:
    return tuple(tuple(r) for r in killing_form(alg))


@dataclass(frozen=True)
class InvariantForm:
    """Per-ideal scalars on the semisimple part plus a Gram matrix on the center.

    For ``kind == "complex"`` the form is sum_i lambda_i K_i + center_gram.
    For ``kind == "real"`` it is the imaginary part of that expression,
    evaluated on the realification (coordinates: real parts, then imaginary).
    """

    alg: ChevalleyAlgebra
    kind: str
    lambdas: tuple[Scalar, ...]
    center_gram: tuple[tuple[Scalar, ...], ...]

    @property
    def gram(self) -> tuple[tuple[Scalar, ...], ...]:
        return _gram(self)

    def __call__(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
        return evaluate(self, x, y)


@lru_cache(maxsize=256)
def _gram(form: InvariantForm) -> tuple[tuple[Scalar, ...], ...]:
    alg = form.alg
    kil = _killing(alg)
    n = alg.dim
    out = [[ZERO] * n for _ in range(n)]
    for lam, idx in zip(form.lambdas, alg.ideal_basis):
        for a in idx:
            for b in idx:
                if kil[a][b]:
                    out[a][b] = lam * kil[a][b]
    for p in range(alg.center_dim):
        for q in range(alg.center_dim):
            out[alg.center_index(p)][alg.center_index(q)] = form.center_gram[p][q]
    return tuple(tuple(r) for r in out)


def make_form(alg: ChevalleyAlgebra, kind: str = COMPLEX,
              lambdas: Sequence[Number] = (),
              center_gram: Sequence[Sequence[Number]] | None = None) -> InvariantForm:
    if kind not in (COMPLEX, REAL):
        raise ValueError(f"unknown form kind {kind!r}")
    lams = tuple(Scalar.of(x) for x in lambdas)
    if len(lams) != alg.n_ideals:
        raise ValueError(f"need {alg.n_ideals} lambda values, got {len(lams)}")
    c = alg.center_dim
    if center_gram is None:
        cg = tuple(tuple(Scalar(1 if p == q else 0) for q in range(c)) for p in range(c))
    else:
        cg = tuple(tuple(Scalar.of(v) for v in row) for row in center_gram)
        if len(cg) != c or any(len(r) != c for r in cg):
            raise ValueError("center_gram has the wrong shape")
        if any(cg[p][q] != cg[q][p] for p in range(c) for q in range(c)):
            raise ValueError("center_gram must be symmetric")
    return InvariantForm(alg, kind, lams, cg)


def complex_of_real(v: Sequence[Scalar]) -> Vector:
    """Realified coordinates (re..., im...) to a complex vector."""
    n = len(v) // 2
    return tuple(Scalar(v[k].re, v[n + k].re) for k in range(n))


def real_of_complex(v: Sequence[Scalar]) -> Vector:
    return tuple(Scalar(x.re) for x in v) + tuple(Scalar(x.im) for x in v)


def bilinear(gram: Sequence[Sequence[Scalar]], x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    out = ZERO
    for i, a in enumerate(x):
        if not a:
            continue
        row = gram[i]
        for j, b in enumerate(y):
            if b and row[j]:
                out = out + a * row[j] * b
    return out


def evaluate(form: InvariantForm, x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    if form.kind == COMPLEX:
        return bilinear(form.gram, x, y)
    val = bilinear(form.gram, complex_of_real(x), complex_of_real(y))
    return Scalar(val.im)


def is_nondegenerate(form: InvariantForm) -> bool:
    if any(not lam for lam in form.lambdas):
        return False
    c = form.alg.center_dim
    return rank(form.center_gram, c) == c


def in_c_plus(lam: Scalar) -> bool:
    return lam.re < 0 or (lam.re == 0 and lam.im > 0)


@dataclass(frozen=True)
class PlusMinusSplit:
    plus_ideals: tuple[int, ...]
    minus_ideals: tuple[int, ...]
    g_plus: Subspace
    g_minus: Subspace
    j_plus: Subspace
    j_minus: Subspace


def split_plus_minus(alg: ChevalleyAlgebra, form: InvariantForm) -> PlusMinusSplit:
    if form.kind != COMPLEX:
        raise ValueError("the plus/minus split is defined for complex forms")
    if not is_nondegenerate(form):
        raise DegenerateFormError("form is degenerate")
    plus = tuple(k for k, lam in enumerate(form.lambdas) if in_c_plus(lam))
    minus = tuple(k for k, lam in enumerate(form.lambdas) if not in_c_plus(lam))
    j0 = cartan_subalgebra(alg)

    def part(ideals: tuple[int, ...]) -> Subspace:
        return span(alg, (alg.unit(b) for k in ideals for b in alg.ideal_basis[k]))

    gp, gm = part(plus), part(minus)
    return PlusMinusSplit(plus, minus, gp, gm, gp.intersect(j0), gm.intersect(j0))


def isotropy_witness(form: InvariantForm, v: Subspace) -> tuple[int, int] | None:
    rows = v.rows
    for a in range(len(rows)):
        for b in range(a, len(rows)):
            if evaluate(form, rows[a], rows[b]):
                return (a, b)
    return None


def is_isotropic(form: InvariantForm, v: Subspace) -> bool:
    return isotropy_witness(form, v) is None


def is_lagrangian(form: InvariantForm, v: Subspace) -> bool:
    n = form.alg.dim
    if form.kind == COMPLEX:
        ok_dim = 2 * v.dim == n
    else:
        ok_dim = v.dim == n
    return ok_dim and is_isotropic(form, v)


def _cross(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _dot2(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def vanishing_positive_combination(values: Sequence[Scalar]) -> bool:
    """Is there q >= 0, q != 0, rational, with sum q_i values_i = 0?

    In the plane this happens exactly when the vectors (re, im) do not fit
    in an open half-plane through the origin.
    """
    vs = [(v.re, v.im) for v in values]
    if not vs:
        return False
    if any(v == (0, 0) for v in vs):
        return True
    ref = vs[0]
    ccw, cw = None, None
    for v in vs[1:]:
        c = _cross(ref, v)
        if c == 0:
            if _dot2(ref, v) < 0:
                return True
            continue
        if c > 0:
            if ccw is None or _cross(ccw, v) > 0:
                ccw = v
        else:
            if cw is None or _cross(cw, v) < 0:
                cw = v
    if ccw is None or cw is None:
        return False
    # angle from cw to ccw (through ref) must stay below pi
    return _cross(cw, ccw) <= 0


def satisfies_special_criterion(form: InvariantForm) -> str:
    """"yes" when no nonzero nonnegative rational combination of the lambdas vanishes."""
    if form.kind != COMPLEX:
        raise ValueError("criterion applies to complex forms")
    if not is_nondegenerate(form):
        return "unknown"
    return "unknown" if vanishing_positive_combination(form.lambdas) else "yes"


def killing_gram(alg: ChevalleyAlgebra) -> tuple[tuple[Scalar, ...], ...]:
    return _killing(alg)
