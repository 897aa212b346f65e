"""Reductive Lie algebras in a Chevalley basis and the subspace toolkit.

The basis of an algebra is ordered as::

    H_1 .. H_n | X_beta (beta positive) | X_beta (beta negative) | Z_1 .. Z_c

where the H_i are simple coroots, positive roots are sorted by height and
then lexicographically, negative roots follow in the same order, and the
Z_k span an abelian center.  Structure constants are integers.  The sign of
N(r, s) is fixed by making every extraspecial pair positive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .linalg import Subspace, Vector, combine, dot, kernel, unit_vector, zero_vector
from .scalars import ZERO, Number, Scalar

Root = tuple[int, ...]
Element = Vector
CartanMatrix = tuple[tuple[int, ...], ...]


class RootSystemError(ValueError):
    """Raised for Cartan matrices outside finite type."""


class NilradicalError(ValueError):
    """Raised when the nilpotent candidate set of a subalgebra is not a subspace."""


class WeightError(ValueError):
    """Raised when a subspace is not a sum of j0-weight spaces."""


# ---------------------------------------------------------------------------
# Cartan matrices


def cartan_matrix(letter: str, rank: int) -> CartanMatrix:
    """Cartan matrix with entry (i, j) = alpha_j(H_i), Bourbaki numbering."""
    letter = letter.upper()
    n = rank
    valid = {"A": n >= 1, "B": n >= 2, "C": n >= 3, "D": n >= 4,
             "E": n in (6, 7, 8), "F": n == 4, "G": n == 2}
    if letter == "C" and n == 2:
        valid["C"] = True
    if not valid.get(letter, False):
        raise RootSystemError(f"no simple type {letter}{rank}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if letter in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if letter == "B":
            link(n - 2, n - 1, -1, -2)
        elif letter == "C":
            link(n - 2, n - 1, -2, -1)
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif letter == "G":
        link(0, 1, -1, -3)
    return tuple(tuple(r) for r in a)


def _components(cartan: CartanMatrix) -> list[list[int]]:
    n = len(cartan)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp, todo = [], [s]
        seen[s] = True
        while todo:
            i = todo.pop()
            comp.append(i)
            for j in range(n):
                if cartan[i][j] and not seen[j]:
                    seen[j] = True
                    todo.append(j)
        comps.append(sorted(comp))
    return comps


def _symmetrizer(cartan: CartanMatrix, comp: list[int]) -> dict[int, Fraction]:
    """d_i with d_i a_ij = d_j a_ji, short simple roots normalized to d = 1."""
    d = {comp[0]: Fraction(1)}
    queue = deque([comp[0]])
    while queue:
        i = queue.popleft()
        for j in comp:
            if cartan[i][j] and j != i:
                if cartan[j][i] == 0:
                    raise RootSystemError("Cartan matrix has a_ij != 0 but a_ji == 0")
                val = d[i] * cartan[i][j] / cartan[j][i]
                if j in d:
                    if d[j] != val:
                        raise RootSystemError("Cartan matrix is not symmetrizable")
                else:
                    d[j] = val
                    queue.append(j)
    low = min(d.values())
    return {i: v / low for i, v in d.items()}


def _positive_definite(mat: list[list[Fraction]]) -> bool:
    """Exact Sylvester test via Gaussian elimination pivots."""
    m = [row[:] for row in mat]
    n = len(m)
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


# ---------------------------------------------------------------------------
# Root systems


@dataclass(frozen=True)
class RootSystem:
    cartan: CartanMatrix
    components: tuple[tuple[int, ...], ...]
    inner: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Root, ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(tuple(1 if k == i else 0 for k in range(self.rank)) for i in range(self.rank))

    def is_root(self, beta: Sequence[int]) -> bool:
        return tuple(beta) in self.root_set

    @staticmethod
    def positive(beta: Root) -> bool:
        return any(c > 0 for c in beta)

    def ideal_of_simple(self, i: int) -> int:
        for k, comp in enumerate(self.components):
            if i in comp:
                return k
        raise IndexError(i)

    def ideal_of_root(self, beta: Root) -> int:
        for i, c in enumerate(beta):
            if c:
                return self.ideal_of_simple(i)
        raise ValueError("zero is not a root")

    def ip(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """Invariant inner product, shortest simple roots of length^2 = 2."""
        out = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                row = self.inner[i]
                for j, bj in enumerate(b):
                    if bj:
                        out += ai * bj * row[j]
        return out

    def pairing(self, beta: Sequence[int], i: int) -> int:
        """beta(H_i)."""
        return sum(c * self.cartan[i][j] for j, c in enumerate(beta))

    def coroot_coefficients(self, beta: Root) -> tuple[int, ...]:
        """H_beta in the basis of simple coroots."""
        bb = self.ip(beta, beta)
        out = []
        for i, c in enumerate(beta):
            q = c * self.ip(self.simple_roots[i], self.simple_roots[i]) / bb
            if q.denominator != 1:
                raise RootSystemError("non-integral coroot")
            out.append(int(q))
        return tuple(out)

    @staticmethod
    def height(beta: Root) -> int:
        return sum(beta)


def neg(beta: Sequence[int]) -> Root:
    return tuple(-c for c in beta)


def root_add(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def root_sub(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _root_key(beta: Root) -> tuple:
    return (abs(sum(beta)), tuple(-abs(c) for c in beta))


def build_root_system(cartan: Sequence[Sequence[int]]) -> RootSystem:
    """All roots of a finite-type Cartan matrix via root strings."""
    cartan = tuple(tuple(int(x) for x in row) for row in cartan)
    n = len(cartan)
    for i in range(n):
        if len(cartan[i]) != n or cartan[i][i] != 2:
            raise RootSystemError("Cartan matrix must be square with 2 on the diagonal")
        for j in range(n):
            if i != j and (cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0)):
                raise RootSystemError("invalid off-diagonal Cartan entries")
    comps = _components(cartan)
    inner = [[Fraction(0)] * n for _ in range(n)]
    for comp in comps:
        d = _symmetrizer(cartan, comp)
        for i in comp:
            for j in comp:
                inner[i][j] = d[i] * cartan[i][j]
        sub = [[inner[i][j] for j in comp] for i in comp]
        if not _positive_definite(sub):
            raise RootSystemError(f"component {comp} is not of finite type")
    positives: list[Root] = []
    for comp in comps:
        r = len(comp)
        bound = max(r * r, 120)
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in comp]
        layer = list(simple)
        found: set[Root] = set(simple)
        while layer:
            nxt: list[Root] = []
            for beta in layer:
                for i in comp:
                    ai = tuple(1 if k == i else 0 for k in range(n))
                    p = 0
                    cur = root_sub(beta, ai)
                    while cur in found:
                        p += 1
                        cur = root_sub(cur, ai)
                    q = p - sum(beta[j] * cartan[i][j] for j in range(n))
                    cand = root_add(beta, ai)
                    if q > 0 and cand not in found:
                        found.add(cand)
                        nxt.append(cand)
            if len(found) > bound:
                raise RootSystemError("root generation exceeded the finite-type bound")
            layer = nxt
        positives.extend(found)
    positives.sort(key=_root_key)
    return RootSystem(cartan, tuple(tuple(c) for c in comps),
                      tuple(tuple(r) for r in inner), tuple(positives))


def block_diagonal(cartans: Sequence[Sequence[Sequence[int]]]) -> CartanMatrix:
    n = sum(len(c) for c in cartans)
    out = [[0] * n for _ in range(n)]
    off = 0
    for c in cartans:
        for i, row in enumerate(c):
            for j, x in enumerate(row):
                out[off + i][off + j] = int(x)
        off += len(c)
    return tuple(tuple(r) for r in out)


# ---------------------------------------------------------------------------
# Structure constants


def _structure_constants(rs: RootSystem) -> dict[tuple[Root, Root], int]:
    """N(r, s) for all pairs of roots whose sum is a root."""
    order = {b: k for k, b in enumerate(rs.positive_roots)}
    table: dict[tuple[Root, Root], int] = {}

    def p_value(r: Root, s: Root) -> int:
        p = 0
        cur = root_sub(s, r)
        while rs.is_root(cur):
            p += 1
            cur = root_sub(cur, r)
        return p

    def general(r: Root, s: Root) -> Fraction:
        rp, sp = rs.positive(r), rs.positive(s)
        if rp and sp:
            return Fraction(table[(r, s)])
        if not rp and not sp:
            return -general(neg(r), neg(s))
        if not rp and sp:
            return -general(s, r)
        u = root_add(r, s)
        if rs.positive(u):
            return -rs.ip(u, u) / rs.ip(r, r) * general(neg(s), u)
        t = neg(u)
        return rs.ip(t, t) / rs.ip(s, s) * general(t, r)

    for xi in rs.positive_roots:
        if sum(xi) < 2:
            continue
        pairs = []
        for r in rs.positive_roots:
            s = root_sub(xi, r)
            if rs.is_root(s) and rs.positive(s) and order[r] < order[s]:
                pairs.append((r, s))
        pairs.sort(key=lambda rs_: order[rs_[0]])
        r0, s0 = pairs[0]
        n0 = p_value(r0, s0) + 1
        table[(r0, s0)] = n0
        table[(s0, r0)] = -n0
        xx = rs.ip(xi, xi)
        for r, s in pairs[1:]:
            total = Fraction(0)
            a = root_sub(s, r0)
            if rs.is_root(a):
                total += general(s, neg(r0)) * general(r, neg(s0)) / rs.ip(a, a)
            b = root_sub(r, r0)
            if rs.is_root(b):
                total += general(neg(r0), r) * general(s, neg(s0)) / rs.ip(b, b)
            val = xx / n0 * total
            if val.denominator != 1 or abs(val) != p_value(r, s) + 1:
                raise RootSystemError(f"inconsistent structure constant for {r}, {s}")
            table[(r, s)] = int(val)
            table[(s, r)] = -int(val)

    full: dict[tuple[Root, Root], int] = {}
    for r in rs.roots:
        for s in rs.roots:
            u = root_add(r, s)
            if rs.is_root(u):
                v = general(r, s)
                full[(r, s)] = int(v)
    return full


# ---------------------------------------------------------------------------
# Algebras


@dataclass(frozen=True)
class ChevalleyAlgebra:
    """Semisimple Chevalley algebra plus abelian center.

    ``b0_flip[k]`` marks simple ideal ``k`` whose part of the Borel b0 is
    spanned by negative root vectors (the opposite orientation).
    """

    roots: RootSystem
    center_dim: int
    types: tuple[tuple[str, int], ...]
    table: tuple[tuple[tuple[tuple[int, int], ...], ...], ...] = field(repr=False)
    b0_flip: tuple[bool, ...] = ()

    @property
    def rank(self) -> int:
        return self.roots.rank

    @property
    def dim(self) -> int:
        return self.rank + len(self.roots.roots) + self.center_dim

    @property
    def n_ideals(self) -> int:
        return len(self.roots.components)

    @cached_property
    def root_index(self) -> dict[Root, int]:
        return {b: self.rank + k for k, b in enumerate(self.roots.roots)}

    @cached_property
    def index_root(self) -> dict[int, Root]:
        return {k: b for b, k in self.root_index.items()}

    def center_index(self, k: int) -> int:
        return self.rank + len(self.roots.roots) + k

    @cached_property
    def basis_labels(self) -> tuple[str, ...]:
        labels = [f"H{i + 1}" for i in range(self.rank)]
        for b in self.roots.roots:
            labels.append("X[" + ",".join(str(c) for c in b) + "]")
        labels += [f"Z{k + 1}" for k in range(self.center_dim)]
        return tuple(labels)

    # elements -------------------------------------------------------------

    def unit(self, k: int) -> Element:
        return unit_vector(self.dim, k)

    def zero(self) -> Element:
        return zero_vector(self.dim)

    def x(self, beta: Sequence[int]) -> Element:
        """Root vector X_beta."""
        return self.unit(self.root_index[tuple(beta)])

    def h(self, i: int) -> Element:
        return self.unit(i)

    def z(self, k: int) -> Element:
        return self.unit(self.center_index(k))

    def coroot(self, beta: Sequence[int]) -> Element:
        return coroot(self, beta)

    # orientation ------------------------------------------------------------

    def ideal_of_root(self, beta: Root) -> int:
        return self.roots.ideal_of_root(beta)

    def b0_positive(self, beta: Root) -> bool:
        pos = RootSystem.positive(beta)
        flip = self.b0_flip[self.ideal_of_root(beta)] if self.b0_flip else False
        return pos != flip

    @cached_property
    def b0_simple_roots(self) -> tuple[Root, ...]:
        out = []
        for i, s in enumerate(self.roots.simple_roots):
            flip = self.b0_flip[self.roots.ideal_of_simple(i)] if self.b0_flip else False
            out.append(neg(s) if flip else s)
        return tuple(out)

    @cached_property
    def ideal_basis(self) -> tuple[tuple[int, ...], ...]:
        """Basis indices of each simple ideal."""
        out = []
        for comp in self.roots.components:
            idx = list(comp)
            idx += [self.root_index[b] for b in self.roots.roots
                    if self.roots.ideal_of_root(b) == self.roots.components.index(comp)]
            out.append(tuple(sorted(idx)))
        return tuple(out)

    def weight(self, k: int) -> Root | None:
        """Root of basis element ``k``, or None for Cartan/center elements."""
        return self.index_root.get(k)

    def __hash__(self) -> int:
        return hash((self.roots.cartan, self.center_dim, self.b0_flip))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChevalleyAlgebra):
            return NotImplemented
        return (self.roots.cartan, self.center_dim, self.b0_flip) == (
            other.roots.cartan, other.center_dim, other.b0_flip)


def build_algebra(cartans: Sequence[Sequence[Sequence[int]]] | Sequence[tuple[str, int]],
                  center_dim: int = 0,
                  b0_flip: Sequence[bool] | None = None) -> ChevalleyAlgebra:
    """Direct sum of simple Chevalley algebras and a ``center_dim``-dim center.

    ``cartans`` is a list of Cartan matrices or of (letter, rank) pairs.
    """
    if center_dim < 0:
        raise ValueError("center_dim must be nonnegative")
    mats = []
    types = []
    for c in cartans:
        if isinstance(c, tuple) and len(c) == 2 and isinstance(c[0], str):
            mats.append(cartan_matrix(c[0], c[1]))
            types.append((c[0].upper(), int(c[1])))
        else:
            mats.append(tuple(tuple(int(x) for x in row) for row in c))
            types.append(("?", len(c)))
    cartan = block_diagonal(mats)
    rs = build_root_system(cartan)
    if len(rs.components) != len(mats):
        raise RootSystemError("each listed Cartan matrix must be indecomposable")
    n = rs.rank
    nroots = len(rs.roots)
    dim = n + nroots + center_dim
    idx = {b: n + k for k, b in enumerate(rs.roots)}
    nconst = _structure_constants(rs)
    rows: list[list[list[tuple[int, int]]]] = [[[] for _ in range(dim)] for _ in range(dim)]
    for b in rs.roots:
        kb = idx[b]
        for i in range(n):
            v = rs.pairing(b, i)
            if v:
                rows[i][kb].append((kb, v))
                rows[kb][i].append((kb, -v))
        cor = rs.coroot_coefficients(b)
        kn = idx[neg(b)]
        rows[kb][kn] = [(i, c) for i, c in enumerate(cor) if c]
    for (r, s), v in nconst.items():
        rows[idx[r]][idx[s]].append((idx[root_add(r, s)], v))
    table = tuple(tuple(tuple(sorted(cell)) for cell in row) for row in rows)
    flips = tuple(bool(f) for f in b0_flip) if b0_flip is not None else (False,) * len(mats)
    if len(flips) != len(mats):
        raise ValueError("b0_flip needs one flag per simple ideal")
    return ChevalleyAlgebra(rs, center_dim, tuple(types), table, flips)


def bracket(alg: ChevalleyAlgebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Element:
    if len(x) != alg.dim or len(y) != alg.dim:
        raise ValueError("coordinate length mismatch")
    out = [ZERO] * alg.dim
    ynz = [(j, b) for j, b in enumerate(y) if b]
    for i, a in enumerate(x):
        if not a:
            continue
        row = alg.table[i]
        for j, b in ynz:
            cell = row[j]
            if cell:
                ab = a * b
                for k, c in cell:
                    out[k] = out[k] + ab * c
    return tuple(out)


def basis_bracket(alg: ChevalleyAlgebra, i: int, j: int) -> Element:
    out = [ZERO] * alg.dim
    for k, c in alg.table[i][j]:
        out[k] = Scalar(c)
    return tuple(out)


def ad_matrix(alg: ChevalleyAlgebra, x: Sequence[Scalar]) -> list[list[Scalar]]:
    """Matrix of ad x; column j is [x, e_j]."""
    cols = [bracket(alg, x, alg.unit(j)) for j in range(alg.dim)]
    return [[cols[j][i] for j in range(alg.dim)] for i in range(alg.dim)]


def _matmul(a: list[list[Scalar]], b: list[list[Scalar]]) -> list[list[Scalar]]:
    n = len(a)
    m = len(b[0]) if b else 0
    bt = [[b[k][j] for k in range(len(b))] for j in range(m)]
    out = []
    for i in range(n):
        ai = [(k, v) for k, v in enumerate(a[i]) if v]
        row = []
        for j in range(m):
            col = bt[j]
            s = ZERO
            for k, v in ai:
                w = col[k]
                if w:
                    s = s + v * w
            row.append(s)
        out.append(row)
    return out


def is_ad_nilpotent(alg: ChevalleyAlgebra, x: Sequence[Scalar]) -> bool:
    m = ad_matrix(alg, x)
    power = m
    steps = 1
    while steps < alg.dim:
        power = _matmul(power, power)
        steps *= 2
        if not any(any(r) for r in power):
            return True
    return not any(any(r) for r in power)


def killing_form(alg: ChevalleyAlgebra) -> list[list[Scalar]]:
    """Gram matrix of the Killing form in the algebra basis."""
    n = alg.dim
    # sparse ad matrices of basis elements: ad[a][j] = [(k, c)] meaning [e_a, e_j] = sum c e_k
    ad = alg.table
    gram = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            tr = 0
            for j in range(n):
                for k, c in ad[b][j]:
                    for l, d in ad[a][k]:
                        if l == j:
                            tr += c * d
            gram[a][b] = gram[b][a] = Scalar(tr)
    return gram


def coroot(alg: ChevalleyAlgebra, beta: Sequence[int]) -> Element:
    """H_beta with beta(H_beta) = 2, Killing-orthogonal to ker beta."""
    coeffs = alg.roots.coroot_coefficients(tuple(beta))
    out = [ZERO] * alg.dim
    for i, c in enumerate(coeffs):
        out[i] = Scalar(c)
    return tuple(out)


def root_value(alg: ChevalleyAlgebra, beta: Sequence[int], h: Sequence[Scalar]) -> Scalar:
    """beta(h) for h in j0 (center components are ignored)."""
    out = ZERO
    for i in range(alg.rank):
        if h[i]:
            out = out + h[i] * alg.roots.pairing(beta, i)
    return out


# ---------------------------------------------------------------------------
# Subspace helpers


def span(alg: ChevalleyAlgebra, vectors: Iterable[Sequence[Number]]) -> Subspace:
    return Subspace.span(vectors, alg.dim)


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def contains(a: Subspace, x: Sequence[Number]) -> bool:
    return a.contains(x)


def cartan_subalgebra(alg: ChevalleyAlgebra) -> Subspace:
    """j0: simple coroots together with the center."""
    idx = list(range(alg.rank)) + [alg.center_index(k) for k in range(alg.center_dim)]
    return span(alg, (alg.unit(k) for k in idx))


def center(alg: ChevalleyAlgebra) -> Subspace:
    return span(alg, (alg.z(k) for k in range(alg.center_dim)))


def derived_algebra_of_g(alg: ChevalleyAlgebra) -> Subspace:
    return span(alg, (alg.unit(k) for k in range(alg.rank + len(alg.roots.roots))))


def root_spaces(alg: ChevalleyAlgebra, betas: Iterable[Root]) -> Subspace:
    return span(alg, (alg.x(b) for b in betas))


def weight_subspace(alg: ChevalleyAlgebra, betas: Iterable[Root], with_cartan: bool = True) -> Subspace:
    """j0 (optionally) plus the root spaces of ``betas``."""
    vecs = [alg.x(b) for b in betas]
    if with_cartan:
        vecs += list(cartan_subalgebra(alg).rows)
    return span(alg, vecs)


def borel(alg: ChevalleyAlgebra, opposite: bool = False) -> Subspace:
    """b0 (or b0' when ``opposite``)."""
    betas = [b for b in alg.roots.roots if alg.b0_positive(b) != opposite]
    return weight_subspace(alg, betas)


def bracket_span(alg: ChevalleyAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return span(alg, (bracket(alg, u, v) for u in a.rows for v in b.rows))


def is_subalgebra(alg: ChevalleyAlgebra, v: Subspace) -> bool:
    return subalgebra_witness(alg, v) is None


def subalgebra_witness(alg: ChevalleyAlgebra, v: Subspace) -> tuple[int, int] | None:
    """First basis pair whose bracket leaves ``v``."""
    rows = v.rows
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if not v.contains(bracket(alg, rows[a], rows[b])):
                return (a, b)
    return None


def _ad_in_basis(alg: ChevalleyAlgebra, v: Subspace, x: Sequence[Scalar]) -> list[list[Scalar]]:
    """Matrix of ad x restricted to ``v`` in the echelon basis of ``v``."""
    cols = []
    for r in v.rows:
        c = v.coordinates(bracket(alg, x, r))
        if c is None:
            raise ValueError("subspace is not stable under the given element")
        cols.append(c)
    d = v.dim
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def radical(alg: ChevalleyAlgebra, v: Subspace) -> Subspace:
    """Solvable radical of the subalgebra ``v``: [v, v]-orthogonal under K_v."""
    d = v.dim
    if d == 0:
        return v
    ads = [_ad_in_basis(alg, v, r) for r in v.rows]
    der = bracket_span(alg, v, v)
    if der.dim == 0:
        return v

    def trace_prod(a: list[list[Scalar]], b: list[list[Scalar]]) -> Scalar:
        s = ZERO
        for i in range(d):
            for k in range(d):
                if a[i][k] and b[k][i]:
                    s = s + a[i][k] * b[k][i]
        return s

    der_ads = []
    for w in der.rows:
        coords = v.coordinates(w)
        m = [[ZERO] * d for _ in range(d)]
        for c, ad in zip(coords, ads):
            if c:
                for i in range(d):
                    for k in range(d):
                        if ad[i][k]:
                            m[i][k] = m[i][k] + c * ad[i][k]
        der_ads.append(m)
    equations = [[trace_prod(ads[k], dm) for k in range(d)] for dm in der_ads]
    sols = kernel(equations, d)
    return span(alg, (combine(s, v.rows, alg.dim) for s in sols))


def _is_nil_subalgebra(alg: ChevalleyAlgebra, v: Subspace) -> bool:
    return is_subalgebra(alg, v) and all(is_ad_nilpotent(alg, r) for r in v.rows)


def nilradical_of(alg: ChevalleyAlgebra, v: Subspace) -> Subspace:
    """The ad-nilpotent part of the radical of ``v`` inside the derived algebra of g.

    The candidate [v, r] is always contained in that set; anything else must
    lie in the kernel of the trace form of ad on r and is accepted only if it
    forms a nilpotent subalgebra together with [v, r].
    """
    r = radical(alg, v)
    base = bracket_span(alg, v, r)
    if not _is_nil_subalgebra(alg, base):
        raise NilradicalError("[v, rad v] is not an ad-nilpotent subalgebra")
    cand = r.intersect(derived_algebra_of_g(alg))
    if cand.dim == base.dim:
        return base
    ads_r = [ad_matrix(alg, y) for y in r.rows]
    ads_c = [ad_matrix(alg, x) for x in cand.rows]

    def trace_prod(a: list[list[Scalar]], b: list[list[Scalar]]) -> Scalar:
        n = len(a)
        s = ZERO
        for i in range(n):
            ai = a[i]
            for k in range(n):
                if ai[k] and b[k][i]:
                    s = s + ai[k] * b[k][i]
        return s

    eqs = [[trace_prod(ac, ar) for ac in ads_c] for ar in ads_r]
    sols = kernel(eqs, cand.dim)
    ker = span(alg, (combine(s, cand.rows, alg.dim) for s in sols)).sum(base)
    if ker.dim == base.dim:
        return base
    # If base is a sum of root spaces and ker lies in j0 + base, any element
    # outside base has a nonzero Cartan part in g^der, whose roots are its
    # ad-eigenvalues, so it is not nilpotent.
    try:
        weight_decomposition(alg, base)
        graded = True
    except WeightError:
        graded = False
    if graded and ker.is_subspace_of(base.sum(cartan_subalgebra(alg))):
        return base
    if _is_nil_subalgebra(alg, ker):
        return ker
    raise NilradicalError("ad-nilpotent elements of the radical do not form a subspace")


def normalizer(alg: ChevalleyAlgebra, v: Subspace, within: Subspace | None = None) -> Subspace:
    """``{x : [x, v] in v}``, optionally intersected with ``within``."""
    ann = v.annihilator()
    n = alg.dim
    if within is None:
        cols = [alg.unit(j) for j in range(n)]
    else:
        cols = list(within.rows)
    eqs = []
    for r in v.rows:
        images = [bracket(alg, c, r) for c in cols]
        for w in ann.rows:
            eqs.append([dot(w, im) for im in images])
    sols = kernel(eqs, len(cols))
    return span(alg, (combine(s, cols, n) for s in sols))


def weight_decomposition(alg: ChevalleyAlgebra, v: Subspace) -> tuple[Subspace, frozenset[Root]]:
    """(v meet j0, roots whose root space lies in v); raises if v is not a weight sum."""
    j0 = cartan_subalgebra(alg)
    vh = v.intersect(j0)
    betas = frozenset(b for b in alg.roots.roots if v.contains(alg.x(b)))
    if vh.dim + len(betas) != v.dim:
        raise WeightError("subspace is not a sum of j0-weight spaces")
    return vh, betas


def weight_projection(alg: ChevalleyAlgebra, v: Subspace,
                      within: Subspace | None = None
                      ) -> tuple[Subspace, Callable[[Sequence[Scalar]], Element]]:
    """The j0-invariant complement of ``v`` and the projection with kernel ``v``.

    ``v`` must be a sum of full weight spaces (inside ``within`` when given).
    """
    j0 = cartan_subalgebra(alg)
    vh, betas = weight_decomposition(alg, v)
    if within is None:
        amb_roots = frozenset(alg.roots.roots)
    else:
        _, amb_roots = weight_decomposition(alg, within)
    if vh.dim not in (0, j0.dim):
        raise WeightError("subspace meets the zero weight space partially")
    keep = [alg.root_index[b] for b in amb_roots if b not in betas]
    if vh.dim == 0:
        keep += [k for k in range(alg.dim) if alg.weight(k) is None]
    keep_set = frozenset(keep)
    comp = span(alg, (alg.unit(k) for k in sorted(keep_set)))

    def project(x: Sequence[Scalar]) -> Element:
        return tuple(c if k in keep_set else ZERO for k, c in enumerate(x))

    return comp, project
