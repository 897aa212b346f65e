"""Exact linear algebra over Gaussian rationals.

Vectors are tuples of :class:`Scalar`.  Subspaces are stored by their
reduced row echelon basis, which makes equality a plain tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Number, Scalar

Vector = tuple[Scalar, ...]


def vec(values: Iterable[Number]) -> Vector:
    return tuple(Scalar.of(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, k: int) -> Vector:
    out = [ZERO] * n
    out[k] = ONE
    return tuple(out)


def add(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Number, v: Sequence[Scalar]) -> Vector:
    c = Scalar.of(c)
    if not c:
        return zero_vector(len(v))
    return tuple(c * a if a else ZERO for a in v)


def combine(coeffs: Sequence[Number], vectors: Sequence[Sequence[Scalar]], n: int) -> Vector:
    """Sum of ``coeffs[k] * vectors[k]``."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        c = Scalar.of(c)
        if not c:
            continue
        for idx, a in enumerate(v):
            if a:
                out[idx] = out[idx] + c * a
    return tuple(out)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """Bilinear (not Hermitian) pairing."""
    out = ZERO
    for a, b in zip(u, v):
        if a and b:
            out = out + a * b
    return out


def is_zero(v: Sequence[Scalar]) -> bool:
    return not any(v)


def rref(rows: Iterable[Sequence[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; zero rows are dropped."""
    mat = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        piv = next((k for k in range(r, len(mat)) if mat[k][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        lead = mat[r][c]
        if lead != ONE:
            inv = lead.inverse()
            mat[r] = [x * inv if x else ZERO for x in mat[r]]
        prow = mat[r]
        for k in range(len(mat)):
            if k != r:
                f = mat[k][c]
                if f:
                    row = mat[k]
                    mat[k] = [x - f * y if y else x for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def kernel(matrix: Sequence[Sequence[Scalar]], ncols: int) -> list[Vector]:
    """Basis of ``{x : M x = 0}``."""
    red, pivots = rref(matrix, ncols)
    pivset = set(pivots)
    basis: list[Vector] = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [ZERO] * ncols
        x[free] = ONE
        for row, p in zip(red, pivots):
            if row[free]:
                x[p] = -row[free]
        basis.append(tuple(x))
    return basis


def rank(matrix: Sequence[Sequence[Scalar]], ncols: int) -> int:
    return len(rref(matrix, ncols)[1])


@dataclass(frozen=True)
class Subspace:
    """Subspace of a coordinate space, held in canonical echelon form.

    ``field`` is ``"complex"`` for complex subspaces of C^n and ``"real"``
    for real subspaces of the rational realification (all entries real).
    """

    ambient: int
    rows: tuple[Vector, ...]
    pivots: tuple[int, ...]
    field: str = "complex"

    @staticmethod
    def span(vectors: Iterable[Sequence[Number]], ambient: int, field: str = "complex") -> Subspace:
        vs = [vec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient}")
            if field == "real" and any(x.im for x in v):
                raise ValueError("real subspace given a non-real vector")
        red, piv = rref(vs, ambient)
        return Subspace(ambient, tuple(tuple(r) for r in red), tuple(piv), field)

    @staticmethod
    def zero(ambient: int, field: str = "complex") -> Subspace:
        return Subspace(ambient, (), (), field)

    @staticmethod
    def full(ambient: int, field: str = "complex") -> Subspace:
        return Subspace.span((unit_vector(ambient, k) for k in range(ambient)), ambient, field)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[Vector]:
        return list(self.rows)

    def _check(self, other: Subspace) -> None:
        if self.ambient != other.ambient:
            raise ValueError(f"dimension mismatch: {self.ambient} vs {other.ambient}")
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        """Remainder of ``v`` after elimination against the echelon basis."""
        out = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = out[p]
            if f:
                out = [x - f * y if y else x for x, y in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence[Number]) -> bool:
        return not any(self.reduce(vec(v)))

    def coordinates(self, v: Sequence[Number]) -> list[Scalar] | None:
        """Coefficients of ``v`` in the echelon basis, or None if outside."""
        v = vec(v)
        if any(self.reduce(v)):
            return None
        return [v[p] for p in self.pivots]

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(list(self.rows) + list(other.rows), self.ambient, self.field)

    def annihilator(self) -> Subspace:
        """``{w : w . v = 0 for v in self}`` under the bilinear pairing."""
        return Subspace.span(kernel(self.rows, self.ambient), self.ambient, self.field)

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.field)
        # Solve sum a_k u_k = sum b_l w_l.
        n1 = self.dim
        cols = [list(u) for u in self.rows] + [[-x for x in w] for w in other.rows]
        mat = [[cols[k][c] for k in range(len(cols))] for c in range(self.ambient)]
        sols = kernel(mat, len(cols))
        vecs = [combine(s[:n1], self.rows, self.ambient) for s in sols]
        return Subspace.span(vecs, self.ambient, self.field)

    def is_subspace_of(self, other: Subspace) -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.rows)

    def complement_in(self, big: Subspace) -> list[Vector]:
        """Vectors of ``big``'s basis extending ``self`` to a basis of ``big``."""
        acc = self
        out: list[Vector] = []
        for r in big.rows:
            if not acc.contains(r):
                out.append(r)
                acc = acc.sum(Subspace.span([r], self.ambient, self.field))
        return out

    def is_zero(self) -> bool:
        return not self.rows

    def __le__(self, other: Subspace) -> bool:
        return self.is_subspace_of(other)


def direct_sum_ok(parts: Sequence[Subspace]) -> bool:
    """True when the subspaces are linearly independent."""
    if not parts:
        return True
    total = Subspace.zero(parts[0].ambient, parts[0].field)
    dims = 0
    for p in parts:
        total = total.sum(p)
        dims += p.dim
    return total.dim == dims


def solve(matrix_cols: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> list[Scalar] | None:
    """Find ``c`` with ``sum c_k col_k = target`` or return None."""
    n = len(target)
    k = len(matrix_cols)
    aug = [[matrix_cols[j][r] for j in range(k)] + [target[r]] for r in range(n)]
    red, piv = rref(aug, k + 1)
    if k in piv:
        return None
    out = [ZERO] * k
    for row, p in zip(red, piv):
        out[p] = row[k]
    return out
