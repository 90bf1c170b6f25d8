"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`. Ranks and determinants go
through fraction-free (Bareiss) elimination on integer-scaled rows; kernels and
canonical subspace bases go through a rational reduced row echelon form.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, GenericityFailure, PreconditionError

Vector = tuple  # tuple[Fraction, ...]

DEFAULT_BOUND = 1000
DEFAULT_RETRIES = 64


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational")


def vector(xs: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in xs)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def primitive(v: Sequence) -> Vector:
    """Scale ``v`` to a coprime integer vector (same projective point)."""
    v = vector(v)
    if is_zero(v):
        return v
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    return tuple(Fraction(i // g) for i in ints)


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [vector(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "RationalMatrix":
        return cls.from_rows(_transpose([vector(c) for c in columns], rows), cols=len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))


def _transpose(columns, nrows):
    if not columns:
        return [[] for _ in range(nrows or 0)]
    n = len(columns[0])
    if any(len(c) != n for c in columns):
        raise DimensionMismatch("columns of unequal length")
    return [[c[i] for c in columns] for i in range(n)]


def as_matrix(m) -> RationalMatrix:
    if isinstance(m, RationalMatrix):
        return m
    return RationalMatrix.from_rows(m)


def _integer_rows(m: RationalMatrix) -> tuple[list[list[int]], int]:
    """Rows scaled to integers, plus the product of the scale factors."""
    out = []
    scale = 1
    for i in range(m.rows):
        r = m.row(i)
        den = math.lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
        scale *= den
    return out, scale


def _bareiss(a: list[list[int]]) -> tuple[int, int, int]:
    """Fraction-free forward elimination in place.

    Pivot: first nonzero entry in the current column, lowest row index first.
    Returns (rank, last pivot, swap parity).
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    prev = 1
    swaps = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            swaps += 1
        p = a[r][c]
        ar = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            if f:
                for j in range(c + 1, ncols):
                    ai[j] = (ai[j] * p - f * ar[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    ai[j] = (ai[j] * p) // prev
            ai[c] = 0
        prev = p
        r += 1
    return r, prev, swaps


def rank(m) -> int:
    m = as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    a, _ = _integer_rows(m)
    return _bareiss(a)[0]


def determinant(m) -> Fraction:
    m = as_matrix(m)
    if m.rows != m.cols:
        raise DimensionMismatch(f"determinant of a {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    r, last, swaps = _bareiss(a)
    if r < m.rows:
        return Fraction(0)
    return Fraction(-last if swaps % 2 else last, scale)


def det_columns(columns: Sequence[Sequence]) -> Fraction:
    """Determinant of the square matrix whose columns are ``columns``."""
    return determinant(RationalMatrix.from_rows(_transpose([vector(c) for c in columns], len(columns))))


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    m = as_matrix(m)
    a = m.tolist()
    pivots = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a[:r], pivots


def kernel_basis(m) -> list[Vector]:
    """Basis of the right kernel, one vector per free column."""
    m = as_matrix(m)
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return rank(RationalMatrix.from_rows(vectors))


@dataclass(frozen=True)
class RationalSubspace:
    """Subspace of Q^d stored by its reduced row echelon basis (canonical)."""

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "RationalSubspace":
        vs = [vector(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not vs:
            return cls(ambient_dim, ())
        red, _ = rref(RationalMatrix.from_rows(vs, ambient_dim))
        return cls(ambient_dim, tuple(tuple(r) for r in red))

    @classmethod
    def full(cls, ambient_dim: int) -> "RationalSubspace":
        eye = [[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)]
        return cls.span(eye, ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        if is_zero(v):
            return True
        return rank_of_vectors(list(self.basis) + [v]) == self.dim

    def contains_space(self, other: "RationalSubspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __and__(self, other):
        return intersect(self, other)

    def __add__(self, other):
        return sum_subspaces(self, other)


def _check_ambient(a: RationalSubspace, b: RationalSubspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def intersect(a: RationalSubspace, b: RationalSubspace) -> RationalSubspace:
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return RationalSubspace(a.ambient_dim, ())
    # x.A = y.B  <=>  (x, y) in ker [A^T | -B^T]
    cols = list(a.basis) + [tuple(-x for x in v) for v in b.basis]
    system = RationalMatrix.from_rows(_transpose(cols, a.ambient_dim), len(cols))
    out = []
    for z in kernel_basis(system):
        coeffs = z[:a.dim]
        out.append(tuple(sum((c * v[i] for c, v in zip(coeffs, a.basis)), Fraction(0))
                         for i in range(a.ambient_dim)))
    return RationalSubspace.span(out, a.ambient_dim)


def sum_subspaces(a: RationalSubspace, b: RationalSubspace) -> RationalSubspace:
    _check_ambient(a, b)
    return RationalSubspace.span(list(a.basis) + list(b.basis), a.ambient_dim)


def random_vector_in(space: RationalSubspace, forbidden: Sequence[RationalSubspace],
                     rng: random.Random, bound: int = DEFAULT_BOUND,
                     retries: int = DEFAULT_RETRIES) -> Vector:
    """Random nonzero vector of ``space`` lying in none of ``forbidden``.

    Coefficients on the basis of ``space`` are uniform in [-bound, bound]; the
    result is scaled to a primitive integer vector.
    """
    if space.dim == 0:
        raise PreconditionError("cannot sample a nonzero vector from the zero subspace")
    for f in forbidden:
        _check_ambient(space, f)
        if f.contains_space(space):
            raise PreconditionError("a forbidden subspace contains the whole sampling space")
    for _ in range(retries):
        coeffs = [rng.randint(-bound, bound) for _ in range(space.dim)]
        if not any(coeffs):
            continue
        v = primitive(tuple(sum((c * b[i] for c, b in zip(coeffs, space.basis)), Fraction(0))
                            for i in range(space.ambient_dim)))
        if not any(f.contains(v) for f in forbidden):
            return v
    raise GenericityFailure(f"no admissible vector after {retries} draws with bound {bound}")


def random_vector_avoiding(ambient_dim: int, forbidden: Sequence[RationalSubspace],
                           rng: random.Random, bound: int = DEFAULT_BOUND,
                           retries: int = DEFAULT_RETRIES) -> Vector:
    """Random integer vector in [-bound, bound]^d outside every forbidden subspace.

    The zero vector is never returned.
    """
    for f in forbidden:
        if f.ambient_dim != ambient_dim:
            raise DimensionMismatch("forbidden subspace in a different ambient dimension")
        if f.dim >= ambient_dim:
            raise PreconditionError("forbidden subspaces must be proper")
    for _ in range(retries):
        v = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(ambient_dim))
        if is_zero(v):
            continue
        if not any(f.contains(v) for f in forbidden):
            return v
    raise GenericityFailure(f"no admissible vector after {retries} draws with bound {bound}")


def random_subspace(ambient_dim: int, dim: int, rng: random.Random,
                    bound: int = DEFAULT_BOUND, retries: int = DEFAULT_RETRIES) -> RationalSubspace:
    for _ in range(retries):
        vs = [[rng.randint(-bound, bound) for _ in range(ambient_dim)] for _ in range(dim)]
        s = RationalSubspace.span(vs, ambient_dim)
        if s.dim == dim:
            return s
    raise GenericityFailure(f"no {dim}-dimensional subspace after {retries} draws")
