"""Grassmann-Cayley algebra over Q and a small ring of bracket polynomials.

Extensors are stored by Plücker coordinates: a step-k extensor in Q^d maps each
sorted k-tuple of 0-based coordinate indices to a rational. Bracket
polynomials are sums of coefficient * product of brackets, each bracket a
sorted tuple of 1-based point symbols.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .config import config_report
from .errors import DimensionMismatch, DomainError, EvaluationError, IncidenceError
from .exactlinalg import (RationalMatrix, RationalSubspace, det_columns, determinant, format_fraction,
                          intersect, kernel_basis, vector)
from .matroid import Matroid

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Extensor:
    dim: int
    step: int
    coords: tuple = ()  # sorted ((index tuple, nonzero Fraction), ...)

    @classmethod
    def from_dict(cls, dim: int, step: int, coords: Mapping) -> "Extensor":
        items = tuple(sorted((tuple(k), Fraction(v)) for k, v in coords.items() if v != 0))
        for k, _ in items:
            if len(k) != step or list(k) != sorted(set(k)) or (k and not 0 <= k[-1] < dim) \
                    or (k and k[0] < 0):
                raise DimensionMismatch(f"bad Plücker index {k} for step {step} in dimension {dim}")
        return cls(dim, step, items)

    @classmethod
    def scalar(cls, dim: int, value) -> "Extensor":
        return cls.from_dict(dim, 0, {(): value})

    def coord(self, key) -> Fraction:
        return dict(self.coords).get(tuple(key), Fraction(0))

    def as_dict(self) -> dict:
        return dict(self.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def __bool__(self):
        return not self.is_zero()

    def scale(self, c) -> "Extensor":
        c = Fraction(c)
        return Extensor.from_dict(self.dim, self.step, {k: c * v for k, v in self.coords})

    def value(self) -> Fraction:
        """The number carried by a step-0 or step-d extensor."""
        if self.step == 0:
            return self.coord(())
        if self.step == self.dim:
            return self.coord(tuple(range(self.dim)))
        raise DomainError(f"a step-{self.step} extensor in dimension {self.dim} is not a scalar")

    def generators(self) -> list:
        """Vectors whose join is exactly this (nonzero, decomposable) extensor."""
        if self.is_zero():
            raise DomainError("the zero extensor has no generators")
        if self.step == 0:
            return []
        span = span_of(self)
        if span.dim != self.step:
            raise DomainError("extensor is not decomposable")
        gens = [list(b) for b in span.basis]
        j = join(gens, self.dim)
        key, val = self.coords[0]
        lam = val / j.coord(key)
        gens[0] = [lam * x for x in gens[0]]
        gens = [tuple(g) for g in gens]
        if join(gens, self.dim) != self:
            raise DomainError("extensor is not decomposable")
        return gens


def _wedge_sign(index_set: Sequence[int], i: int) -> int:
    """Sign of e_I ∧ e_i = ± e_{I ∪ i}."""
    return -1 if sum(t > i for t in index_set) % 2 else 1


def wedge_vector_matrix(E: Extensor) -> RationalMatrix:
    """Matrix of x -> E ∧ x, rows indexed by sorted (k+1)-subsets."""
    d, k = E.dim, E.step
    coords = E.as_dict()
    rows = []
    for J in combinations(range(d), k + 1):
        row = [Fraction(0)] * d
        for i in J:
            rest = tuple(t for t in J if t != i)
            c = coords.get(rest)
            if c:
                row[i] += _wedge_sign(rest, i) * c
        rows.append(row)
    return RationalMatrix.from_rows(rows, d)


def span_of(E: Extensor) -> RationalSubspace:
    """{x : E ∧ x = 0}; for a nonzero decomposable E this is the subspace it represents."""
    if E.step == 0:
        return RationalSubspace(E.dim, ())
    return RationalSubspace.span(kernel_basis(wedge_vector_matrix(E)), E.dim)


def join(vectors: Sequence[Sequence], d: int) -> Extensor:
    vs = [vector(v) for v in vectors]
    for v in vs:
        if len(v) != d:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {d}")
    k = len(vs)
    if k > d:
        raise DimensionMismatch(f"cannot join {k} vectors in dimension {d}")
    if k == 0:
        return Extensor.scalar(d, 1)
    coords = {}
    for I in combinations(range(d), k):
        coords[I] = determinant(RationalMatrix.from_rows([[v[i] for v in vs] for i in I], k))
    return Extensor.from_dict(d, k, coords)


def _perm_sign(chosen: Sequence[int]) -> int:
    # sign of the shuffle putting ``chosen`` (sorted) first, the rest after
    inv = sum(c - i for i, c in enumerate(chosen))
    return -1 if inv % 2 else 1


def meet(v: Extensor, w: Extensor) -> Extensor:
    """Shuffle-product meet of a step-k and a step-j extensor.

    Zero when k + j < d. Otherwise
    sum over shuffles s of sgn(s) [a_s(1)..a_s(d-j) b_1..b_j] a_s(d-j+1) ∧ .. ∧ a_s(k).
    """
    if v.dim != w.dim:
        raise DimensionMismatch(f"ambient dimensions {v.dim} and {w.dim} differ")
    d, k, j = v.dim, v.step, w.step
    out_step = k + j - d
    if out_step < 0 or v.is_zero() or w.is_zero():
        return Extensor(d, max(out_step, 0))
    scale = Fraction(1)
    if k == 0:
        scale *= v.value()
    if j == 0:
        scale *= w.value()
    a = v.generators()
    b = w.generators()
    acc: dict = {}
    m = d - j
    for chosen in combinations(range(k), m):
        rest = [i for i in range(k) if i not in chosen]
        br = det_columns([a[i] for i in chosen] + b) if d else Fraction(1)
        if br == 0:
            continue
        c = scale * _perm_sign(chosen) * br
        for key, val in join([a[i] for i in rest], d).coords:
            acc[key] = acc.get(key, Fraction(0)) + c * val
    return Extensor.from_dict(d, out_step, acc)


@dataclass
class ExpectedDimension:
    holds: bool
    expected: int
    actual: int
    by_meet: bool

    def __bool__(self):
        return self.holds


def expected_dimension_holds(subspaces: Sequence[RationalSubspace]) -> ExpectedDimension:
    """Is dim(∩ V_i) = sum dim V_i - n(k-1)? Decided by iterated meets and by
    exact intersection; the two must agree."""
    if not subspaces:
        raise DomainError("need at least one subspace")
    n = subspaces[0].ambient_dim
    if any(s.ambient_dim != n for s in subspaces):
        raise DimensionMismatch("subspaces live in different ambient spaces")
    expected = sum(s.dim for s in subspaces) - n * (len(subspaces) - 1)
    if expected < 0:
        raise DomainError(f"expected dimension {expected} is negative")
    inter = subspaces[0]
    E = join(inter.basis, n)
    for s in subspaces[1:]:
        inter = intersect(inter, s)
        E = meet(E, join(s.basis, n))
    by_meet = not E.is_zero()
    holds = inter.dim == expected
    if holds != by_meet:
        raise AssertionError("meet and intersection disagree")  # would be a bug
    return ExpectedDimension(holds, expected, inter.dim, by_meet)


# ---------------------------------------------------------------- brackets

def canonical_bracket(symbols: Sequence[int]) -> tuple:
    """(sign, sorted tuple); sign 0 when a symbol repeats."""
    s = list(symbols)
    if len(set(s)) != len(s):
        return 0, None
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign, tuple(sorted(s))


class BracketPolynomial:
    """Formal sum of products of brackets with rational coefficients.

    Canonical form: symbols sorted inside each bracket (sign moved to the
    coefficient), brackets sorted inside each monomial, like terms merged,
    zero terms dropped, monomials sorted. No straightening is done.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable = ()):
        acc: dict = {}
        for coef, brackets in terms:
            c = Fraction(coef)
            bs = []
            for b in brackets:
                sign, cb = canonical_bracket(b)
                if sign == 0:
                    c = Fraction(0)
                    break
                c *= sign
                bs.append(cb)
            if c == 0:
                continue
            key = tuple(sorted(bs))
            acc[key] = acc.get(key, Fraction(0)) + c
        self.terms = tuple((k, v) for k, v in sorted(acc.items()) if v != 0)

    @classmethod
    def bracket(cls, *symbols) -> "BracketPolynomial":
        return cls([(1, [symbols])])

    @classmethod
    def constant(cls, c) -> "BracketPolynomial":
        return cls([(c, [])])

    def __repr__(self):
        return f"BracketPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for bs, c in self.terms:
            mono = "".join("[" + " ".join(map(str, b)) + "]" for b in bs)
            if c == 1 and bs:
                parts.append(f"+ {mono}")
            elif c == -1 and bs:
                parts.append(f"- {mono}")
            else:
                parts.append(f"{'-' if c < 0 else '+'} {abs(c)}{mono}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __eq__(self, other):
        return isinstance(other, BracketPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        return BracketPolynomial([(c, b) for b, c in self.terms] + [(c, b) for b, c in other.terms])

    def __neg__(self):
        return BracketPolynomial([(-c, b) for b, c in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BracketPolynomial):
            return BracketPolynomial([(c1 * c2, b1 + b2) for b1, c1 in self.terms for b2, c2 in other.terms])
        return BracketPolynomial([(c * Fraction(other), b) for b, c in self.terms])

    __rmul__ = __mul__

    def symbols(self) -> set:
        return {s for bs, _ in self.terms for b in bs for s in b}

    def monic(self) -> "BracketPolynomial":
        """Scaled so the first term has coefficient 1 (zero stays zero)."""
        if not self.terms:
            return self
        return self * (1 / self.terms[0][1])

    def to_json(self) -> dict:
        return {"terms": [{"coef": format_fraction(c), "brackets": [list(b) for b in bs]}
                          for bs, c in self.terms]}

    @classmethod
    def from_json(cls, data: Mapping) -> "BracketPolynomial":
        return cls([(Fraction(t["coef"]), [tuple(b) for b in t["brackets"]]) for t in data["terms"]])


def _line_through(lines, *pts):
    return next((l for l in lines if all(p in l for p in pts)), None)


def substitute_point(p: BracketPolynomial, x: int, p1: int, p2: int, p3: int, p4: int,
                     M: Matroid | None = None) -> BracketPolynomial:
    """Replace x by [p1 p2 p3] p4 - [p1 p2 p4] p3 in every bracket containing x.

    With ``M`` given, x, p1, p2 must lie on one line and x, p3, p4 on a
    different one. A polynomial without x comes back unchanged (logged).
    """
    if len({x, p1, p2, p3, p4}) != 5:
        raise IncidenceError("substitution needs five distinct symbols")
    if M is not None:
        lines = [c.points for c in config_report(M).classes]
        a = _line_through(lines, x, p1, p2)
        b = _line_through(lines, x, p3, p4)
        if a is None or b is None or a == b:
            raise IncidenceError(f"{p1},{p2} and {p3},{p4} are not on two distinct lines through {x}")
    if x not in p.symbols():
        log.info("symbol %s does not occur; substitution is a no-op", x)
        return p
    first = [(1, (p1, p2, p3), p4), (-1, (p1, p2, p4), p3)]
    out = []
    for bs, c in p.terms:
        choices = []
        for b in bs:
            if x in b:
                choices.append([(s, [pre, tuple(y if t == x else t for t in b)])
                                for s, pre, y in first])
            else:
                choices.append([(1, [b])])
        for combo in product(*choices):
            coef = c
            brs = []
            for s, parts in combo:
                coef *= s
                brs.extend(parts)
            out.append((coef, brs))
    return BracketPolynomial(out)


def _substitutions(M: Matroid):
    """All (x, p1, p2, p3, p4) with x of degree >= 2, an ordered pair of distinct
    lines through x, and an unordered pair of other points on each."""
    rep = config_report(M)
    lines = {c.id: c.points for c in rep.classes}
    subs = []
    for x in rep.ground:
        if rep.degrees[x] < 2:
            continue
        for i in rep.incidence[x]:
            for j in rep.incidence[x]:
                if i == j:
                    continue
                for p1, p2 in combinations([t for t in lines[i] if t != x], 2):
                    for p3, p4 in combinations([t for t in lines[j] if t != x], 2):
                        subs.append((x, p1, p2, p3, p4))
    return subs


@dataclass
class GMResult:
    polynomials: list
    depth: int
    stabilized: bool

    def to_json(self) -> dict:
        return {"polynomials": [p.to_json() for p in self.polynomials], "depth": self.depth,
                "stabilized": self.stabilized, "count": len(self.polynomials)}


def generate_gm(M: Matroid, max_depth: int = 3) -> GMResult:
    """Circuit brackets closed under point substitutions, up to ``max_depth`` passes.

    Polynomials are kept monic and deduplicated by canonical form.
    ``stabilized`` is True when a further pass could add nothing new.
    """
    if M.rank != 3:
        raise DomainError(f"bracket generation needs rank 3, got {M.rank}")
    seen = {}
    for c in M.circuits:
        if len(c) == 3:
            b = BracketPolynomial.bracket(*c)
            seen.setdefault(b, None)
    subs = _substitutions(M)
    movable = {s[0] for s in subs}
    frontier = list(seen)
    depth = 0
    while depth < max_depth:
        new = []
        for poly in frontier:
            syms = poly.symbols()
            for x, p1, p2, p3, p4 in subs:
                if x not in syms:
                    continue
                q = substitute_point(poly, x, p1, p2, p3, p4)
                if q.is_zero():
                    continue
                q = q.monic()
                if q not in seen:
                    seen[q] = None
                    new.append(q)
        if not new:
            break
        depth += 1
        frontier = new
    stabilized = not any(p.symbols() & movable for p in frontier) or depth < max_depth
    return GMResult(list(seen), depth, stabilized)


def evaluate_bracket_poly(p: BracketPolynomial, vectors) -> Fraction:
    """Exact value with each bracket read as the determinant of its vectors.

    ``vectors`` is a Realization or a mapping symbol -> vector.
    """
    vs = getattr(vectors, "vectors", vectors)
    total = Fraction(0)
    cache: dict = {}
    for bs, c in p.terms:
        val = c
        for b in bs:
            if b not in cache:
                missing = [s for s in b if s not in vs]
                if missing:
                    raise EvaluationError(f"no vector for symbol(s) {missing}")
                cols = [vector(vs[s]) for s in b]
                if any(len(v) != len(b) for v in cols):
                    raise EvaluationError(f"bracket {list(b)} needs vectors of length {len(b)}")
                cache[b] = det_columns(cols)
            val *= cache[b]
            if val == 0:
                break
        total += val
    return total
