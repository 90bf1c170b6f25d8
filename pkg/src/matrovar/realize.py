"""Realizations: verification, stability, randomized constructions, and the
liftability matrix with its rank certificates."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .chains import (is_nilpotent, is_special, is_weak_nilpotent,
                     lifting_dimension_invariant, solvable_chain)
from .config import config_report
from .errors import (CoverageError, DimensionMismatch, GenericityFailure, LoopError,
                     PreconditionError)
from .exactlinalg import (DEFAULT_BOUND, DEFAULT_RETRIES, RationalMatrix, RationalSubspace,
                          det_columns, determinant, format_fraction, intersect, kernel_basis,
                          random_subspace, random_vector_avoiding, random_vector_in, rank,
                          rank_of_vectors, vector)
from .matroid import Matroid, Realization, elements_of, mask_of, matroid_of_vectors


def _vectors(M: Matroid, vectors) -> dict:
    vs = getattr(vectors, "vectors", vectors)
    missing = [e for e in M.elements if e not in vs]
    if missing:
        raise CoverageError(f"no vector for element(s) {missing}")
    out = {e: vector(vs[e]) for e in M.elements}
    lengths = {len(v) for v in out.values()}
    if len(lengths) > 1:
        raise DimensionMismatch(f"vectors of different lengths {sorted(lengths)}")
    return out


def _dim(vs: dict, default: int) -> int:
    return len(next(iter(vs.values()))) if vs else default


@dataclass
class Check:
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def in_circuit_variety(M: Matroid, vectors) -> Check:
    """Is every circuit of M dependent in the collection?"""
    vs = _vectors(M, vectors)
    for c in M.circuits:
        if rank_of_vectors([vs[e] for e in c]) == len(c):
            return Check(False, list(c))
    return Check(True)


def is_realization(M: Matroid, r) -> Check:
    """Exact comparison of matroid_of_vectors(r) with M; the witness names a
    circuit of one but not the other."""
    vs = _vectors(M, r)
    dim = getattr(r, "dim", _dim(vs, M.rank))
    if dim != M.rank:
        raise DimensionMismatch(f"realization lives in dimension {dim}, matroid has rank {M.rank}")
    try:
        N = matroid_of_vectors(dim, vs)
    except LoopError as e:
        return Check(False, {"loop": str(e)})
    if N == M:
        return Check(True)
    only_m = sorted(set(M.circuits) - set(N.circuits))
    only_r = sorted(set(N.circuits) - set(M.circuits))
    return Check(False, {"missing_dependency": list(only_m[0]) if only_m else None,
                         "extra_dependency": list(only_r[0]) if only_r else None,
                         "rank": N.rank})


def span(vs: dict, pts, dim: int) -> RationalSubspace:
    return RationalSubspace.span([vs[p] for p in pts], dim)


@dataclass
class StableReport:
    realization: object
    per_point: dict
    levels: list
    quasi_stable_levels: list
    stable: bool = field(init=False)

    def __post_init__(self):
        self.stable = all(self.quasi_stable_levels)

    def __bool__(self):
        return self.stable

    def to_json(self) -> dict:
        return {
            "stable": self.stable,
            "quasi_stable_levels": self.quasi_stable_levels,
            "levels": [{"points": list(lv["points"]),
                        "per_point": {str(p): {"expected": e, "actual": a}
                                      for p, (e, a) in lv["per_point"].items()}}
                       for lv in self.levels],
        }


def stable_check(M: Matroid, r) -> StableReport:
    """Compare dim of the intersection of the class spans through each point
    with its expected dimension, at every nonempty level of the solvable chain.

    Points of P at a level are skipped; degree-0 points pass.
    """
    ch = solvable_chain(M)
    if not ch.terminated_empty:
        raise PreconditionError("stable_check needs a solvable matroid",
                                witness={"stabilized_at": list(ch.stabilized_at)})
    vs = _vectors(M, r)
    dim = _dim(vs, M.rank)
    levels, flags = [], []
    for level in ch.chain:
        if not level:
            continue
        rep = config_report(M, level)
        per = {}
        ok = True
        spans = {c.id: span(vs, c.points, dim) for c in rep.classes}
        for p in level:
            if p in rep.p_points:
                continue
            a = rep.expected_dims[p]
            Lp = rep.incidence[p]
            if not Lp:
                per[p] = (a, a)
                continue
            V = spans[Lp[0]]
            for i in Lp[1:]:
                V = intersect(V, spans[i])
            per[p] = (a, V.dim)
            ok = ok and V.dim == a
        levels.append({"points": level, "per_point": per})
        flags.append(ok)
    return StableReport(r, levels[0]["per_point"] if levels else {}, levels, flags)


# ---------------------------------------------------------------- realizers

def _peel_order(M: Matroid) -> list:
    """Repeatedly remove the lowest point of degree <= 1; returns
    (point, remaining-set mask including the point) in removal order."""
    T = M.ground_mask
    order = []
    while T:
        rep = config_report(M, T)
        S = set(rep.s_points)
        p = next((q for q in rep.ground if q not in S), None)
        if p is None:
            raise PreconditionError("matroid is not nilpotent", witness={"stuck_at": list(rep.ground)})
        cls = next((c.points for c in rep.classes if p in c.points), None)
        order.append((p, T, cls))
        T &= ~(1 << p)
    return order


def _forbidden(M: Matroid, vs: dict, placed: Sequence[int], p: int, n: int) -> list:
    """Spans of independent X among placed points with p outside cl(X)."""
    seen = set()
    out = []
    pm = 1 << p
    placed_mask = mask_of(placed)
    for k in range(0, n):
        for X in combinations(placed, k):
            xm = mask_of(X)
            if M.rank_mask(xm) != k or M.rank_mask(xm | pm) != k + 1:
                continue
            cl = xm | sum(1 << e for e in elements_of(placed_mask & ~xm) if M.rank_mask(xm | 1 << e) == k)
            if cl in seen:
                continue
            seen.add(cl)
            out.append(span(vs, X, n))
    return out


def _one_nilpotent_attempt(M: Matroid, order, rng, bound, retries) -> dict:
    n = M.rank
    vs: dict = {}
    placed: list = []
    full = RationalSubspace.full(n)
    for p, T, cls in reversed(order):
        if cls is not None:
            space = span(vs, [q for q in cls if q != p], n)
        elif M.rank_mask(T) == M.rank_mask(T & ~(1 << p)):
            space = span(vs, placed, n)
        else:
            space = full
        # v in space avoids F iff it avoids F ∩ space, so no intersection is needed
        vs[p] = random_vector_in(space, _forbidden(M, vs, placed, p, n), rng, bound, retries)
        placed.append(p)
    return vs


def realize_nilpotent(M: Matroid, rng: random.Random, bound: int = DEFAULT_BOUND,
                      retries: int = DEFAULT_RETRIES) -> Realization:
    """Realization in Q^rank(M) built by peeling points of degree at most one
    and adding them back generically."""
    if not is_nilpotent(M):
        raise PreconditionError("realize_nilpotent needs a nilpotent matroid")
    order = _peel_order(M)
    last = None
    for _ in range(retries):
        try:
            vs = _one_nilpotent_attempt(M, order, rng, bound, retries)
        except GenericityFailure as e:
            last = e
            continue
        r = Realization(M, M.rank, vs)
        chk = is_realization(M, r)
        if chk:
            r.verified = True
            return r
        last = chk.witness
    raise GenericityFailure(f"no verified realization after {retries} attempts ({last})")


def realize_stable_special(M: Matroid, rng: random.Random, bound: int = DEFAULT_BOUND,
                           retries: int = DEFAULT_RETRIES) -> tuple:
    """Stable realization from random subspaces H_l of dimension rank(l).

    Returns (Realization, StableReport).
    """
    ch = solvable_chain(M)
    if not ch.terminated_empty:
        raise PreconditionError("matroid is not solvable", witness={"stabilized_at": list(ch.stabilized_at)})
    sp = is_special(M)
    if not sp:
        raise PreconditionError("matroid is not special", witness=sp.witness)
    rep = config_report(M)
    if rep.p_points:
        raise PreconditionError("P_M is not empty", witness={"p_points": list(rep.p_points)})
    n = M.rank
    full = RationalSubspace.full(n)
    for _ in range(retries):
        H = {c.id: random_subspace(n, c.class_rank, rng, bound, retries) for c in rep.classes}
        V = {}
        good = True
        for p in rep.ground:
            Lp = rep.incidence[p]
            if not Lp:
                V[p] = full
                continue
            W = H[Lp[0]]
            for i in Lp[1:]:
                W = intersect(W, H[i])
            if W.dim != rep.expected_dims[p]:
                good = False
                break
            V[p] = W
        if not good:
            continue
        try:
            vs = {p: random_vector_in(V[p], [], rng, bound, retries) for p in rep.ground}
        except GenericityFailure:
            continue
        r = Realization(M, n, vs)
        if not is_realization(M, r):
            continue
        report = stable_check(M, r)
        if report:
            r.verified = True
            return r, report
    raise GenericityFailure(f"no stable realization after {retries} attempts")


def any_realization(M: Matroid, rng: random.Random, bound: int = DEFAULT_BOUND,
                    retries: int = DEFAULT_RETRIES) -> Realization:
    """A verified realization from whichever constructive route applies."""
    if is_nilpotent(M):
        return realize_nilpotent(M, rng, bound, retries)
    if solvable_chain(M).terminated_empty and not config_report(M).p_points and is_special(M):
        return realize_stable_special(M, rng, bound, retries)[0]
    raise PreconditionError("no constructive realizer applies (need nilpotent, or special with P_M empty)")


# ---------------------------------------------------------------- liftability

@dataclass(frozen=True)
class SignedBracketToken:
    sign: int
    points: tuple
    includes_q: bool
    rows: tuple  # K, 1-based

    def evaluate(self, vs: Mapping, q: Sequence) -> Fraction:
        cols = [vs[p] for p in self.points] + ([q] if self.includes_q else [])
        sub = [[c[i - 1] for i in self.rows] for c in cols]
        return self.sign * det_columns(sub)

    def to_json(self) -> dict:
        return {"sign": self.sign, "points": list(self.points) + (["q"] if self.includes_q else []),
                "rows": list(self.rows)}


@dataclass
class LiftabilityMatrix:
    matroid: Matroid
    ambient: int
    rows: list  # (circuit, K)
    cols: tuple
    entries: dict  # (row index, element) -> SignedBracketToken

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.cols)

    def evaluate(self, vectors, q) -> RationalMatrix:
        vs = _vectors(self.matroid, vectors)
        q = vector(q)
        if len(q) != self.ambient or _dim(vs, self.ambient) != self.ambient:
            raise DimensionMismatch(f"liftability matrix built for dimension {self.ambient}")
        col = {e: j for j, e in enumerate(self.cols)}
        data = [[Fraction(0)] * len(self.cols) for _ in self.rows]
        for (i, e), tok in self.entries.items():
            data[i][col[e]] = tok.evaluate(vs, q)
        return RationalMatrix.from_rows(data, len(self.cols))

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "shape": list(self.shape),
            "cols": list(self.cols),
            "rows": [{"circuit": list(c), "K": list(K),
                      "entries": {str(e): self.entries[(i, e)].to_json() for e in c}}
                     for i, (c, K) in enumerate(self.rows)],
        }


def liftability_matrix(M: Matroid, ambient: int | None = None) -> LiftabilityMatrix:
    """Rows (c, K): circuits of size k <= ambient and k-subsets K of the
    coordinates. Entry at column c_i: (-1)^(i-1) [c minus c_i, q]_K."""
    n = M.rank if ambient is None else ambient
    if n < M.rank:
        raise DimensionMismatch(f"ambient dimension {n} is below the rank {M.rank}")
    rows, entries = [], {}
    for c in M.circuits:
        k = len(c)
        if k > n:
            continue
        for K in combinations(range(1, n + 1), k):
            r = len(rows)
            rows.append((c, K))
            for i, ci in enumerate(c):
                entries[(r, ci)] = SignedBracketToken(-1 if i % 2 else 1,
                                                      tuple(x for x in c if x != ci), True, K)
    return LiftabilityMatrix(M, n, rows, M.elements, entries)


def lifting_dimension_at(M: Matroid, vectors, q) -> int:
    """Dimension of the space of lifts from q staying in the circuit variety,
    i.e. the kernel dimension of the evaluated liftability matrix."""
    vs = _vectors(M, vectors)
    chk = in_circuit_variety(M, vs)
    if not chk:
        raise PreconditionError("vectors are not in the circuit variety", witness=chk.witness)
    d = _dim(vs, len(q))
    mat = liftability_matrix(M, d).evaluate(vs, q)
    return M.ground_size - rank(mat)


def lift(vectors: Mapping, z: Mapping, q) -> dict:
    q = vector(q)
    return {p: tuple(a + Fraction(z[p]) * b for a, b in zip(v, q)) for p, v in vectors.items()}


def sample_outside(M: Matroid, vectors, rng: random.Random, bound: int = DEFAULT_BOUND,
                   retries: int = DEFAULT_RETRIES) -> tuple:
    """Random q avoiding every class span and the span of the whole collection
    when that is proper."""
    vs = _vectors(M, vectors)
    d = _dim(vs, M.rank)
    forb = [span(vs, c.points, d) for c in config_report(M).classes]
    whole = RationalSubspace.span(list(vs.values()), d)
    if whole.dim < d:
        forb.append(whole)
    forb = [f for f in forb if f.dim < d]
    return random_vector_avoiding(d, forb, rng, bound, retries)


def _sample_minors(mat: RationalMatrix, size: int, rng: random.Random, count: int) -> tuple:
    if size > mat.rows or size > mat.cols or size <= 0:
        return 0, []
    available = math.comb(mat.rows, size) * math.comb(mat.cols, size)
    picks = set()
    target = min(count, available)
    while len(picks) < target:
        picks.add((tuple(sorted(rng.sample(range(mat.rows), size))),
                   tuple(sorted(rng.sample(range(mat.cols), size)))))
    vals = [determinant(mat.submatrix(R, C)) for R, C in sorted(picks)]
    return available, vals


def minor_rank_certificate(M: Matroid, vectors, q, bound_kind: str = "prop68",
                           rng: random.Random | None = None, sample: int = 100) -> dict:
    """Rank of the evaluated liftability matrix against |M| - dim(M) (thm25)
    or |M| - rank(M) (prop68), plus a sample of threshold-size minors."""
    if bound_kind not in ("thm25", "prop68"):
        raise ValueError("bound_kind must be 'thm25' or 'prop68'")
    vs = _vectors(M, vectors)
    chk = is_realization(M, Realization(M, _dim(vs, M.rank), vs))
    if not chk:
        raise PreconditionError("vectors are not a realization", witness=chk.witness)
    if bound_kind == "thm25":
        if not is_weak_nilpotent(M):
            raise PreconditionError("the dim(M) bound needs a weak-nilpotent matroid")
        bound = M.ground_size - lifting_dimension_invariant(M).dim_value
    else:
        bound = M.ground_size - M.rank
    mat = liftability_matrix(M).evaluate(vs, q)
    r = rank(mat)
    rng = rng or random.Random(0)
    available, vals = _sample_minors(mat, bound + 1, rng, sample)
    nonzero = sum(v != 0 for v in vals)
    return {
        "bound_kind": bound_kind,
        "shape": [mat.rows, mat.cols],
        "rank": r,
        "bound": bound,
        "minor_size": bound + 1,
        "minors_available": available,
        "minors_sampled": len(vals),
        "minors_nonzero": nonzero,
        "vacuous": available == 0,
        "pass": r <= bound and nonzero == 0,
    }


def submatroid_certificate(M: Matroid, vectors, subset, coords, q) -> dict:
    """Project the vectors of a submatroid N onto coordinates ``coords``
    (|coords| = rank N, 1-based) and test the |N| - rank(N) rank bound of the
    liftability matrix of N there."""
    vs = _vectors(M, vectors)
    N = M.restrict(subset)
    coords = tuple(coords)
    if len(coords) != N.rank:
        raise DimensionMismatch(f"need {N.rank} coordinates, got {len(coords)}")
    proj = {i + 1: tuple(vs[e][j - 1] for j in coords) for i, e in enumerate(N.labels)}
    mat = liftability_matrix(N).evaluate(proj, q)
    r = rank(mat)
    bound = N.ground_size - N.rank
    return {"submatroid": list(N.labels), "coords": list(coords), "rank": r, "bound": bound,
            "pass": r <= bound}


@dataclass
class LiftResult:
    z: dict
    vectors: dict
    tries: int

    def to_json(self) -> dict:
        return {"z": {str(p): format_fraction(v) for p, v in sorted(self.z.items())},
                "vectors": {str(p): [format_fraction(x) for x in v] for p, v in sorted(self.vectors.items())},
                "tries": self.tries}


def sample_lift(M: Matroid, vectors, q, rng: random.Random, bound: int = DEFAULT_BOUND,
                tries: int = 32) -> LiftResult | None:
    """Search random kernel elements for a lift from q whose vectors span the
    whole space. Input: a rank n-1 collection in a hyperplane H, q outside H."""
    vs = _vectors(M, vectors)
    n = M.rank
    q = vector(q)
    if _dim(vs, n) != n or len(q) != n:
        raise DimensionMismatch(f"vectors and q must have length {n}")
    H = RationalSubspace.span(list(vs.values()), n)
    if H.dim != n - 1:
        raise PreconditionError(f"collection has rank {H.dim}, expected {n - 1}")
    if H.contains(q):
        raise PreconditionError("q lies in the hyperplane of the collection")
    chk = in_circuit_variety(M, vs)
    if not chk:
        raise PreconditionError("collection is not in the circuit variety", witness=chk.witness)
    ker = kernel_basis(liftability_matrix(M).evaluate(vs, q))
    if not ker:
        return None
    for t in range(1, tries + 1):
        coeffs = [rng.randint(-bound, bound) for _ in ker]
        zvec = [sum((c * k[j] for c, k in zip(coeffs, ker)), Fraction(0)) for j in range(M.ground_size)]
        z = {e: zvec[e - 1] for e in M.elements}
        lifted = lift(vs, z, q)
        if rank_of_vectors(list(lifted.values())) == n and in_circuit_variety(M, lifted):
            return LiftResult(z, lifted, t)
    return None


def sample_degenerate_collection(M: Matroid, rng: random.Random, bound: int = DEFAULT_BOUND,
                                 retries: int = DEFAULT_RETRIES) -> tuple:
    """Random vectors spanning a random hyperplane H, and q outside H."""
    n = M.rank
    for _ in range(retries):
        H = random_subspace(n, n - 1, rng, bound, retries)
        vs = {e: random_vector_in(H, [], rng, bound, retries) for e in M.elements}
        if rank_of_vectors(list(vs.values())) == n - 1:
            q = random_vector_avoiding(n, [H], rng, bound, retries)
            return vs, q
    raise GenericityFailure("could not sample a degenerate collection")
