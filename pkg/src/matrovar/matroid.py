"""Matroids given by their circuits, with a memoized rank oracle.

Elements are the integers ``1..ground_size``. Subsets are handled internally as
bitmasks (bit ``e`` set for element ``e``) and exposed as sorted tuples.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (AxiomViolation, DimensionMismatch, ElementError, GroundSetTooLarge,
                     HyperplaneSizeError, LoopError, NotPavingError, RankError)
from .exactlinalg import is_zero, rank_of_vectors, vector

DEFAULT_MAX_GROUND = 20


def max_ground() -> int:
    return int(os.environ.get("MATROVAR_MAX_GROUND", DEFAULT_MAX_GROUND))


def mask_of(s: Iterable[int]) -> int:
    m = 0
    for e in s:
        m |= 1 << e
    return m


def elements_of(m: int) -> tuple:
    out = []
    e = 0
    while m:
        if m & 1:
            out.append(e)
        m >>= 1
        e += 1
    return tuple(out)


def popcount(m: int) -> int:
    return m.bit_count()


class Matroid:
    """Loopless matroid on ``{1..ground_size}`` presented by its circuits.

    Use :func:`from_circuits` or :func:`paving_from_hyperplanes` to build a
    validated instance; the constructor itself trusts its input.
    """

    __slots__ = ("ground_size", "rank", "circuits", "name", "hyperplanes", "labels",
                 "_cmasks", "_rank_cache")

    def __init__(self, ground_size: int, rank: int, circuits: Iterable[Iterable[int]],
                 name: str | None = None, hyperplanes=None, labels=None):
        self.ground_size = ground_size
        self.rank = rank
        self.circuits = tuple(sorted({tuple(sorted(c)) for c in circuits}))
        self.name = name
        # presentation hint for serialization only; never used in comparisons
        self.hyperplanes = None if hyperplanes is None else tuple(tuple(sorted(h)) for h in hyperplanes)
        # labels[i-1] is the element of the parent matroid that element i came from
        self.labels = tuple(labels) if labels is not None else tuple(range(1, ground_size + 1))
        self._cmasks = tuple(mask_of(c) for c in self.circuits)
        self._rank_cache: dict = {}

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<Matroid{tag} ground={self.ground_size} rank={self.rank} circuits={len(self.circuits)}>"

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return (self.ground_size, self.rank, self.circuits) == (other.ground_size, other.rank, other.circuits)

    def __hash__(self):
        return hash((self.ground_size, self.rank, self.circuits))

    @property
    def elements(self) -> tuple:
        return tuple(range(1, self.ground_size + 1))

    @property
    def ground_mask(self) -> int:
        return ((1 << (self.ground_size + 1)) - 1) & ~1

    def _mask(self, s) -> int:
        if isinstance(s, int):
            return s
        m = 0
        for e in s:
            if not isinstance(e, int) or not 1 <= e <= self.ground_size:
                raise ElementError(f"element {e!r} outside 1..{self.ground_size}")
            m |= 1 << e
        return m

    def rank_mask(self, m: int) -> int:
        r = self._rank_cache.get(m)
        if r is None:
            r = self._greedy_rank(m)
            self._rank_cache[m] = r
        return r

    def _greedy_rank(self, m: int) -> int:
        indep = 0
        size = 0
        for e in elements_of(m):
            bit = 1 << e
            cand = indep | bit
            if not any(c & bit and not c & ~cand for c in self._cmasks):
                indep = cand
                size += 1
        return size

    def rank_of(self, s) -> int:
        return self.rank_mask(self._mask(s))

    def is_independent(self, s) -> bool:
        m = self._mask(s)
        return not any(not c & ~m for c in self._cmasks)

    def closure(self, s) -> tuple:
        m = self._mask(s)
        r = self.rank_mask(m)
        return tuple(e for e in self.elements if m >> e & 1 or self.rank_mask(m | 1 << e) == r)

    def circuits_within(self, s) -> tuple:
        m = self._mask(s)
        return tuple(c for c, cm in zip(self.circuits, self._cmasks) if not cm & ~m)

    def restrict(self, s) -> "Matroid":
        """Restriction to ``s``, relabeled to ``1..|s|`` in increasing order.

        ``labels`` of the result maps back to the elements of ``self``.
        """
        m = self._mask(s)
        keep = elements_of(m)
        new = {e: i + 1 for i, e in enumerate(keep)}
        circuits = [[new[e] for e in c] for c in self.circuits_within(m)]
        name = f"{self.name}|{list(keep)}" if self.name else None
        return Matroid(len(keep), self.rank_mask(m), circuits, name=name,
                       labels=[self.labels[e - 1] for e in keep])

    def is_paving(self) -> bool:
        return all(len(c) >= self.rank for c in self.circuits)

    def coloops(self) -> tuple:
        full = self.ground_mask
        return tuple(e for e in self.elements if self.rank_mask(full & ~(1 << e)) < self.rank)


def _check_ground(ground_size: int):
    if not isinstance(ground_size, int) or ground_size < 0:
        raise ElementError(f"ground size must be a nonnegative integer, got {ground_size!r}")
    cap = max_ground()
    if ground_size > cap:
        raise GroundSetTooLarge(
            f"ground set of size {ground_size} exceeds the cap {cap} (set MATROVAR_MAX_GROUND to raise it)")


def _canonical_sets(ground_size: int, sets) -> list:
    out = set()
    for s in sets:
        t = tuple(sorted(set(s)))
        for e in t:
            if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= ground_size:
                raise ElementError(f"element {e!r} outside 1..{ground_size}")
        out.add(t)
    return sorted(out)


def check_circuit_elimination(M: Matroid) -> tuple | None:
    """First violation of circuit elimination as (C1, C2, e), or None."""
    masks = M._cmasks
    for i, j in combinations(range(len(masks)), 2):
        a, b = masks[i], masks[j]
        union = a | b
        for e in elements_of(a & b):
            target = union & ~(1 << e)
            if not any(not c & ~target for c in masks):
                return M.circuits[i], M.circuits[j], e
    return None


def from_circuits(ground_size: int, rank: int, circuits: Iterable[Iterable[int]],
                  name: str | None = None, check_axioms: bool = False, hyperplanes=None) -> Matroid:
    _check_ground(ground_size)
    cs = _canonical_sets(ground_size, circuits)
    for c in cs:
        if len(c) == 0:
            raise AxiomViolation("the empty set cannot be a circuit")
        if len(c) == 1:
            raise LoopError(f"loop {c[0]}: singleton circuits are not allowed")
        if len(c) > rank + 1:
            raise RankError(f"circuit {list(c)} has size {len(c)} > rank + 1 = {rank + 1}")
    masks = [mask_of(c) for c in cs]
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            if i != j and not a & ~b:
                raise AxiomViolation(f"circuit {list(cs[i])} is contained in circuit {list(cs[j])}")
    M = Matroid(ground_size, rank, cs, name=name, hyperplanes=hyperplanes)
    actual = M.rank_mask(M.ground_mask)
    if actual != rank:
        raise RankError(f"declared rank {rank} but the circuits give rank {actual}")
    if check_axioms:
        bad = check_circuit_elimination(M)
        if bad is not None:
            c1, c2, e = bad
            raise AxiomViolation(f"circuit elimination fails for {list(c1)}, {list(c2)} at {e}")
    return M


def paving_from_hyperplanes(ground_size: int, n: int, hyperplanes: Iterable[Iterable[int]],
                            name: str | None = None) -> Matroid:
    """Rank-``n`` paving matroid with the given dependent hyperplanes."""
    _check_ground(ground_size)
    hs = _canonical_sets(ground_size, hyperplanes)
    if ground_size < n + 1:
        raise RankError(f"a rank-{n} paving matroid here needs at least {n + 1} elements")
    for h in hs:
        if len(h) < n:
            raise HyperplaneSizeError(f"hyperplane {list(h)} has fewer than {n} elements")
    hm = [mask_of(h) for h in hs]
    for i, j in combinations(range(len(hs)), 2):
        if popcount(hm[i] & hm[j]) > n - 2:
            raise NotPavingError(
                f"hyperplanes {list(hs[i])} and {list(hs[j])} share {popcount(hm[i] & hm[j])} > {n - 2} elements")
    circuits = []
    for h in hs:
        circuits.extend(combinations(h, n))
    for s in combinations(range(1, ground_size + 1), n + 1):
        m = mask_of(s)
        if all(popcount(m & h) < n for h in hm):
            circuits.append(s)
    return from_circuits(ground_size, n, circuits, name=name, hyperplanes=hs)


def dependent_hyperplanes(M: Matroid) -> list:
    """Closures of the size-rank circuits of a paving matroid."""
    n = M.rank
    return sorted({M.closure(c) for c in M.circuits if len(c) == n})


def uniform(n: int, d: int, name: str | None = None) -> Matroid:
    """U_{n,d}: rank n on d elements."""
    return from_circuits(d, n, combinations(range(1, d + 1), n + 1) if d > n else [], name=name)


def matroid_of_vectors(dim: int, vectors: Mapping[int, Sequence], name: str | None = None) -> Matroid:
    """Matroid of a vector collection; keys must be exactly ``1..len(vectors)``."""
    keys = sorted(vectors)
    if keys != list(range(1, len(keys) + 1)):
        raise ElementError(f"vector labels must be 1..{len(keys)}, got {keys}")
    vs = {k: vector(vectors[k]) for k in keys}
    for k, v in vs.items():
        if len(v) != dim:
            raise DimensionMismatch(f"vector {k} has length {len(v)}, expected {dim}")
        if is_zero(v):
            raise LoopError(f"vector {k} is zero")
    circuits = []
    cmasks = []
    for size in range(2, dim + 2):
        for s in combinations(keys, size):
            m = mask_of(s)
            if any(not c & ~m for c in cmasks):
                continue
            if rank_of_vectors([vs[e] for e in s]) < size:
                circuits.append(s)
                cmasks.append(m)
    rank = rank_of_vectors(list(vs.values()))
    return Matroid(len(keys), rank, circuits, name=name)


@dataclass
class Realization:
    """Vectors for every element of ``matroid`` in dimension ``dim``."""

    matroid: Matroid
    dim: int
    vectors: dict
    verified: bool = False
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vectors = {int(k): vector(v) for k, v in self.vectors.items()}
        for k, v in self.vectors.items():
            if len(v) != self.dim:
                raise DimensionMismatch(f"vector {k} has length {len(v)}, expected {self.dim}")

    def ordered(self) -> list:
        return [self.vectors[e] for e in self.matroid.elements]
