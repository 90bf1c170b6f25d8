"""Nilpotent and solvable chains and the classifications built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .config import config_report, subspace_classes
from .errors import DomainError, PreconditionError
from .matroid import Matroid, elements_of, mask_of

NILPOTENT = "nilpotent"
SOLVABLE = "solvable"


@dataclass
class ChainResult:
    kind: str
    chain: list
    terminated_empty: bool
    length: int | None
    stabilized_at: tuple | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "chain": [list(s) for s in self.chain],
            "terminated_empty": self.terminated_empty,
            "length": self.length,
            "stabilized_at": None if self.stabilized_at is None else list(self.stabilized_at),
        }


def _chain(M: Matroid, kind: str) -> ChainResult:
    cur = M.ground_mask
    chain = [elements_of(cur)]
    for _ in range(M.ground_size + 1):
        rep = config_report(M, cur)
        nxt = mask_of(rep.s_points if kind == NILPOTENT else rep.p_points)
        if nxt == 0:
            chain.append(())
            return ChainResult(kind, chain, True, len(chain) - 1)
        if nxt == cur:
            return ChainResult(kind, chain, False, None, elements_of(cur))
        chain.append(elements_of(nxt))
        cur = nxt
    raise AssertionError("chain failed to stabilize")  # unreachable: strictly decreasing


def nilpotent_chain(M: Matroid) -> ChainResult:
    if M.ground_size == 0:
        return ChainResult(NILPOTENT, [()], True, 0)
    return _chain(M, NILPOTENT)


def solvable_chain(M: Matroid) -> ChainResult:
    if M.ground_size == 0:
        return ChainResult(SOLVABLE, [()], True, 0)
    return _chain(M, SOLVABLE)


def is_nilpotent(M: Matroid) -> bool:
    return nilpotent_chain(M).terminated_empty


def is_solvable(M: Matroid) -> bool:
    return solvable_chain(M).terminated_empty


def _require_point_line(M: Matroid):
    if M.rank != 3:
        raise DomainError(f"point-line configurations have rank 3, got rank {M.rank}")
    if any(len(c) == 2 for c in M.circuits):
        raise DomainError("point-line configurations must be simple (no parallel pairs)")


@dataclass
class ForestResult:
    forest: bool
    # alternating [p1, l1, p2, l2, ...], lines given as point tuples
    cycle: list | None = None

    def __bool__(self):
        return self.forest


def is_forest(M: Matroid) -> ForestResult:
    """Search the point/line incidence graph for a cycle."""
    _require_point_line(M)
    lines = [c.points for c in subspace_classes(M)]
    # bipartite graph: points are ('p', e), lines are ('l', i)
    adj: dict = {}
    for i, l in enumerate(lines):
        for p in l:
            adj.setdefault(("p", p), []).append(("l", i))
            adj.setdefault(("l", i), []).append(("p", p))
    parent: dict = {}
    for start in sorted(adj):
        if start in parent:
            continue
        parent[start] = None
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v == parent[u]:
                    continue
                if v in parent:
                    return ForestResult(False, _cycle_witness(u, v, parent, lines))
                parent[v] = u
                stack.append(v)
    return ForestResult(True)


def _cycle_witness(u, v, parent, lines) -> list:
    def path(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pu, pv = path(u), path(v)
    common = set(pu) & set(pv)
    a = [x for x in pu if x not in common]
    b = [x for x in pv if x not in common]
    top = next(x for x in pu if x in common)
    nodes = a + [top] + b[::-1]
    # rotate so the cycle starts at a point
    k = next(i for i, x in enumerate(nodes) if x[0] == "p")
    nodes = nodes[k:] + nodes[:k]
    return [x[1] if x[0] == "p" else lines[x[1]] for x in nodes]


def is_forest_by_peeling(M: Matroid) -> bool:
    """Repeatedly discard a line meeting the remaining lines in at most one point."""
    _require_point_line(M)
    lines = [set(c.points) for c in subspace_classes(M)]
    while lines:
        for i, l in enumerate(lines):
            others = set().union(*(m for j, m in enumerate(lines) if j != i))
            if len(l & others) <= 1:
                del lines[i]
                break
        else:
            return False
    return True


def is_weak_nilpotent(M: Matroid) -> bool:
    return any(M.rank_of(s) < M.rank for s in nilpotent_chain(M).chain)


def _require_paving(M: Matroid):
    if not M.is_paving():
        raise DomainError("this operation needs a paving matroid")


def _hyperplanes_in(M: Matroid, T: int, hyps) -> tuple:
    """Dependent hyperplanes surviving in T, as (mask, points) pairs, plus degrees.

    The rank n of M stays fixed: a hyperplane survives while it keeps at least
    n points, even when T itself has dropped rank.
    """
    n = M.rank
    live = [(h & T, elements_of(h & T)) for h in hyps if (h & T).bit_count() >= n]
    deg = {p: 0 for p in elements_of(T)}
    for _, pts in live:
        for p in pts:
            deg[p] += 1
    return live, deg


def deletion_sequence(M: Matroid, mode: str = NILPOTENT) -> list | None:
    """Greedy hyperplane deletion down to a submatroid with no dependent hyperplanes.

    Each step picks the first surviving hyperplane l (in sorted order) with
    |l ∩ X| <= n - 1, where X is the set of points of degree > 1 (nilpotent
    mode) or of degree >= n (solvable mode, i.e. a_p <= 0), and keeps l ∩ X.
    Returns None when stuck.
    """
    if mode not in (NILPOTENT, SOLVABLE):
        raise ValueError(f"mode must be {NILPOTENT!r} or {SOLVABLE!r}")
    _require_paving(M)
    n = M.rank
    hyps = [c.mask for c in subspace_classes(M)]
    T = M.ground_mask
    seq = []
    while True:
        live, deg = _hyperplanes_in(M, T, hyps)
        if not live:
            return seq
        cut = 2 if mode == NILPOTENT else n
        X = mask_of(p for p, d in deg.items() if d >= cut)
        for h, pts in live:
            if (h & X).bit_count() <= n - 1:
                seq.append(pts)
                T = (T & ~h) | (h & X)
                break
        else:
            return None


def _strong_ok(pts, deg, n) -> bool:
    ds = [deg[p] for p in pts]
    return all(sum(d >= n - k for d in ds) <= k for k in range(n - 1))


@dataclass
class StrongResult:
    strong: bool
    sequence: list | None = None

    def __bool__(self):
        return self.strong


def is_strong_nilpotent(M: Matroid) -> StrongResult:
    """Backtracking search for a hyperplane sequence meeting the degree condition.

    A surviving hyperplane l of the current submatroid T qualifies when, for
    every 0 <= k <= n-2, at most k points of l have degree >= n-k in T.
    Deleting l keeps the points of l of degree > 1.
    """
    _require_paving(M)
    n = M.rank
    hyps = [c.mask for c in subspace_classes(M)]
    dead: set = set()

    def search(T):
        live, deg = _hyperplanes_in(M, T, hyps)
        if not live:
            return []
        if T in dead:
            return None
        S = mask_of(p for p, d in deg.items() if d > 1)
        for h, pts in live:
            if _strong_ok(pts, deg, n):
                rest = search((T & ~h) | (h & S))
                if rest is not None:
                    return [pts] + rest
        dead.add(T)
        return None

    seq = search(M.ground_mask)
    return StrongResult(seq is not None, seq)


def check_deletion_sequence(M: Matroid, sequence, mode: str = "strong") -> bool:
    """Replay ``sequence`` and check every step plus the final emptiness.

    ``mode`` is "strong", NILPOTENT or SOLVABLE.
    """
    _require_paving(M)
    n = M.rank
    hyps = [c.mask for c in subspace_classes(M)]
    T = M.ground_mask
    for pts in sequence:
        live, deg = _hyperplanes_in(M, T, hyps)
        want = tuple(sorted(pts))
        h = next((h for h, p in live if p == want), None)
        if h is None:
            return False
        S = mask_of(p for p, d in deg.items() if d > 1)
        if mode == "strong":
            if not _strong_ok(want, deg, n):
                return False
            keep = S
        else:
            keep = S if mode == NILPOTENT else mask_of(p for p, d in deg.items() if d >= n)
            if (h & keep).bit_count() > n - 1:
                return False
        T = (T & ~h) | (h & keep)
    return not _hyperplanes_in(M, T, hyps)[0]


@dataclass
class SpecialResult:
    special: bool
    witness: dict | None = None

    def __bool__(self):
        return self.special


def is_special(M: Matroid) -> SpecialResult:
    ch = solvable_chain(M)
    if not ch.terminated_empty:
        raise PreconditionError("special is only defined for solvable matroids",
                                witness={"stabilized_at": list(ch.stabilized_at)})
    for j in range(len(ch.chain) - 1):
        level, nxt = ch.chain[j], set(ch.chain[j + 1])
        rep = config_report(M, level)
        for q in level:
            if q in nxt:
                continue
            Lq = rep.incidence[q]
            for k in range(1, len(Lq) + 1):
                for L in combinations(Lq, k):
                    inter = mask_of(rep.ground)
                    for i in L:
                        inter &= rep.classes[i - 1].mask
                    r = M.rank_mask(inter)
                    aL = sum(rep.classes[i - 1].class_rank for i in L) - rep.rank * (k - 1)
                    if r > aL:
                        return SpecialResult(False, {
                            "level": j, "point": q,
                            "classes": [list(rep.classes[i - 1].points) for i in L],
                            "intersection": list(elements_of(inter)),
                            "intersection_rank": r, "expected": aL,
                        })
    return SpecialResult(True)


@dataclass
class DimCertificate:
    chain_prefix: list
    constants: list
    terminal_rank: int
    dim_value: int = field(init=False)

    def __post_init__(self):
        self.dim_value = sum(self.constants) + self.terminal_rank

    def to_json(self) -> dict:
        return {"chain_prefix": [list(s) for s in self.chain_prefix], "constants": self.constants,
                "terminal_rank": self.terminal_rank, "dim": self.dim_value}


def lift_constant(M: Matroid, within=None) -> int:
    """Sum over classes l of rank(l) - rank(S ∩ l), plus the number of degree-0 points."""
    rep = config_report(M, within)
    S = mask_of(rep.s_points)
    return (sum(c.class_rank - M.rank_mask(c.mask & S) for c in rep.classes)
            + len(rep.free_points))


def lifting_dimension_invariant(M: Matroid) -> DimCertificate:
    ch = nilpotent_chain(M)
    k = next((j for j, s in enumerate(ch.chain) if M.rank_of(s) < M.rank), None)
    if k is None:
        raise PreconditionError("matroid is not weak-nilpotent",
                                witness={"stabilized_at": list(ch.stabilized_at or ())})
    constants = [lift_constant(M, mask_of(ch.chain[j - 1])) for j in range(1, k + 1)]
    return DimCertificate(ch.chain[:k + 1], constants, M.rank_of(ch.chain[k]))
