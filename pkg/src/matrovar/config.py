"""Incidence data of a matroid: subspace classes, degrees, S_M, a_p and P_M.

Every function takes an optional ``within`` subset and then works in the
restriction of ``M`` to it, keeping the original element labels. The rank used
in the expected-dimension formula is the rank of that restriction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ElementError
from .matroid import Matroid, elements_of, mask_of


@dataclass(frozen=True)
class SubspaceClass:
    id: int
    points: tuple
    class_rank: int
    representative_circuit: tuple
    closure: tuple = ()

    @property
    def mask(self) -> int:
        return mask_of(self.points)


def _within_mask(M: Matroid, within) -> int:
    if within is None:
        return M.ground_mask
    return M._mask(within)


def subspace_classes(M: Matroid, within=None) -> list:
    """Circuits of size at most the rank, grouped by equal closure.

    Ids are 1-based in the order of the sorted point sets.
    """
    S = _within_mask(M, within)
    n = M.rank_mask(S)
    groups: dict = {}
    for c in M.circuits_within(S):
        if len(c) > n:
            continue
        cm = mask_of(c)
        r = len(c) - 1
        cl = cm | sum(1 << e for e in elements_of(S & ~cm) if M.rank_mask(cm | 1 << e) == r)
        g = groups.setdefault(cl, [0, c])
        g[0] |= cm
        if c < g[1]:
            g[1] = c
    out = sorted((elements_of(pts), len(rep) - 1, rep, elements_of(cl))
                 for cl, (pts, rep) in groups.items())
    return [SubspaceClass(i + 1, *row) for i, row in enumerate(out)]


@dataclass
class ConfigReport:
    ground: tuple
    rank: int
    classes: list
    incidence: dict
    degrees: dict
    s_points: tuple
    p_points: tuple
    expected_dims: dict
    free_points: tuple
    # ids of classes whose point set is smaller than their closure
    closure_mismatch: tuple = field(default=())

    def class_by_id(self, i: int) -> SubspaceClass:
        if not 1 <= i <= len(self.classes):
            raise ElementError(f"unknown class id {i}")
        return self.classes[i - 1]

    def s_of(self, cls: SubspaceClass) -> tuple:
        return tuple(p for p in cls.points if p in set(self.s_points))

    def p_of(self, cls: SubspaceClass) -> tuple:
        return tuple(p for p in cls.points if p in set(self.p_points))

    def to_json(self) -> dict:
        return {
            "ground": list(self.ground),
            "rank": self.rank,
            "classes": [{"id": c.id, "points": list(c.points), "rank": c.class_rank,
                         "representative_circuit": list(c.representative_circuit)}
                        for c in self.classes],
            "incidence": {str(p): list(v) for p, v in self.incidence.items()},
            "degrees": {str(p): d for p, d in self.degrees.items()},
            "s_points": list(self.s_points),
            "p_points": list(self.p_points),
            "expected_dims": {str(p): a for p, a in self.expected_dims.items()},
            "free_points": list(self.free_points),
            "closure_mismatch": list(self.closure_mismatch),
        }


def _a(ranks, n: int) -> int:
    return sum(ranks) - n * (len(ranks) - 1)


def expected_dim_of_set(M: Matroid, L, within=None, classes=None) -> int:
    """a_L for a set of class ids."""
    if classes is None:
        classes = subspace_classes(M, within)
    n = M.rank_mask(_within_mask(M, within))
    ranks = []
    for i in L:
        if not isinstance(i, int) or not 1 <= i <= len(classes):
            raise ElementError(f"unknown class id {i!r}")
        ranks.append(classes[i - 1].class_rank)
    return _a(ranks, n)


def incidence(M: Matroid, p: int, within=None, classes=None) -> tuple:
    if classes is None:
        classes = subspace_classes(M, within)
    return tuple(c.id for c in classes if p in c.points)


def expected_dim(M: Matroid, p: int, within=None, classes=None) -> int:
    S = _within_mask(M, within)
    if not isinstance(p, int) or not S >> p & 1 or p < 1:
        raise ElementError(f"element {p!r} not in the ground set")
    if classes is None:
        classes = subspace_classes(M, within)
    return expected_dim_of_set(M, incidence(M, p, classes=classes), within, classes)


def config_report(M: Matroid, within=None) -> ConfigReport:
    S = _within_mask(M, within)
    n = M.rank_mask(S)
    classes = subspace_classes(M, S)
    pts = elements_of(S)
    inc = {p: tuple(c.id for c in classes if p in c.points) for p in pts}
    deg = {p: len(v) for p, v in inc.items()}
    a = {p: _a([classes[i - 1].class_rank for i in inc[p]], n) for p in pts}
    return ConfigReport(
        ground=pts,
        rank=n,
        classes=classes,
        incidence=inc,
        degrees=deg,
        s_points=tuple(p for p in pts if deg[p] > 1),
        p_points=tuple(p for p in pts if a[p] <= 0),
        expected_dims=a,
        free_points=tuple(p for p in pts if deg[p] == 0),
        closure_mismatch=tuple(c.id for c in classes if c.points != c.closure),
    )


def intersection_bound_holds(M: Matroid) -> bool:
    """For every set L of at least two classes, at most max(0, n - |L|)
    points lie on all classes of L (paving case)."""
    rep = config_report(M)
    n = rep.rank
    counts: dict = {}
    for p, Lp in rep.incidence.items():
        for k in range(2, len(Lp) + 1):
            for L in combinations(Lp, k):
                counts[L] = counts.get(L, 0) + 1
    return all(c <= max(0, n - len(L)) for L, c in counts.items())
