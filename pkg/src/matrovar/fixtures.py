"""Named example matroids shipped with the package.

Each entry is matroid JSON plus a short note on where the configuration comes
from and what it is used to check.
"""

from __future__ import annotations

import copy

from .errors import InputError

_H = "hyperplanes"

FIXTURES = {
    "three_lines": {
        "name": "three_lines", "ground_set": 7, "rank": 3,
        "presentation": {"kind": _H, "sets": [[1, 2, 7], [3, 4, 7], [5, 6, 7]]},
        "note": "three concurrent lines through point 7; a forest with P_M = {7}",
    },
    "quadrilateral": {
        "name": "quadrilateral", "ground_set": 6, "rank": 3,
        "presentation": {"kind": _H, "sets": [[1, 2, 3], [3, 4, 5], [1, 5, 6], [2, 4, 6]]},
        "note": "complete quadrilateral: four lines, six points of degree two; solvable chain of length 1",
    },
    "fano": {
        "name": "fano", "ground_set": 7, "rank": 3,
        "presentation": {"kind": _H, "sets": [[1, 3, 6], [2, 3, 5], [1, 2, 4], [4, 5, 6],
                                               [2, 6, 7], [1, 5, 7], [3, 4, 7]]},
        "note": "Fano plane; every point has degree 3; neither solvable nor realizable over Q",
    },
    "je9": {
        "name": "je9", "ground_set": 9, "rank": 3,
        "presentation": {"kind": _H, "sets": [[1, 2, 7], [3, 4, 8], [5, 6, 9], [1, 3, 5], [2, 4, 6]]},
        "note": "nine points on five lines; S_M = {1..6}, nilpotent with M_2 empty",
    },
    "nr11": {
        "name": "nr11", "ground_set": 11, "rank": 4,
        "presentation": {"kind": _H, "sets": [[1, 2, 3, 4], [1, 2, 5, 6], [1, 3, 5, 7], [1, 4, 5, 8],
                                               [2, 3, 5, 9], [2, 6, 10, 11]]},
        "note": "4-paving, nilpotent chain {1..6}, {1,2}, empty; lifting dimension 5",
    },
    "kvt7": {
        "name": "kvt7", "ground_set": 7, "rank": 4,
        "presentation": {"kind": _H, "sets": [[1, 2, 3, 4], [1, 2, 5, 6], [3, 4, 5, 6], [1, 3, 5, 7],
                                               [2, 4, 6, 7]]},
        "note": "4-paving, special with P_M empty; has stable realizations",
    },
    "sn10": {
        "name": "sn10", "ground_set": 10, "rank": 4,
        "presentation": {"kind": _H, "sets": [[1, 2, 3, 4], [1, 2, 5, 6], [1, 3, 7, 8], [3, 5, 9, 10]]},
        "note": "4-paving strong-nilpotent; deletion order 3,5,9,10 / 1378 / 1256 / 1234 is valid",
    },
    "nonspecial8": {
        "name": "nonspecial8", "ground_set": 8, "rank": 4,
        "presentation": {"kind": _H, "sets": [[1, 2, 3, 4], [1, 2, 5, 6], [1, 2, 7, 8]]},
        "note": "three hyperplanes through the pair {1,2}; nilpotent but not special",
    },
    "line3_in_p3": {
        "name": "line3_in_p3", "ground_set": 5, "rank": 4,
        "presentation": {"kind": "circuits", "sets": [[1, 2, 3]]},
        "note": "three collinear points plus two free points in rank 4; not paving",
    },
    "u_2_4": {
        "name": "u_2_4", "ground_set": 4, "rank": 2,
        "presentation": {"kind": "circuits", "sets": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]},
        "note": "uniform matroid U(2,4)",
    },
    "u_3_5": {
        "name": "u_3_5", "ground_set": 5, "rank": 3,
        "presentation": {"kind": _H, "sets": []},
        "note": "uniform matroid U(3,5); no subspace classes",
    },
    "u_4_6": {
        "name": "u_4_6", "ground_set": 6, "rank": 4,
        "presentation": {"kind": _H, "sets": []},
        "note": "uniform matroid U(4,6)",
    },
}


def fixture_names() -> list:
    return sorted(FIXTURES)


def fixture_json(name: str) -> dict:
    if name not in FIXTURES:
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    return copy.deepcopy(FIXTURES[name])


def fixture(name: str):
    from .serialize import matroid_from_json
    return matroid_from_json(fixture_json(name))
