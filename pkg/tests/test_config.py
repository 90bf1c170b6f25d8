import random
from itertools import combinations

import pytest

from matrovar.config import (config_report, expected_dim, expected_dim_of_set, incidence,
                             intersection_bound_holds, subspace_classes)
from matrovar.errors import ElementError
from matrovar.fixtures import fixture, fixture_names
from matrovar.matroid import dependent_hyperplanes, uniform

PAVING = [n for n in fixture_names() if fixture(n).hyperplanes is not None]


def test_uniform_has_no_classes():
    assert subspace_classes(uniform(3, 6)) == []
    rep = config_report(fixture("u_4_6"))
    assert rep.free_points == rep.ground
    assert all(a == 4 for a in rep.expected_dims.values())


def test_three_lines_classes():
    cls = subspace_classes(fixture("three_lines"))
    assert [c.points for c in cls] == [(1, 2, 7), (3, 4, 7), (5, 6, 7)]
    assert [c.class_rank for c in cls] == [2, 2, 2]
    assert [c.id for c in cls] == [1, 2, 3]


def test_nr11_classes_match_hyperplanes():
    M = fixture("nr11")
    cls = subspace_classes(M)
    assert [c.points for c in cls] == sorted(dependent_hyperplanes(M))
    assert {c.class_rank for c in cls} == {3}


@pytest.mark.parametrize("name", fixture_names())
def test_class_invariants(name):
    M = fixture(name)
    for c in subspace_classes(M):
        members = [k for k in M.circuits if len(k) <= M.rank and set(k) <= set(c.points)
                   and M.closure(k) == c.closure]
        assert members
        assert all(len(k) - 1 == c.class_rank for k in members)
        assert set().union(*map(set, members)) == set(c.points)
        assert c.representative_circuit in members


def test_expected_dims_by_hand():
    assert expected_dim(fixture("three_lines"), 7) == 0
    assert expected_dim(fixture("nr11"), 1) == 0
    assert expected_dim(fixture("nr11"), 11) == 3
    assert expected_dim(fixture("line3_in_p3"), 5) == 4
    with pytest.raises(ElementError):
        expected_dim(fixture("three_lines"), 8)
    with pytest.raises(ElementError):
        expected_dim(fixture("three_lines"), 0)


def test_expected_dim_of_set():
    K = fixture("kvt7")
    ids = [c.id for c in subspace_classes(K)]
    for i in ids:
        assert expected_dim_of_set(K, [i]) == 3
    for L in combinations(ids, 2):
        assert expected_dim_of_set(K, L) == 2
    with pytest.raises(ElementError):
        expected_dim_of_set(K, [99])
    M = fixture("je9")
    for p in M.elements:
        assert expected_dim(M, p) == expected_dim_of_set(M, incidence(M, p))


def test_reports_by_hand():
    je = config_report(fixture("je9"))
    assert je.s_points == (1, 2, 3, 4, 5, 6)
    fano = config_report(fixture("fano"))
    assert set(fano.degrees.values()) == {3}
    assert fano.s_points == fano.p_points == fano.ground
    t = config_report(fixture("three_lines"))
    assert t.s_points == t.p_points == (7,)


@pytest.mark.parametrize("name", fixture_names())
def test_report_invariants(name):
    rep = config_report(fixture(name))
    for p in rep.ground:
        assert rep.degrees[p] == len(rep.incidence[p])
        assert (p in rep.s_points) == (rep.degrees[p] > 1)
        assert (p in rep.p_points) == (rep.expected_dims[p] <= 0)
        assert (p in rep.free_points) == (rep.degrees[p] == 0)
    for c in rep.classes:
        assert set(rep.s_of(c)) == set(c.points) & set(rep.s_points)
        assert set(rep.p_of(c)) == set(c.points) & set(rep.p_points)


@pytest.mark.parametrize("name", PAVING)
def test_paving_expected_dim_formula(name):
    M = fixture(name)
    rep = config_report(M)
    n = M.rank
    for p in rep.ground:
        assert rep.expected_dims[p] == n - rep.degrees[p]
        assert (p in rep.p_points) == (rep.degrees[p] >= n)
    for a, b in combinations(rep.classes, 2):
        assert len(set(a.points) & set(b.points)) <= n - 2


@pytest.mark.parametrize("name", fixture_names())
def test_restrictions_shrink_s_and_p(name):
    M = fixture(name)
    full = config_report(M)
    rng = random.Random(name)
    for _ in range(25):
        S = [e for e in M.elements if rng.random() < 0.7]
        if not S:
            continue
        N = M.restrict(S)
        rep = config_report(N)
        back = lambda pts: {N.labels[i - 1] for i in pts}
        assert back(rep.s_points) <= set(full.s_points)
        assert back(rep.p_points) <= set(full.p_points)
        # the within view agrees with the relabelled restriction
        w = config_report(M, S)
        assert set(w.s_points) == back(rep.s_points)
        assert set(w.p_points) == back(rep.p_points)


def test_closure_mismatch_reported_for_nonpaving():
    rep = config_report(fixture("line3_in_p3"))
    assert rep.closure_mismatch == ()
    assert [c.points for c in rep.classes] == [(1, 2, 3)]


def test_intersection_bound():
    assert intersection_bound_holds(fixture("kvt7"))
    assert not intersection_bound_holds(fixture("nonspecial8"))


def test_report_json_keys():
    js = config_report(fixture("three_lines")).to_json()
    assert js["s_points"] == [7] and js["expected_dims"]["7"] == 0
    assert js["classes"][0] == {"id": 1, "points": [1, 2, 7], "rank": 2, "representative_circuit": [1, 2, 7]}
