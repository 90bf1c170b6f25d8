"""The eleven acceptance criteria, one test each.

Every test records a one-line verdict; the lines are printed at the end of a
pytest run (see conftest.py) and when this file is run as a script.
"""

import functools
import random
import time
from fractions import Fraction

import pytest

from matrovar.chains import (NILPOTENT, check_deletion_sequence, deletion_sequence, is_forest,
                             is_nilpotent, is_solvable, is_strong_nilpotent, is_weak_nilpotent,
                             lift_constant, lifting_dimension_invariant, nilpotent_chain,
                             solvable_chain)
from matrovar.config import config_report
from matrovar.errors import PreconditionError
from matrovar.exactlinalg import RationalSubspace, kernel_basis, random_vector_avoiding
from matrovar.fixtures import fixture, fixture_names
from matrovar.gca import BracketPolynomial, evaluate_bracket_poly, generate_gm
from matrovar.matroid import matroid_of_vectors
from matrovar.realize import (any_realization, in_circuit_variety, lift, liftability_matrix,
                              lifting_dimension_at, minor_rank_certificate, realize_nilpotent,
                              realize_stable_special, sample_degenerate_collection, sample_lift,
                              sample_outside, stable_check)
from generators import random_paving

pytestmark = pytest.mark.acceptance

RESULTS: dict = {}

WEAK_NILPOTENT = ["nr11", "je9", "three_lines", "sn10"]


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            t0 = time.perf_counter()
            try:
                detail = fn()
            except BaseException as e:
                RESULTS[number] = (False, title, f"{type(e).__name__}: {e}".splitlines()[0][:160],
                                   time.perf_counter() - t0)
                raise
            RESULTS[number] = (True, title, detail or "", time.perf_counter() - t0)
        return run
    return wrap


def summary_lines() -> list:
    out = []
    for n in sorted(RESULTS):
        ok, title, detail, secs = RESULTS[n]
        out.append(f"criterion {n:2d} {'PASS' if ok else 'FAIL'} [{secs:6.2f}s] {title}: {detail}")
    return out


def _realizable():
    out = []
    for name in fixture_names():
        try:
            any_realization(fixture(name), random.Random(0))
        except PreconditionError:
            continue
        out.append(name)
    return out


@criterion(1, "dim invariant on nr11")
def test_c01_dim_invariant():
    t0 = time.perf_counter()
    cert = lifting_dimension_invariant(fixture("nr11"))
    secs = time.perf_counter() - t0
    assert cert.dim_value == 5, cert
    assert cert.constants == [1, 2] and cert.terminal_rank == 2, cert
    assert secs < 1.0, f"took {secs:.2f}s"
    return f"dim 5 = 1 + 2 + 2 in {secs:.3f}s"


@criterion(2, "liftability rank and 7-minors on nr11")
def test_c02_rank_and_minors():
    t0 = time.perf_counter()
    M = fixture("nr11")
    shapes, sampled, available = set(), 0, set()
    for seed in range(20):
        rng = random.Random(seed)
        r = realize_nilpotent(M, rng)
        q = sample_outside(M, r, rng)
        cert = minor_rank_certificate(M, r, q, "thm25", rng, sample=100)
        assert cert["rank"] == 6 == 11 - 5, (seed, cert)
        assert cert["minor_size"] == 7
        assert cert["minors_nonzero"] == 0, (seed, cert)
        shapes.add(tuple(cert["shape"]))
        available.add(cert["minors_available"])
        sampled += cert["minors_sampled"]
    secs = time.perf_counter() - t0
    assert secs < 30, f"took {secs:.1f}s"
    note = ("every size-7 minor checked; the matrix has "
            f"{shapes.pop()[0]} rows so {available.pop()} such minors exist") if available == {0} \
        else f"{sampled} sampled minors all zero"
    return f"rank 6 at 20 seeds; {note}"


@criterion(3, "lifting dimension constant across realizations and lifting points")
def test_c03_constancy():
    seen = {}
    for name in WEAK_NILPOTENT:
        M = fixture(name)
        inv = lifting_dimension_invariant(M).dim_value
        vals = set()
        for seed in range(10):
            rng = random.Random(1000 + seed)
            r = realize_nilpotent(M, rng)
            for _ in range(5):
                vals.add(lifting_dimension_at(M, r, sample_outside(M, r, rng)))
        assert vals == {inv}, (name, vals, inv)
        seen[name] = inv
    return ", ".join(f"{k}={v}" for k, v in seen.items())


@criterion(4, "rank bound |M| - rank(M) for every realizable fixture")
def test_c04_rank_bound():
    names = _realizable()
    worst = {}
    for name in names:
        M = fixture(name)
        for seed in range(20):
            rng = random.Random(seed)
            r = any_realization(M, rng)
            cert = minor_rank_certificate(M, r, sample_outside(M, r, rng), "prop68", rng, sample=0)
            assert cert["rank"] <= M.ground_size - M.rank, (name, seed, cert)
            worst[name] = max(worst.get(name, 0), cert["rank"])
    return f"{len(names)} fixtures x 20 seeds, max rank/bound " + \
        ", ".join(f"{n}:{worst[n]}/{fixture(n).ground_size - fixture(n).rank}" for n in names)


@criterion(5, "bracket generation on three concurrent lines")
def test_c05_brackets():
    t0 = time.perf_counter()
    M = fixture("three_lines")
    res = generate_gm(M, 1)
    B = BracketPolynomial.bracket
    want = B(3, 4, 5) * B(1, 2, 6) - B(3, 4, 6) * B(1, 2, 5)
    assert any(p == want or p == -want for p in res.polynomials), [str(p) for p in res.polynomials]
    for seed in range(20):
        r = realize_nilpotent(M, random.Random(seed))
        for p in res.polynomials:
            assert evaluate_bracket_poly(p, r) == 0, (seed, str(p))
    secs = time.perf_counter() - t0
    assert secs < 5, f"took {secs:.2f}s"
    return f"{len(res.polynomials)} polynomials, all vanish on 20 realizations"


@criterion(6, "classification regressions")
def test_c06_classification():
    F = fixture("fano")
    assert not is_solvable(F) and not is_nilpotent(F)
    je = nilpotent_chain(fixture("je9"))
    assert je.terminated_empty and je.length == 2 and je.chain[2] == ()
    nr = nilpotent_chain(fixture("nr11"))
    assert nr.chain[1:] == [(1, 2, 3, 4, 5, 6), (1, 2), ()], nr.chain
    assert solvable_chain(fixture("quadrilateral")).length == 1
    assert solvable_chain(fixture("three_lines")).length == 2
    sn = fixture("sn10")
    res = is_strong_nilpotent(sn)
    assert res.strong and len(res.sequence) == 4 and check_deletion_sequence(sn, res.sequence)
    assert check_deletion_sequence(sn, [(3, 5, 9, 10), (1, 3, 7, 8), (1, 2, 5, 6), (1, 2, 3, 4)])
    return "fano, je9, nr11, quadrilateral, three_lines, sn10 as expected"


@criterion(7, "realizer round trips")
def test_c07_realizers():
    for name in ("je9", "nr11"):
        M = fixture(name)
        for seed in range(20):
            r = realize_nilpotent(M, random.Random(seed))
            assert matroid_of_vectors(r.dim, r.vectors) == M, (name, seed)
    K = fixture("kvt7")
    for seed in range(20):
        r, rep = realize_stable_special(K, random.Random(seed))
        assert matroid_of_vectors(r.dim, r.vectors) == K, seed
        again = stable_check(K, r)
        assert again.stable and set(again.per_point) == set(K.elements), seed
    return "je9, nr11 nilpotent and kvt7 stable realizations verified at 20 seeds each"


@criterion(8, "kernel lifts stay in the circuit variety, others leave it")
def test_c08_lift_equivalence():
    names = _realizable()
    for name in names:
        M = fixture(name)
        rng = random.Random(name)
        r = any_realization(M, rng)
        q = sample_outside(M, r, rng)
        ker = kernel_basis(liftability_matrix(M).evaluate(r, q))
        K = RationalSubspace.span(ker, M.ground_size)
        outside = 0
        for _ in range(50):
            c = [rng.randint(-50, 50) for _ in ker]
            z = [sum((a * k[j] for a, k in zip(c, ker)), Fraction(0)) for j in range(M.ground_size)]
            assert in_circuit_variety(M, lift(r.vectors, dict(zip(M.elements, z)), q)), name
        while outside < 50 and K.dim < M.ground_size:
            w = [rng.randint(-50, 50) for _ in M.elements]
            if K.contains(w):
                continue
            outside += 1
            assert not in_circuit_variety(M, lift(r.vectors, dict(zip(M.elements, w)), q)), (name, w)
    return f"{len(names)} fixtures, 50 kernel and 50 non-kernel vectors each"


@criterion(9, "embedded collections and the recursion through S_M")
def test_c09_embedding_and_recursion():
    rng = random.Random(9)
    names = ["je9", "three_lines", "u_3_5", "u_2_4", "nr11", "line3_in_p3"]
    done = 0
    while done < 50:
        M = fixture(names[done % len(names)])
        d = M.rank
        r = realize_nilpotent(M, rng)
        n = d + rng.randint(1, 2)
        A = [[rng.randint(-9, 9) for _ in range(d)] for _ in range(n)]
        vs = {e: tuple(sum(A[i][j] * v[j] for j in range(d)) for i in range(n)) for e, v in r.vectors.items()}
        W = RationalSubspace.span(list(vs.values()), n)
        if W.dim != d:
            continue
        q = random_vector_avoiding(n, [W], rng)
        assert lifting_dimension_at(M, vs, q) == d, (M.name, n)
        done += 1
    for name in WEAK_NILPOTENT:
        M = fixture(name)
        S = config_report(M).s_points
        N = M.restrict(S) if S else None
        for _ in range(10):
            r = realize_nilpotent(M, rng)
            q = sample_outside(M, r, rng)
            left = lifting_dimension_at(M, r, q)
            right = lift_constant(M)
            if N is not None:
                right += lifting_dimension_at(N, {i + 1: r.vectors[e] for i, e in enumerate(N.labels)}, q)
            assert left == right, (name, left, right)
    return "50 embedded samples, 40 recursion samples"


@criterion(10, "non-degenerate lifts of degenerate je9 collections")
def test_c10_liftability():
    M = fixture("je9")
    tries = []
    for seed in range(20):
        rng = random.Random(seed)
        vs, q = sample_degenerate_collection(M, rng)
        res = sample_lift(M, vs, q, rng)
        assert res is not None, seed
        assert in_circuit_variety(M, res.vectors)
        assert RationalSubspace.span(list(res.vectors.values()), 3).dim == 3
        tries.append(res.tries)
    return f"20 of 20 lifted, max tries {max(tries)}"


@criterion(11, "implication lattice on fixtures and 100 random paving matroids")
def test_c11_implications():
    rng = random.Random(11)
    ms = [fixture(n) for n in fixture_names()] + [random_paving(rng) for _ in range(100)]
    bad = []
    counts = {"forest": 0, "strong": 0, "nilpotent": 0, "solvable": 0}
    for M in ms:
        nil, sol = is_nilpotent(M), is_solvable(M)
        counts["nilpotent"] += nil
        counts["solvable"] += sol
        if nil and not sol:
            bad.append((M.name, "nilpotent but not solvable"))
        if M.is_paving():
            if is_weak_nilpotent(M) != nil:
                bad.append((M.name, "weak-nilpotent differs from nilpotent"))
            st = is_strong_nilpotent(M)
            counts["strong"] += st.strong
            if st.strong and not nil:
                bad.append((M.name, "strong-nilpotent but not nilpotent"))
            if (deletion_sequence(M, NILPOTENT) is not None) != nil:
                bad.append((M.name, "deletion sequence disagrees with the chain"))
        if M.rank == 3 and not any(len(c) == 2 for c in M.circuits):
            f = is_forest(M).forest
            counts["forest"] += f
            if f and not nil:
                bad.append((M.name, "forest but not nilpotent"))
    assert not bad, bad
    return f"{len(ms)} matroids, 0 counterexamples ({counts})"


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except Exception:
                pass
    print("\n".join(summary_lines()))
