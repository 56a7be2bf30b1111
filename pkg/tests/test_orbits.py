import cmath
import itertools
import json
import random

import numpy as np
import pytest

from hopfkit.construct import (
    augmentation_ideal,
    cyclic_group,
    diagonal_algebra,
    group_action,
    group_algebra,
    polynomial_quotient,
    smash_product,
    trivial_action,
)
from hopfkit.exactla import Subspace
from hopfkit.orbits import (
    CommAlgFd,
    IdealFd,
    action_from_json,
    action_to_json,
    core,
    frobenius_search,
    frobenius_witness,
    ideal,
    induced_action,
    is_H_simple,
    is_orbitally_semisimple,
    is_stable,
    kernel_ideal,
    nilradical,
    orbit,
    orbits,
    quotient_algebra,
)
from hopfkit.scalars import Cyclotomic, Rationals, primitive_root

from conftest import to_complex

Q = Rationals()


def cyclic_quotient(N: int, field=None):
    """k[b]/(b^N - 1) with C2 acting by b -> b^-1."""
    F = field or Cyclotomic(N)
    A = polynomial_quotient([-1] + [0] * (N - 1) + [1], F, "b")
    C2 = group_algebra(cyclic_group(2), F)
    inv = [{(-j) % N: 1} for j in range(N)]
    act = group_action(C2, A, {0: [{j: 1} for j in range(N)], 1: inv})
    return A, C2, act


def poly_from_roots(roots, F, N=None):
    """prod (b - r), reduced modulo b^N - 1 when N is given."""
    c = [F.one()]
    for r in roots:
        nxt = [F.zero()] * (len(c) + 1)
        for k, a in enumerate(c):
            nxt[k + 1] = nxt[k + 1] + a
            nxt[k] = nxt[k] - r * a
        c = nxt
    out: dict = {}
    for k, a in enumerate(c):
        key = k % N if N else k
        out[key] = out.get(key, F.zero()) + a
    return {k: a for k, a in out.items() if not a.is_zero()}


def b_value(p):
    return p.values[1]


# ---------------------------------------------------------------------------
# independent numerical oracle: all ideals of C[b]/(b^N - 1) are (d) for d | b^N - 1


def _num_ideal(S, N):
    roots = [cmath.exp(2j * cmath.pi * k / N) for k in S]
    d = np.poly(roots)[::-1] if roots else np.array([1.0 + 0j])
    rows = []
    for j in range(N):
        v = np.zeros(N, dtype=complex)
        for k, c in enumerate(d):
            v[(k + j) % N] += c
        rows.append(v)
    return np.array(rows)


def _rank(M):
    return 0 if M.size == 0 else int(np.linalg.matrix_rank(M, tol=1e-7))


def _inversion(M, N):
    return M[:, [(-j) % N for j in range(N)]]


def oracle_stable_ideals(N):
    out = {}
    for r in range(N + 1):
        for S in itertools.combinations(range(N), r):
            I = _num_ideal(S, N)
            if _rank(np.vstack([I, _inversion(I, N)])) == _rank(I):
                out[frozenset(S)] = I
    return out


def oracle_core(S, N, stable):
    """Sum of all stable ideals inside (d_S): the largest stable subideal."""
    I = _num_ideal(S, N)
    inside = [J for T, J in stable.items() if _rank(np.vstack([I, J])) == _rank(I)]
    return np.vstack(inside) if inside else np.zeros((0, N))


def numeric(I: IdealFd, N):
    return np.array([[to_complex(c) for c in row] for row in I.space.basis]) if I.dim else np.zeros((0, N))


def same_space(A, B):
    return _rank(A) == _rank(B) == _rank(np.vstack([A, B])) if A.size and B.size else _rank(A) == _rank(B) == 0


@pytest.mark.parametrize("N", [4, 6, 8])
def test_core_and_orbits_match_bruteforce(N):
    A, C2, act = cyclic_quotient(N)
    zeta = primitive_root(N)
    F = A.field
    pts = CommAlgFd(A)
    assert pts.complete and len(pts.points) == N
    stable = oracle_stable_ideals(N)
    # engine stability agrees with the oracle on every ideal
    for r in range(N + 1):
        for S in itertools.combinations(range(N), r):
            I = ideal(A, [poly_from_roots([zeta**k for k in S], F, N)])
            assert is_stable(act, I) == (frozenset(S) in stable)
            C = core(act, I)
            assert same_space(numeric(C, N), oracle_core(S, N, stable))
    # orbits: the point b -> zeta^k is equivalent to b -> zeta^-k
    for p in pts.points:
        o = orbit(act, p, pts.points)
        k = next(k for k in range(N) if zeta**k == b_value(p))
        assert {b_value(x) for x in o} == {zeta**k, zeta ** (-k % N)}
    rep = is_orbitally_semisimple(act, pts.points, pts.complete)
    assert rep.holds and rep.status == "pass"


@pytest.mark.parametrize("N", [4, 6, 8])
def test_core_laws_on_random_ideals(N):
    A, C2, act = cyclic_quotient(N)
    zeta = primitive_root(N)
    F = A.field
    rng = random.Random(N)
    for _ in range(100):
        S = {k for k in range(N) if rng.random() < 0.5}
        T = S | {k for k in range(N) if rng.random() < 0.3}
        I = ideal(A, [poly_from_roots([zeta**k for k in sorted(T)], F, N)])  # (d_T) inside (d_S)
        J = ideal(A, [poly_from_roots([zeta**k for k in sorted(S)], F, N)])
        assert I <= J
        cI, cJ = core(act, I), core(act, J)
        assert cI <= cJ and cI <= I
        assert core(act, cI) == cI and is_stable(act, cI)


def test_stability_examples():
    A, C2, act = cyclic_quotient(4)
    i = primitive_root(4)
    F = A.field
    assert is_stable(act, IdealFd(Subspace.zero(F, 4)))
    bi = ideal(A, [{0: -i, 1: F.one()}])
    assert not is_stable(act, bi)
    C = core(act, bi)
    assert C == ideal(A, [{0: F.one(), 2: F.one()}]) and A.dim - C.dim == 2
    R = polynomial_quotient([-1, 0, 0, 0, 1], Q, "b")
    K = group_algebra(cyclic_group(3))
    tr = trivial_action(K, R)
    I = ideal(R, [{0: Q(-1), 1: Q(1)}])
    assert is_stable(tr, I) and core(tr, I) == I


def test_orbit_examples():
    A, C2, act = cyclic_quotient(4)
    i = primitive_root(4)
    pts = CommAlgFd(A).points
    p_i = next(p for p in pts if b_value(p) == i)
    assert {b_value(p) for p in orbit(act, p_i, pts)} == {i, -i}
    p_1 = next(p for p in pts if b_value(p) == 1)
    assert [b_value(p) for p in orbit(act, p_1, pts)] == [A.field.one()]
    tr = trivial_action(C2, A)
    assert all(orbit(tr, p, pts) == [p] for p in pts)
    o = orbits(act, pts)
    assert sorted(len(x) for x in o) == [1, 1, 2]
    assert sum(len(x) for x in o) == len(pts)
    for x in o:
        for p in x:
            assert set(orbit(act, p, pts)) == set(x)


def test_orbital_semisimplicity_examples():
    K = group_algebra(cyclic_group(2))
    D = diagonal_algebra(3)
    rep = is_orbitally_semisimple(trivial_action(K, D), CommAlgFd(D).points)
    assert rep.holds
    # trivial action on k[x]/(x^2): core(ker) = (x) = intersection over the orbit
    N = polynomial_quotient([0, 0, 1], Q)
    cN = CommAlgFd(N)
    rep = is_orbitally_semisimple(trivial_action(K, N), cN.points, cN.complete)
    assert rep.holds
    assert rep.per_orbit[0]["core_dim"] == 1 and rep.per_orbit[0]["equals_intersection"]
    rep = is_orbitally_semisimple(trivial_action(K, N), cN.points, complete=False)
    assert rep.status == "conditional"


def test_h_simplicity():
    K = group_algebra(cyclic_group(2))
    k = diagonal_algebra(1)
    assert is_H_simple(trivial_action(K, k), CommAlgFd(k).points)[0]
    A, C2, act = cyclic_quotient(4)
    pts = CommAlgFd(A).points
    assert not is_H_simple(act, pts)[0]
    i = primitive_root(4)
    p_i = next(p for p in pts if b_value(p) == i)
    C = core(act, kernel_ideal(A, p_i))
    ind = induced_action(act, C)
    assert is_H_simple(ind, CommAlgFd(ind.space).points)[0]


def test_frobenius():
    N = polynomial_quotient([0, 0, 1], Q)
    assert frobenius_witness(N, [0, 1])
    assert not frobenius_witness(N, [1, 0])
    K = group_algebra(cyclic_group(2))
    assert frobenius_witness(K, [0, 1])
    A, C2, act = cyclic_quotient(8)
    for p in CommAlgFd(A).points:
        Qc = quotient_algebra(A, core(act, kernel_ideal(A, p)))
        lam = frobenius_search(Qc, seed=0)
        assert lam is not None and frobenius_witness(Qc, lam)


def test_nilradical():
    assert nilradical(diagonal_algebra(3)).dim == 0
    N = polynomial_quotient([0, 0, 1], Q)
    assert nilradical(N) == ideal(N, [{1: Q(1)}])
    K = group_algebra(cyclic_group(2))
    P = smash_product(N, K, trivial_action(K, N))  # k[x]/(x^2) (x) k[b]/(b^2 - 1)
    R = nilradical(P)
    assert P.dim - R.dim == 2
    x = {P.basis_labels.index("x#1"): Q(1)}
    assert R == ideal(P, [x])
    with pytest.raises(ValueError):
        nilradical(N, points=[], complete=True)


def test_action_file_roundtrip():
    A, C2, act = cyclic_quotient(4)
    obj = json.loads(json.dumps(action_to_json(act)))
    back = action_from_json(obj)
    assert back.act == act.act and back.space.mult == A.mult
    obj["hopf"] = "cyclic:2"
    obj["algebra"]["field"] = {"kind": "cyclotomic", "n": 4}
    back = action_from_json(obj, Cyclotomic(4))
    assert back.K.dim == 2
    obj["action"].append([5, 0, [0, 0, 0, 0]])
    with pytest.raises(ValueError):
        action_from_json(obj, Cyclotomic(4))
