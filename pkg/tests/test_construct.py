import itertools
import json

import pytest

from hopfkit.construct import (
    CocycleError,
    GroupTable,
    HopfIdealError,
    ModuleAlgebraError,
    RestrictedLie,
    abelian_rlie,
    adjoint_action,
    augmentation_ideal,
    center,
    crossed_product,
    cyclic_group,
    diagonal_algebra,
    dihedral_group,
    direct_product,
    generated_ideal,
    group_action,
    group_algebra,
    is_normal,
    module_algebra_check,
    polynomial_quotient,
    quotient_hopf,
    restricted_enveloping,
    sl2,
    smash_product,
    symmetric_group,
    taft_fd,
    trivial_action,
)
from hopfkit.exactla import Subspace, rank
from hopfkit.families import Dihedral, Taft, tensor_target
from hopfkit.based import hbar_from_based
from hopfkit.hopf import characters, group_likes, iso_search, verify
from hopfkit.scalars import Cyclotomic, PrimeField, Rationals, primitive_root

from oracles import axioms

Q = Rationals()


def vec(H, v):
    return [v.get(k, H.field.zero()) for k in range(H.dim)]


def lab(H, s):
    return H.e(H.basis_labels.index(s))


def test_group_algebras():
    C2 = group_algebra(cyclic_group(2))
    assert C2.dim == 2 and len(group_likes(C2).elements) == 2
    V = group_algebra(direct_product(cyclic_group(2), cyclic_group(2, "h")))
    r = verify(V)
    assert r.is_cocommutative and len(characters(V).characters) == 4
    S3 = group_algebra(symmetric_group(3), Cyclotomic(3))
    r = verify(S3)
    assert r.passed and not r.is_commutative and r.is_cocommutative
    assert len(characters(S3).characters) == 2
    for G in (cyclic_group(5), dihedral_group(4), symmetric_group(3)):
        H = group_algebra(G)
        for a in range(G.order):
            assert H.S(H.e(a)) == H.e(G.inverse[a])


def test_invalid_group_table():
    from hopfkit.construct import GroupTable

    with pytest.raises(ValueError):
        GroupTable.from_mult([[0, 1], [0, 1]])


def test_taft_examples():
    T = taft_fd(2, 1, Q(-1))
    assert T.dim == 4 and verify(T).passed
    w = primitive_root(3)
    T3 = taft_fd(3, 1, w)
    assert T3.dim == 9 and verify(T3).passed
    S2 = [T3.S(T3.S(T3.e(i))) for i in range(9)]
    assert any(S2[i] != T3.e(i) for i in range(9))
    gx, gx2 = lab(T3, "gx"), lab(T3, "gx^2")
    assert T3.mul(gx, gx2) == {}
    g, x = lab(T3, "g"), lab(T3, "x")
    # xg = q gx
    assert T3.mul(x, g) == {k: w * c for k, c in T3.mul(g, x).items()}
    with pytest.raises(ValueError):
        taft_fd(3, 1, Q(-1))


def test_taft_nilpotency_order():
    # x^m = 0 with m = n / gcd(n, t)
    T = taft_fd(4, 2, primitive_root(4))
    assert T.dim == 8
    x = lab(T, "x")
    assert x and T.mul(x, x) == {}
    T6 = taft_fd(6, 3, primitive_root(6))
    assert T6.dim == 12


def test_restricted_enveloping():
    A = restricted_enveloping(abelian_rlie(3))
    assert A.dim == 3
    x = A.generators[0]
    assert A.mul(x, x) and A.mul(A.mul(x, x), x) == {}
    U5 = restricted_enveloping(sl2(5))
    assert U5.dim == 125
    U3 = restricted_enveloping(sl2(3))
    r = verify(U3)
    assert r.passed and r.is_cocommutative and U3.dim == 27


def test_augmentation_ideal():
    C2 = group_algebra(cyclic_group(2))
    assert augmentation_ideal(C2) == Subspace.span(Q, 2, [[-1, 1]])
    T = taft_fd(2, 1, Q(-1))
    one = T.one()
    want = [vec(T, {**{k: -c for k, c in one.items()}, **lab(T, "g")}), vec(T, lab(T, "x")), vec(T, lab(T, "gx"))]
    assert augmentation_ideal(T) == Subspace.span(Q, 4, want)
    A = restricted_enveloping(abelian_rlie(3))
    x = A.generators[0]
    assert augmentation_ideal(A) == Subspace.span(A.field, 3, [vec(A, x), vec(A, A.mul(x, x))])


def test_adjoint_action():
    C3 = group_algebra(cyclic_group(3))
    ad = adjoint_action(C3)
    for h, a in itertools.product(range(3), repeat=2):
        assert ad.apply(C3.e(h), C3.e(a)) == {a: C3.counit[h]}
    w = primitive_root(3)
    T = taft_fd(3, 1, w)
    ad = adjoint_action(T)
    x = lab(T, "x")
    assert ad.apply(lab(T, "g"), x) == {k: c * w.inverse() for k, c in x.items()}
    assert module_algebra_check(T, T, ad).passed
    C2 = group_algebra(cyclic_group(2))
    ad2 = adjoint_action(C2)
    assert all(ad2.apply(C2.e(h), C2.e(a)) == C2.e(a) for h in range(2) for a in range(2))


def test_is_normal():
    T = taft_fd(2, 1, Q(-1))
    ok, bad = is_normal(T, Subspace.span(Q, 4, [vec(T, T.one())]))
    assert ok and not bad
    Z = center(T)
    assert is_normal(T, Z)[0]
    with pytest.raises(ValueError):
        is_normal(T, Subspace.span(Q, 4, [vec(T, lab(T, "g"))]))


def test_quotients():
    T = taft_fd(2, 1, Q(-1))
    Z = Subspace.zero(Q, 4)
    assert quotient_hopf(T, Z).dim == 4
    I = generated_ideal(T, [lab(T, "x")])
    Qt = quotient_hopf(T, I)
    src, spec = tensor_target([("C", 2)], Q)
    assert Qt.dim == 2 and iso_search(src, Qt, spec, "hopf").found
    with pytest.raises(HopfIdealError) as ei:
        quotient_hopf(T, generated_ideal(T, [{**lab(T, "g"), **{0: Q(-2)}}]))
    assert "not a Hopf ideal" in str(ei.value)
    # T(4,2,i) truncated at x^2: dim n n' = 8
    assert hbar_from_based(Taft(4, 2, primitive_root(4))).dim == 8


def test_quotient_of_finite_shadow_matches_hbar():
    # k D_8 = k[b]/(b^4 - 1) # kC2; quotient by A+H is the declared Hbar of the dihedral family
    H = group_algebra(dihedral_group(4))
    b = lab(H, "r^1")
    I = generated_ideal(H, [{**b, H.basis_labels.index("1"): Q(-1)}])
    Hb = quotient_hopf(H, I)
    src, spec = tensor_target([("C", 2)], Q)
    assert iso_search(src, Hb, spec, "hopf").found
    assert iso_search(src, Dihedral().hbar(), spec, "hopf").found


def test_smash_products():
    C2 = group_algebra(cyclic_group(2))
    R = polynomial_quotient([-1, 0, 1], Q, "b")
    neg = group_action(C2, R, {0: [{0: 1}, {1: 1}], 1: [{0: 1}, {1: -1}]})
    S = smash_product(R, C2, neg)
    assert S.dim == 4 and verify(S).passed and not S.is_commutative()
    bi = S.basis_labels.index("b#1")
    ai = S.basis_labels.index("1#g")
    assert S.mul(S.e(ai), S.e(bi)) == {S.basis_labels.index("b#g"): Q(-1)}
    D = diagonal_algebra(2)
    swap = group_action(C2, D, {0: [{0: 1}, {1: 1}], 1: [{1: 1}, {0: 1}]})
    assert center(smash_product(D, C2, swap)).dim == 1
    # trivial action gives the tensor product algebra
    R3 = group_algebra(cyclic_group(3))
    P = smash_product(R3, C2, trivial_action(C2, R3))
    for (r, t), (r2, t2) in itertools.product(itertools.product(range(3), range(2)), repeat=2):
        prod = P.mul(P.e(r * 2 + t), P.e(r2 * 2 + t2))
        want = {((r + r2) % 3) * 2 + (t + t2) % 2: Q(1)}
        assert prod == want
    bad = group_action(C2, D, {0: [{0: 1}, {1: 1}], 1: [{0: 1}, {0: 1, 1: 1}]})
    assert not module_algebra_check(C2, D, bad).passed
    with pytest.raises(ModuleAlgebraError):
        smash_product(D, C2, bad)


def _sigma(T, R, vals):
    return {(s, t): {0: R.field(vals[(s, t)])} for s in range(T.dim) for t in range(T.dim)}


def test_crossed_products():
    C2 = group_algebra(cyclic_group(2))
    R = diagonal_algebra(2)
    act = group_action(C2, R, {0: [{0: 1}, {1: 1}], 1: [{1: 1}, {0: 1}]})
    one = R.one()
    triv = {(s, t): dict(one) for s in range(2) for t in range(2)}
    assert crossed_product(R, C2, act, triv).mult == smash_product(R, C2, act).mult
    k = diagonal_algebra(1)
    tr = trivial_action(C2, k)
    sig = _sigma(C2, k, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1})
    A = crossed_product(k, C2, tr, sig)
    assert verify(A).passed and len(characters(A).characters) == 0
    k4 = diagonal_algebra(1, Cyclotomic(4))
    C24 = group_algebra(cyclic_group(2), Cyclotomic(4))
    A4 = crossed_product(k4, C24, trivial_action(C24, k4), _sigma(C24, k4, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1}))
    assert len(characters(A4).characters) == 2
    with pytest.raises(CocycleError) as ei:
        crossed_product(k, C2, tr, _sigma(C2, k, {(0, 0): 1, (0, 1): 2, (1, 0): 1, (1, 1): 1}))
    assert ei.value.witness is not None


@pytest.mark.parametrize("make", [
    lambda: group_algebra(symmetric_group(3)),
    lambda: taft_fd(4, 2, primitive_root(4)),
    lambda: taft_fd(3, 1, primitive_root(3)),
    lambda: restricted_enveloping(sl2(3)),
])
def test_antipode_bijective(make):
    H = make()
    cols = [vec(H, H.S(H.e(i))) for i in range(H.dim)]
    assert rank(H.field, cols, H.dim) == H.dim
    if H.field.kind != "gf":
        assert all(axioms(H).values())


def test_group_and_rlie_json_roundtrip():
    G = dihedral_group(4)
    G2 = GroupTable.from_json(json.loads(json.dumps(G.to_json())))
    assert G2.mult == G.mult and G2.labels == G.labels
    L = sl2(5)
    L2 = RestrictedLie.from_json(json.loads(json.dumps(L.to_json())))
    assert restricted_enveloping(L2).dim == 125 and L2.names == L.names
    bad = L.to_json()
    bad["rlie"]["brackets"].append([0, 0, 1, 1])
    with pytest.raises(ValueError):
        RestrictedLie.from_json(bad)
