import pytest
import sympy

from hopfkit.construct import (
    cyclic_group,
    direct_product,
    group_algebra,
    polynomial_quotient,
    restricted_enveloping,
    sl2,
    taft_fd,
)
from hopfkit.exactla import Subspace
from hopfkit.families import tensor_target
from hopfkit.hopf import (
    FdHopf,
    bidual_check,
    characters,
    convolve,
    dual,
    essential_skew_basis,
    group_likes,
    iso_search,
    skew_primitives,
    tensor_product,
    verify,
)
from hopfkit.scalars import Cyclotomic, FieldMismatchError, PrimeField, Rationals, primitive_root

from oracles import axioms, cocommutative, commutative

Q = Rationals()
M1 = Q(-1)


def sweedler():
    return taft_fd(2, 1, M1)


def kC(m, field=None):
    return group_algebra(cyclic_group(m), field)


BUILTINS = [
    ("kC1", lambda: kC(1)),
    ("kC2", lambda: kC(2)),
    ("kC5", lambda: kC(5)),
    ("sweedler", sweedler),
    ("taft31", lambda: taft_fd(3, 1, primitive_root(3))),
    ("taft42", lambda: taft_fd(4, 2, primitive_root(4))),
    ("taft62", lambda: taft_fd(6, 2, primitive_root(6))),
    ("kC2xT", lambda: tensor_product(kC(2), sweedler())),
]


@pytest.mark.parametrize("name,make", BUILTINS, ids=[b[0] for b in BUILTINS])
def test_verify_agrees_with_dense_oracle(name, make):
    H = make()
    r = verify(H)
    oracle = axioms(H)
    assert r.passed and all(oracle.values())
    assert r.is_commutative == commutative(H)
    assert r.is_cocommutative == cocommutative(H)


def test_verify_examples():
    r = verify(kC(3))
    assert r.passed and r.is_commutative and r.is_cocommutative
    r = verify(sweedler())
    assert r.passed and not r.is_commutative and not r.is_cocommutative


def test_antipode_sabotage():
    T = sweedler()
    Z = T.with_antipode([{} for _ in range(T.dim)])
    r = verify(Z)
    assert "antipode" in r.failed()
    assert axioms(Z)["antipode"] is False


def test_coproduct_sabotage_gives_coassociativity_witness():
    H = kC(2)
    obj = H.to_json()
    g = H.basis_labels.index("g")
    one = H.basis_labels.index("1")
    obj["comult"] = [e for e in obj["comult"] if e[0] != g] + [[g, g, g, "1"], [g, g, one, "1"]]
    bad = FdHopf.from_json(obj)
    r = verify(bad)
    assert "coassociativity" in r.failed()
    assert r.checks["coassociativity"].witness
    assert axioms(bad)["coassociativity"] is False


def test_dual_is_transpose():
    T = sweedler()
    D = dual(T)
    for i in range(T.dim):
        for (j, k), c in T.comult[i].items():
            assert D.mult[(j, k)][i] == c
    for (i, j), v in T.mult.items():
        for k, c in v.items():
            assert D.comult[k][(i, j)] == c
    assert all(axioms(D).values())


@pytest.mark.parametrize("name,make", BUILTINS, ids=[b[0] for b in BUILTINS])
def test_dual_properties(name, make):
    H = make()
    D = dual(H)
    assert verify(D).passed
    assert commutative(D) == cocommutative(H) and cocommutative(D) == commutative(H)
    ok, wit = bidual_check(H)
    assert ok, wit


def test_self_duality():
    H, spec = tensor_target([("C", 2)], Q)
    assert iso_search(H, dual(kC(2)), spec, "hopf").found
    F3 = Cyclotomic(3)
    H, spec = tensor_target([("C", 3)], F3)
    assert iso_search(H, dual(kC(3, F3)), spec, "hopf").found
    T, spec = tensor_target([("T", 2, 1, M1)], Q)
    assert iso_search(T, dual(sweedler()), spec, "hopf").found


def test_tensor_products():
    k = kC(1)
    H = tensor_product(k, sweedler())
    assert H.dim == 4
    T, spec = tensor_target([("T", 2, 1, M1)], Q)
    assert iso_search(T, H, spec, "hopf").found
    src, spec = tensor_target([("C", 2), ("C", 2)], Q)
    K4 = group_algebra(direct_product(cyclic_group(2), cyclic_group(2, "h")))
    assert iso_search(src, K4, spec, "hopf").found
    P = tensor_product(kC(2), sweedler())
    assert P.dim == 8 and verify(P).passed
    with pytest.raises(FieldMismatchError):
        tensor_product(kC(2, PrimeField(3)), kC(2))


def test_group_likes():
    F = Cyclotomic(4)
    assert len(group_likes(kC(4, F)).elements) == 4
    for n, t, q in ((2, 1, M1), (3, 1, primitive_root(3)), (4, 2, primitive_root(4))):
        T = taft_fd(n, t, q)
        gl = group_likes(T)
        g = T.basis_labels.index("g")
        powers = [T.one()]
        for _ in range(n - 1):
            powers.append(T.mul(powers[-1], T.e(g)))
        assert Subspace.span(T.field, T.dim, gl.elements) == Subspace.span(T.field, T.dim, powers)
        assert len(gl.elements) == n
    assert len(group_likes(dual(kC(2))).elements) == 2


def test_group_likes_of_dual_are_characters():
    for H in (kC(3, Cyclotomic(3)), sweedler(), taft_fd(3, 1, primitive_root(3))):
        chars = {tuple(c.values) for c in characters(H).characters}
        D = dual(H)
        gls = {tuple(v.get(k, D.field.zero()) for k in range(D.dim)) for v in group_likes(D).elements}
        assert chars == gls
        for chi in characters(H).characters:
            inv = [sum((chi.values[r] * c for r, c in H.antipode[col].items()), H.field.zero()) for col in range(H.dim)]
            assert convolve(list(chi.values), inv, H) == list(H.counit)


def test_skew_primitives():
    H = kC(2)
    assert skew_primitives(H, H.one(), H.one()).dim == 0
    T = sweedler()
    x, g = T.e(T.basis_labels.index("x")), T.e(T.basis_labels.index("g"))
    V = skew_primitives(T, T.one(), g)
    want = Subspace.span(Q, 4, [[x.get(k, Q.zero()) for k in range(4)],
                                [g.get(k, Q.zero()) - T.one().get(k, Q.zero()) for k in range(4)]])
    assert V == want
    assert len(essential_skew_basis(T, T.one(), g)) == 1
    U = restricted_enveloping(sl2(3))
    P = skew_primitives(U, U.one(), U.one())
    assert P.dim >= 3
    for gen in U.generators:
        assert [gen.get(k, U.field.zero()) for k in range(U.dim)] in P


def test_characters():
    F3 = Cyclotomic(3)
    ch = characters(kC(3, F3))
    assert ch.complete and len(ch.characters) == 3
    for n, t, q in ((2, 1, M1), (4, 2, primitive_root(4))):
        T = taft_fd(n, t, q)
        ch = characters(T)
        assert len(ch.characters) == n
        xi = T.basis_labels.index("x")
        assert all(c.values[xi].is_zero() for c in ch.characters)
    F4 = Cyclotomic(4)
    A = polynomial_quotient([-1, 0, 0, 0, 1], F4, "b")
    ch = characters(A)
    b = sympy.Symbol("b")
    want = {complex(r) for r in sympy.roots(b**4 - 1, b)}
    from conftest import to_complex

    got = {complex(round(to_complex(c.values[1]).real, 9), round(to_complex(c.values[1]).imag, 9)) for c in ch.characters}
    assert got == {complex(round(w.real, 9), round(w.imag, 9)) for w in want}


def test_convolution():
    H = kC(2)
    eps = list(H.counit)
    sign = [Q(1), Q(-1)]
    assert convolve(eps, sign, H) == sign
    assert convolve(sign, sign, H) == eps
    T = sweedler()
    D = dual(T)
    xs = [Q(1) if k == T.basis_labels.index("x") else Q(0) for k in range(4)]
    prod = D.mul(D.e(1), D.e(1))
    assert convolve(xs, xs, T) == [prod.get(k, Q.zero()) for k in range(4)]


def test_iso_search_examples():
    H, spec = tensor_target([("C", 2)], Q)
    r = iso_search(H, kC(2), spec, "hopf")
    assert r.found
    T, spec = tensor_target([("T", 2, 1, M1)], Q)
    src2, _ = tensor_target([("C", 2), ("C", 2)], Q)
    r = iso_search(T, src2, spec, "hopf")
    assert not r.found and "nodes" in r.searched
