import itertools

import pytest

from hopfkit.based import cosplit_check, engine_orbit, verify_based
from hopfkit.construct import cyclic_group
from hopfkit.families import (
    RefError,
    AbfGroup,
    BFam,
    Dihedral,
    Liu,
    QPlane,
    Taft,
    UepsSl2,
    abf_group,
    bfam,
    dihedral,
    liu,
    parse_ref,
    qplane,
    taft,
    u_positive_char,
    ueps_sl2,
)
from hopfkit.hopf import FdHopf, dual, iso_search, split_algebra_check, verify
from hopfkit.scalars import Rationals, primitive_root

Q = Rationals()


# --- dihedral ----------------------------------------------------------------

def test_dihedral_product_example():
    H = dihedral()
    assert H.product((2, 1), (3, 0)) == {(-1, 1): Q(1)}


def test_dihedral_coproduct_grouplike():
    H = dihedral()
    assert H.coproduct((1, 1)) == {((1, 1), (1, 1)): Q(1)}


def test_dihedral_core_quotient_dim():
    assert dihedral().core_spec(2).dim == 4


# --- Taft --------------------------------------------------------------------

def test_taft_4_2_i_hbar():
    H = taft(4, 2, primitive_root(4))
    assert H.np == 2
    assert H.hbar().dim == 8


def tensor_mul(H, X, Y):
    out = {}
    for (a1, a2), c in X.items():
        for (b1, b2), d in Y.items():
            for u, e in H.product(a1, b1).items():
                for v, f in H.product(a2, b2).items():
                    out[(u, v)] = out.get((u, v), H.field.zero()) + c * d * e * f
    return {k: v for k, v in out.items() if not v.is_zero()}


@pytest.mark.parametrize("n,t", [(2, 1), (3, 1), (4, 2), (4, 1), (6, 4)])
def test_taft_coproduct_of_powers_by_expansion(n, t):
    H = taft(n, t, primitive_root(n))
    one = H.field.one()
    dx = {((0, 1), (0, 0)): one, ((t % n, 0), (0, 1)): one}
    acc = {((0, 0), (0, 0)): one}
    for j in range(1, 6):
        acc = tensor_mul(H, acc, dx)
        assert H.coproduct((0, j)) == acc


def test_taft_sweedler_x_squared():
    H = taft(2, 1, -1)
    one = Q(1)
    assert H.coproduct((0, 2)) == {((0, 2), (0, 0)): one, ((0, 0), (0, 2)): one}


@pytest.mark.parametrize("n,t", [(4, 2), (6, 3), (6, 2)])
def test_taft_cosplit(n, t):
    ok, wit = cosplit_check(taft(n, t, primitive_root(n)), 4)
    assert ok, wit


@pytest.mark.parametrize("n,t", [(4, 2), (6, 2), (6, 3), (3, 1)])
def test_taft_orbit_size(n, t):
    H = taft(n, t, primitive_root(n))
    q = H.q
    want = next(k for k in range(1, n + 1) if q ** (H.np * k) == H.field.one())
    orb, rep = engine_orbit(H, H.field(2))
    assert len(orb) == want == H.orbit_size
    assert rep.holds


def test_taft_rejects_bad_parameters():
    with pytest.raises(ValueError):
        taft(4, 4, primitive_root(4))
    with pytest.raises(ValueError):
        taft(4, 1, -1)


# --- Liu ---------------------------------------------------------------------

@pytest.mark.parametrize("n,w", [(2, 1), (3, 2)])
def test_liu_y_power_reduces(n, w):
    H = liu(n, w, primitive_root(n))
    one = H.field.one()
    y = {(0, 0, 1): one}
    v = H.one()
    for _ in range(n):
        v = H.mul(v, y)
    assert v == {(0, 0, 0): one, (w, 0, 0): -one}


@pytest.mark.parametrize("n,w", [(2, 1), (3, 1), (3, 2)])
def test_liu_hbar_dim_and_iso(n, w):
    H = liu(n, w, primitive_root(n))
    Hb = H.hbar()
    assert Hb.dim == n * n
    src, spec = H.hbar_target()
    assert iso_search(src, Hb, spec, "hopf").found


def test_liu_verify():
    r = verify_based(liu(2, 1, -1), 5)
    assert r.passed, r.failed()


# --- quantum plane ------------------------------------------------------------

@pytest.mark.parametrize("ell,n", [(4, 2), (3, 1), (6, 4)])
def test_qplane_hbar_dim_and_cosplit(ell, n):
    H = qplane(ell, n, primitive_root(ell))
    assert H.hbar().dim == ell * H.lp
    ok, wit = cosplit_check(H, 4)
    assert ok, wit


def test_qplane_dual_decomposition():
    H = qplane(4, 2, primitive_root(4))
    src, spec = H.hbar_dual_target()
    assert iso_search(src, dual(H.hbar()), spec, "algebra").found


def test_qplane_verify():
    r = verify_based(qplane(4, 2, primitive_root(4)), 5)
    assert r.passed, r.failed()


# --- B-family ----------------------------------------------------------------

def test_bfam_dim_36_and_cosplit():
    H = bfam(1, 1, 2, 3)
    assert H.ell == 6
    assert H.hbar().dim == 36
    ok, wit = cosplit_check(H, 4)
    assert ok, wit


def test_bfam_dual_decomposition():
    H = bfam(1, 1, 2, 3)
    src, spec = H.hbar_dual_target()
    assert iso_search(src, dual(H.hbar()), spec, "algebra").found


@pytest.mark.parametrize("ps", [[1, 3, 2], [1, 2, 4], [2, 2, 3]])
def test_bfam_rejects_bad_parameters(ps):
    with pytest.raises(ValueError):
        BFam(1, ps)


# --- U_eps(sl2) --------------------------------------------------------------

def test_ueps_commutator():
    H = ueps_sl2(3)
    e = H.epsilon
    E, F = (0, 0, 1), (1, 0, 0)
    EF = H.product(E, F)
    FE = H.product(F, E)
    comm = dict(EF)
    for k, c in FE.items():
        comm[k] = comm.get(k, H.field.zero()) - c
    comm = {k: c for k, c in comm.items() if not c.is_zero()}
    den = (e - e.inverse()).inverse()
    assert comm == {(0, 1, 0): den, (0, -1, 0): -den}


def test_ueps_counits():
    H = ueps_sl2(3)
    assert H.counit((0, 0, 1)).is_zero()
    assert H.counit((1, 0, 0)).is_zero()
    assert H.counit((0, 1, 0)) == H.field.one()


def test_ueps_verify_low_degree():
    r = verify_based(ueps_sl2(3), 3)
    assert r.passed, r.failed()


@pytest.mark.parametrize("ell", [2, 4, 1])
def test_ueps_rejects_bad_ell(ell):
    with pytest.raises(ValueError):
        ueps_sl2(ell)


# --- abelian-by-finite groups ------------------------------------------------

def abf_c2_sign():
    return abf_group(1, [((1,),), ((-1,),)], cyclic_group(2))


def test_abf_rank1_matches_dihedral():
    A, D = abf_c2_sign(), dihedral()

    def to_d(w):
        (v,), f = w
        return (v, f)

    def map_keys(d):
        return {tuple(to_d(x) for x in k) if isinstance(k[0], tuple) and isinstance(k[0][0], tuple) else to_d(k): c
                for k, c in d.items()}

    words = A.words(4)
    assert sorted(map(to_d, words)) == sorted(D.words(4))
    for u, v in itertools.product(words, repeat=2):
        assert map_keys(A.product(u, v)) == D.product(to_d(u), to_d(v))
    for u in words:
        assert map_keys(A.coproduct(u)) == D.coproduct(to_d(u))
        assert map_keys(A.antipode(u)) == D.antipode(to_d(u))
        assert A.counit(u) == D.counit(to_d(u))


def test_abf_hbar_dual_is_split():
    for H in (abf_c2_sign(), abf_group(2, [((1, 0), (0, 1)), ((0, 1), (1, 0))], cyclic_group(2))):
        Hb = H.hbar()
        assert Hb.dim == 2
        ok, chars = split_algebra_check(dual(Hb))
        assert ok and len(chars) == 2


def test_abf_swap_orbit():
    H = abf_group(2, [((1, 0), (0, 1)), ((0, 1), (1, 0))], cyclic_group(2))
    g = (Q(2), Q(3))
    J = H.orbit_ideal(g)
    orb, rep = engine_orbit(H, g, J)
    got = {tuple(p.values) for p in orb}
    want = {tuple(H.char_value(pt, e) for e in J.basis) for pt in [(Q(2), Q(3)), (Q(3), Q(2))]}
    assert got == want
    assert rep.holds


def test_abf_rejects_non_action():
    with pytest.raises(ValueError):
        AbfGroup(1, [((1,),), ((2,),)], cyclic_group(2))


# --- restricted enveloping in characteristic p ----------------------------------

@pytest.mark.parametrize("p,dim", [(3, 27), (5, 125)])
def test_u_positive_char(p, dim):
    H, meta = u_positive_char(p=p)
    assert H.dim == meta.dim == dim
    assert meta.central and meta.primitive, meta.witnesses
    if p == 3:
        assert verify(dual(H)).is_commutative


# --- parse_ref -----------------------------------------------------------------

@pytest.mark.parametrize("ref,cls", [
    ("dihedral", Dihedral),
    ("taft:4,2,zeta4", Taft),
    ("taft:2,1,-1", Taft),
    ("liu:2,1,-1", Liu),
    ("qplane:4,2,zeta4", QPlane),
    ("bfam:1,1,2,3", BFam),
    ("ueps_sl2:3", UepsSl2),
    ("abf:1:2:-1", AbfGroup),
    ("up:sl2,3", FdHopf),
    ("cyclic:3", FdHopf),
    ("taft_fd:3,1,zeta3", FdHopf),
    ("sweedler", FdHopf),
])
def test_parse_ref(ref, cls):
    assert isinstance(parse_ref(ref), cls)


@pytest.mark.parametrize("ref", ["nope", "taft:4,2", "taft:4,x,zeta4", "taft:4,1,-1", "bfam:1,1,2",
                                 "abf:1:3:-1", "up:gl2,3", "abf:2:2:0,1"])
def test_parse_ref_errors(ref):
    with pytest.raises(RefError):
        parse_ref(ref)


# --- hbar as a quotient -------------------------------------------------------

def test_orbsemi_holds_for_sample_points():
    for H, g in [(dihedral(), Q(2)), (liu(2, 1, -1), Q(3)), (qplane(4, 2, primitive_root(4)), None)]:
        if g is None:
            F = H.field
            g = (F(2), F(3))
        _, rep = engine_orbit(H, g)
        assert rep.holds
