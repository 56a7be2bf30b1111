"""Acceptance criteria, one test (and one PASS/FAIL line) per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
"acceptance criteria" section of the terminal summary.
"""

import time
from functools import lru_cache

from hopfkit.based import CofiniteFunctional, cosplit_check, engine_orbit, hat_space, span_rank
from hopfkit.construct import taft_fd
from hopfkit.families import bfam, dihedral, liu, qplane, taft, tensor_target, u_positive_char, ueps_sl2
from hopfkit.hopf import dual, iso_search
from hopfkit.scalars import Rationals, primitive_root
from hopfkit.suites import run_suite, samples

import test_orbits


@lru_cache(maxsize=None)
def suite(name, *args, N=6):
    return run_suite(name, list(args), N, 0, 1, None)


def statuses(report):
    return {c.name: c.status for c in report.checks}


def failing(report, names=None):
    return [c.name for c in report.checks if c.status != "pass" and (names is None or c.name in names)]


def test_criterion_01_axioms(acceptance):
    t0 = time.perf_counter()
    r = run_suite("axioms", [], 6, 0, 1, None)
    dt = time.perf_counter() - t0
    names = [c.name for c in r.checks]
    expected = [f"kC{m}" for m in range(1, 13)] + [
        "T_f(2,1,-1)", "T_f(3,1,zeta3)", "T_f(4,2,zeta4)", "T_f(6,2,zeta6)", "T_f(6,3,zeta6)",
        "u(sl2) p=3", "u(sl2) p=5"]
    verified = all(c.details["verify"] for c in r.checks)
    acceptance(1, set(expected) <= set(names) and verified and dt < 60,
               f"{len(names)} objects, {dt:.1f}s, failing={failing(r)}")


def test_criterion_02_bidual(acceptance):
    r = run_suite("axioms", [], 6, 0, 1, None)
    hopf_objs = [c for c in r.checks if c.details["bidual"] is not None]
    bad = [c.name for c in hopf_objs if c.details["bidual"] is not True]
    acceptance(2, len(hopf_objs) >= 20 and not bad, f"{len(hopf_objs)} Hopf objects, bad={bad}")


def test_criterion_03_taft_self_dual(acceptance):
    found = {}
    for n in (2, 3, 4):
        q = primitive_root(n)
        T, spec = tensor_target([("T", n, 1, q)], q.field)
        found[n] = iso_search(T, dual(taft_fd(n, 1, q)), spec, "hopf").found
    acceptance(3, all(found.values()), str(found))


def test_criterion_04_restricted_sl2(acceptance):
    rows = {}
    for p in (3, 5):
        H, meta = u_positive_char(p=p)
        D = dual(H)
        commutative = all(D.mult.get((i, j), {}) == D.mult.get((j, i), {}) for i in range(D.dim) for j in range(i))
        rows[p] = (H.dim == p**3, commutative, meta.central and meta.primitive)
    acceptance(4, all(all(v) for v in rows.values()), str(rows))


def test_criterion_05_dihedral(acceptance):
    r = suite("dihedral-dual")
    parts = {"a": "coproduct_formulas", "b": "hat_dimensions", "c": "product_law_equality", "d": "hbar_star_split"}
    st = statuses(r)
    # independent count for (b): rank of the hat functionals on words
    H = dihedral()
    probes = [H.w(w) for w in H.words(6)]
    ranks = {g: span_rank(hat_space(H, g), probes, H.field) for g in (2, 3, 1, -1)}
    dims_ok = ranks == {2: 4, 3: 4, 1: 2, -1: 2}
    ok = all(st.get(v) == "pass" for v in parts.values()) and dims_ok
    acceptance(5, ok, f"{ {k: st.get(v) for k, v in parts.items()} } ranks={ranks}")


def test_criterion_06_orbit_engine(acceptance):
    bad = []
    for N in (4, 6, 8):
        for check in (test_orbits.test_core_and_orbits_match_bruteforce, test_orbits.test_core_laws_on_random_ideals):
            try:
                check(N)
            except AssertionError:
                bad.append(f"{check.__name__}[{N}]")
    acceptance(6, not bad, f"N=4,6,8 vs brute-force oracle and 100 random ideals each; failures={bad}")


def _point_functionals(H, g):
    spec = H.point_spec(g)
    F = H.field
    return [CofiniteFunctional(H, spec, [F.one() if j == i else F.zero() for j in range(spec.dim)])
            for i in range(spec.dim)]


def test_criterion_07_dimension_law(acceptance):
    fams = {
        "dihedral-dual": dihedral(),
        "taft-dual": taft(4, 2, primitive_root(4)),
        "liu-dual": liu(2, 1, -1),
        "qplane-dual": qplane(4, 2, primitive_root(4)),
    }
    rows, ok = {}, True
    for name, H in fams.items():
        law = statuses(suite(name, "taft:4,2,zeta4") if name == "taft-dual" else suite(name))
        dh = H.hbar().dim
        probes = [H.w(w) for w in H.words(5)]
        for g in samples(H)["points"]:
            orb, _ = engine_orbit(H, g)
            r_pt = span_rank(_point_functionals(H, g), probes, H.field)
            r_hat = span_rank(hat_space(H, g), probes, H.field)
            good = r_pt == dh and r_hat == len(orb) * dh
            ok = ok and good
            if not good:
                rows[f"{name}@{g}"] = (r_pt, r_hat, len(orb), dh)
        ok = ok and law["dimension_law"] == "pass"
    acceptance(7, ok, f"mismatches={rows}")


def test_criterion_08_cosplit(acceptance):
    cases = [
        (dihedral(), 6), (taft(4, 2, primitive_root(4)), 6), (taft(2, 1, -1), 6), (taft(3, 1, primitive_root(3)), 6),
        (liu(2, 1, -1), 6), (qplane(4, 2, primitive_root(4)), 6), (bfam(1, 1, 2, 3), 6), (ueps_sl2(3), 4),
    ]
    bad = {}
    for H, N in cases:
        ok, wit = cosplit_check(H, N)
        if not ok:
            bad[H.name] = wit
    acceptance(8, not bad, f"{len(cases)} families, failures={bad}")


def test_criterion_09_decompositions(acceptance):
    Q = Rationals()
    T = taft(4, 2, primitive_root(4))
    src, spec = tensor_target([("C", 2), ("T", 2, 1, T.field(-1))], T.field)
    taft_ok = iso_search(src, dual(T.hbar()), spec, "algebra").found
    src, spec = tensor_target([("T", 2, 1, Q(-1))], Q)
    liu_ok = iso_search(src, liu(2, 1, -1).hbar(), spec, "hopf").found
    homs = {}
    for name, args in [("dihedral-dual", ()), ("taft-dual", ("taft:4,2,zeta4",)), ("liu-dual", ()),
                       ("qplane-dual", ()), ("bfam-dual", ())]:
        c = next(c for c in suite(name, *args).checks if c.name == "character_homomorphism")
        homs[name] = (c.status, c.details.get("pairs"))
    homs_ok = all(s == "pass" and n == 10 for s, n in homs.values())
    acceptance(9, taft_ok and liu_ok and homs_ok, f"taft={taft_ok} liu={liu_ok} homs={homs}")


def test_criterion_10_filtration_and_normality(acceptance):
    res = {}
    for ref in ("dihedral", "taft:2,1,-1"):
        st = statuses(suite("w-filtration", ref))
        res[ref] = (st["w_filtration"], st["normality_shadow"])
    acceptance(10, all(v == ("pass", "pass") for v in res.values()), str(res))


def test_criterion_11_determinism(acceptance):
    a = run_suite("all", [], 6, 0, 1, None).dumps()
    b = run_suite("all", [], 6, 0, 4, None).dumps()
    acceptance(11, a == b, f"{len(a)} bytes")
