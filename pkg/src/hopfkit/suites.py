"""Named check bundles over the families, with deterministic reports."""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .based import (
    AuditError,
    BasedHopf,
    CofiniteFunctional,
    IntersectionSpec,
    antipode_dual,
    character_functional,
    conv_eval,
    convolve,
    cosplit_check,
    dual_coproduct_eval,
    engine_orbit,
    hat_space,
    in_Hbar_star,
    in_W,
    iota_upper,
    normality_shadow,
    pi_upper,
    span_rank,
    spans_equal,
    tangent_functional,
    verify_based,
)
from .families import AbfGroup, BFam, Dihedral, Liu, QPlane, Taft, UepsSl2, parse_ref
from .hopf import FdHopf, bidual_check, dual, iso_search, split_algebra_check, verify
from .scalars import Scalar

SCHEMA = "hopfkit-report/1"

__all__ = [
    "CheckResult",
    "Report",
    "SUITES",
    "run_suite",
    "run_checks",
    "LazyFunctional",
    "lazy_product",
    "samples",
    "jsonable",
]


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "conditional"
    witness: str | None = None
    details: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        d: dict = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.details:
            d["details"] = jsonable(self.details)
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d


@dataclass
class Report:
    command: str
    inputs: dict
    degree: int
    seed: int
    checks: list

    @property
    def status(self) -> str:
        sts = {c.status for c in self.checks}
        if "fail" in sts:
            return "fail"
        if "conditional" in sts:
            return "conditional"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "conditional": 3}[self.status]

    def to_json(self, timings: bool = False) -> dict:
        counts = {s: sum(c.status == s for c in self.checks) for s in ("pass", "fail", "conditional")}
        return {
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": self.command,
            "input": jsonable(self.inputs),
            "degree": self.degree,
            "seed": self.seed,
            "checks": [c.to_json(timings) for c in self.checks],
            "summary": counts,
            "status": self.status,
        }

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def jsonable(x):
    if isinstance(x, Scalar):
        return x.to_literal()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


Check = tuple[str, Callable[[], tuple]]  # fn returns (status, witness, details)


def run_checks(checks: Sequence[Check], jobs: int = 1) -> list[CheckResult]:
    """Run checks (concurrently up to ``jobs``); results keep the declared order."""

    def one(item) -> CheckResult:
        name, fn = item
        t = time.perf_counter()
        try:
            status, witness, details = fn()
        except AuditError as exc:
            status, witness, details = "fail", str(exc), {}
        return CheckResult(name, status, witness, details or {}, time.perf_counter() - t)

    if jobs <= 1:
        return [one(c) for c in checks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, checks))


def _ok(flag: bool, witness: str | None = None, **details) -> tuple:
    return ("pass" if flag else "fail", None if flag else witness, details)


# ---------------------------------------------------------------------------
# lazy functionals


class LazyFunctional:
    """A functional given by an evaluation rule (no support spec)."""

    def __init__(self, host: BasedHopf, fn: Callable, label: str = ""):
        self.host = host
        self._fn = fn
        self.label = label

    def __call__(self, x):
        if not isinstance(x, dict):
            x = self.host.w(x)
        return self._fn(x)


def lazy_product(*fs) -> LazyFunctional:
    """f_1 * f_2 * ... evaluated through the coproduct."""
    H = fs[0].host
    if len(fs) == 1:
        return fs[0]
    head, tail = fs[0], lazy_product(*fs[1:])
    return LazyFunctional(H, lambda x: conv_eval(head, tail, x, H), "*".join(getattr(f, "label", "") for f in fs))


def lazy_sub(f, g) -> LazyFunctional:
    return LazyFunctional(f.host, lambda x: f(x) - g(x))


# ---------------------------------------------------------------------------
# sample parameters


def samples(H: BasedHopf) -> dict:
    """Three sample points, ten pairs, a non-identity point and the tangent directions."""
    F = H.field

    def s(v):
        return Scalar.coerce(v, F)

    if isinstance(H, (Dihedral, Liu)):
        pts = [s(2), s(3), s(-1)]
        pairs = [(2, 3), (2, -1), (3, Fraction(1, 2)), (-1, -1), (5, 2), (Fraction(1, 2), Fraction(1, 2)),
                 (2, 1), (3, 5), (-1, 3), (5, Fraction(1, 3))]
        pairs = [(s(a), s(b)) for a, b in pairs]
        return {"points": pts, "pairs": pairs, "nonidentity": s(2), "identity": s(1), "tangents": [0]}
    if isinstance(H, Taft):
        pts = [s(1), s(2), s(0)]
        pairs = [(1, 2), (0, 3), (2, -1), (1, 1), (3, 0), (-2, 5), (Fraction(1, 2), Fraction(1, 3)), (4, -4),
                 (1, 0), (7, 2)]
        pairs = [(s(a), s(b)) for a, b in pairs]
        return {"points": pts, "pairs": pairs, "nonidentity": s(1), "identity": s(0), "tangents": [None]}
    if isinstance(H, (QPlane, BFam)):
        raw = [((1, 1), (2, 3)), ((2, 0), (3, 1)), ((1, 0), (1, 0)), ((-1, 2), (2, -1)), ((3, 1), (1, 1)),
               ((1, 5), (Fraction(1, 2), 0)), ((2, 2), (2, 2)), ((1, -1), (1, 1)), ((5, 0), (1, 3)), ((-1, 1), (-1, 1))]
        pairs = [((s(a), s(b)), (s(c), s(d))) for (a, b), (c, d) in raw]
        pts = [(s(1), s(1)), (s(2), s(3)), (s(1), s(0))]
        return {"points": pts, "pairs": pairs, "nonidentity": (s(2), s(0)), "identity": (s(1), s(0)),
                "tangents": ["x", "y"]}
    if isinstance(H, AbfGroup):
        r = H.rank
        base = [2, 3, 5, -1, Fraction(1, 2)]
        pts = [tuple(s(base[(k + t) % 5]) for t in range(r)) for k in range(3)]
        pairs = [(tuple(s(base[(a + t) % 5]) for t in range(r)), tuple(s(base[(b + 2 * t) % 5]) for t in range(r)))
                 for a, b in itertools.islice(itertools.product(range(5), repeat=2), 10)]
        return {"points": pts, "pairs": pairs, "nonidentity": tuple(s(2) for _ in range(r)),
                "identity": tuple(s(1) for _ in range(r)), "tangents": list(range(r))}
    raise ValueError(f"no dual-side samples for {type(H).__name__}")


def _lit(g):
    return jsonable(g)


# ---------------------------------------------------------------------------
# check builders


def check_verify_based(H: BasedHopf, N: int) -> Check:
    def fn():
        r = verify_based(H, N)
        bad = r.failed()
        return _ok(not bad, "; ".join(f"{k}: {r.checks[k].witness}" for k in bad), verified_degree=r.verified_degree)

    return ("verify_based", fn)


def check_cosplit(H: BasedHopf, N: int) -> Check:
    def fn():
        ok, wit = cosplit_check(H, N)
        return _ok(ok, wit, degree=N)

    return ("cosplit", fn)


def check_hbar(H: BasedHopf) -> Check:
    def fn():
        Hb = H.hbar()
        r = verify(Hb)
        return _ok(r.passed, "; ".join(r.failed()), dim=Hb.dim, method=r.method)

    return ("hbar_verify", fn)


def check_char_hom(H: BasedHopf, N: int) -> Check:
    """Pi°(chi_g) * Pi°(chi_h) = Pi°(chi_gh) on ten pairs."""

    def fn():
        for g, h in samples(H)["pairs"]:
            gh = H.char_mul(g, h)
            prod = convolve(character_functional(H, g), character_functional(H, h), H.point_spec(gh), N)
            want = character_functional(H, gh)
            for w in H.words(N):
                if prod(w) != want(w):
                    return _ok(False, f"g={_lit(g)}, h={_lit(h)} at {H.word_str(w)}")
        return _ok(True, pairs=len(samples(H)["pairs"]))

    return ("character_homomorphism", fn)


def check_dimension_law(H: BasedHopf, N: int) -> Check:
    """dim H/H m_g = dim Hbar and dim ghat = |orbit| dim Hbar (orbit from the engine)."""

    def fn():
        dh = H.hbar().dim
        rows = []
        for g in samples(H)["points"]:
            ps = H.point_spec(g)
            ps.audit(N)
            cs = H.core_spec(g)
            cs.audit(N)
            orb, rep = engine_orbit(H, g)
            rows.append({"g": g, "point_dim": ps.dim, "core_dim": cs.dim, "orbit": len(orb), "orbsemi": rep.holds})
            if ps.dim != dh or cs.dim != len(orb) * dh or not rep.holds:
                return _ok(False, f"g={_lit(g)}: point {ps.dim}, core {cs.dim}, orbit {len(orb)}, Hbar {dh}",
                           rows=rows)
        return _ok(True, hbar_dim=dh, rows=rows)

    return ("dimension_law", fn)


def check_iso(name: str, src_spec: Callable, target: Callable, mode: str) -> Check:
    def fn():
        src, spec = src_spec()
        r = iso_search(src, target(), spec, mode)
        return _ok(r.found, f"no {mode} isomorphism found", mode=mode, nodes=r.searched["nodes"])

    return (name, fn)


def check_classification(H: BasedHopf, N: int) -> Check:
    """in_Hbar_star / in_W agree with the predicted membership pattern."""

    def fn():
        S = samples(H)
        dh = H.hbar().dim
        F = H.field
        table = []
        for i in range(dh):
            beta = [F.one() if j == i else F.zero() for j in range(dh)]
            table.append((f"pi°(e_{i}*)", pi_upper(H, beta), True, 1))
        for t in S["tangents"]:
            table.append((f"tangent({t})", tangent_functional(H, t), False, 2))
        table.append((f"Pi°(chi_{_lit(S['nonidentity'])})", character_functional(H, S["nonidentity"]), False, None))
        rows = []
        for label, f, hbar_pred, w_level in table:
            hb, wit = in_Hbar_star(f, N)
            levels = {n: in_W(f, n, N)[0] for n in (1, 2, 3)}
            want_levels = {n: (w_level is not None and n >= w_level) for n in (1, 2, 3)}
            rows.append({"functional": label, "in_Hbar_star": hb, "in_W": levels})
            if hb != hbar_pred or levels != want_levels:
                return _ok(False, f"{label}: in_Hbar_star={hb} ({wit}), in_W={levels}", rows=rows)
        return _ok(True, rows=rows, degree=N)

    return ("w_filtration", fn)


def check_normality_shadow(H: BasedHopf, N: int) -> Check:
    def fn():
        S = samples(H)
        dh = H.hbar().dim
        F = H.field
        phis = [character_functional(H, g) for g in S["points"]] + [tangent_functional(H, t) for t in S["tangents"]]
        psis = [pi_upper(H, [F.one() if j == i else F.zero() for j in range(dh)]) for i in range(dh)]
        gens = H.Aplus_generators()
        for phi in phis:
            for psi in psis:
                for a in gens:
                    for h in H.words(N):
                        x = H.mul(a, H.w(h))
                        if not normality_shadow(phi, psi, x, H).is_zero():
                            return _ok(False, f"{phi.label}, {psi.label} at A+gen*{H.word_str(h)}")
        return _ok(True, degree=N, pairs=len(phis) * len(psis))

    return ("normality_shadow", fn)


def check_iota(H: BasedHopf, N: int) -> Check:
    def fn():
        S = samples(H)
        for g in S["points"]:
            vals = iota_upper(character_functional(H, g), N)
            for e, v in vals.items():
                if v != H.char_value(g, e):
                    return _ok(False, f"iota°Pi°(chi_{_lit(g)}) differs at exponents {e}")
        for t in S["tangents"]:
            vals = iota_upper(tangent_functional(H, t), N)
            for e, v in vals.items():
                if v != H.tangent_value(t, e):
                    return _ok(False, f"iota°Pi°(tangent {t}) differs at exponents {e}")
        return _ok(True)

    return ("iota_Pi_identity", fn)


def check_antipode_characters(H: BasedHopf, N: int) -> Check:
    """S°(Pi°(chi_g)) = Pi°(chi_g^-1) on all words of degree <= N."""

    def fn():
        for g in samples(H)["points"]:
            Sf = antipode_dual(character_functional(H, g))
            want = character_functional(H, H.char_inv(g))
            for w in H.words(N):
                if Sf(w) != want(w):
                    return _ok(False, f"g={_lit(g)} at {H.word_str(w)}: {Sf(w).to_literal()} vs {want(w).to_literal()}")
        return _ok(True)

    return ("antipode_dual_characters", fn)


def check_antipode_hat(H: BasedHopf, N: int) -> Check:
    """S°(eps) = eps and S°(ghat) spans the hat space of g^-1."""

    def fn():
        e = character_functional(H, samples(H)["identity"])
        Se = antipode_dual(e)
        for w in H.words(N):
            if Se(w) != H.counit(w):
                return _ok(False, f"S°(eps) at {H.word_str(w)}")
        probes = [H.w(w) for w in H.words(N)]
        for g in samples(H)["points"]:
            hs = [antipode_dual(f) for f in hat_space(H, g)]
            if not spans_equal(hs, hat_space(H, H.char_inv(g)), probes, H.field):
                return _ok(False, f"S°(hat({_lit(g)})) does not span the hat space of the inverse")
        return _ok(True)

    return ("antipode_dual_hat_spaces", fn)


def check_commute(H: BasedHopf, N: int) -> Check:
    """pi°(beta) and Pi°(alpha) commute for alpha in {chi_g, tangents}."""

    def fn():
        S = samples(H)
        dh = H.hbar().dim
        F = H.field
        alphas = [character_functional(H, g) for g in S["points"]] + [tangent_functional(H, t) for t in S["tangents"]]
        for i in range(dh):
            beta = pi_upper(H, [F.one() if j == i else F.zero() for j in range(dh)])
            for a in alphas:
                for w in H.words(N):
                    x = H.w(w)
                    if conv_eval(beta, a, x, H) != conv_eval(a, beta, x, H):
                        return _ok(False, f"pi°(e_{i}*) and {a.label} at {H.word_str(w)}")
        return _ok(True)

    return ("hbar_star_commutes_with_A_dual", fn)


def check_group_action(H: BasedHopf, N: int) -> Check:
    """Pi°(chi_g) * pi°(phi) * Pi°(chi_g^-1) lies in pi°(Hbar*)."""

    def fn():
        dh = H.hbar().dim
        F = H.field
        for g in samples(H)["points"]:
            cg = character_functional(H, g)
            cgi = character_functional(H, H.char_inv(g))
            for i in range(dh):
                phi = pi_upper(H, [F.one() if j == i else F.zero() for j in range(dh)])
                t = lazy_product(cg, phi, cgi)
                ok, wit = in_Hbar_star(t, max(2, N // 2))
                if not ok:
                    return _ok(False, f"g={_lit(g)}, phi=e_{i}*: {wit}")
        return _ok(True)

    return ("group_action_on_hbar_star", fn)


def check_bimodule(H: BasedHopf, N: int) -> Check:
    """Hbar* Pi°(chi_g) = Pi°(chi_g) Hbar*, of dimension dim Hbar."""

    def fn():
        dh = H.hbar().dim
        F = H.field
        probes = [H.w(w) for w in H.words(N)]
        rows = []
        for g in samples(H)["points"]:
            cg = character_functional(H, g)
            betas = [pi_upper(H, [F.one() if j == i else F.zero() for j in range(dh)]) for i in range(dh)]
            left = [lazy_product(b, cg) for b in betas]
            right = [lazy_product(cg, b) for b in betas]
            r = span_rank(left, probes, F)
            eq = spans_equal(left, right, probes, F)
            rows.append({"g": g, "rank": r, "equal": eq})
            if r != dh or not eq:
                return _ok(False, f"g={_lit(g)}: rank {r}, spans equal {eq}", rows=rows)
        return _ok(True, rows=rows)

    return ("bimodule_free_rank_one", fn)


def check_derivation(H: BasedHopf, N: int) -> Check:
    """Pi°(f) phi - phi Pi°(f) lies in pi°(Hbar*) (and vanishes when Hbar* is commutative)."""

    def fn():
        dh = H.hbar().dim
        F = H.field
        Hs = dual(H.hbar())
        commutative = Hs.is_commutative()
        for t in samples(H)["tangents"]:
            f = tangent_functional(H, t)
            for i in range(dh):
                phi = pi_upper(H, [F.one() if j == i else F.zero() for j in range(dh)])
                c = lazy_sub(lazy_product(f, phi), lazy_product(phi, f))
                ok, wit = in_Hbar_star(c, max(2, N // 2))
                if not ok:
                    return _ok(False, f"tangent {t}, e_{i}*: {wit}")
                if commutative and any(not c(w).is_zero() for w in H.words(N)):
                    return _ok(False, f"commutator nonzero for tangent {t}, e_{i}*")
        return _ok(True, hbar_star_commutative=commutative)

    return ("derivation_action", fn)


def _key(g) -> tuple:
    return tuple(jsonable(g)) if isinstance(g, tuple) else (jsonable(g),)


def check_direct_sum(H: BasedHopf, N: int) -> Check:
    """Hat spaces of inequivalent points are linearly independent."""

    def fn():
        inequiv, seen = [], set()
        for g in samples(H)["points"]:
            if _key(g) not in seen:
                inequiv.append(g)
                seen.update(_key(p) for p in H.orbit_params(g))
        tgt = IntersectionSpec([H.core_spec(g) for g in inequiv], N)
        fs = [f for g in inequiv for f in hat_space(H, g)]
        r = span_rank(fs, tgt.lifts(), H.field)
        return _ok(r == len(fs), f"rank {r} < {len(fs)}", rank=r, total=len(fs))

    return ("hat_spaces_direct_sum", fn)


def check_restriction(H: BasedHopf, N: int) -> Check:
    """iota°(ghat) is spanned by the characters chi_h, h in the orbit of g."""

    def fn():
        probes = [H.w(w) for w in H.A_words(N)]
        for g in samples(H)["points"]:
            chars = [character_functional(H, p) for p in H.orbit_params(g)]
            if not spans_equal(hat_space(H, g), chars, probes, H.field):
                return _ok(False, f"iota°(hat({_lit(g)})) differs from the orbit characters")
        return _ok(True)

    return ("restriction_to_A", fn)


# ---------------------------------------------------------------------------
# dihedral specifics


def check_dihedral_formulas(H: Dihedral, R: int = 6) -> Check:
    def fn():
        F = H.field
        alpha = pi_upper(H, [F.one(), -F.one()])
        f = tangent_functional(H, 0)
        half = F(Fraction(1, 2))
        grid = [(i, e) for i in range(-R, R + 1) for e in (0, 1)]
        for h, h2 in itertools.product(grid, repeat=2):
            if dual_coproduct_eval(f, h, h2) != f(h) * H.counit(h2) + alpha(h) * f(h2):
                return _ok(False, f"tangent formula at ({H.word_str(h)}, {H.word_str(h2)})")
        for lam in (F(2), F(3), F(-1)):
            P = character_functional(H, lam)
            Pl = character_functional(H, lam ** -2)
            for h, h2 in itertools.product(grid, repeat=2):
                one = F.one()
                rhs = half * P(h) * P(h2) * ((one + alpha(h)) + (one - alpha(h)) * Pl(h2))
                if dual_coproduct_eval(P, h, h2) != rhs:
                    return _ok(False, f"character formula lambda={lam.to_literal()} at ({H.word_str(h)}, {H.word_str(h2)})")
        return _ok(True, grid=f"|i|,|j| <= {R}")

    return ("coproduct_formulas", fn)


def check_dihedral_hat_dims(H: Dihedral) -> Check:
    def fn():
        F = H.field
        dims = {lam.to_literal(): len(hat_space(H, lam)) for lam in (F(2), F(3), F(Fraction(1, 2)), F(1), F(-1))}
        want = {k: (2 if k in ("1", "-1") else 4) for k in dims}
        return _ok(dims == want, f"dims {dims}", dims=dims)

    return ("hat_dimensions", fn)


def check_dihedral_product_law(H: Dihedral, N: int) -> Check:
    def fn():
        F = H.field
        rows = []
        for g, h in ((F(2), F(3)), (F(2), F(5)), (F(3), F(Fraction(1, 2)))):
            tgt = IntersectionSpec([H.core_spec(g * h), H.core_spec(g.inverse() * h)], N)
            prods = [convolve(u, v, tgt, N) for u in hat_space(H, g) for v in hat_space(H, h)]
            rhs = hat_space(H, g * h) + hat_space(H, g.inverse() * h)
            eq = spans_equal(prods, rhs, tgt.lifts(), F)
            rows.append({"g": g, "h": h, "equal": eq, "rank": span_rank(prods, tgt.lifts(), F)})
            if not eq:
                return _ok(False, f"g={g.to_literal()}, h={h.to_literal()}", rows=rows)
        return _ok(True, rows=rows)

    return ("product_law_equality", fn)


def check_split(H: BasedHopf) -> Check:
    def fn():
        ok, chars = split_algebra_check(dual(H.hbar()))
        return _ok(ok, "Hbar* is not split semisimple commutative", characters=len(chars))

    return ("hbar_star_split", fn)


# ---------------------------------------------------------------------------
# suites


def _family(ref: str, field=None):
    H = parse_ref(ref, field)
    if not isinstance(H, BasedHopf):
        raise ValueError(f"{ref} is finite-dimensional; this suite needs a family")
    return H


def suite_dihedral_dual(args: Sequence[str], N: int, field=None) -> tuple[dict, list]:
    H = _family("dihedral", field)
    checks = [
        check_verify_based(H, N),
        check_cosplit(H, N),
        check_dihedral_formulas(H),
        check_dihedral_hat_dims(H),
        check_dihedral_product_law(H, N),
        check_split(H),
        check_char_hom(H, N),
        check_dimension_law(H, N),
        check_classification(H, N),
        check_normality_shadow(H, N),
        check_iota(H, N),
        check_antipode_characters(H, N),
        check_antipode_hat(H, N),
        check_commute(H, N),
    ]
    return {"family": "dihedral"}, checks


def _ref_from_args(kind: str, args: Sequence[str], default: str) -> str:
    if not args:
        return default
    if len(args) == 1 and ":" in args[0]:
        return args[0]
    if len(args) == 1:
        return f"{kind}:{args[0]}"
    return f"{kind}:{','.join(args)}"


def suite_taft_dual(args, N, field=None):
    ref = _ref_from_args("taft", args, "taft:4,2,zeta4")
    H = _family(ref, field)
    from .based import hbar_from_based
    from .families import tensor_target

    checks = [
        check_verify_based(H, N),
        check_cosplit(H, N),
        check_hbar(H),
        check_iso("hbar_matches_declared", lambda: tensor_target([("T", H.n, H.t, H.q)], H.field),
                  lambda: hbar_from_based(H), "hopf"),
        check_iso("hbar_dual_decomposition", H.hbar_dual_target, lambda: dual(H.hbar()), "algebra"),
        check_char_hom(H, N),
        check_dimension_law(H, N),
        check_classification(H, N),
        check_iota(H, N),
        check_antipode_hat(H, N),
        check_normality_shadow(H, N),
        check_commute(H, N),
    ]
    return {"family": ref}, checks


def suite_liu_dual(args, N, field=None):
    ref = _ref_from_args("liu", args, "liu:2,1,-1")
    H = _family(ref, field)
    checks = [
        check_verify_based(H, N),
        check_cosplit(H, N),
        check_hbar(H),
        check_iso("hbar_is_taft", H.hbar_target, H.hbar, "hopf"),
        check_char_hom(H, N),
        check_dimension_law(H, N),
        check_iota(H, N),
    ]
    return {"family": ref}, checks


def suite_qplane_dual(args, N, field=None):
    ref = _ref_from_args("qplane", args, "qplane:4,2,zeta4")
    H = _family(ref, field)
    checks = [
        check_verify_based(H, N),
        check_cosplit(H, N),
        check_hbar(H),
        check_iso("hbar_dual_decomposition", H.hbar_dual_target, lambda: dual(H.hbar()), "algebra"),
        check_char_hom(H, N),
        check_dimension_law(H, N),
        check_iota(H, N),
    ]
    return {"family": ref}, checks


def suite_bfam_dual(args, N, field=None):
    ref = _ref_from_args("bfam", args, "bfam:1,1,2,3")
    H = _family(ref, field)
    checks = [
        check_verify_based(H, N),
        check_cosplit(H, N),
        check_hbar(H),
        check_iso("hbar_dual_decomposition", H.hbar_dual_target, lambda: dual(H.hbar()), "algebra"),
        check_char_hom(H, N),
    ]
    return {"family": ref}, checks


def suite_orbits(args, N, field=None):
    ref = args[0] if args else "taft:4,2,zeta4"
    H = _family(ref, field)

    def fn():
        rows = []
        ok = True
        for g in samples(H)["points"]:
            orb, rep = engine_orbit(H, g)
            declared = len(H.orbit_params(g))
            rows.append({"g": g, "orbit_size": len(orb), "declared": declared, "orbsemi": rep.holds,
                         "status": rep.status})
            ok = ok and len(orb) == declared and rep.holds
        conditional = any(r["status"] == "conditional" for r in rows)
        if ok and conditional:
            return ("conditional", None, {"rows": rows})
        return _ok(ok, "orbit size or (OrbSemi) mismatch", rows=rows)

    return {"family": ref}, [("orbits", fn)]


def suite_cosplit(args, N, field=None):
    ref = args[0] if args else "dihedral"
    H = _family(ref, field)
    return {"family": ref, "degree": N}, [check_verify_based(H, N), check_cosplit(H, N)]


def suite_w_filtration(args, N, field=None):
    ref = args[0] if args else "dihedral"
    H = _family(ref, field)
    return {"family": ref}, [check_classification(H, N), check_normality_shadow(H, N)]


def suite_crux(args, N, field=None):
    ref = args[0] if args else "dihedral"
    H = _family(ref, field)
    return {"family": ref}, [
        check_group_action(H, N),
        check_bimodule(H, N),
        check_derivation(H, N),
        check_direct_sum(H, N),
        check_restriction(H, N),
    ]


def suite_axioms(args, N, field=None):
    """Finite-dimensional axiom and bidual checks."""
    from .construct import cyclic_group, group_algebra, taft_fd, restricted_enveloping, sl2
    from .scalars import parse_scalar

    objs = [(f"kC{m}", (lambda m: lambda: group_algebra(cyclic_group(m)))(m)) for m in range(1, 13)]
    for n, t, q in ((2, 1, "-1"), (3, 1, "zeta3"), (4, 2, "zeta4"), (6, 2, "zeta6"), (6, 3, "zeta6")):
        objs.append((f"T_f({n},{t},{q})", (lambda n, t, q: lambda: taft_fd(n, t, parse_scalar(q)))(n, t, q)))
    for p in (3, 5):
        objs.append((f"u(sl2) p={p}", (lambda p: lambda: restricted_enveloping(sl2(p)))(p)))
    checks = []
    for name, make in objs + _constructions():
        def fn(make=make):
            H = make()
            r = verify(H)
            ok2, wit = bidual_check(H) if isinstance(H, FdHopf) else (None, None)
            return _ok(r.passed and ok2 is not False, "; ".join(r.failed()) or wit,
                       dim=H.dim, method=r.method, verify=r.passed, bidual=ok2)

        checks.append((name, fn))
    return {"objects": [n for n, _ in objs] + [n for n, _ in _constructions()]}, checks


def _constructions() -> list:
    """Smash and crossed products exercised by the axiom bundle."""
    from .construct import (
        adjoint_action,
        crossed_product,
        cyclic_group,
        diagonal_algebra,
        group_action,
        group_algebra,
        smash_product,
        taft_fd,
        trivial_action,
    )
    from .scalars import parse_scalar

    def swap():
        K = group_algebra(cyclic_group(2))
        R = diagonal_algebra(2)
        return smash_product(R, K, group_action(K, R, {0: [{0: 1}, {1: 1}], 1: [{1: 1}, {0: 1}]}))

    def tensor_hopf():
        K = group_algebra(cyclic_group(2))
        R = group_algebra(cyclic_group(3))
        return smash_product(R, K, trivial_action(K, R), tensor_coalgebra=True)

    def adjoint():
        T = taft_fd(2, 1, parse_scalar("-1"))
        return smash_product(T, T, adjoint_action(T))

    def crossed_trivial():
        K = group_algebra(cyclic_group(2))
        R = diagonal_algebra(2)
        unit = R.one()
        sigma = {(s, t): {k: c * K.counit[s] * K.counit[t] for k, c in unit.items()}
                 for s in range(K.dim) for t in range(K.dim)}
        return crossed_product(R, K, group_action(K, R, {0: [{0: 1}, {1: 1}], 1: [{1: 1}, {0: 1}]}), sigma)

    return [
        ("k^2 # kC2 (swap)", swap),
        ("kC3 # kC2 (trivial, tensor coalgebra)", tensor_hopf),
        ("T_f(2,1,-1) # T_f(2,1,-1) (adjoint)", adjoint),
        ("k^2 #sigma kC2 (trivial cocycle)", crossed_trivial),
    ]


SUITES: dict[str, Callable] = {
    "dihedral-dual": suite_dihedral_dual,
    "taft-dual": suite_taft_dual,
    "liu-dual": suite_liu_dual,
    "qplane-dual": suite_qplane_dual,
    "bfam-dual": suite_bfam_dual,
    "orbits": suite_orbits,
    "cosplit": suite_cosplit,
    "w-filtration": suite_w_filtration,
    "crux": suite_crux,
    "axioms": suite_axioms,
}


def run_suite(name: str, args: Sequence[str] = (), N: int = 6, seed: int = 0, jobs: int = 1, field=None) -> Report:
    if name == "all":
        bundles = [
            ("axioms", []),
            ("dihedral-dual", []),
            ("taft-dual", ["taft:4,2,zeta4"]),
            ("taft-dual", ["taft:2,1,-1"]),
            ("liu-dual", ["liu:2,1,-1"]),
            ("qplane-dual", ["qplane:4,2,zeta4"]),
            ("bfam-dual", ["bfam:1,1,2,3"]),
            ("orbits", ["taft:4,2,zeta4"]),
            ("orbits", ["dihedral"]),
            ("cosplit", ["ueps_sl2:3"], 4),
            ("w-filtration", ["dihedral"]),
            ("w-filtration", ["taft:2,1,-1"]),
            ("crux", ["dihedral"]),
        ]
        checks: list = []
        inputs = {"bundles": [" ".join([n, *b[0], *(f"N={d}" for d in b[1:])]) for n, *b in bundles]}
        for n, a, *deg in bundles:
            _, cs = SUITES[n](a, deg[0] if deg else N, field)
            prefix = f"{n}[{a[0]}]" if a else n
            checks.extend((f"{prefix}/{cname}", fn) for cname, fn in cs)
        return Report(f"suite {name}", inputs, N, seed, run_checks(checks, jobs))
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}, all")
    inputs, checks = SUITES[name](list(args), N, field)
    return Report(f"suite {name}", {"args": list(args), **inputs}, N, seed, run_checks(checks, jobs))
