"""Infinite-dimensional Hopf algebras given by normal-form words, and
functionals on them that vanish on an ideal of finite codimension.

A :class:`BasedHopf` is free as a right module over a commutative Hopf
subalgebra A on a finite word set ``B`` (every word is ``c * b * a``), and
also as a left module (``c * a * b``).  The subalgebra A is a Laurent or
polynomial ring in a few variables; its monomials are exponent tuples.
Ideal specs for ``H J`` (side "left") or ``J H`` (side "right"), with ``J``
an ideal of A of finite codimension, then reduce to reductions inside A.

Elements are ``{word: Scalar}`` dicts, tensors ``{(w1, w2): Scalar}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from ._vec import add_into, axpy, vscale, vsub
from .exactla import Matrix, SparseEchelon, Subspace, rank, solve
from .hopf import Check, FdHopf
from .scalars import FieldDesc, Scalar

__all__ = [
    "BasedHopf",
    "AIdeal",
    "ProductIdeal",
    "AugIdeal",
    "PointsetIdeal",
    "IdealSpec",
    "IntersectionSpec",
    "AuditError",
    "CofiniteFunctional",
    "BasedReport",
    "verify_based",
    "cosplit_check",
    "character_functional",
    "pi_upper",
    "tangent_functional",
    "iota_upper",
    "convolve",
    "conv_eval",
    "dual_coproduct_eval",
    "in_Hbar_star",
    "in_W",
    "hat_space",
    "antipode_dual",
    "normality_shadow",
    "functional_from_values",
    "span_rank",
    "spans_equal",
    "hbar_from_based",
    "stable_quotient",
    "engine_orbit",
]


class AuditError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message}: {witness}")
        self.witness = witness


# ---------------------------------------------------------------------------
# the abstract host


class BasedHopf:
    """Interface every family implements.  Words are hashable tuples."""

    field: FieldDesc
    name: str = ""
    one_word: tuple
    pi_side: str = "right"  # Pi is right A-linear ("right") or left A-linear ("left")
    point_side: str = "left"  # side of the ideal on which character functionals vanish
    a_laurent: tuple = ()  # per A-variable: True for Laurent, False for polynomial

    # -- required per family ------------------------------------------------
    def degree(self, w) -> int:
        raise NotImplementedError

    def words(self, N: int) -> list:
        raise NotImplementedError

    def product(self, w1, w2) -> dict:
        raise NotImplementedError

    def coproduct(self, w) -> dict:
        raise NotImplementedError

    def counit(self, w) -> Scalar:
        raise NotImplementedError

    def antipode(self, w) -> dict:
        raise NotImplementedError

    def word_str(self, w) -> str:
        return str(w)

    # A and the complement X
    def is_A(self, w) -> bool:
        raise NotImplementedError

    def A_word(self, exps: tuple) -> tuple[Scalar, tuple]:
        """The A-monomial with exponents ``exps`` as (coefficient, word)."""
        raise NotImplementedError

    def A_exps(self, w) -> tuple:
        """Exponents of an A-word (inverse of A_word up to the coefficient)."""
        raise NotImplementedError

    def basis_B(self) -> list:
        """Free basis of H as a right (and left) A-module; B[0] is the unit word."""
        raise NotImplementedError

    def decompose_right(self, w) -> tuple[Scalar, object, tuple]:
        """w = c * b * a with b in B and a an A-monomial (exponents)."""
        raise NotImplementedError

    def decompose_left(self, w) -> tuple[Scalar, tuple, object]:
        """w = c * a * b."""
        raise NotImplementedError

    def Pi_B(self, b) -> Scalar:
        """Pi(b) for b in B; Pi(B) lies in k * 1."""
        raise NotImplementedError

    def coideal_generators(self) -> list[dict]:
        """The declared spanning set P of X (X = P A or A P)."""
        return [vsub({b: self.field.one()}, {self.one_word: self.Pi_B(b)}) for b in self.basis_B()[1:]]

    # characters of A
    def char_value(self, g, exps: tuple) -> Scalar:
        raise NotImplementedError

    def char_mul(self, g, h):
        raise NotImplementedError

    def char_inv(self, g):
        raise NotImplementedError

    def char_valid(self, g) -> bool:
        return True

    def point_ideal(self, g) -> "AIdeal":
        raise NotImplementedError

    def core_ideal(self, g) -> "AIdeal":
        raise NotImplementedError

    def orbit_params(self, g) -> list:
        """Points in the orbit of g (family-declared)."""
        raise NotImplementedError

    def tangent_value(self, direction, exps: tuple) -> Scalar:
        raise NotImplementedError

    def hbar_name(self) -> str:
        return f"Hbar({self.name})"

    # -- generic element arithmetic -------------------------------------------
    def w(self, word) -> dict:
        return {word: self.field.one()}

    def one(self) -> dict:
        return self.w(self.one_word)

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                c = ca * cb
                for k, v in self.product(a, b).items():
                    add_into(out, k, c * v)
        return out

    def comul(self, x: Mapping) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for k, v in self.coproduct(a).items():
                add_into(out, k, ca * v)
        return out

    def eps(self, x: Mapping) -> Scalar:
        acc = self.field.zero()
        for a, ca in x.items():
            acc = acc + ca * self.counit(a)
        return acc

    def S(self, x: Mapping) -> dict:
        out: dict = {}
        for a, ca in x.items():
            axpy(out, ca, self.antipode(a))
        return out

    def tmul(self, t1: Mapping, t2: Mapping) -> dict:
        out: dict = {}
        for (a, b), c1 in t1.items():
            for (c, d), c2 in t2.items():
                left = self.product(a, c)
                right = self.product(b, d)
                cc = c1 * c2
                for k1, x1 in left.items():
                    for k2, x2 in right.items():
                        add_into(out, (k1, k2), cc * x1 * x2)
        return out

    def A_elem(self, poly: Mapping[tuple, Scalar]) -> dict:
        """H-element of an A-polynomial given as {exponents: coefficient}."""
        out: dict = {}
        for e, c in poly.items():
            cw, word = self.A_word(e)
            add_into(out, word, c * cw)
        return out

    def Pi(self, x: Mapping) -> dict:
        """Projection onto A along X, as an A-polynomial {exponents: coeff}."""
        out: dict = {}
        for w, c in x.items():
            if self.pi_side == "right":
                cw, b, a = self.decompose_right(w)
            else:
                cw, a, b = self.decompose_left(w)
            v = self.Pi_B(b)
            if not v.is_zero():
                add_into(out, a, c * cw * v)
        return out

    def Aplus_generators(self) -> list[dict]:
        """Generators of A+ as an ideal of A (as H-elements)."""
        F = self.field
        n = len(self.a_laurent)
        gens = []
        for k, lau in enumerate(self.a_laurent):
            e = tuple(1 if i == k else 0 for i in range(n))
            z = tuple(0 for _ in range(n))
            poly = {e: F.one()}
            if lau:
                poly[z] = -F.one()
            gens.append(self.A_elem(poly))
        return gens

    def A_words(self, N: int) -> list:
        return [w for w in self.words(N) if self.is_A(w)]

    # -- ideal specs ------------------------------------------------------------
    def spec(self, J: "AIdeal", side: str, kind: str = "", params=None) -> "IdealSpec":
        return IdealSpec(self, J, side, kind or J.describe(), params)

    def point_spec(self, g, side: str | None = None) -> "IdealSpec":
        if not self.char_valid(g):
            raise ValueError(f"invalid character parameter {g!r}")
        return self.spec(self.point_ideal(g), side or self.point_side, "PointIdeal", g)

    def core_spec(self, g) -> "IdealSpec":
        if not self.char_valid(g):
            raise ValueError(f"invalid character parameter {g!r}")
        return self.spec(self.core_ideal(g), "left", "CoreIdeal", g)

    def aug_spec(self, m: int) -> "IdealSpec":
        return self.spec(AugIdeal(self.field, self.a_laurent, m), "left", "AugPower", m)


# ---------------------------------------------------------------------------
# ideals of A of finite codimension


def _binom_general(e: int, k: int) -> Fraction:
    num = 1
    for t in range(k):
        num *= e - t
    return Fraction(num, math.factorial(k))


class AIdeal:
    """Ideal J of A with a monomial basis of A/J and a reduction map."""

    field: FieldDesc
    basis: list  # exponent tuples

    def reduce(self, exps: tuple) -> dict:
        raise NotImplementedError

    def generators(self) -> list[dict]:
        """A-polynomials generating J."""
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__

    def reduce_poly(self, poly: Mapping) -> dict:
        out: dict = {}
        for e, c in poly.items():
            for b, v in self.reduce(e).items():
                add_into(out, b, c * v)
        return out


class ProductIdeal(AIdeal):
    """J = (P_1(X_1), ..., P_r(X_r)) with monic univariate P_k (None: no relation)."""

    def __init__(self, field: FieldDesc, laurent: Sequence[bool], polys: Sequence[Sequence | None]):
        self.field = field
        self.laurent = tuple(laurent)
        self.polys = []
        for lau, p in zip(self.laurent, polys):
            if p is None:
                raise ValueError("every variable needs a relation for finite codimension")
            p = [Scalar.coerce(c, field) for c in p]
            if not p[-1].is_one():
                raise ValueError("relations must be monic")
            if lau and p[0].is_zero():
                raise ValueError("Laurent variable needs a relation with nonzero constant term")
            self.polys.append(p)
        self._cache: dict = {}
        self.basis = list(itertools.product(*[range(len(p) - 1) for p in self.polys]))

    def _uni(self, k: int, e: int) -> list:
        key = (k, e)
        if key in self._cache:
            return self._cache[key]
        P = self.polys[k]
        d = len(P) - 1
        F = self.field
        if e == 0:
            v = [F.one()] + [F.zero()] * (d - 1)
        elif e > 0:
            prev = self._uni(k, e - 1)
            v = [F.zero()] + prev[:-1]
            top = prev[-1]
            if not top.is_zero():
                v = [v[i] - top * P[i] for i in range(d)]
        else:
            # X^-1 = -(P(X) - P(0)) / (P(0) X)
            prev = self._uni(k, e + 1)
            inv0 = P[0].inverse()
            # multiply prev by X^-1: shift down, with constant term handled by the relation
            c0 = prev[0]
            v = prev[1:] + [F.zero()]
            if not c0.is_zero():
                # c0 * X^-1 = -c0/P0 * (P1 + P2 X + ... + X^(d-1))
                for i in range(d):
                    v[i] = v[i] - c0 * inv0 * P[i + 1]
        self._cache[key] = v
        return v

    def reduce(self, exps: tuple) -> dict:
        parts = [self._uni(k, e) for k, e in enumerate(exps)]
        out: dict = {}
        for idx in itertools.product(*[range(len(p)) for p in parts]):
            c = self.field.one()
            for k, i in enumerate(idx):
                c = c * parts[k][i]
                if c.is_zero():
                    break
            if not c.is_zero():
                out[idx] = c
        return out

    def generators(self) -> list[dict]:
        n = len(self.polys)
        gens = []
        for k, P in enumerate(self.polys):
            gens.append(
                {tuple(i if t == k else 0 for t in range(n)): c for i, c in enumerate(P) if not c.is_zero()}
            )
        return gens

    def describe(self) -> str:
        return "(" + ", ".join(
            " + ".join(f"({c.to_literal()})X{k}^{i}" for i, c in enumerate(P) if not c.is_zero())
            for k, P in enumerate(self.polys)
        ) + ")"


class AugIdeal(AIdeal):
    """(A+)^m where A+ = (X_k - 1 for Laurent X_k, X_k for polynomial X_k)."""

    def __init__(self, field: FieldDesc, laurent: Sequence[bool], m: int):
        self.field = field
        self.laurent = tuple(laurent)
        self.m = m
        n = len(self.laurent)
        self.basis = [e for e in itertools.product(range(m), repeat=n) if sum(e) < m]

    def reduce(self, exps: tuple) -> dict:
        F = self.field
        m = self.m
        # each variable in the shifted coordinate u_k (= X_k - 1 or X_k)
        per_var = []
        for lau, e in zip(self.laurent, exps):
            if lau:
                per_var.append({k: _binom_general(e, k) for k in range(m) if _binom_general(e, k)})
            else:
                per_var.append({e: Fraction(1)} if e < m else {})
        shifted: dict = {}
        for combo in itertools.product(*[list(d.items()) for d in per_var]):
            degs = tuple(k for k, _ in combo)
            if sum(degs) >= m:
                continue
            c = Fraction(1)
            for _, v in combo:
                c *= v
            shifted[degs] = shifted.get(degs, Fraction(0)) + c
        # back to monomials: u_k^j = sum_s binom(j, s) (-1)^(j-s) X_k^s for Laurent variables
        out: dict = {}
        for degs, c in shifted.items():
            if c == 0:
                continue
            opts = []
            for lau, j in zip(self.laurent, degs):
                if lau:
                    opts.append([(s, Fraction(math.comb(j, s) * (-1) ** (j - s))) for s in range(j + 1)])
                else:
                    opts.append([(j, Fraction(1))])
            for combo in itertools.product(*opts):
                e = tuple(s for s, _ in combo)
                v = c
                for _, x in combo:
                    v *= x
                add_into(out, e, F(v))
        return out

    def generators(self) -> list[dict]:
        F = self.field
        n = len(self.laurent)
        gens = []
        for degs in itertools.product(range(self.m + 1), repeat=n):
            if sum(degs) != self.m:
                continue
            poly: dict = {(0,) * n: F.one()}
            for k, (lau, j) in enumerate(zip(self.laurent, degs)):
                factor: dict = {}
                for s in range(j + 1):
                    coeff = math.comb(j, s) * (-1) ** (j - s) if lau else (1 if s == j else 0)
                    if coeff:
                        factor[s] = F(coeff)
                new: dict = {}
                for e, c in poly.items():
                    for s, c2 in factor.items():
                        e2 = tuple(x + (s if t == k else 0) for t, x in enumerate(e))
                        add_into(new, e2, c * c2)
                poly = new
            gens.append(poly)
        return gens

    def describe(self) -> str:
        return f"(A+)^{self.m}"


class PointsetIdeal(AIdeal):
    """Vanishing ideal of finitely many distinct points of A.

    Points are tuples of values of the variables.  A/J is identified with
    functions on the points; the monomial basis is chosen greedily by degree.
    """

    def __init__(self, field: FieldDesc, laurent: Sequence[bool], points: Sequence[tuple], box: int = 4):
        self.field = field
        self.laurent = tuple(laurent)
        self.points = [tuple(Scalar.coerce(v, field) for v in p) for p in points]
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be distinct")
        for p in self.points:
            if any(lau and v.is_zero() for lau, v in zip(self.laurent, p)):
                raise ValueError("a Laurent variable cannot vanish at a point")
        n = len(self.laurent)
        rng = lambda lau: range(-box, box + 1) if lau else range(box + 1)  # noqa: E731
        monos = sorted(itertools.product(*[rng(l) for l in self.laurent]), key=lambda e: (sum(map(abs, e)), e))
        self._monos = monos
        m = len(self.points)
        ech = SparseEchelon(field, m)
        self.basis = []
        for e in monos:
            if ech.add(dict(enumerate(self._ev(e)))) == "new":
                self.basis.append(e)
            if len(self.basis) == m:
                break
        if len(self.basis) < m:
            raise ValueError("monomial box too small to separate the points")
        rows = [[self._ev(e)[i] for e in self.basis] for i in range(m)]
        self._M = Matrix.of(field, rows, m)

    def _ev(self, e: tuple) -> list:
        return [math.prod((v**k for v, k in zip(p, e)), start=self.field.one()) for p in self.points]

    def reduce(self, exps: tuple) -> dict:
        sol = solve(self._M, self._ev(exps))
        return {b: c for b, c in zip(self.basis, sol) if not c.is_zero()}

    def generators(self) -> list[dict]:
        out = []
        for e in self._monos:
            if e in self.basis:
                continue
            poly = {e: self.field.one()}
            for b, c in self.reduce(e).items():
                add_into(poly, b, -c)
            out.append(poly)
        return out

    def describe(self) -> str:
        return "I(" + ", ".join("(" + ",".join(v.to_literal() for v in p) + ")" for p in self.points) + ")"


# ---------------------------------------------------------------------------
# ideal specs of H


class IdealSpec:
    """H J (side "left") or J H (side "right") with J an ideal of A.

    Coordinates are pairs (b, e): b in B and e in the monomial basis of A/J.
    """

    def __init__(self, H: BasedHopf, J: AIdeal, side: str, kind: str, params=None):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.H = H
        self.J = J
        self.side = side
        self.kind = kind
        self.params = params
        self.coords = [(b, e) for b in H.basis_B() for e in J.basis]
        self.index = {c: i for i, c in enumerate(self.coords)}

    @property
    def dim(self) -> int:
        return len(self.coords)

    def project(self, x: Mapping) -> dict:
        """Coordinates (by index) of the class of x."""
        H = self.H
        out: dict = {}
        for w, c in x.items():
            if self.side == "left":
                cw, b, a = H.decompose_right(w)
            else:
                cw, a, b = H.decompose_left(w)
            for e, v in self.J.reduce(a).items():
                add_into(out, self.index[(b, e)], c * cw * v)
        return out

    def lift(self, i: int) -> dict:
        b, e = self.coords[i]
        H = self.H
        a = H.A_elem({e: H.field.one()})
        bw = H.w(b)
        return H.mul(bw, a) if self.side == "left" else H.mul(a, bw)

    def lifts(self) -> list[dict]:
        return [self.lift(i) for i in range(self.dim)]

    def ideal_elements(self, N: int) -> Iterable[tuple[str, dict]]:
        """Elements w j (or j w) for words w of degree <= N and generators j of J."""
        H = self.H
        gens = [(k, H.A_elem(p)) for k, p in enumerate(self.J.generators())]
        for w in H.words(N):
            for k, g in gens:
                x = H.mul(H.w(w), g) if self.side == "left" else H.mul(g, H.w(w))
                yield f"{H.word_str(w)} * J{k}" if self.side == "left" else f"J{k} * {H.word_str(w)}", x

    def audit(self, N: int) -> None:
        """Projection kills the ideal to degree N and fixes the lifts."""
        for lab, x in self.ideal_elements(N):
            if self.project(x):
                raise AuditError("projection does not kill the ideal", lab)
        for i in range(self.dim):
            if self.project(self.lift(i)) != {i: self.H.field.one()}:
                raise AuditError("quotient basis lift is not dual to its coordinate", self.coords[i])

    def describe(self) -> str:
        where = "H J" if self.side == "left" else "J H"
        return f"{self.kind}({self.params}) = {where}, J = {self.J.describe()}"


class IntersectionSpec:
    """I_1 cap ... cap I_r through the combined projection; the image is spanned
    by the classes of words of degree <= N."""

    def __init__(self, specs: Sequence[IdealSpec], N: int = 6):
        self.parts = list(specs)
        H = self.parts[0].H
        self.H = H
        self.kind = "Intersection"
        self.params = [(s.kind, s.params) for s in self.parts]
        self.offsets = []
        off = 0
        for s in self.parts:
            self.offsets.append(off)
            off += s.dim
        self.total = off
        F = H.field
        ech = SparseEchelon(F, self.total)
        chosen = []
        for w in H.words(N):
            v = self.project(H.w(w))
            if v and ech.add(dict(v)) == "new":
                chosen.append(w)
            if len(ech) == self.total:
                break
        self.lift_words = chosen
        self._ech = ech

    @property
    def dim(self) -> int:
        return len(self.lift_words)

    def project(self, x: Mapping) -> dict:
        out: dict = {}
        for s, off in zip(self.parts, self.offsets):
            for i, c in s.project(x).items():
                out[off + i] = c
        return out

    def lift(self, i: int) -> dict:
        return self.H.w(self.lift_words[i])

    def lifts(self) -> list[dict]:
        return [self.lift(i) for i in range(self.dim)]

    def ideal_elements(self, N: int):
        # an element lies in the intersection iff every part kills it; use the
        # parts' generators that the other parts also kill
        H = self.H
        for s in self.parts:
            for lab, x in s.ideal_elements(N):
                if all(not t.project(x) for t in self.parts):
                    yield lab, x

    def audit(self, N: int) -> None:
        if self.dim != self.total and self.dim == 0:
            raise AuditError("empty intersection quotient")

    def describe(self) -> str:
        return " cap ".join(s.describe() for s in self.parts)


# ---------------------------------------------------------------------------
# functionals


@dataclass
class CofiniteFunctional:
    """f(x) = sum_i values[i] * spec.project(x)[i]."""

    host: BasedHopf
    spec: object
    values: list
    verified_degree: int | None = None
    label: str = ""

    def __call__(self, x) -> Scalar:
        if not isinstance(x, Mapping):
            x = self.host.w(x)
        acc = self.host.field.zero()
        for i, c in self.spec.project(x).items():
            v = self.values[i]
            if not v.is_zero():
                acc = acc + v * c
        return acc

    def covector_on(self, lifts: Sequence[Mapping]) -> list:
        return [self(l) for l in lifts]


def functional_from_values(H: BasedHopf, spec, lift_values: Sequence, label: str = "") -> CofiniteFunctional:
    """The functional on H/I taking the given values on spec.lifts()."""
    F = H.field
    lifts = spec.lifts()
    if len(lift_values) != len(lifts):
        raise ValueError("one value per lift required")
    if isinstance(spec, IdealSpec):
        # lifts are dual to coordinates
        return CofiniteFunctional(H, spec, [Scalar.coerce(v, F) for v in lift_values], label=label)
    total = spec.total
    rows = []
    for l in lifts:
        p = spec.project(l)
        rows.append([p.get(i, F.zero()) for i in range(total)])
    sol = solve(Matrix.of(F, rows, total), [Scalar.coerce(v, F) for v in lift_values])
    if sol is None:
        raise ArithmeticError("inconsistent functional values on lifts")
    return CofiniteFunctional(H, spec, sol, label=label)


def character_functional(H: BasedHopf, g, side: str | None = None) -> CofiniteFunctional:
    """Pi°(chi_g): chi_g composed with the projection Pi onto A."""
    spec = H.point_spec(g, side)
    vals = []
    for l in spec.lifts():
        p = H.Pi(l)
        acc = H.field.zero()
        for e, c in p.items():
            acc = acc + c * H.char_value(g, e)
        vals.append(acc)
    return functional_from_values(H, spec, vals, label=f"Pi°(chi_{g})")


def pi_upper(H: BasedHopf, beta: Sequence) -> CofiniteFunctional:
    """beta composed with H -> Hbar; Hbar has basis B."""
    spec = H.aug_spec(1)
    if len(beta) != spec.dim:
        raise ValueError("covector length must equal dim Hbar")
    return CofiniteFunctional(H, spec, [Scalar.coerce(b, H.field) for b in beta], label="pi°(beta)")


def tangent_functional(H: BasedHopf, direction) -> CofiniteFunctional:
    """Pi°(f) for a tangent f of A at the identity (vanishes on (A+)^2)."""
    spec = H.aug_spec(2)
    vals = []
    for l in spec.lifts():
        acc = H.field.zero()
        for e, c in H.Pi(l).items():
            acc = acc + c * H.tangent_value(direction, e)
        vals.append(acc)
    return functional_from_values(H, spec, vals, label=f"Pi°(f_{direction})")


def iota_upper(f: CofiniteFunctional, N: int = 6) -> dict:
    """Restriction of f to A: values on the A-monomials of degree <= N."""
    H = f.host
    out = {}
    for w in H.A_words(N):
        out[H.A_exps(w)] = f(w) * H.A_word(H.A_exps(w))[0].inverse()
    return out


def conv_eval(f: Callable, g: Callable, x: Mapping, H: BasedHopf) -> Scalar:
    """(f * g)(x) = sum f(x1) g(x2)."""
    acc = H.field.zero()
    for (a, b), c in H.comul(x).items():
        fa = f(H.w(a))
        if fa.is_zero():
            continue
        acc = acc + c * fa * g(H.w(b))
    return acc


def convolve(f: CofiniteFunctional, g: CofiniteFunctional, target, N: int = 6) -> CofiniteFunctional:
    """f * g materialized on an explicitly named target spec, audited to degree N."""
    H = f.host
    vals = [conv_eval(f, g, l, H) for l in target.lifts()]
    res = functional_from_values(H, target, vals, label=f"({f.label})*({g.label})")
    for lab, x in target.ideal_elements(N):
        if not conv_eval(f, g, x, H).is_zero():
            raise AuditError("convolution does not vanish on the target ideal", lab)
    # the materialized functional must agree with direct evaluation
    for w in H.words(N):
        if res(w) != conv_eval(f, g, H.w(w), H):
            raise AuditError("target spec does not support the product", H.word_str(w))
    res.verified_degree = N
    return res


def dual_coproduct_eval(f: Callable, h, h2, H: BasedHopf | None = None) -> Scalar:
    """Delta°(f)(h (x) h2) := f(h h2)."""
    H = H or f.host
    x = h if isinstance(h, Mapping) else H.w(h)
    y = h2 if isinstance(h2, Mapping) else H.w(h2)
    return f(H.mul(x, y))


def in_Hbar_star(f: CofiniteFunctional, N: int = 6) -> tuple[bool, str | None]:
    """f(a h) = eps(a) f(h) = f(h a) for A-monomials a and words h of degree <= N."""
    H = f.host
    for a in H.A_words(N):
        ea = H.counit(a)
        for h in H.words(N):
            fh = f(h)
            if f(H.product(a, h)) != ea * fh or f(H.product(h, a)) != ea * fh:
                return False, f"a={H.word_str(a)}, h={H.word_str(h)}"
    return True, None


def in_W(f: CofiniteFunctional, n: int, N: int = 6) -> tuple[bool, str | None]:
    """f(a_1 ... a_n h) = 0 for A+-generators a_i and words h of degree <= N."""
    H = f.host
    gens = H.Aplus_generators()
    for combo in itertools.product(range(len(gens)), repeat=n):
        prod = H.one()
        for k in combo:
            prod = H.mul(prod, gens[k])
        for h in H.words(N):
            if not f(H.mul(prod, H.w(h))).is_zero():
                return False, f"generators {combo}, h={H.word_str(h)}"
    return True, None


def hat_space(H: BasedHopf, g) -> list[CofiniteFunctional]:
    """Dual basis of H / H m_g^(core)."""
    spec = H.core_spec(g)
    F = H.field
    out = []
    for i in range(spec.dim):
        vals = [F.one() if j == i else F.zero() for j in range(spec.dim)]
        out.append(CofiniteFunctional(H, spec, vals, label=f"hat({g})[{i}]"))
    return out


def antipode_dual(f: CofiniteFunctional) -> CofiniteFunctional:
    """f o S, on the ideal spec carried through S (S(H J) = S(J) H)."""
    H = f.host
    spec = f.spec
    if not isinstance(spec, IdealSpec):
        raise ValueError("antipode transport is only defined for basic specs")
    if spec.kind == "AugPower":
        new = H.aug_spec(spec.params)
    elif spec.kind == "CoreIdeal":
        new = H.core_spec(H.char_inv(spec.params))
    elif spec.kind == "PointIdeal":
        other = "right" if spec.side == "left" else "left"
        new = H.point_spec(H.char_inv(spec.params), other)
    else:
        raise ValueError(f"unsupported spec transport for {spec.kind}")
    vals = [f(H.S(l)) for l in new.lifts()]
    return functional_from_values(H, new, vals, label=f"S°({f.label})")


def normality_shadow(phi: Callable, psi: Callable, x: Mapping, H: BasedHopf) -> Scalar:
    """(sum S°(phi_1) psi phi_2)(x) = sum psi(x_2) phi(S(x_1) x_3)."""
    acc = H.field.zero()
    for (a, b), c in H.comul(x).items():
        for (b1, b2), c2 in H.coproduct(b).items():
            ps = psi(H.w(b1))
            if ps.is_zero():
                continue
            acc = acc + c * c2 * ps * phi(H.mul(H.antipode(a), H.w(b2)))
    return acc


def span_rank(functionals: Sequence[Callable], probes: Sequence[Mapping], F: FieldDesc) -> int:
    rows = [[f(p) for p in probes] for f in functionals]
    return rank(F, rows, len(probes)) if rows else 0


def spans_equal(fs: Sequence[Callable], gs: Sequence[Callable], probes: Sequence[Mapping], F: FieldDesc) -> bool:
    """Equal spans, compared through their values on ``probes``."""
    a = Subspace.span(F, len(probes), [[f(p) for p in probes] for f in fs])
    b = Subspace.span(F, len(probes), [[g(p) for p in probes] for g in gs])
    return a == b


# ---------------------------------------------------------------------------
# verification


@dataclass
class BasedReport:
    checks: dict
    degree: int
    verified_degree: int

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if c.status == "fail"]

    def to_json(self) -> dict:
        return {
            "checks": {k: v.to_json() for k, v in self.checks.items()},
            "degree": self.degree,
            "verified_degree": self.verified_degree,
        }


def verify_based(H: BasedHopf, N: int = 6) -> BasedReport:
    """Hopf axioms on all words (pairs, triples) of total degree <= N."""
    words = sorted(H.words(N), key=lambda w: (H.degree(w), repr(w)))
    deg = {w: H.degree(w) for w in words}
    checks: dict = {}
    first_bad_deg = N + 1
    F = H.field
    one = H.one()

    def record(name, bad):
        nonlocal first_bad_deg
        if bad is None:
            checks[name] = Check("pass")
        else:
            lab, d = bad
            checks[name] = Check("fail", lab)
            first_bad_deg = min(first_bad_deg, d)

    bad = None
    for w in words:
        x = H.w(w)
        if H.mul(one, x) != x or H.mul(x, one) != x:
            bad = (H.word_str(w), deg[w])
            break
    record("unit", bad)

    bad = None
    for a in words:
        for b in words:
            if deg[a] + deg[b] > N:
                continue
            ab = H.product(a, b)
            for c in words:
                d = deg[a] + deg[b] + deg[c]
                if d > N:
                    continue
                if H.mul(ab, H.w(c)) != H.mul(H.w(a), H.product(b, c)):
                    bad = (f"({H.word_str(a)}, {H.word_str(b)}, {H.word_str(c)})", d)
                    break
            if bad:
                break
        if bad:
            break
    record("associativity", bad)

    bad = None
    for w in words:
        d = H.coproduct(w)
        left: dict = {}
        right: dict = {}
        for (a, b), c in d.items():
            for (a1, a2), c2 in H.coproduct(a).items():
                add_into(left, (a1, a2, b), c * c2)
            for (b1, b2), c2 in H.coproduct(b).items():
                add_into(right, (a, b1, b2), c * c2)
        if left != right:
            bad = (H.word_str(w), deg[w])
            break
    record("coassociativity", bad)

    bad = None
    for w in words:
        d = H.coproduct(w)
        l: dict = {}
        r: dict = {}
        for (a, b), c in d.items():
            add_into(l, b, c * H.counit(a))
            add_into(r, a, c * H.counit(b))
        if l != H.w(w) or r != H.w(w):
            bad = (H.word_str(w), deg[w])
            break
    record("counit", bad)

    bad = None
    if H.comul(one) != {(H.one_word, H.one_word): F.one()}:
        bad = ("Delta(1)", 0)
    else:
        for a in words:
            for b in words:
                if deg[a] + deg[b] > N:
                    continue
                if H.comul(H.product(a, b)) != H.tmul(H.coproduct(a), H.coproduct(b)):
                    bad = (f"({H.word_str(a)}, {H.word_str(b)})", deg[a] + deg[b])
                    break
                if H.eps(H.product(a, b)) != H.counit(a) * H.counit(b):
                    bad = (f"eps at ({H.word_str(a)}, {H.word_str(b)})", deg[a] + deg[b])
                    break
            if bad:
                break
    record("bialgebra", bad)

    bad = None
    for w in words:
        d = H.coproduct(w)
        target = vscale(H.counit(w), one)
        l: dict = {}
        r: dict = {}
        for (a, b), c in d.items():
            axpy(l, c, H.mul(H.antipode(a), H.w(b)))
            axpy(r, c, H.mul(H.w(a), H.antipode(b)))
        if l != target or r != target:
            bad = (H.word_str(w), deg[w])
            break
    record("antipode", bad)

    bad = None
    awords = [w for w in words if H.is_A(w)]
    for a in awords:
        if any(not H.is_A(k) for k in H.antipode(a)) or any(
            not (H.is_A(x) and H.is_A(y)) for x, y in H.coproduct(a)
        ):
            bad = (H.word_str(a), deg[a])
            break
        for b in awords:
            if deg[a] + deg[b] <= N and any(not H.is_A(k) for k in H.product(a, b)):
                bad = (f"({H.word_str(a)}, {H.word_str(b)})", deg[a] + deg[b])
                break
        if bad:
            break
    record("A_subalgebra", bad)
    return BasedReport(checks, N, min(N, first_bad_deg - 1))


def _x_elements(H: BasedHopf, N: int) -> list[tuple[str, dict]]:
    """Elements p a (or a p) of degree <= N, p in the declared spanning set."""
    out = []
    P = H.coideal_generators()
    awords = H.A_words(2 * N + max(H.degree(b) for b in H.basis_B()))
    for k, p in enumerate(P):
        for a in awords:
            x = H.mul(p, H.w(a)) if H.pi_side == "right" else H.mul(H.w(a), p)
            if x and max(H.degree(w) for w in x) <= N:
                lab = f"P{k}*{H.word_str(a)}" if H.pi_side == "right" else f"{H.word_str(a)}*P{k}"
                out.append((lab, x))
    return out


def cosplit_check(H: BasedHopf, N: int = 6) -> tuple[bool, str | None]:
    """X (spanned by P A or A P) is a coideal with Pi(X) = 0, H = A + X to degree N."""
    F = H.field
    for w in H.A_words(N):
        if H.A_elem(H.Pi(H.w(w))) != H.w(w):
            return False, f"Pi is not the identity on A at {H.word_str(w)}"
    xs = _x_elements(H, N)
    for lab, x in xs:
        if H.Pi(x):
            return False, f"Pi does not vanish on {lab}"
        if not H.eps(x).is_zero():
            return False, f"eps does not vanish on {lab}"
        tot: dict = {}
        for (a, b), c in H.comul(x).items():
            pa = H.Pi(H.w(a))
            if not pa:
                continue
            pb = H.Pi(H.w(b))
            for e1, c1 in pa.items():
                for e2, c2 in pb.items():
                    add_into(tot, (e1, e2), c * c1 * c2)
        if tot:
            return False, f"(Pi (x) Pi) Delta is nonzero on {lab}"
    # spanning: w - Pi(w) = c (b - Pi(b)) a (or c a (b - Pi(b))) for every word
    P = H.coideal_generators()
    B = H.basis_B()
    if len(P) != len(B) - 1:
        return False, "declared spanning set must have one element per non-unit word of B"
    for w in H.words(N):
        if H.pi_side == "right":
            c, b, a = H.decompose_right(w)
        else:
            c, a, b = H.decompose_left(w)
        rest = vsub(H.w(w), H.A_elem(H.Pi(H.w(w))))
        if b == B[0]:
            if rest:
                return False, f"{H.word_str(w)} decomposes through 1 but is not in A"
            continue
        p = P[B.index(b) - 1]
        aw = H.A_elem({a: F.one()})
        x = H.mul(p, aw) if H.pi_side == "right" else H.mul(aw, p)
        if vsub(rest, vscale(c, x)):
            return False, f"{H.word_str(w)} - Pi({H.word_str(w)}) is not in the span of X"
    return True, None


# ---------------------------------------------------------------------------
# finite shadows


def hbar_from_based(H: BasedHopf, generators: Sequence | None = None) -> FdHopf:
    """H / A+H on the basis B via the AugPower(1) spec."""
    spec = H.aug_spec(1)
    lifts = spec.lifts()
    n = spec.dim
    mult = {}
    for i in range(n):
        for j in range(n):
            v = spec.project(H.mul(lifts[i], lifts[j]))
            if v:
                mult[(i, j)] = v
    comult = []
    for i in range(n):
        d: dict = {}
        for (a, b), c in H.comul(lifts[i]).items():
            pa = spec.project(H.w(a))
            if not pa:
                continue
            pb = spec.project(H.w(b))
            for x, cx in pa.items():
                for y, cy in pb.items():
                    add_into(d, (x, y), c * cx * cy)
        comult.append(d)
    counit = [H.eps(l) for l in lifts]
    antipode = [spec.project(H.S(l)) for l in lifts]
    labels = [H.word_str(b) for b, _ in spec.coords]
    gens = None
    if generators is not None:
        gens = [spec.project(H.w(g)) for g in generators]
    return FdHopf(H.field, labels, mult, spec.project(H.one()), comult, counit, antipode, gens, H.hbar_name())


def stable_quotient(H: BasedHopf, J: AIdeal, Hbar: FdHopf | None = None):
    """A/J with the adjoint action of Hbar (J must be stable).

    Returns (algebra, action).  ad(h)(a) = sum h_1 a S(h_2) is computed in H
    on the lift of each Hbar basis vector.
    """
    from .construct import ModAction
    from .hopf import FdAlgebra

    F = H.field
    Hb = Hbar or hbar_from_based(H)
    spec1 = H.aug_spec(1)
    basis = list(J.basis)
    pos = {e: i for i, e in enumerate(basis)}

    def red(poly: Mapping) -> dict:
        return {pos[e]: c for e, c in J.reduce_poly(poly).items()}

    def to_A(x: Mapping) -> dict:
        poly: dict = {}
        for w, c in x.items():
            if not H.is_A(w):
                raise ArithmeticError(f"adjoint action leaves A at {H.word_str(w)}")
            e = H.A_exps(w)
            add_into(poly, e, c * H.A_word(e)[0].inverse())
        return poly

    mult = {}
    for i, e in enumerate(basis):
        for j, f in enumerate(basis):
            v = red(to_A(H.mul(H.A_elem({e: F.one()}), H.A_elem({f: F.one()}))))
            if v:
                mult[(i, j)] = v
    n0 = len(H.a_laurent)
    unit = red({(0,) * n0: F.one()})
    labels = ["*".join(f"X{k}^{x}" for k, x in enumerate(e) if x) or "1" for e in basis]
    Aq = FdAlgebra(F, labels, mult, unit, name=f"A/J({H.name})")
    act = {}
    for h in range(Hb.dim):
        lift = spec1.lift(h)
        d = H.comul(lift)
        for k, gen in enumerate(J.generators()):
            a = H.A_elem(gen)
            out: dict = {}
            for (x, y), c in d.items():
                axpy(out, c, H.mul(H.mul(H.w(x), a), H.antipode(y)))
            if red(to_A(out)):
                raise ValueError(f"ideal is not stable: ad({Hb.basis_labels[h]}) moves generator {k} out of J")
        for i, e in enumerate(basis):
            a = H.A_elem({e: F.one()})
            out: dict = {}
            for (x, y), c in d.items():
                axpy(out, c, H.mul(H.mul(H.w(x), a), H.antipode(y)))
            v = red(to_A(out))
            if v:
                act[(h, i)] = v
    return Aq, ModAction(Hb, Aq, act)


def engine_orbit(H: BasedHopf, g, J: AIdeal | None = None):
    """Orbit of chi_g computed by the orbit engine on a stable finite quotient A/J.

    J defaults to the family's ``orbit_ideal(g)``.  Returns (orbit, report)
    where orbit lists the orbit's points as characters of A/J, valued on J.basis.
    """
    from .orbits import CommAlgFd, is_orbitally_semisimple, orbit

    J = J or H.orbit_ideal(g)
    Aq, act = stable_quotient(H, J)
    pts = CommAlgFd(Aq)
    vals = tuple(H.char_value(g, e) for e in J.basis)
    match = [p for p in pts.points if tuple(p.values) == vals]
    if len(match) != 1:
        raise ArithmeticError("chi_g is not a point of the stable quotient")
    o = orbit(act, match[0], pts.points)
    return o, is_orbitally_semisimple(act, pts.points, pts.complete)
