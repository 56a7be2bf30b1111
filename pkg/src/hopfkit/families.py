"""Worked families: normal forms, A, Pi, Hbar, characters and ideal specs.

Reference syntax (``parse_ref``)::

    dihedral | taft:4,2,zeta4 | liu:2,1,-1 | qplane:4,2,zeta4 | bfam:1,1,2,3
    ueps_sl2:3 | abf:<rank>:<m>:<rows> | up:sl2,5
    cyclic:6 | taft_fd:2,1,-1 | sweedler      (finite-dimensional)

``abf:2:2:0,1/1,0`` is Z^2 extended by C_2 whose generator swaps coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ._vec import add_into, axpy
from .based import (
    AIdeal,
    BasedHopf,
    PointsetIdeal,
    ProductIdeal,
    hbar_from_based,
)
from .construct import (
    GroupTable,
    RestrictedLie,
    cyclic_group,
    group_algebra,
    restricted_enveloping,
    sl2,
    taft_fd,
)
from .hopf import FdHopf, GenDecl, GenSpec, tensor_product
from .scalars import (
    FieldDesc,
    PrimeField,
    Rationals,
    Scalar,
    multiplicative_order,
    parse_scalar,
    primitive_root,
    q_binomial,
)

__all__ = [
    "Dihedral",
    "Taft",
    "Liu",
    "QPlane",
    "BFam",
    "UepsSl2",
    "AbfGroup",
    "dihedral",
    "taft",
    "liu",
    "qplane",
    "bfam",
    "ueps_sl2",
    "abf_group",
    "u_positive_char",
    "UpMetadata",
    "parse_ref",
    "tensor_target",
    "RefError",
]


class RefError(ValueError):
    pass


def _check_root(q: Scalar, n: int, what: str = "q") -> None:
    if multiplicative_order(q) != n:
        raise ValueError(f"{what} = {q.to_literal()} is not a primitive {n}-th root of unity")


def _monic_linear(c: Scalar) -> list:
    return [-c, c.field.one()]


def _binomial_power(c: Scalar, r: int) -> list:
    """Coefficients of z^r - c^r."""
    F = c.field
    return [-(c**r)] + [F.zero()] * (r - 1) + [F.one()]


def _orbit_poly(c: Scalar, r: int) -> list:
    """z^r - c^r, or z^(r+1) - z when c = 0 (so that 0 is among the roots)."""
    if not c.is_zero():
        return _binomial_power(c, r)
    F = c.field
    return [F.zero(), -F.one()] + [F.zero()] * (r - 1) + [F.one()]


def _pow(s: Scalar, k: int) -> Scalar:
    return s**k if k >= 0 else s.inverse() ** (-k)


# ---------------------------------------------------------------------------
# dihedral


class Dihedral(BasedHopf):
    """k D for D = <a, b : a^2 = 1, aba = b^-1>; words (i, e) = b^i a^e."""

    pi_side = "left"
    point_side = "right"
    a_laurent = (True,)

    def __init__(self, field: FieldDesc | None = None):
        self.field = field or Rationals()
        self.name = "dihedral"
        self.one_word = (0, 0)

    def degree(self, w) -> int:
        return abs(w[0]) + w[1]

    def words(self, N: int) -> list:
        return [(i, e) for e in (0, 1) for i in range(-N, N + 1) if abs(i) + e <= N]

    def product(self, w1, w2) -> dict:
        (i, e), (j, f) = w1, w2
        return {(i + (-1) ** e * j, (e + f) % 2): self.field.one()}

    def coproduct(self, w) -> dict:
        return {(w, w): self.field.one()}

    def counit(self, w) -> Scalar:
        return self.field.one()

    def antipode(self, w) -> dict:
        i, e = w
        return {(-i, 0) if e == 0 else (i, 1): self.field.one()}

    def word_str(self, w) -> str:
        i, e = w
        s = "" if i == 0 else ("b" if i == 1 else f"b^{i}")
        s += "a" if e else ""
        return s or "1"

    def is_A(self, w) -> bool:
        return w[1] == 0

    def A_word(self, exps):
        return self.field.one(), (exps[0], 0)

    def A_exps(self, w):
        return (w[0],)

    def basis_B(self):
        return [(0, 0), (0, 1)]

    def decompose_right(self, w):
        i, e = w
        return self.field.one(), (0, e), ((-1) ** e * i,)

    def decompose_left(self, w):
        i, e = w
        return self.field.one(), (i,), (0, e)

    def Pi_B(self, b) -> Scalar:
        return self.field.one()

    def char_valid(self, g) -> bool:
        return not Scalar.coerce(g, self.field).is_zero()

    def char_value(self, g, exps) -> Scalar:
        return _pow(Scalar.coerce(g, self.field), exps[0])

    def char_mul(self, g, h):
        return Scalar.coerce(g, self.field) * Scalar.coerce(h, self.field)

    def char_inv(self, g):
        return Scalar.coerce(g, self.field).inverse()

    def point_ideal(self, g) -> AIdeal:
        return ProductIdeal(self.field, self.a_laurent, [_monic_linear(Scalar.coerce(g, self.field))])

    def orbit_params(self, g) -> list:
        g = Scalar.coerce(g, self.field)
        return [g] if g == g.inverse() else [g, g.inverse()]

    def core_ideal(self, g) -> AIdeal:
        g = Scalar.coerce(g, self.field)
        if g == g.inverse():
            return self.point_ideal(g)
        F = self.field
        return ProductIdeal(F, self.a_laurent, [[F.one(), -(g + g.inverse()), F.one()]])

    def orbit_ideal(self, g) -> AIdeal:
        g = Scalar.coerce(g, self.field)
        pts = {g, g.inverse(), self.field.one(), -self.field.one()}
        return PointsetIdeal(self.field, self.a_laurent, sorted(((p,) for p in pts), key=lambda t: t[0].to_literal()))

    def tangent_value(self, direction, exps) -> Scalar:
        return self.field(exps[0])

    def hbar(self) -> FdHopf:
        return hbar_from_based(self, generators=[(0, 1)])


def dihedral(field: FieldDesc | None = None) -> Dihedral:
    return Dihedral(field)


# ---------------------------------------------------------------------------
# Taft T(n, t, q)


class Taft(BasedHopf):
    """k<g, x : g^n = 1, xg = q gx>, Delta x = x (x) 1 + g^t (x) x; words (i, j) = g^i x^j."""

    pi_side = "right"
    point_side = "left"
    a_laurent = (False,)

    def __init__(self, n: int, t: int, q):
        q = Scalar.coerce(q)
        if n < 2:
            raise ValueError("n must be at least 2")
        _check_root(q, n)
        self.n, self.t, self.q = n, t % n, q
        if self.t == 0:
            raise ValueError("t must not be divisible by n")
        self.field = q.field
        self.np = n // math.gcd(n, t)
        self.Q = q**t
        self.name = f"taft({n},{t},{q.to_literal()})"
        self.one_word = (0, 0)
        self.orbit_size = multiplicative_order(q**self.np)

    def degree(self, w) -> int:
        i, j = w
        return min(i, self.n - i) + j

    def words(self, N: int) -> list:
        return [(i, j) for i in range(self.n) for j in range(N + 1) if self.degree((i, j)) <= N]

    def product(self, w1, w2) -> dict:
        (i, j), (k, l) = w1, w2
        return {((i + k) % self.n, j + l): self.q ** (j * k)}

    @lru_cache(maxsize=None)
    def _cop(self, w):
        i, j = w
        d = {}
        for s in range(j + 1):
            c = q_binomial(j, s, self.Q)
            if not c.is_zero():
                d[(((i + self.t * s) % self.n, j - s), (i, s))] = c
        return d

    def coproduct(self, w) -> dict:
        return dict(self._cop(w))

    def counit(self, w) -> Scalar:
        return self.field.one() if w[1] == 0 else self.field.zero()

    @lru_cache(maxsize=None)
    def _anti(self, w):
        i, j = w
        F = self.field
        Sx = {((-self.t) % self.n, 1): -F.one()}
        Sg = {((self.n - 1), 0): F.one()}
        v = self.one()
        for _ in range(j):
            v = self.mul(v, Sx)
        for _ in range(i):
            v = self.mul(v, Sg)
        return v

    def antipode(self, w) -> dict:
        return dict(self._anti(w))

    def word_str(self, w) -> str:
        i, j = w
        s = ("" if i == 0 else ("g" if i == 1 else f"g^{i}")) + ("" if j == 0 else ("x" if j == 1 else f"x^{j}"))
        return s or "1"

    def is_A(self, w) -> bool:
        return w[0] == 0 and w[1] % self.np == 0

    def A_word(self, exps):
        return self.field.one(), (0, self.np * exps[0])

    def A_exps(self, w):
        return (w[1] // self.np,)

    def basis_B(self):
        return [(i, r) for i in range(self.n) for r in range(self.np)]

    def decompose_right(self, w):
        i, j = w
        k, r = divmod(j, self.np)
        return self.field.one(), (i, r), (k,)

    def decompose_left(self, w):
        i, j = w
        k, r = divmod(j, self.np)
        return self.q ** (-self.np * i * k % self.n), (k,), (i, r)

    def Pi_B(self, b) -> Scalar:
        return self.field.one() if b[1] == 0 else self.field.zero()

    def char_value(self, g, exps) -> Scalar:
        return Scalar.coerce(g, self.field) ** exps[0]

    def char_mul(self, g, h):
        return Scalar.coerce(g, self.field) + Scalar.coerce(h, self.field)

    def char_inv(self, g):
        return -Scalar.coerce(g, self.field)

    def point_ideal(self, g) -> AIdeal:
        return ProductIdeal(self.field, self.a_laurent, [_monic_linear(Scalar.coerce(g, self.field))])

    def orbit_params(self, g) -> list:
        c = Scalar.coerce(g, self.field)
        if c.is_zero():
            return [c]
        step = self.q ** ((-self.np) % self.n)
        return [c * step**k for k in range(self.orbit_size)]

    def core_ideal(self, g) -> AIdeal:
        c = Scalar.coerce(g, self.field)
        r = 1 if c.is_zero() else self.orbit_size
        return ProductIdeal(self.field, self.a_laurent, [_binomial_power(c, r)])

    def orbit_ideal(self, g) -> AIdeal:
        c = Scalar.coerce(g, self.field)
        return ProductIdeal(self.field, self.a_laurent, [_orbit_poly(c, self.n)])

    def tangent_value(self, direction, exps) -> Scalar:
        return self.field.one() if exps[0] == 1 else self.field.zero()

    def hbar(self) -> FdHopf:
        return taft_fd(self.n, self.t, self.q)

    def hbar_dual_target(self):
        """kC_d (x) T_f(n', t', q^d) with its generator data."""
        d = math.gcd(self.n, self.t)
        return tensor_target([("C", d), ("T", self.np, self.t // d, self.q**d)], self.field)


def taft(n: int, t: int, q) -> Taft:
    return Taft(n, t, q)


# ---------------------------------------------------------------------------
# Liu B(n, w, q)


class Liu(BasedHopf):
    """x central group-like, yg = q gy, g^n = x^w = 1 - y^n, Delta y = y (x) 1 + g (x) y.

    Words (a, b, c) = x^a g^b y^c with a in Z and 0 <= b, c < n.
    """

    pi_side = "right"
    point_side = "left"
    a_laurent = (True,)

    def __init__(self, n: int, w: int, q):
        q = Scalar.coerce(q)
        if n < 2 or w < 1:
            raise ValueError("need n >= 2 and w >= 1")
        _check_root(q, n)
        self.n, self.wexp, self.q = n, w, q
        self.field = q.field
        self.name = f"liu({n},{w},{q.to_literal()})"
        self.one_word = (0, 0, 0)

    def degree(self, w) -> int:
        return abs(w[0]) + w[1] + w[2]

    def words(self, N: int) -> list:
        n = self.n
        return [
            (a, b, c)
            for a in range(-N, N + 1)
            for b in range(n)
            for c in range(n)
            if abs(a) + b + c <= N
        ]

    @lru_cache(maxsize=None)
    def _prod(self, w1, w2):
        (a, b, c), (a2, b2, c2) = w1, w2
        n, F = self.n, self.field
        coef = self.q ** ((c * b2) % n)
        A, G, Y = a + a2, b + b2, c + c2
        if G >= n:
            G -= n
            A += self.wexp
        if Y < n:
            return {(A, G, Y): coef}
        Y -= n
        return {(A, G, Y): coef, (A + self.wexp, G, Y): -coef}

    def product(self, w1, w2) -> dict:
        return dict(self._prod(w1, w2))

    @lru_cache(maxsize=None)
    def _cop(self, w):
        a, b, c = w
        d: dict = {}
        for s in range(c + 1):
            coef = q_binomial(c, s, self.q)
            for left, cl in self._prod((a, b, 0), (0, s, c - s)).items():
                add_into(d, (left, (a, b, s)), coef * cl)
        return d

    def coproduct(self, w) -> dict:
        return dict(self._cop(w))

    def counit(self, w) -> Scalar:
        return self.field.one() if w[2] == 0 else self.field.zero()

    @lru_cache(maxsize=None)
    def _anti(self, w):
        a, b, c = w
        F = self.field
        ginv = {(-self.wexp, self.n - 1, 0): F.one()}
        Sy = {k: -v for k, v in self.mul(ginv, {(0, 0, 1): F.one()}).items()}
        v = self.one()
        for _ in range(c):
            v = self.mul(v, Sy)
        for _ in range(b):
            v = self.mul(v, ginv)
        return self.mul(v, {(-a, 0, 0): F.one()})

    def antipode(self, w) -> dict:
        return dict(self._anti(w))

    def word_str(self, w) -> str:
        a, b, c = w
        parts = []
        if a:
            parts.append("x" if a == 1 else f"x^{a}")
        if b:
            parts.append("g" if b == 1 else f"g^{b}")
        if c:
            parts.append("y" if c == 1 else f"y^{c}")
        return "".join(parts) or "1"

    def is_A(self, w) -> bool:
        return w[1] == 0 and w[2] == 0

    def A_word(self, exps):
        return self.field.one(), (exps[0], 0, 0)

    def A_exps(self, w):
        return (w[0],)

    def basis_B(self):
        return [(0, b, c) for b in range(self.n) for c in range(self.n)]

    def decompose_right(self, w):
        a, b, c = w
        return self.field.one(), (0, b, c), (a,)

    def decompose_left(self, w):
        a, b, c = w
        return self.field.one(), (a,), (0, b, c)

    def Pi_B(self, b) -> Scalar:
        return self.field.one() if b[2] == 0 else self.field.zero()

    def char_valid(self, g) -> bool:
        return not Scalar.coerce(g, self.field).is_zero()

    def char_value(self, g, exps) -> Scalar:
        return _pow(Scalar.coerce(g, self.field), exps[0])

    def char_mul(self, g, h):
        return Scalar.coerce(g, self.field) * Scalar.coerce(h, self.field)

    def char_inv(self, g):
        return Scalar.coerce(g, self.field).inverse()

    def point_ideal(self, g) -> AIdeal:
        return ProductIdeal(self.field, self.a_laurent, [_monic_linear(Scalar.coerce(g, self.field))])

    def orbit_params(self, g) -> list:
        return [Scalar.coerce(g, self.field)]

    def core_ideal(self, g) -> AIdeal:
        return self.point_ideal(g)

    def orbit_ideal(self, g) -> AIdeal:
        return ProductIdeal(self.field, self.a_laurent, [_binomial_power(Scalar.coerce(g, self.field), self.n)])

    def tangent_value(self, direction, exps) -> Scalar:
        return self.field(exps[0])

    def hbar(self) -> FdHopf:
        return hbar_from_based(self, generators=[(0, 1, 0), (0, 0, 1)])

    def hbar_target(self):
        """T_f(n, 1, q) with generator data, for iso_search against Hbar."""
        return tensor_target([("T", self.n, 1, self.q)], self.field)


def liu(n: int, w: int, q) -> Liu:
    return Liu(n, w, q)


# ---------------------------------------------------------------------------
# localized quantum plane A(l, n, q) and B(n, p_0, ..., p_s, q)


class _PlaneBase(BasedHopf):
    """Shared A = k[X^{+-1}, Y] structure; X = x^l, Y = y^L, exps (a, b) = X^a Y^b."""

    pi_side = "right"
    point_side = "left"
    a_laurent = (True, False)
    ell: int
    L: int
    xpow: int  # Delta Y = Y (x) 1 + X^xpow (x) Y
    d_orbit: int  # order of the scaling of Y under ad(x)

    def char_valid(self, g) -> bool:
        lam, _ = g
        return not Scalar.coerce(lam, self.field).is_zero()

    def _lm(self, g):
        lam, mu = g
        return Scalar.coerce(lam, self.field), Scalar.coerce(mu, self.field)

    def char_value(self, g, exps) -> Scalar:
        lam, mu = self._lm(g)
        return _pow(lam, exps[0]) * mu ** exps[1]

    def char_mul(self, g, h):
        (l1, m1), (l2, m2) = self._lm(g), self._lm(h)
        return (l1 * l2, m1 + l1**self.xpow * m2)

    def char_inv(self, g):
        lam, mu = self._lm(g)
        li = lam.inverse()
        return (li, -(li**self.xpow) * mu)

    def point_ideal(self, g) -> AIdeal:
        lam, mu = self._lm(g)
        return ProductIdeal(self.field, self.a_laurent, [_monic_linear(lam), _monic_linear(mu)])

    def _ad_step(self) -> Scalar:
        return self.q ** (self.L % self.ell)

    def orbit_params(self, g) -> list:
        lam, mu = self._lm(g)
        if mu.is_zero():
            return [(lam, mu)]
        step = self._ad_step()
        return [(lam, mu * step**k) for k in range(self.d_orbit)]

    def core_ideal(self, g) -> AIdeal:
        lam, mu = self._lm(g)
        r = 1 if mu.is_zero() else self.d_orbit
        return ProductIdeal(self.field, self.a_laurent, [_monic_linear(lam), _binomial_power(mu, r)])

    def orbit_ideal(self, g) -> AIdeal:
        lam, mu = self._lm(g)
        return ProductIdeal(self.field, self.a_laurent, [_monic_linear(lam), _orbit_poly(mu, self.ell)])

    def tangent_value(self, direction, exps) -> Scalar:
        F = self.field
        a, b = exps
        if direction in ("x", "f"):
            return F(a) if b == 0 else F.zero()
        if direction in ("y", "f'"):
            return F.one() if b == 1 else F.zero()
        raise ValueError(f"unknown tangent direction {direction!r}")


class QPlane(_PlaneBase):
    """k<x^{+-1}, y : xy = q yx>, Delta y = y (x) 1 + x^n (x) y; words (i, j) = y^i x^j."""

    def __init__(self, ell: int, n: int, q):
        q = Scalar.coerce(q)
        if ell < 2 or n < 1:
            raise ValueError("need l >= 2 and n >= 1")
        _check_root(q, ell)
        self.ell, self.n, self.q = ell, n, q
        self.field = q.field
        self.d = math.gcd(n, ell)
        self.lp = ell // self.d
        self.L = self.lp
        self.xpow = n // self.d
        self.d_orbit = self.d
        self.Qn = q**n
        self.name = f"qplane({ell},{n},{q.to_literal()})"
        self.one_word = (0, 0)

    def degree(self, w) -> int:
        return w[0] + abs(w[1])

    def words(self, N: int) -> list:
        return [(i, j) for i in range(N + 1) for j in range(-N, N + 1) if i + abs(j) <= N]

    def product(self, w1, w2) -> dict:
        (i, j), (k, l) = w1, w2
        return {(i + k, j + l): self.q ** ((j * k) % self.ell)}

    @lru_cache(maxsize=None)
    def _cop(self, w):
        i, j = w
        d = {}
        for s in range(i + 1):
            c = q_binomial(i, s, self.Qn)
            if not c.is_zero():
                d[((i - s, self.n * s + j), (s, j))] = c
        return d

    def coproduct(self, w) -> dict:
        return dict(self._cop(w))

    def counit(self, w) -> Scalar:
        return self.field.one() if w[0] == 0 else self.field.zero()

    @lru_cache(maxsize=None)
    def _anti(self, w):
        i, j = w
        F = self.field
        Sy = {k: -v for k, v in self.product((0, -self.n), (1, 0)).items()}
        v = {(0, -j): F.one()}
        for _ in range(i):
            v = self.mul(v, Sy)
        return v

    def antipode(self, w) -> dict:
        return dict(self._anti(w))

    def word_str(self, w) -> str:
        i, j = w
        s = ("" if i == 0 else ("y" if i == 1 else f"y^{i}")) + ("" if j == 0 else ("x" if j == 1 else f"x^{j}"))
        return s or "1"

    def is_A(self, w) -> bool:
        return w[0] % self.lp == 0 and w[1] % self.ell == 0

    def A_word(self, exps):
        a, b = exps
        return self.field.one(), (self.lp * b, self.ell * a)

    def A_exps(self, w):
        return (w[1] // self.ell, w[0] // self.lp)

    def basis_B(self):
        return [(i, j) for i in range(self.lp) for j in range(self.ell)]

    def decompose_right(self, w):
        i, j = w
        i1, i0 = divmod(i, self.lp)
        j1, j0 = divmod(j, self.ell)
        return self.q ** ((-j0 * self.lp * i1) % self.ell), (i0, j0), (j1, i1)

    def decompose_left(self, w):
        i, j = w
        i1, i0 = divmod(i, self.lp)
        j1, j0 = divmod(j, self.ell)
        return self.field.one(), (j1, i1), (i0, j0)

    def Pi_B(self, b) -> Scalar:
        return self.field.one() if b[0] == 0 else self.field.zero()

    def hbar(self) -> FdHopf:
        gens = [(0, 1)] + ([(1, 0)] if self.lp > 1 else [])
        return hbar_from_based(self, generators=gens)

    def hbar_dual_target(self):
        """kC_d (x) T_f(l', n', q^-d)."""
        Qd = self.q.inverse() ** self.d
        return tensor_target([("C", self.d), ("T", self.lp, self.xpow, Qd)], self.field)


def qplane(ell: int, n: int, q) -> QPlane:
    return QPlane(ell, n, q)


class BFam(_PlaneBase):
    """Subalgebra of the quantum plane generated by x^{+-1} and y_i = y^{m_i}.

    Delta y_i = y_i (x) 1 + x^{m_i n} (x) y_i.  Words (e, j) = y^e x^j with e in
    the semigroup generated by the m_i.
    """

    def __init__(self, n: int, ps: Sequence[int], q=None):
        ps = list(ps)
        if len(ps) < 3:
            raise ValueError("need p_0 and at least two p_i")
        p0, rest = ps[0], ps[1:]
        if n < 1 or p0 < 1 or n % p0:
            raise ValueError("need p_0 | n")
        if any(a >= b for a, b in zip(rest, rest[1:])):
            raise ValueError("p_1 < ... < p_s must be strictly increasing")
        if any(math.gcd(a, b) != 1 for a, b in itertools.combinations(rest, 2)):
            raise ValueError("p_1, ..., p_s must be pairwise coprime")
        self.n, self.p0, self.ps = n, p0, rest
        self.L = math.prod(rest)
        self.ell = (n // p0) * self.L
        q = primitive_root(self.ell) if q is None else Scalar.coerce(q)
        _check_root(q, self.ell)
        self.q = q
        self.field = q.field
        self.ms = [self.L // p for p in rest]
        self.xpow = p0
        self.d_orbit = n // p0
        self.name = f"bfam({n},{','.join(map(str, ps))},{q.to_literal()})"
        self.one_word = (0, 0)
        self._res = {}
        for idx in itertools.product(*[range(p) for p in rest]):
            e = sum(i * m for i, m in zip(idx, self.ms))
            self._res[e % self.L] = (e, idx)

    def _split(self, e: int):
        """e = E + L r with E = sum i_k m_k, 0 <= i_k < p_k; None if e is not in the semigroup."""
        E, idx = self._res[e % self.L]
        if e < E:
            return None
        return E, idx, (e - E) // self.L

    def in_semigroup(self, e: int) -> bool:
        return e >= 0 and self._split(e) is not None

    def degree(self, w) -> int:
        e, j = w
        _, idx, r = self._split(e)
        return sum(idx) + self.ps[0] * r + abs(j)

    def words(self, N: int) -> list:
        out = []
        for e in range(0, N * self.L + 1):
            if not self.in_semigroup(e):
                continue
            for j in range(-N, N + 1):
                if self.degree((e, j)) <= N:
                    out.append((e, j))
        return out

    def product(self, w1, w2) -> dict:
        (e, j), (f, l) = w1, w2
        return {(e + f, j + l): self.q ** ((j * f) % self.ell)}

    def _gen_cop(self, k: int) -> dict:
        m = self.ms[k]
        one = self.field.one()
        return {((m, 0), (0, 0)): one, ((0, m * self.n), (m, 0)): one}

    @lru_cache(maxsize=None)
    def _cop_y(self, e: int):
        if e == 0:
            return {((0, 0), (0, 0)): self.field.one()}
        _, idx, r = self._split(e)
        k = next((t for t, i in enumerate(idx) if i), 0)
        return self.tmul(self._cop_y(e - self.ms[k]), self._gen_cop(k))

    def coproduct(self, w) -> dict:
        e, j = w
        return self.tmul(self._cop_y(e), {((0, j), (0, j)): self.field.one()})

    def counit(self, w) -> Scalar:
        return self.field.one() if w[0] == 0 else self.field.zero()

    @lru_cache(maxsize=None)
    def _anti_y(self, e: int):
        if e == 0:
            return self.one()
        _, idx, r = self._split(e)
        k = next((t for t, i in enumerate(idx) if i), 0)
        m = self.ms[k]
        Sy = {key: -v for key, v in self.product((0, -m * self.n), (m, 0)).items()}
        return self.mul(Sy, self._anti_y(e - m))

    def antipode(self, w) -> dict:
        e, j = w
        return self.mul({(0, -j): self.field.one()}, self._anti_y(e))

    def word_str(self, w) -> str:
        e, j = w
        s = ("" if e == 0 else ("y" if e == 1 else f"y^{e}")) + ("" if j == 0 else ("x" if j == 1 else f"x^{j}"))
        return s or "1"

    def is_A(self, w) -> bool:
        return w[0] % self.L == 0 and w[1] % self.ell == 0

    def A_word(self, exps):
        a, b = exps
        return self.field.one(), (self.L * b, self.ell * a)

    def A_exps(self, w):
        return (w[1] // self.ell, w[0] // self.L)

    def basis_B(self):
        Es = sorted(e for e, _ in self._res.values())
        return [(E, j) for E in Es for j in range(self.ell)]

    def decompose_right(self, w):
        e, j = w
        E, _, r = self._split(e)
        j1, j0 = divmod(j, self.ell)
        return self.q ** ((-j0 * self.L * r) % self.ell), (E, j0), (j1, r)

    def decompose_left(self, w):
        e, j = w
        E, _, r = self._split(e)
        j1, j0 = divmod(j, self.ell)
        return self.field.one(), (j1, r), (E, j0)

    def Pi_B(self, b) -> Scalar:
        return self.field.one() if b[0] == 0 else self.field.zero()

    def hbar(self) -> FdHopf:
        return hbar_from_based(self, generators=[(0, 1)] + [(m, 0) for m in self.ms])

    def xis(self) -> list:
        return [self.q.inverse() ** ((self.n // self.p0) * m) for m in self.ms]

    def hbar_dual_target(self):
        """kC_{n/p0} (x) T_f(p_1, p_0 p_2...p_s, xi_1) (x) ... (x) T_f(p_s, p_0, xi_s)."""
        factors: list = [("C", self.n // self.p0)]
        xis = self.xis()
        for k, p in enumerate(self.ps):
            t = self.p0 * math.prod(self.ps[k + 1:])
            factors.append(("T", p, t, xis[k]))
        return tensor_target(factors, self.field)


def bfam(n: int, *ps: int, q=None) -> BFam:
    return BFam(n, ps, q)


# ---------------------------------------------------------------------------
# U_eps(sl_2)


class UepsSl2(BasedHopf):
    """PBW words (a, b, c) = F^a K^b E^c.

    KE = eps^2 EK, KF = eps^-2 FK, EF - FE = (K - K^-1)/(eps - eps^-1),
    Delta E = E (x) K + 1 (x) E, Delta F = F (x) 1 + K^-1 (x) F.
    """

    pi_side = "right"
    a_laurent = (False, True, False)

    def __init__(self, ell: int, eps=None):
        if ell < 3 or ell % 2 == 0:
            raise ValueError("l must be odd and at least 3")
        eps = primitive_root(ell) if eps is None else Scalar.coerce(eps)
        _check_root(eps, ell, "eps")
        self.ell, self.epsilon = ell, eps
        self.field = eps.field
        self.name = f"ueps_sl2({ell},{eps.to_literal()})"
        self.one_word = (0, 0, 0)
        self._den = (eps - eps.inverse()).inverse()

    def degree(self, w) -> int:
        return w[0] + abs(w[1]) + w[2]

    def words(self, N: int) -> list:
        return [
            (a, b, c)
            for a in range(N + 1)
            for b in range(-N, N + 1)
            for c in range(N + 1)
            if a + abs(b) + c <= N
        ]

    def _e(self, k: int) -> Scalar:
        return _pow(self.epsilon, k)

    def _times_F(self, w) -> dict:
        a, b, c = w
        out = {(a + 1, b, c): self._e(-2 * b)}
        for j in range(c):
            add_into(out, (a, b + 1, c - 1), self._e(-2 * j) * self._den)
            add_into(out, (a, b - 1, c - 1), -self._e(2 * j) * self._den)
        return out

    @lru_cache(maxsize=None)
    def _prod(self, w1, w2):
        a2, b2, c2 = w2
        cur = {w1: self.field.one()}
        for _ in range(a2):
            nxt: dict = {}
            for w, c in cur.items():
                axpy(nxt, c, self._times_F(w))
            cur = nxt
        nxt = {}
        for (a, b, c), v in cur.items():
            add_into(nxt, (a, b + b2, c), v * self._e(-2 * c * b2))
        return {(a, b, c + c2): v for (a, b, c), v in nxt.items()}

    def product(self, w1, w2) -> dict:
        return dict(self._prod(w1, w2))

    @lru_cache(maxsize=None)
    def _cop(self, w):
        a, b, c = w
        F = self.field
        one = F.one()
        if c > 0:
            return self.tmul(self._cop((a, b, c - 1)), {((0, 0, 1), (0, 1, 0)): one, ((0, 0, 0), (0, 0, 1)): one})
        if b != 0:
            s = 1 if b > 0 else -1
            return self.tmul(self._cop((a, b - s, 0)), {((0, s, 0), (0, s, 0)): one})
        if a > 0:
            return self.tmul(self._cop((a - 1, 0, 0)), {((1, 0, 0), (0, 0, 0)): one, ((0, -1, 0), (1, 0, 0)): one})
        return {((0, 0, 0), (0, 0, 0)): one}

    def coproduct(self, w) -> dict:
        return dict(self._cop(w))

    def counit(self, w) -> Scalar:
        return self.field.one() if w[0] == 0 and w[2] == 0 else self.field.zero()

    @lru_cache(maxsize=None)
    def _anti(self, w):
        a, b, c = w
        one = self.field.one()
        if c > 0:
            SE = {k: -v for k, v in self.product((0, 0, 1), (0, -1, 0)).items()}
            return self.mul(SE, self._anti((a, b, c - 1)))
        if b != 0:
            s = 1 if b > 0 else -1
            return self.mul({(0, -s, 0): one}, self._anti((a, b - s, 0)))
        if a > 0:
            SF = {k: -v for k, v in self.product((0, 1, 0), (1, 0, 0)).items()}
            return self.mul(SF, self._anti((a - 1, 0, 0)))
        return self.one()

    def antipode(self, w) -> dict:
        return dict(self._anti(w))

    def word_str(self, w) -> str:
        parts = []
        for sym, e in zip("FKE", w):
            if e:
                parts.append(sym if e == 1 else f"{sym}^{e}")
        return "".join(parts) or "1"

    def is_A(self, w) -> bool:
        return all(x % self.ell == 0 for x in w)

    def A_word(self, exps):
        return self.field.one(), tuple(self.ell * x for x in exps)

    def A_exps(self, w):
        return tuple(x // self.ell for x in w)

    def basis_B(self):
        return list(itertools.product(range(self.ell), repeat=3))

    def decompose_right(self, w):
        parts = [divmod(x, self.ell) for x in w]
        return self.field.one(), tuple(r for _, r in parts), tuple(k for k, _ in parts)

    def decompose_left(self, w):
        parts = [divmod(x, self.ell) for x in w]
        return self.field.one(), tuple(k for k, _ in parts), tuple(r for _, r in parts)

    def Pi_B(self, b) -> Scalar:
        return self.field.one() if b[0] == 0 and b[2] == 0 else self.field.zero()


def ueps_sl2(ell: int, eps=None) -> UepsSl2:
    return UepsSl2(ell, eps)


# ---------------------------------------------------------------------------
# abelian-by-finite groups Z^r x| F


class AbfGroup(BasedHopf):
    """k[Z^r x| F]; words (v, f) with v in Z^r, f an index into the group table."""

    pi_side = "left"
    point_side = "right"

    def __init__(self, rank: int, matrices: Sequence[Sequence[Sequence[int]]], G: GroupTable, field=None):
        self.rank = rank
        self.G = G
        self.M = [tuple(tuple(int(x) for x in row) for row in m) for m in matrices]
        if len(self.M) != G.order:
            raise ValueError("one matrix per group element required")
        ident = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
        if self.M[G.identity] != ident:
            raise ValueError("identity must act trivially")
        for f in range(G.order):
            for g in range(G.order):
                if self._mm(self.M[f], self.M[g]) != self.M[G.mult[f][g]]:
                    raise ValueError("matrices do not define an action by automorphisms")
        self.field = field or Rationals()
        self.a_laurent = (True,) * rank
        self.name = f"abf(rank={rank},|F|={G.order})"
        self.one_word = ((0,) * rank, G.identity)

    @staticmethod
    def _mm(A, B):
        n = len(A)
        return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))

    def _act(self, f: int, v: tuple) -> tuple:
        M = self.M[f]
        return tuple(sum(M[i][k] * v[k] for k in range(self.rank)) for i in range(self.rank))

    def degree(self, w) -> int:
        v, f = w
        return sum(abs(x) for x in v) + (0 if f == self.G.identity else 1)

    def words(self, N: int) -> list:
        out = []
        for v in itertools.product(range(-N, N + 1), repeat=self.rank):
            for f in range(self.G.order):
                if self.degree((v, f)) <= N:
                    out.append((v, f))
        return out

    def product(self, w1, w2) -> dict:
        (v, f), (u, g) = w1, w2
        mv = self._act(f, u)
        return {(tuple(a + b for a, b in zip(v, mv)), self.G.mult[f][g]): self.field.one()}

    def coproduct(self, w) -> dict:
        return {(w, w): self.field.one()}

    def counit(self, w) -> Scalar:
        return self.field.one()

    def antipode(self, w) -> dict:
        v, f = w
        fi = self.G.inverse[f]
        return {(tuple(-x for x in self._act(fi, v)), fi): self.field.one()}

    def word_str(self, w) -> str:
        v, f = w
        s = "".join(f"b{k + 1}^{x}" for k, x in enumerate(v) if x)
        if f != self.G.identity:
            s += f"[{self.G.labels[f]}]"
        return s or "1"

    def is_A(self, w) -> bool:
        return w[1] == self.G.identity

    def A_word(self, exps):
        return self.field.one(), (tuple(exps), self.G.identity)

    def A_exps(self, w):
        return tuple(w[0])

    def basis_B(self):
        z = (0,) * self.rank
        order = [self.G.identity] + [f for f in range(self.G.order) if f != self.G.identity]
        return [(z, f) for f in order]

    def decompose_right(self, w):
        v, f = w
        return self.field.one(), ((0,) * self.rank, f), self._act(self.G.inverse[f], v)

    def decompose_left(self, w):
        v, f = w
        return self.field.one(), tuple(v), ((0,) * self.rank, f)

    def Pi_B(self, b) -> Scalar:
        return self.field.one()

    def _vals(self, g) -> tuple:
        return tuple(Scalar.coerce(x, self.field) for x in g)

    def char_valid(self, g) -> bool:
        return len(g) == self.rank and all(not x.is_zero() for x in self._vals(g))

    def char_value(self, g, exps) -> Scalar:
        out = self.field.one()
        for lam, e in zip(self._vals(g), exps):
            out = out * _pow(lam, e)
        return out

    def char_mul(self, g, h):
        return tuple(a * b for a, b in zip(self._vals(g), self._vals(h)))

    def char_inv(self, g):
        return tuple(a.inverse() for a in self._vals(g))

    def point_ideal(self, g) -> AIdeal:
        return ProductIdeal(self.field, self.a_laurent, [_monic_linear(x) for x in self._vals(g)])

    def orbit_params(self, g) -> list:
        lam = self._vals(g)
        out = []
        for f in range(self.G.order):
            M = self.M[f]
            img = []
            for k in range(self.rank):
                v = self.field.one()
                for j in range(self.rank):
                    v = v * _pow(lam[j], M[j][k])
                img.append(v)
            img = tuple(img)
            if img not in out:
                out.append(img)
        return out

    def core_ideal(self, g) -> AIdeal:
        pts = self.orbit_params(g)
        if len(pts) == 1:
            return self.point_ideal(g)
        return PointsetIdeal(self.field, self.a_laurent, pts)

    def orbit_ideal(self, g) -> AIdeal:
        return self.core_ideal(g)

    def orbit_ideal_N(self, N: int) -> AIdeal:
        F = self.field
        return ProductIdeal(F, self.a_laurent, [[-F.one()] + [F.zero()] * (N - 1) + [F.one()]] * self.rank)

    def tangent_value(self, direction, exps) -> Scalar:
        return self.field(exps[int(direction)])

    def hbar(self) -> FdHopf:
        return hbar_from_based(self)


def abf_group(rank: int, matrices, G: GroupTable, field: FieldDesc | None = None) -> AbfGroup:
    return AbfGroup(rank, matrices, G, field)


# ---------------------------------------------------------------------------
# u^[p](g)


@dataclass
class UpMetadata:
    p: int
    dim: int
    A_generators: list  # labels of y_i = x_i^p - x_i^[p]
    central: bool
    primitive: bool
    witnesses: list


def _ug_tools(L: RestrictedLie):
    """Product and coproduct in U(L) on PBW monomials (no p-truncation)."""
    n = L.dim
    F = L.field
    one = F.one()

    @lru_cache(maxsize=None)
    def right_gen(a: tuple, k: int) -> tuple:
        last = max((j for j in range(n) if a[j]), default=-1)
        out: dict = {}
        if last <= k:
            b = list(a)
            b[k] += 1
            return ((tuple(b), one),)
        a2 = list(a)
        a2[last] -= 1
        a2 = tuple(a2)
        for mono, c in right_gen(a2, k):
            for mono2, c2 in right_gen(mono, last):
                add_into(out, mono2, c * c2)
        for l, cb in L._br(last, k).items():
            for mono, c in right_gen(a2, l):
                add_into(out, mono, cb * c)
        return tuple(sorted(out.items()))

    def mul(x: dict, y: dict) -> dict:
        out: dict = {}
        for b, cb in y.items():
            cur = dict(x)
            for k in range(n):
                for _ in range(b[k]):
                    nxt: dict = {}
                    for mono, c in cur.items():
                        for m2, c2 in right_gen(mono, k):
                            add_into(nxt, m2, c * c2)
                    cur = nxt
            axpy(out, cb, cur)
        return out

    def comul(x: dict) -> dict:
        out: dict = {}
        for a, c in x.items():
            for b in itertools.product(*[range(e + 1) for e in a]):
                coef = F(math.prod(math.comb(e, f) for e, f in zip(a, b)))
                if coef:
                    add_into(out, (b, tuple(e - f for e, f in zip(a, b))), c * coef)
        return out

    return mul, comul


def u_positive_char(L: RestrictedLie | None = None, p: int = 3) -> tuple[FdHopf, UpMetadata]:
    """u^[p](L) with the central primitive p-polynomials y_i = x_i^p - x_i^[p] certified in U(L)."""
    L = L or sl2(p)
    H = restricted_enveloping(L)
    n, p = L.dim, L.p
    F = L.field
    mul, comul = _ug_tools(L)
    zero = (0,) * n
    central = primitive = True
    witnesses = []
    ys = []
    for i in range(n):
        xp = tuple(p if k == i else 0 for k in range(n))
        y = {xp: F.one()}
        for k, c in L._pm(i).items():
            add_into(y, tuple(int(t == k) for t in range(n)), -c)
        ys.append(y)
        for j in range(n):
            xj = {tuple(int(t == j) for t in range(n)): F.one()}
            comm = mul(xj, y)
            axpy(comm, -F.one(), mul(y, xj))
            if comm:
                central = False
                witnesses.append(f"[{L.names[j]}, y_{L.names[i]}] != 0")
        d = comul(y)
        want: dict = {}
        for m, c in y.items():
            add_into(want, (m, zero), c)
            add_into(want, (zero, m), c)
        if d != want:
            primitive = False
            witnesses.append(f"y_{L.names[i]} is not primitive")
    labels = [f"{nm}^{p} - {nm}^[p]" for nm in L.names]
    return H, UpMetadata(p, H.dim, labels, central, primitive, witnesses)


# ---------------------------------------------------------------------------
# tensor targets for iso_search


def tensor_target(factors: Sequence[tuple], field: FieldDesc) -> tuple[FdHopf, GenSpec]:
    """kC_d (x) T_f(n, t, q) (x) ... with generator declarations.

    factors: ("C", d) or ("T", n, t, q); trivial factors (d = 1) are skipped.
    """
    parts = []
    decls_per = []
    for fac in factors:
        if fac[0] == "C":
            d = fac[1]
            if d == 1:
                continue
            H = group_algebra(cyclic_group(d), field)
            H.generators = [{1: field.one()}]
            parts.append(H)
            decls_per.append([("grouplike", d, None)])
        elif fac[0] == "T":
            _, n, t, q = fac
            H = taft_fd(n, t, Scalar.coerce(q, field), field)
            parts.append(H)
            m = H.dim // n
            decls_per.append([("grouplike", n, None), ("skew", m, t)])
        else:
            raise ValueError(f"unknown factor {fac!r}")
    T = parts[0]
    for P in parts[1:]:
        T = tensor_product(T, P)
    names = []
    gens = []
    relations = []
    factor_words = []
    k = 0
    for fi, (P, decl) in enumerate(zip(parts, decls_per)):
        g = f"g{fi}"
        if decl[0][0] == "grouplike" and len(decl) == 1:
            gens.append(GenDecl(g, "grouplike", T.generators[k], order=decl[0][1]))
            relations.append(([g] * decl[0][1], 1, []))
            names.append([g])
            factor_words.append([[g] * a for a in range(decl[0][1])])
            k += 1
        else:
            n = decl[0][1]
            x = f"x{fi}"
            _, m, t = decl[1]
            gens.append(GenDecl(g, "grouplike", T.generators[k], order=n))
            k += 1
            if m > 1:
                gens.append(GenDecl(x, "skew", T.generators[k], skew=((), tuple([g] * (t % n)))))
                k += 1
            relations.append(([g] * n, 1, []))
            if m > 1:
                relations.append(([x] * m, 0, []))
                # xg = q gx with q read off the factor itself
                gx = P.mul(P.e(m), P.e(1))  # g*x
                xg = P.mul(P.e(1), P.e(m))  # x*g
                ratio = xg[m + 1] * gx[m + 1].inverse()
                relations.append(([x, g], ratio, [g, x]))
                names.append([g, x])
            else:
                names.append([g])
            factor_words.append([[g] * i + [x] * j for i in range(n) for j in range(m)])
    for a, b in itertools.combinations(range(len(names)), 2):
        for u in names[a]:
            for v in names[b]:
                relations.append(([u, v], 1, [v, u]))
    basis_words = [sum(ws, []) for ws in itertools.product(*factor_words)]
    return T, GenSpec(gens, relations, basis_words)


# ---------------------------------------------------------------------------
# reference parsing


def _scalar_arg(text: str, field: FieldDesc | None) -> Scalar:
    try:
        return parse_scalar(text, field)
    except Exception as exc:  # noqa: BLE001
        raise RefError(f"cannot parse scalar {text!r}: {exc}") from exc


def _ints(text: str, name: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise RefError(f"{name}: expected integers, got {text!r}") from exc


def parse_ref(ref: str, field: FieldDesc | None = None):
    """Build a family (BasedHopf) or a finite-dimensional FdHopf from a reference string."""
    ref = ref.strip()
    head, _, rest = ref.partition(":")
    try:
        if head == "dihedral":
            return dihedral(field)
        if head in ("taft", "liu", "qplane"):
            parts = rest.split(",")
            if len(parts) != 3:
                raise RefError(f"{head} needs three parameters")
            a, b = int(parts[0]), int(parts[1])
            q = _scalar_arg(parts[2], field)
            return {"taft": taft, "liu": liu, "qplane": qplane}[head](a, b, q)
        if head == "bfam":
            nums = _ints(rest, "bfam")
            q = None
            if len(nums) < 4:
                raise RefError("bfam needs n, p0, p1, p2, ...")
            return BFam(nums[0], nums[1:], q)
        if head == "ueps_sl2":
            parts = rest.split(",")
            eps = _scalar_arg(parts[1], field) if len(parts) > 1 else None
            return ueps_sl2(int(parts[0]), eps)
        if head == "abf":
            r, m, rows = rest.split(":")
            r, m = int(r), int(m)
            gen = [[int(x) for x in row.split(",")] for row in rows.split("/")]
            if len(gen) != r or any(len(row) != r for row in gen):
                raise RefError("abf: generator matrix must be rank x rank")
            mats = []
            cur = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
            for _ in range(m):
                mats.append(cur)
                cur = AbfGroup._mm(tuple(map(tuple, gen)), cur)
            if cur != mats[0]:
                raise RefError("abf: generator matrix does not have the stated order")
            return abf_group(r, mats, cyclic_group(m), field)
        if head == "up":
            name, p = rest.split(",")
            if name.strip() != "sl2":
                raise RefError("up: only sl2 is supported")
            return u_positive_char(sl2(int(p)))[0]
        if head == "cyclic":
            return group_algebra(cyclic_group(int(rest)), field)
        if head == "taft_fd":
            parts = rest.split(",")
            return taft_fd(int(parts[0]), int(parts[1]), _scalar_arg(parts[2], field))
        if head == "sweedler":
            return taft_fd(2, 1, -1)
    except RefError:
        raise
    except (ValueError, IndexError) as exc:
        raise RefError(f"bad reference {ref!r}: {exc}") from exc
    raise RefError(f"unknown family reference {ref!r}")
