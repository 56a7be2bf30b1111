"""Exact scalars over Q, cyclotomic fields Q(zeta_n) and prime fields F_p.

Characteristic-zero elements are stored as an integer coefficient vector in
powers of zeta (degree < phi(n)) over one positive common denominator, reduced
modulo the n-th cyclotomic polynomial.  Q is the degree-one case.  Prime-field
elements are residues in [0, p).

Fields are interned, so ``a.field is b.field`` is the fast equality test.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "FieldDesc",
    "Rationals",
    "Cyclotomic",
    "PrimeField",
    "Scalar",
    "FieldMismatchError",
    "cyclotomic_polynomial",
    "primitive_root",
    "q_binomial",
    "common_field",
    "parse_scalar",
    "parse_field",
    "field_to_json",
    "multiplicative_order",
    "roots_in_field",
]


class FieldMismatchError(ValueError):
    """Raised when scalars from incompatible fields are combined."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficients low -> high)


def _poly_divmod_int_monic(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quo = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quo[k - dd] = c
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    rem = num[:dd] if dd > 0 else [0]
    return quo, rem


def _poly_mul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, lowest degree first.

    Computed by exact division of z^n - 1 by Phi_d over the proper divisors d.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod_int_monic(num, cyclotomic_polynomial(d))
            if any(r):
                raise ArithmeticError("non-exact cyclotomic division")
            num = q
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# fields


class FieldDesc:
    """Descriptor of a coefficient field; instances are interned."""

    __slots__ = ("kind", "n", "p", "degree", "modulus", "_zero", "_one", "__weakref__")
    _cache: dict = {}

    def __new__(cls, kind: str, n: int = 1):
        if kind == "cyclotomic" and n in (1, 2):
            kind, n = "Q", 1
        if kind == "Q":
            n = 1
        key = (kind, n)
        obj = cls._cache.get(key)
        if obj is not None:
            return obj
        if kind == "cyclotomic":
            if n < 1:
                raise ValueError("cyclotomic order must be positive")
        elif kind == "gf":
            if not _is_prime(n):
                raise ValueError(f"{n} is not prime")
        elif kind != "Q":
            raise ValueError(f"unknown field kind {kind!r}")
        obj = object.__new__(cls)
        obj.kind = kind
        obj.n = n
        obj.p = n if kind == "gf" else 0
        if kind == "gf":
            obj.degree = 1
            obj.modulus = None
        else:
            obj.modulus = cyclotomic_polynomial(n) if kind == "cyclotomic" else (0, 1)
            obj.degree = len(obj.modulus) - 1
        cls._cache[key] = obj
        obj._zero = Scalar._make(obj, 0 if kind == "gf" else ((0,) * obj.degree, 1))
        obj._one = Scalar._make(obj, 1 if kind == "gf" else ((1,) + (0,) * (obj.degree - 1), 1))
        return obj

    def __reduce__(self):
        return (FieldDesc, (self.kind, self.n))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def root_order(self) -> int:
        """Order of the cyclic group of roots of unity contained in the field."""
        if self.kind == "gf":
            return self.p - 1
        if self.kind == "Q":
            return 2
        return self.n if self.n % 2 == 0 else 2 * self.n

    def zero(self) -> "Scalar":
        return self._zero

    def one(self) -> "Scalar":
        return self._one

    def __call__(self, value) -> "Scalar":
        return Scalar.coerce(value, self)

    def elements(self) -> list["Scalar"]:
        if self.kind != "gf":
            raise ValueError("only prime fields are finite")
        return [Scalar._make(self, k) for k in range(self.p)]

    def __repr__(self) -> str:
        if self.kind == "Q":
            return "Rationals()"
        if self.kind == "gf":
            return f"PrimeField({self.p})"
        return f"Cyclotomic({self.n})"

    def sort_key(self):
        return ({"Q": 0, "cyclotomic": 1, "gf": 2}[self.kind], self.n)


def Rationals() -> FieldDesc:
    return FieldDesc("Q")


def Cyclotomic(n: int) -> FieldDesc:
    return FieldDesc("cyclotomic", n)


def PrimeField(p: int) -> FieldDesc:
    return FieldDesc("gf", p)


def common_field(f1: FieldDesc, f2: FieldDesc) -> FieldDesc:
    if f1 is f2:
        return f1
    if f1.kind == "gf" or f2.kind == "gf":
        raise FieldMismatchError(f"cannot combine {f1!r} and {f2!r}")
    if f1.kind == "Q":
        return f2
    if f2.kind == "Q":
        return f1
    return Cyclotomic(f1.n * f2.n // math.gcd(f1.n, f2.n))


def field_to_json(f: FieldDesc) -> dict:
    if f.kind == "Q":
        return {"kind": "Q"}
    if f.kind == "gf":
        return {"kind": "gf", "p": f.p}
    return {"kind": "cyclotomic", "n": f.n}


def parse_field(obj) -> FieldDesc:
    if isinstance(obj, FieldDesc):
        return obj
    if isinstance(obj, str):
        s = obj.strip().lower()
        if s in ("q", "rationals"):
            return Rationals()
        m = re.fullmatch(r"(?:cyclotomic|zeta|q\(zeta)(\d+)\)?", s)
        if m:
            return Cyclotomic(int(m.group(1)))
        m = re.fullmatch(r"(?:gf|f)(\d+)", s)
        if m:
            return PrimeField(int(m.group(1)))
        raise ValueError(f"unrecognised field descriptor {obj!r}")
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"field descriptor must be an object with 'kind': {obj!r}")
    kind = obj["kind"]
    if kind == "Q":
        return Rationals()
    if kind == "cyclotomic":
        return Cyclotomic(int(obj["n"]))
    if kind == "gf":
        return PrimeField(int(obj["p"]))
    raise ValueError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# raw char-0 arithmetic


def _norm0(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    g = math.gcd(den, *nums)
    if den < 0:
        g = -g
    if g != 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


def _reduce_mod(field: FieldDesc, coeffs: list[int]) -> list[int]:
    d = field.degree
    if len(coeffs) <= d:
        return coeffs + [0] * (d - len(coeffs))
    mod = field.modulus
    for k in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[k]
        if c:
            base = k - d
            for j in range(d):
                mj = mod[j]
                if mj:
                    coeffs[base + j] -= c * mj
    return coeffs[:d]


def _embed_poly(src: FieldDesc, dst: FieldDesc, nums: tuple[int, ...]) -> list[int]:
    """Image of sum c_k zeta_m^k under zeta_m -> zeta_L^(L/m)."""
    if src.kind == "Q":
        return [nums[0]] + [0] * (dst.degree - 1)
    step = dst.n // src.n
    out = [0] * ((len(nums) - 1) * step + 1)
    for k, c in enumerate(nums):
        out[k * step] = c
    return _reduce_mod(dst, out)


class Scalar:
    """Immutable exact field element."""

    __slots__ = ("field", "raw")

    @classmethod
    def _make(cls, field: FieldDesc, raw) -> "Scalar":
        s = object.__new__(cls)
        s.field = field
        s.raw = raw
        return s

    # construction ----------------------------------------------------------
    @classmethod
    def coerce(cls, value, field: FieldDesc | None = None) -> "Scalar":
        if isinstance(value, Scalar):
            if field is None or value.field is field:
                return value
            return value.to_field(field)
        if field is None:
            field = Rationals()
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            if field.kind == "gf":
                return cls._make(field, value % field.p)
            return cls._make(field, ((value,) + (0,) * (field.degree - 1), 1))
        if isinstance(value, Fraction):
            if field.kind == "gf":
                p = field.p
                if value.denominator % p == 0:
                    raise ZeroDivisionError(f"{value} has no image in F_{p}")
                return cls._make(field, value.numerator * pow(value.denominator, -1, p) % p)
            nums, den = _norm0([value.numerator] + [0] * (field.degree - 1), value.denominator)
            return cls._make(field, (nums, den))
        if isinstance(value, str):
            return parse_scalar(value, field)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def from_coeffs(cls, field: FieldDesc, coeffs: Iterable) -> "Scalar":
        """Element sum c_k zeta^k with rational c_k (any length; reduced)."""
        cs = [Fraction(c) for c in coeffs]
        if field.kind == "gf":
            if any(cs[1:]):
                raise ValueError("prime-field scalars have no zeta")
            return cls.coerce(cs[0] if cs else 0, field)
        if not cs:
            return field.zero()
        den = 1
        for c in cs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in cs]
        ints = _reduce_mod(field, ints)
        nums, den = _norm0(ints, den)
        return cls._make(field, (nums, den))

    def to_field(self, field: FieldDesc) -> "Scalar":
        if field is self.field:
            return self
        if common_field(self.field, field) is not field:
            raise FieldMismatchError(f"cannot embed {self.field!r} into {field!r}")
        nums, den = self.raw
        return Scalar._make(field, _norm0(_embed_poly(self.field, field, nums), den))

    def coeffs(self) -> list[Fraction]:
        """Rational coordinates in the power basis 1, zeta, zeta^2, ..."""
        if self.field.kind == "gf":
            return [Fraction(self.raw)]
        nums, den = self.raw
        return [Fraction(c, den) for c in nums]

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        if self.field.kind == "gf":
            return self.raw == 0
        return not any(self.raw[0])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_one(self) -> bool:
        return self == self.field._one

    def is_rational(self) -> bool:
        return self.field.kind == "gf" or not any(self.raw[0][1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            if other.field is self.field:
                return self.raw == other.raw
            try:
                f = common_field(self.field, other.field)
            except FieldMismatchError:
                return False
            return self.to_field(f).raw == other.to_field(f).raw
        if isinstance(other, (int, Fraction)):
            return self == Scalar.coerce(other, self.field)
        return NotImplemented

    def __hash__(self) -> int:
        if self.field.kind == "gf":
            return hash(("gf", self.field.p, self.raw))
        if self.is_rational():
            nums, den = self.raw
            return hash(Fraction(nums[0], den))
        return hash((self.field.n, self.raw))

    # arithmetic ----------------------------------------------------------------
    def _other(self, other) -> tuple["Scalar", "Scalar"]:
        if isinstance(other, Scalar):
            if other.field is self.field:
                return self, other
            f = common_field(self.field, other.field)
            return self.to_field(f), other.to_field(f)
        if isinstance(other, (int, Fraction)):
            return self, Scalar.coerce(other, self.field)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other) -> "Scalar":
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        f = a.field
        if f.kind == "gf":
            return Scalar._make(f, (a.raw + b.raw) % f.p)
        (an, ad), (bn, bd) = a.raw, b.raw
        if ad == bd:
            return Scalar._make(f, _norm0([x + y for x, y in zip(an, bn)], ad))
        return Scalar._make(f, _norm0([x * bd + y * ad for x, y in zip(an, bn)], ad * bd))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        f = self.field
        if f.kind == "gf":
            return Scalar._make(f, (-self.raw) % f.p)
        nums, den = self.raw
        return Scalar._make(f, (tuple(-c for c in nums), den))

    def __sub__(self, other) -> "Scalar":
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        f = a.field
        if f.kind == "gf":
            return Scalar._make(f, (a.raw * b.raw) % f.p)
        (an, ad), (bn, bd) = a.raw, b.raw
        if f.degree == 1:
            return Scalar._make(f, _norm0([an[0] * bn[0]], ad * bd))
        prod = _reduce_mod(f, _poly_mul_int(an, bn))
        return Scalar._make(f, _norm0(prod, ad * bd))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if f.kind == "gf":
            return Scalar._make(f, pow(self.raw, -1, f.p))
        nums, den = self.raw
        if f.degree == 1:
            return Scalar._make(f, _norm0([den], nums[0]))
        # solve (multiplication-by-self matrix) * v = e_0 over Q
        d = f.degree
        cols = []
        cur = list(nums)
        for _ in range(d):
            cols.append(cur)
            shifted = [0] + cur
            cur = _reduce_mod(f, shifted)
        rows = [[Fraction(cols[j][i]) for j in range(d)] + [Fraction(1 if i == 0 else 0)] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if rows[r][c] != 0)
            rows[c], rows[piv] = rows[piv], rows[c]
            inv = 1 / rows[c][c]
            rows[c] = [x * inv for x in rows[c]]
            for r in range(d):
                if r != c and rows[r][c] != 0:
                    fac = rows[r][c]
                    rows[r] = [x - fac * y for x, y in zip(rows[r], rows[c])]
        sol = [rows[i][d] * den for i in range(d)]
        return Scalar.from_coeffs(f, sol)

    def __truediv__(self, other) -> "Scalar":
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.coerce(other, self.field) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field._one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # display -------------------------------------------------------------------
    def to_literal(self) -> str:
        """Canonical literal such as ``3/2*z^2 - 1`` (parseable back)."""
        f = self.field
        if f.kind == "gf":
            return str(self.raw)
        terms = []
        for k, c in reversed(list(enumerate(self.coeffs()))):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                zp = "z" if k == 1 else f"z^{k}"
                body = zp if mag == 1 else f"{mag}*{zp}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_literal()

    def __repr__(self) -> str:
        return f"Scalar({self.to_literal()!r}, {self.field!r})"


# ---------------------------------------------------------------------------
# literals

_TOKEN = re.compile(r"\s*(?:(zeta\d+)|(\d+(?:/\d+)?)|([zi])|(\*\*|[-+*/^()]))")


def parse_scalar(text: str, field: FieldDesc | None = None) -> Scalar:
    """Parse a scalar literal: ``a/b``, ``3/2*z^2 - 1``, ``zeta4``, ``-1``.

    ``z`` denotes the generator of the declared cyclotomic field; ``zetaN``
    denotes a primitive N-th root of unity and widens the field if needed.
    """
    if field is None:
        field = Rationals()
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad scalar literal {text!r} at column {pos + 1}")
        toks.append(m.groups())
        pos = m.end()
    idx = 0

    def peek():
        return toks[idx] if idx < len(toks) else None

    def take():
        nonlocal idx
        t = toks[idx]
        idx += 1
        return t

    def atom() -> Scalar:
        t = peek()
        if t is None:
            raise ValueError(f"unexpected end of literal {text!r}")
        if t[0]:
            take()
            return primitive_root(int(t[0][4:]))
        if t[1]:
            take()
            return Scalar.coerce(Fraction(t[1]), field)
        if t[2]:
            take()
            if t[2] == "i":
                return primitive_root(4)
            if field.kind != "cyclotomic":
                raise ValueError(f"'z' is undefined in {field!r}")
            return Scalar.from_coeffs(field, [0, 1])
        if t[3] == "(":
            take()
            v = expr()
            if peek() is None or peek()[3] != ")":
                raise ValueError(f"unbalanced parenthesis in {text!r}")
            take()
            return v
        if t[3] == "-":
            take()
            return -power()
        if t[3] == "+":
            take()
            return power()
        raise ValueError(f"unexpected token in {text!r}")

    def power() -> Scalar:
        base = atom()
        t = peek()
        if t is not None and t[3] in ("^", "**"):
            take()
            sign = 1
            if peek() is not None and peek()[3] == "-":
                take()
                sign = -1
            e = take()
            if not e[1] or "/" in e[1]:
                raise ValueError(f"exponent must be an integer in {text!r}")
            return base ** (sign * int(e[1]))
        return base

    def term() -> Scalar:
        v = power()
        while True:
            t = peek()
            if t is not None and t[3] in ("*", "/"):
                take()
                w = power()
                v = v * w if t[3] == "*" else v / w
            elif t is not None and (t[0] or t[1] or t[2] or t[3] == "("):
                v = v * power()
            else:
                return v

    def expr() -> Scalar:
        v = term()
        while True:
            t = peek()
            if t is not None and t[3] in ("+", "-"):
                take()
                w = term()
                v = v + w if t[3] == "+" else v - w
            else:
                return v

    value = expr()
    if idx != len(toks):
        raise ValueError(f"trailing input in scalar literal {text!r}")
    return value.to_field(common_field(value.field, field))


# ---------------------------------------------------------------------------
# roots of unity and q-combinatorics


def primitive_root(n: int) -> Scalar:
    """zeta_n as the class of z in Q(zeta_n); n = 1, 2 give 1 and -1 in Q."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return Rationals().one()
    if n == 2:
        return -Rationals().one()
    return Scalar.from_coeffs(Cyclotomic(n), [0, 1])


def multiplicative_order(s: Scalar) -> int | None:
    """Order of s in the unit group if s is a root of unity, else None."""
    if s.is_zero():
        return None
    bound = s.field.root_order
    acc = s
    for k in range(1, bound + 1):
        if acc.is_one():
            return k
        acc = acc * s
    return None


def q_binomial(m: int, i: int, q: Scalar) -> Scalar:
    """Gaussian binomial [m choose i]_q by the Pascal recurrence (no division)."""
    if m < 0 or i < 0:
        raise ValueError("q_binomial needs nonnegative arguments")
    if i > m:
        raise ValueError(f"q_binomial domain error: i={i} > m={m}")
    q = Scalar.coerce(q)
    one = q.field.one()
    zero = q.field.zero()
    row = [one]
    for r in range(1, m + 1):
        new = [one] + [zero] * r
        qpow = one
        for k in range(1, r + 1):
            qpow = qpow * q
            left = row[k - 1]
            right = row[k] if k < r else zero
            new[k] = left + qpow * right
        row = new
    return row[i]


# ---------------------------------------------------------------------------
# root finding inside the field


def _small_divisors(n: int, limit: int = 10**12) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    if n > limit:
        raise ValueError("integer too large for rational-root trial")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Distinct rational roots of a rational polynomial (low -> high)."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    roots = []
    shift = 0
    while coeffs[shift] == 0:
        shift += 1
    if shift:
        roots.append(Fraction(0))
    core = coeffs[shift:]
    if len(core) <= 1:
        return roots
    den = 1
    for c in core:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in core]
    a0, an = ints[0], ints[-1]
    for d in _small_divisors(a0):
        for e in _small_divisors(an):
            if math.gcd(d, e) != 1:
                continue
            for cand in (Fraction(d, e), Fraction(-d, e)):
                val = Fraction(0)
                for c in reversed(ints):
                    val = val * cand + c
                if val == 0 and cand not in roots:
                    roots.append(cand)
    return roots


def _poly_eval(coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    acc = x.field.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def roots_in_field(
    coeffs: Sequence[Scalar], extra: Iterable[Scalar] = ()
) -> tuple[list[Scalar], bool]:
    """Roots of a polynomial (Scalar coefficients, low -> high) found in its field.

    Candidates: every residue in F_p; in characteristic zero, rational roots
    of the rational coordinate polynomials of p(s*zeta^k) for each root of
    unity zeta^k in the field, together with 0 and ``extra``.  The flag is True
    when the roots found (with multiplicity) account for the full degree.
    """
    field = None
    for c in coeffs:
        if isinstance(c, Scalar):
            field = c.field if field is None else common_field(field, c.field)
    field = field or Rationals()
    coeffs = [Scalar.coerce(c, field) for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has every root")
    deg = len(coeffs) - 1
    found: list[Scalar] = []

    def add(r: Scalar):
        if r not in found and _poly_eval(coeffs, r).is_zero():
            found.append(r)

    if field.kind == "gf":
        for r in field.elements():
            add(r)
    else:
        add(field.zero())
        order = field.root_order
        if field.kind == "Q":
            units = [field.one(), -field.one()]
        else:
            zeta = Scalar.from_coeffs(field, [0, 1])
            base = zeta if field.n % 2 == 0 else -zeta
            units = [base**k for k in range(order)]
        for u in units:
            # p(s*u) = sum_j coeffs[j] u^j s^j; split into rational coordinates
            shifted = [c * u**j for j, c in enumerate(coeffs)]
            coord_polys = list(zip(*[c.coeffs() for c in shifted]))
            nonzero = [list(cp) for cp in coord_polys if any(cp)]
            if not nonzero:
                continue
            for r in _rational_roots(nonzero[0]):
                add(Scalar.coerce(r, field) * u)
    for e in extra:
        try:
            add(Scalar.coerce(e, field))
        except FieldMismatchError:
            continue
    # multiplicities by repeated synthetic division
    total = 0
    work = list(coeffs)
    for r in found:
        while len(work) > 1:
            # divide by (t - r)
            quo = [field.zero()] * (len(work) - 1)
            acc = field.zero()
            for k in range(len(work) - 1, 0, -1):
                acc = acc * r + work[k]
                quo[k - 1] = acc
            rem = acc * r + work[0]
            if not rem.is_zero():
                break
            work = quo
            total += 1
    return found, total == deg
