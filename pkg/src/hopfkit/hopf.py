"""Finite-dimensional algebras and Hopf algebras given by structure constants.

An :class:`FdAlgebra` stores ``mult[(i, j)] = {k: c}`` meaning
``e_i e_j = sum_k c e_k``.  :class:`FdHopf` adds ``comult[i] = {(j, k): c}``
meaning ``Delta e_i = sum c e_j (x) e_k``, a dense counit covector and an
optional antipode given column-wise (``antipode[i]`` is the vector S(e_i)).

Vectors are sparse ``{index: Scalar}`` dicts; covectors are dense lists.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from ._vec import add_into, axpy, dot, vadd, vscale, vsub
from .exactla import Matrix, SparseEchelon, Subspace, dense, sparse_kernel
from .scalars import FieldDesc, Scalar, field_to_json, parse_field, parse_scalar, roots_in_field

__all__ = [
    "FdAlgebra",
    "FdHopf",
    "Check",
    "VerifyReport",
    "Character",
    "CharacterList",
    "GroupLikes",
    "GenDecl",
    "GenSpec",
    "IsoResult",
    "verify",
    "verify_algebra",
    "dual",
    "tensor_product",
    "group_likes",
    "skew_primitives",
    "essential_skew_basis",
    "characters",
    "convolve",
    "iso_search",
    "check_hopf_map",
    "bidual_check",
    "min_poly",
    "solve_antipode",
    "split_algebra_check",
]

EXHAUSTIVE_MAX_DIM = 16


# ---------------------------------------------------------------------------
# objects


class FdAlgebra:
    def __init__(
        self,
        field: FieldDesc,
        basis_labels: Sequence[str],
        mult: Mapping[tuple[int, int], Mapping[int, Scalar]],
        unit: Mapping[int, Scalar],
        generators: Sequence[Mapping[int, Scalar]] | None = None,
        name: str = "",
    ):
        self.field = field
        self.basis_labels = list(basis_labels)
        self.dim = len(self.basis_labels)
        n = self.dim
        if n < 1:
            raise ValueError("dimension must be positive")
        clean = {}
        for (i, j), vec in mult.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"mult index ({i}, {j}) out of range for dim {n}")
            v = {}
            for k, c in vec.items():
                if not 0 <= k < n:
                    raise ValueError(f"mult output index {k} out of range for dim {n}")
                c = Scalar.coerce(c, field)
                if not c.is_zero():
                    v[k] = c
            if v:
                clean[(i, j)] = v
        self.mult = clean
        self.unit = {k: Scalar.coerce(c, field) for k, c in unit.items() if not Scalar.coerce(c, field).is_zero()}
        if any(not 0 <= k < n for k in self.unit):
            raise ValueError("unit index out of range")
        self.generators = [dict(g) for g in generators] if generators is not None else None
        self.name = name

    # basic arithmetic ---------------------------------------------------------
    def e(self, i: int) -> dict:
        return {i: self.field.one()}

    def one(self) -> dict:
        return dict(self.unit)

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        mult = self.mult
        for i, a in x.items():
            for j, b in y.items():
                v = mult.get((i, j))
                if v:
                    ab = a * b
                    for k, c in v.items():
                        add_into(out, k, ab * c)
        return out

    def power(self, x: Mapping, k: int) -> dict:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)

    def vector(self, coeffs: Mapping[str, object]) -> dict:
        """Vector from ``{label: scalar}``."""
        out: dict = {}
        for lab, c in coeffs.items():
            add_into(out, self.index(lab), Scalar.coerce(c, self.field))
        return out

    def is_commutative(self) -> bool:
        gens = self.generators
        n = self.dim
        if gens is not None and n > EXHAUSTIVE_MAX_DIM:
            return all(
                not vsub(self.mul(s, self.e(j)), self.mul(self.e(j), s)) for s in gens for j in range(n)
            )
        return all(self.mult.get((i, j), {}) == self.mult.get((j, i), {}) for i in range(n) for j in range(i))

    def describe(self, v: Mapping) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            parts.append(f"({v[k].to_literal()})*{self.basis_labels[k]}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<{type(self).__name__}{nm} dim={self.dim} over {self.field!r}>"


class FdHopf(FdAlgebra):
    def __init__(
        self,
        field: FieldDesc,
        basis_labels: Sequence[str],
        mult,
        unit,
        comult: Sequence[Mapping[tuple[int, int], Scalar]],
        counit: Sequence,
        antipode: Sequence[Mapping[int, Scalar]] | None = None,
        generators=None,
        name: str = "",
    ):
        super().__init__(field, basis_labels, mult, unit, generators, name)
        n = self.dim
        if len(comult) != n:
            raise ValueError(f"comult has {len(comult)} entries, expected {n}")
        if len(counit) != n:
            raise ValueError(f"counit has {len(counit)} entries, expected {n}")
        cm = []
        for i, d in enumerate(comult):
            v = {}
            for (j, k), c in d.items():
                if not (0 <= j < n and 0 <= k < n):
                    raise ValueError(f"comult index ({j}, {k}) out of range for dim {n}")
                c = Scalar.coerce(c, field)
                if not c.is_zero():
                    v[(j, k)] = c
            cm.append(v)
        self.comult = cm
        self.counit = [Scalar.coerce(c, field) for c in counit]
        if antipode is not None:
            if len(antipode) != n:
                raise ValueError("antipode must have one column per basis vector")
            ap = []
            for col in antipode:
                v = {}
                for k, c in col.items():
                    if not 0 <= k < n:
                        raise ValueError("antipode index out of range")
                    c = Scalar.coerce(c, field)
                    if not c.is_zero():
                        v[k] = c
                ap.append(v)
            self.antipode = ap
        else:
            self.antipode = None

    # coalgebra arithmetic ---------------------------------------------------------
    def comul(self, x: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for jk, c in self.comult[i].items():
                add_into(out, jk, a * c)
        return out

    def eps(self, x: Mapping) -> Scalar:
        return dot(self.counit, x, self.field)

    def S(self, x: Mapping) -> dict:
        if self.antipode is None:
            raise ValueError("no antipode available")
        out: dict = {}
        for i, a in x.items():
            axpy(out, a, self.antipode[i])
        return out

    def tmul(self, t1: Mapping, t2: Mapping) -> dict:
        """Product in H (x) H of tensors keyed by (j, k)."""
        out: dict = {}
        mult = self.mult
        for (a, b), c1 in t1.items():
            for (c, d), c2 in t2.items():
                v1 = mult.get((a, c))
                if not v1:
                    continue
                v2 = mult.get((b, d))
                if not v2:
                    continue
                cc = c1 * c2
                for k1, x1 in v1.items():
                    cx = cc * x1
                    for k2, x2 in v2.items():
                        add_into(out, (k1, k2), cx * x2)
        return out

    def is_cocommutative(self) -> bool:
        return all(d == {(k, j): c for (j, k), c in d.items()} for d in self.comult)

    def antipode_matrix(self) -> Matrix:
        if self.antipode is None:
            raise ValueError("no antipode")
        cols = [dense(c, self.dim, self.field) for c in self.antipode]
        return Matrix.of(self.field, cols).transpose()

    def with_antipode(self, antipode) -> "FdHopf":
        return FdHopf(
            self.field, self.basis_labels, self.mult, self.unit, self.comult, self.counit,
            antipode, self.generators, self.name,
        )

    # file format -----------------------------------------------------------------
    def to_json(self) -> dict:
        n = self.dim
        mult = [
            [i, j, k, c.to_literal()]
            for (i, j) in sorted(self.mult)
            for k, c in sorted(self.mult[(i, j)].items())
        ]
        comult = [[i, j, k, c.to_literal()] for i in range(n) for (j, k), c in sorted(self.comult[i].items())]
        z = self.field.zero()
        out = {
            "field": field_to_json(self.field),
            "basis": list(self.basis_labels),
            "mult": mult,
            "unit": [self.unit.get(k, z).to_literal() for k in range(n)],
            "comult": comult,
            "counit": [c.to_literal() for c in self.counit],
        }
        if self.antipode is not None:
            out["antipode"] = [
                [self.antipode[c].get(r, z).to_literal() for c in range(n)] for r in range(n)
            ]
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "FdHopf":
        """Inverse of :meth:`to_json`; ``antipode[r][c]`` is the e_r-coefficient of S(e_c)."""
        for key in ("field", "basis", "mult", "unit", "comult", "counit"):
            if key not in obj:
                raise ValueError(f"structure file is missing {key!r}")
        F = parse_field(obj["field"])
        labels = [str(x) for x in obj["basis"]]
        n = len(labels)
        mult: dict = {}
        for ent in obj["mult"]:
            i, j, k, c = ent
            mult.setdefault((int(i), int(j)), {})
            add_into(mult[(int(i), int(j))], int(k), parse_scalar(str(c), F))
        comult: list = [dict() for _ in range(n)]
        for ent in obj["comult"]:
            i, j, k, c = ent
            if not 0 <= int(i) < n:
                raise ValueError(f"comult source index {i} out of range")
            add_into(comult[int(i)], (int(j), int(k)), parse_scalar(str(c), F))
        unit = {k: parse_scalar(str(c), F) for k, c in enumerate(obj["unit"])}
        counit = [parse_scalar(str(c), F) for c in obj["counit"]]
        if len(obj["unit"]) != n:
            raise ValueError("unit length does not match basis")
        antipode = None
        if obj.get("antipode") is not None:
            rows = obj["antipode"]
            if len(rows) != n or any(len(r) != n for r in rows):
                raise ValueError("antipode must be a square matrix")
            antipode = [
                {r: parse_scalar(str(rows[r][c]), F) for r in range(n)} for c in range(n)
            ]
        return cls(F, labels, mult, unit, comult, counit, antipode, name=str(obj.get("name", "")))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


# ---------------------------------------------------------------------------
# verification


@dataclass
class Check:
    status: str  # "pass" | "fail" | "skipped"
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class VerifyReport:
    checks: dict
    is_commutative: bool | None
    is_cocommutative: bool | None
    method: str
    certificate: str

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if c.status == "fail"]

    def to_json(self) -> dict:
        return {
            "checks": {k: v.to_json() for k, v in self.checks.items()},
            "is_commutative": self.is_commutative,
            "is_cocommutative": self.is_cocommutative,
            "method": self.method,
            "certificate": self.certificate,
        }


def _closure(A: FdAlgebra, gens: Sequence[Mapping]) -> SparseEchelon:
    """Smallest subspace containing 1 and stable under left multiplication by gens."""
    ech = SparseEchelon(A.field, A.dim)
    start = A.one()
    ech.add(start)
    queue = [start]
    while queue and len(ech) < A.dim:
        v = queue.pop(0)
        for s in gens:
            w = A.mul(s, v)
            if w and ech.add(w) == "new":
                queue.append(w)
    return ech


def _fmt_pair(A: FdAlgebra, *idx) -> str:
    return " , ".join(A.basis_labels[i] for i in idx)


def _algebra_checks(A: FdAlgebra, gens) -> tuple[dict, str]:
    n = A.dim
    checks: dict = {}
    E = [A.e(i) for i in range(n)]
    # unit
    bad = None
    for i in range(n):
        if A.mul(A.unit, E[i]) != E[i] or A.mul(E[i], A.unit) != E[i]:
            bad = A.basis_labels[i]
            break
    checks["unit"] = Check("pass" if bad is None else "fail", None if bad is None else f"1*{bad} or {bad}*1")
    method = "exhaustive"
    if gens is not None and n > EXHAUSTIVE_MAX_DIM:
        if len(_closure(A, gens)) == n:
            method = "generators"
    bad = None
    if method == "exhaustive":
        prods = {(i, j): A.mult.get((i, j), {}) for i in range(n) for j in range(n)}
        for i in range(n):
            for j in range(n):
                pij = prods[(i, j)]
                for k in range(n):
                    lhs = A.mul(pij, E[k])
                    rhs = A.mul(E[i], prods[(j, k)])
                    if lhs != rhs:
                        bad = _fmt_pair(A, i, j, k)
                        break
                if bad:
                    break
            if bad:
                break
    else:
        for si, s in enumerate(gens):
            for j in range(n):
                sj = A.mul(s, E[j])
                for k in range(n):
                    if A.mul(sj, E[k]) != A.mul(s, A.mult.get((j, k), {})):
                        bad = f"generator {si} , {_fmt_pair(A, j, k)}"
                        break
                if bad:
                    break
            if bad:
                break
    checks["associativity"] = Check("pass" if bad is None else "fail", bad)
    return checks, method


def verify_algebra(A: FdAlgebra) -> VerifyReport:
    checks, method = _algebra_checks(A, A.generators)
    ok = all(c.ok for c in checks.values())
    return VerifyReport(checks, A.is_commutative(), None, method, "algebra" if ok else "fail")


def verify(H: FdAlgebra) -> VerifyReport:
    """Check the (bi/Hopf) algebra axioms on structure constants.

    Small objects are checked on all basis pairs and triples.  Larger objects
    with declared generators use the generator criterion: an identity that is
    stable under left multiplication by generators and holds at 1 holds on the
    subalgebra they generate, which is verified to be everything.
    """
    if not isinstance(H, FdHopf):
        return verify_algebra(H)
    n = H.dim
    gens = H.generators
    checks, method = _algebra_checks(H, gens)
    E = [H.e(i) for i in range(n)]
    one = H.one()
    F = H.field

    # targets on which coalgebra-type identities are tested
    if method == "generators":
        targets = [("1", one)] + [(f"generator {i}", g) for i, g in enumerate(gens)]
        pair_left = [(f"generator {i}", g) for i, g in enumerate(gens)]
    else:
        targets = [(H.basis_labels[i], E[i]) for i in range(n)]
        pair_left = targets

    def first_bad(pred, items):
        for lab, v in items:
            if not pred(v):
                return lab
        return None

    # coassociativity
    def coassoc(v):
        d = H.comul(v)
        left: dict = {}
        right: dict = {}
        for (j, k), c in d.items():
            for (a, b), c2 in H.comult[j].items():
                add_into(left, (a, b, k), c * c2)
            for (a, b), c2 in H.comult[k].items():
                add_into(right, (j, a, b), c * c2)
        return left == right

    bad = first_bad(coassoc, targets)
    checks["coassociativity"] = Check("pass" if bad is None else "fail", bad)

    def counit_ok(v):
        d = H.comul(v)
        l: dict = {}
        r: dict = {}
        for (j, k), c in d.items():
            add_into(l, k, c * H.counit[j])
            add_into(r, j, c * H.counit[k])
        return l == v and r == v

    bad = first_bad(counit_ok, targets)
    checks["counit"] = Check("pass" if bad is None else "fail", bad)

    # Delta and epsilon are algebra maps
    bad = None
    if H.comul(one) != {(a, b): ca * cb for a, ca in one.items() for b, cb in one.items()}:
        bad = "Delta(1) != 1 (x) 1"
    else:
        dE = [H.comult[j] for j in range(n)]
        for lab, x in pair_left:
            dx = H.comul(x)
            for j in range(n):
                if H.comul(H.mul(x, E[j])) != H.tmul(dx, dE[j]):
                    bad = f"{lab} , {H.basis_labels[j]}"
                    break
            if bad:
                break
    checks["delta_multiplicative"] = Check("pass" if bad is None else "fail", bad)

    bad = None
    if not H.eps(one).is_one():
        bad = "eps(1) != 1"
    else:
        for lab, x in pair_left:
            ex = H.eps(x)
            for j in range(n):
                if H.eps(H.mul(x, E[j])) != ex * H.counit[j]:
                    bad = f"{lab} , {H.basis_labels[j]}"
                    break
            if bad:
                break
    checks["counit_multiplicative"] = Check("pass" if bad is None else "fail", bad)

    # antipode
    if H.antipode is None:
        checks["antipode"] = Check("skipped", "no antipode supplied")
        certificate = "bialgebra"
    else:
        bad = None
        if method == "generators":
            # S must be an anti-homomorphism for the generator criterion to apply
            if H.S(one) != one:
                bad = "S(1) != 1"
            for lab, s in pair_left:
                if bad:
                    break
                Ss = H.S(s)
                for j in range(n):
                    if H.S(H.mul(s, E[j])) != H.mul(H.S(E[j]), Ss):
                        bad = f"S not anti-multiplicative at {lab} , {H.basis_labels[j]}"
                        break

        def anti_ok(v):
            d = H.comul(v)
            target = vscale(H.eps(v), one)
            l: dict = {}
            r: dict = {}
            for (j, k), c in d.items():
                axpy(l, c, H.mul(H.antipode[j], E[k]))
                axpy(r, c, H.mul(E[j], H.antipode[k]))
            return l == target and r == target

        if bad is None:
            bad = first_bad(anti_ok, targets)
        checks["antipode"] = Check("pass" if bad is None else "fail", bad)
        certificate = "Hopf"
    if any(c.status == "fail" for c in checks.values()):
        certificate = "fail"
    return VerifyReport(checks, H.is_commutative(), H.is_cocommutative(), method, certificate)


def solve_antipode(H: FdHopf) -> list[dict] | None:
    """Convolution inverse of the identity, or None if it does not exist.

    Unknowns are the entries S[m][j] (coefficient of e_m in S(e_j)); equations
    are sum d_i^{jk} S(e_j) e_k = eps(e_i) 1 componentwise.
    """
    n = H.dim
    F = H.field
    rows: dict = {}
    for i in range(n):
        for (j, k), c in H.comult[i].items():
            for m in range(n):
                v = H.mult.get((m, k))
                if not v:
                    continue
                for l, c2 in v.items():
                    row = rows.setdefault((i, l), {})
                    add_into(row, m * n + j, c * c2)
    ech = SparseEchelon(F, n * n)
    tag = n * n
    for i in range(n):
        for l in range(n):
            row = dict(rows.get((i, l), {}))
            rhs = H.counit[i] * H.unit.get(l, F.zero())
            if not rhs.is_zero():
                row[tag] = rhs
            if row and ech.add(row) == "inconsistent":
                return None
    sol = [F.zero()] * (n * n)
    for p, row in ech.rows.items():
        sol[p] = row.get(tag, F.zero())
    cols = []
    for j in range(n):
        cols.append({m: sol[m * n + j] for m in range(n) if not sol[m * n + j].is_zero()})
    cand = H.with_antipode(cols)
    return cols if verify(cand).checks["antipode"].ok else None


# ---------------------------------------------------------------------------
# duals and tensor products


def dual(H: FdHopf) -> FdHopf:
    """Dual Hopf algebra on the dual basis: structure tensors transposed."""
    n = H.dim
    mult: dict = {}
    for i, d in enumerate(H.comult):
        for (j, k), c in d.items():
            mult.setdefault((j, k), {})[i] = c
    comult: list = [dict() for _ in range(n)]
    for (i, j), v in H.mult.items():
        for k, c in v.items():
            comult[k][(i, j)] = c
    unit = {k: c for k, c in enumerate(H.counit) if not c.is_zero()}
    counit = [H.unit.get(k, H.field.zero()) for k in range(n)]
    antipode = None
    if H.antipode is not None:
        antipode = [dict() for _ in range(n)]
        for c, col in enumerate(H.antipode):
            for r, x in col.items():
                antipode[r][c] = x
    labels = [_dual_label(l) for l in H.basis_labels]
    name = f"dual({H.name})" if H.name else ""
    return FdHopf(H.field, labels, mult, unit, comult, counit, antipode, None, name)


def _dual_label(l: str) -> str:
    if l.startswith("(") and l.endswith(")*"):
        return l[1:-2]
    return f"({l})*"


def tensor_product(H1: FdHopf, H2: FdHopf) -> FdHopf:
    from .scalars import common_field

    F = common_field(H1.field, H2.field)
    if F is not H1.field:
        H1 = _retype(H1, F)
    if F is not H2.field:
        H2 = _retype(H2, F)
    n1, n2 = H1.dim, H2.dim

    def f(i, j):
        return i * n2 + j

    mult: dict = {}
    for (a, c), v1 in H1.mult.items():
        for (b, d), v2 in H2.mult.items():
            out = {}
            for k1, x1 in v1.items():
                for k2, x2 in v2.items():
                    out[f(k1, k2)] = x1 * x2
            mult[(f(a, b), f(c, d))] = out
    comult = []
    for a in range(n1):
        for b in range(n2):
            out: dict = {}
            for (a1, a2), x1 in H1.comult[a].items():
                for (b1, b2), x2 in H2.comult[b].items():
                    add_into(out, (f(a1, b1), f(a2, b2)), x1 * x2)
            comult.append(out)
    unit = {f(a, b): x * y for a, x in H1.unit.items() for b, y in H2.unit.items()}
    counit = [H1.counit[a] * H2.counit[b] for a in range(n1) for b in range(n2)]
    antipode = None
    if H1.antipode is not None and H2.antipode is not None:
        antipode = []
        for a in range(n1):
            for b in range(n2):
                antipode.append(
                    {f(k1, k2): x * y for k1, x in H1.antipode[a].items() for k2, y in H2.antipode[b].items()}
                )
    labels = [f"{la}⊗{lb}" for la in H1.basis_labels for lb in H2.basis_labels]
    gens = None
    if H1.generators is not None and H2.generators is not None:
        gens = [{f(a, b): x * y for a, x in g.items() for b, y in H2.unit.items()} for g in H1.generators]
        gens += [{f(a, b): x * y for a, x in H1.unit.items() for b, y in g.items()} for g in H2.generators]
    name = f"{H1.name}⊗{H2.name}" if H1.name and H2.name else ""
    return FdHopf(F, labels, mult, unit, comult, counit, antipode, gens, name)


def _retype(H: FdHopf, F: FieldDesc) -> FdHopf:
    conv = lambda c: c.to_field(F)  # noqa: E731
    mult = {ij: {k: conv(c) for k, c in v.items()} for ij, v in H.mult.items()}
    comult = [{jk: conv(c) for jk, c in d.items()} for d in H.comult]
    ap = None if H.antipode is None else [{k: conv(c) for k, c in col.items()} for col in H.antipode]
    gens = None if H.generators is None else [{k: conv(c) for k, c in g.items()} for g in H.generators]
    return FdHopf(
        F, H.basis_labels, mult, {k: conv(c) for k, c in H.unit.items()}, comult,
        [conv(c) for c in H.counit], ap, gens, H.name,
    )


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class Character:
    values: tuple  # covector on the basis

    def __call__(self, v: Mapping) -> Scalar:
        return dot(self.values, v, self.values[0].field)


@dataclass
class CharacterList:
    characters: list
    complete: bool
    generators: list
    min_polys: list

    def __iter__(self):
        return iter(self.characters)

    def __len__(self) -> int:
        return len(self.characters)

    def __getitem__(self, i):
        return self.characters[i]


def min_poly(A: FdAlgebra, x: Mapping) -> list[Scalar]:
    """Monic minimal polynomial of x (coefficients low -> high).

    For a unital algebra p(L_x) = L_{p(x)} vanishes iff p(x) = 0, so the
    Krylov sequence 1, x, x^2, ... in A itself suffices.
    """
    F = A.field
    n = A.dim
    ech = SparseEchelon(F, n)
    power = A.one()
    for k in range(n + 1):
        row = dict(power)
        row[n + k] = F.one()
        r = ech.reduce(row)
        if not [c for c in r if c < n]:
            coeffs = [r.get(n + j, F.zero()) for j in range(k + 1)]
            lead = coeffs[-1]
            return [c / lead for c in coeffs]
        ech.add(row)
        power = A.mul(x, power)
    raise ArithmeticError("minimal polynomial search exceeded the dimension")


def _choose_generators(A: FdAlgebra) -> list[dict]:
    if A.generators is not None:
        return [dict(g) for g in A.generators]
    gens: list = []
    sub = _closure(A, gens)
    for i in range(A.dim):
        if len(sub) == A.dim:
            break
        if sub.reduce(A.e(i)):
            gens.append(A.e(i))
            sub = _closure(A, gens)
    return gens


def _closure_with_values(A: FdAlgebra, gens, values) -> SparseEchelon | None:
    F = A.field
    n = A.dim
    ech = SparseEchelon(F, n)
    start = A.one()
    ech.add({**start, n: F.one()})
    queue = [(start, F.one())]
    while queue:
        v, val = queue.pop(0)
        for s, vs in zip(gens, values):
            w = A.mul(s, v)
            wv = vs * val
            row = dict(w)
            if not wv.is_zero():
                row[n] = wv
            if not row:
                continue
            st = ech.add(row)
            if st == "inconsistent":
                return None
            if st == "new":
                queue.append((w, wv))
    return ech


def characters(A: FdAlgebra, candidates: Iterable = ()) -> CharacterList:
    """All algebra maps A -> k whose generator values are found in the field.

    Generator values are roots of each generator's minimal polynomial; the
    search is depth-first with linear consistency pruning.  ``complete`` is
    True when every minimal polynomial splits over the roots found.
    """
    F = A.field
    n = A.dim
    extra = [Scalar.coerce(c, F) if not isinstance(c, Scalar) else c for c in candidates]
    gens = _choose_generators(A)
    if len(_closure(A, gens)) != n:
        raise ValueError("declared generators do not generate the algebra")
    mps, roots, complete = [], [], True
    for g in gens:
        mp = min_poly(A, g)
        rs, split = roots_in_field(mp, extra)
        mps.append(mp)
        roots.append(rs)
        complete = complete and split
    found: list[Character] = []

    def dfs(k: int, vals: list):
        if k == len(gens):
            ech = _closure_with_values(A, gens, vals)
            if ech is None or len(ech) != n:
                return
            chi = tuple(ech.rows[i].get(n, F.zero()) for i in range(n))
            found.append(Character(chi))
            return
        for r in roots[k]:
            nv = vals + [r]
            if _closure_with_values(A, gens[: k + 1], nv) is not None:
                dfs(k + 1, nv)

    dfs(0, [])
    for chi in found:
        if not _is_multiplicative(A, chi.values):
            raise ArithmeticError("character search produced a non-multiplicative functional")
    return CharacterList(found, complete, gens, mps)


def _is_multiplicative(A: FdAlgebra, chi: Sequence[Scalar]) -> bool:
    F = A.field
    if not dot(chi, A.unit, F).is_one():
        return False
    n = A.dim
    if A.generators is not None and n > EXHAUSTIVE_MAX_DIM and len(_closure(A, A.generators)) == n:
        left = [(dot(chi, s, F), s) for s in A.generators]
        return all(
            dot(chi, A.mul(s, A.e(j)), F) == cs * chi[j] for cs, s in left for j in range(n)
        )
    return all(
        dot(chi, A.mult.get((i, j), {}), F) == chi[i] * chi[j] for i in range(n) for j in range(n)
    )


def split_algebra_check(A: FdAlgebra) -> tuple[bool, CharacterList]:
    """True iff A is isomorphic to k^dim as an algebra.

    Holds exactly when A has dim(A) characters: they are then linearly
    independent and evaluation at them is an injective algebra map to k^dim.
    """
    chars = characters(A)
    if len(chars) != A.dim:
        return False, chars
    rows = [list(c.values) for c in chars]
    from .exactla import rank

    return rank(A.field, rows, A.dim) == A.dim, chars


# ---------------------------------------------------------------------------
# group-likes and skew-primitives


@dataclass
class GroupLikes:
    elements: list
    complete: bool
    closed_under_mult: bool

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


def is_grouplike(H: FdHopf, x: Mapping) -> bool:
    if not H.eps(x).is_one():
        return False
    d = H.comul(x)
    return d == {(a, b): ca * cb for a, ca in x.items() for b, cb in x.items()}


def group_likes(H: FdHopf, candidates: Iterable = ()) -> GroupLikes:
    """Group-likes of H, computed as the characters of dual(H)."""
    D = dual(H)
    chars = characters(D, candidates)
    elems = []
    for chi in chars:
        x = {k: c for k, c in enumerate(chi.values) if not c.is_zero()}
        if not is_grouplike(H, x):
            raise ArithmeticError("dual character is not group-like")
        elems.append(x)
    closed = all(any(H.mul(a, b) == c for c in elems) for a in elems for b in elems)
    return GroupLikes(elems, chars.complete, closed)


def skew_primitives(H: FdHopf, a: Mapping, b: Mapping) -> Subspace:
    """Solution space of Delta x = x (x) a + b (x) x."""
    if not is_grouplike(H, a) or not is_grouplike(H, b):
        raise ValueError("skew_primitives needs group-like a and b")
    n = H.dim
    rows: dict = {}
    for i in range(n):
        col = dict(H.comult[i])
        for k, c in a.items():
            add_into(col, (i, k), -c)
        for j, c in b.items():
            add_into(col, (j, i), -c)
        for (j, k), c in col.items():
            rows.setdefault(j * n + k, {})[i] = c
    ker = sparse_kernel(H.field, (rows[k] for k in sorted(rows)), n)
    return Subspace.span(H.field, n, ker)


def essential_skew_basis(H: FdHopf, a: Mapping, b: Mapping) -> list[dict]:
    """Basis vectors of the skew-primitive space completing the line of b - a."""
    S = skew_primitives(H, a, b)
    n = H.dim
    trivial = vsub(b, a)
    ech = SparseEchelon(H.field, n)
    if trivial:
        ech.add(dict(trivial))
    out = []
    for row in S.basis:
        v = {k: c for k, c in enumerate(row) if not c.is_zero()}
        if ech.add(dict(v)) == "new":
            out.append(v)
    return out


def convolve(f: Sequence, g: Sequence, C: FdHopf, A: FdAlgebra | None = None) -> list:
    """(f*g)(e_i) = sum f(e_j) g(e_k) over Delta e_i; values in k (A = k)."""
    F = C.field
    out = []
    for i in range(C.dim):
        acc = F.zero()
        for (j, k), c in C.comult[i].items():
            fj, gk = f[j], g[k]
            if not fj.is_zero() and not gk.is_zero():
                acc = acc + c * fj * gk
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# isomorphisms


@dataclass
class GenDecl:
    """A generator of the source algebra.

    kind: "grouplike" (order ``order``), "skew" with Delta x = x (x) a + b (x) x
    where a and b are words in earlier generators, or "unit" (a unit of
    finite order, used in algebra-only searches).
    """

    name: str
    kind: str
    vector: dict
    order: int | None = None
    skew: tuple = ((), ())


@dataclass
class GenSpec:
    generators: list
    relations: list  # (lhs word, coefficient, rhs word): lhs = coefficient * rhs
    basis_words: list  # one word per basis vector of the source

    def names(self) -> list[str]:
        return [g.name for g in self.generators]


@dataclass
class IsoResult:
    found: bool
    images: dict | None
    matrix: list | None
    searched: dict
    mode: str

    def __bool__(self) -> bool:
        return self.found


def _eval_word(A: FdAlgebra, word: Sequence[str], images: Mapping[str, dict]) -> dict:
    out = A.one()
    for name in word:
        out = A.mul(out, images[name])
    return out


def _check_spec(H1: FdAlgebra, spec: GenSpec) -> None:
    imgs = {g.name: g.vector for g in spec.generators}
    if len(spec.basis_words) != H1.dim:
        raise ValueError("gen_spec needs one word per basis vector")
    for i, w in enumerate(spec.basis_words):
        if _eval_word(H1, w, imgs) != H1.e(i):
            raise ValueError(f"basis word {w} does not evaluate to {H1.basis_labels[i]}")
    for lhs, c, rhs in spec.relations:
        l = _eval_word(H1, lhs, imgs)
        r = vscale(Scalar.coerce(c, H1.field), _eval_word(H1, rhs, imgs))
        if l != r:
            raise ValueError(f"relation {lhs} = {c}*{rhs} fails in the source")
    if isinstance(H1, FdHopf):
        for g in spec.generators:
            if g.kind == "grouplike" and not is_grouplike(H1, g.vector):
                raise ValueError(f"generator {g.name} is not group-like")
            if g.kind == "skew":
                a = _eval_word(H1, g.skew[0], imgs)
                b = _eval_word(H1, g.skew[1], imgs)
                want = {}
                for k, c in g.vector.items():
                    for ka, ca in a.items():
                        add_into(want, (k, ka), c * ca)
                    for kb, cb in b.items():
                        add_into(want, (kb, k), cb * c)
                if H1.comul(g.vector) != want:
                    raise ValueError(f"generator {g.name} is not ({g.skew[0]},{g.skew[1]})-skew-primitive")


def _unit_candidates(H2: FdHopf, order: int, cache: dict) -> list[dict]:
    """Units u with u^order = 1 inside the span of the group-likes of H2."""
    if "idem" not in cache:
        gl = group_likes(H2).elements
        sub = _span_subalgebra(H2, gl)
        chars = characters(sub)
        if len(chars) != sub.dim:
            cache["idem"] = []
        else:
            # primitive idempotents: dual basis to the characters
            m = sub.dim
            rows = [list(c.values) for c in chars]
            idems = []
            for t in range(m):
                rhs = [H2.field.one() if s == t else H2.field.zero() for s in range(m)]
                from .exactla import solve

                coeff = solve(Matrix.of(H2.field, rows), rhs)
                vec: dict = {}
                for s, c in enumerate(coeff):
                    axpy(vec, c, gl[s])
                idems.append(vec)
            cache["idem"] = idems
    idems = cache["idem"]
    F = H2.field
    roots = [r for r in roots_in_field([-F.one()] + [F.zero()] * (order - 1) + [F.one()])[0]]
    roots.sort(key=lambda s: (not s.is_one(), s.to_literal()))
    out = []
    for combo in itertools.product(roots, repeat=len(idems)):
        v: dict = {}
        for w, e in zip(combo, idems):
            axpy(v, w, e)
        out.append(v)
    return out


def _span_subalgebra(H: FdAlgebra, vectors: list[dict]) -> FdAlgebra:
    """Subalgebra with basis ``vectors`` (assumed closed and independent)."""
    m = len(vectors)
    ech = SparseEchelon(H.field, H.dim)
    for t, v in enumerate(vectors):
        row = dict(v)
        row[H.dim + t] = H.field.one()
        if ech.add(row) != "new":
            raise ValueError("vectors are dependent")

    def coords(x):
        r = ech.reduce(dict(x))
        if [k for k in r if k < H.dim]:
            raise ValueError("span is not closed under multiplication")
        # x = sum c_t v_t  <=>  reduced tags are -c
        return {k - H.dim: -c for k, c in r.items()}

    # reduce(x) on rows (v_t | e_t) leaves -(coords) in the tag block
    mult = {}
    for a in range(m):
        for b in range(m):
            mult[(a, b)] = coords(H.mul(vectors[a], vectors[b]))
    unit = coords(H.one())
    return FdAlgebra(H.field, [f"v{t}" for t in range(m)], mult, unit)


def iso_search(H1: FdAlgebra, H2: FdAlgebra, gen_spec: GenSpec, mode: str = "hopf") -> IsoResult:
    """Depth-first search for an isomorphism H1 -> H2 matching generators.

    ``mode="hopf"`` requires an algebra and coalgebra isomorphism;
    ``mode="algebra"`` requires only an algebra isomorphism.
    """
    _check_spec(H1, gen_spec)
    searched = {"nodes": 0, "leaves": 0, "candidates": {}}
    if H1.dim != H2.dim:
        return IsoResult(False, None, None, {**searched, "reason": "dimension mismatch"}, mode)
    if mode not in ("hopf", "algebra"):
        raise ValueError("mode must be 'hopf' or 'algebra'")
    F = H2.field
    cache: dict = {}
    gens = gen_spec.generators
    names = gen_spec.names()

    def grouplikes():
        if "gl" not in cache:
            cache["gl"] = group_likes(H2).elements
        return cache["gl"]

    def candidates(g: GenDecl, images: dict) -> list[dict]:
        if g.kind == "grouplike" and mode == "hopf":
            return list(grouplikes())
        if g.kind in ("grouplike", "unit"):
            return _unit_candidates(H2, g.order or 1, cache)
        if g.kind == "skew":
            if mode == "hopf":
                a = _eval_word(H2, g.skew[0], images)
                b = _eval_word(H2, g.skew[1], images)
                pairs = [(a, b)]
            else:
                one = H2.one()
                pairs = [(one, b) for b in grouplikes()] + [(b, one) for b in grouplikes()]
            out = []
            for a, b in pairs:
                try:
                    ess = essential_skew_basis(H2, a, b)
                except ValueError:
                    continue
                for v in ess:
                    if v not in out:
                        out.append(v)
                for u, v in itertools.combinations(ess, 2):
                    s = vadd(u, v)
                    if s not in out:
                        out.append(s)
            return out
        raise ValueError(f"unknown generator kind {g.kind!r}")

    rels = [(lhs, Scalar.coerce(c, F), rhs) for lhs, c, rhs in gen_spec.relations]

    def rel_ok(images: dict) -> bool:
        for lhs, c, rhs in rels:
            if all(x in images for x in list(lhs) + list(rhs)):
                if _eval_word(H2, lhs, images) != vscale(c, _eval_word(H2, rhs, images)):
                    return False
        return True

    def leaf(images: dict):
        cols = [_eval_word(H2, w, images) for w in gen_spec.basis_words]
        ok, why = check_hopf_map(H1, H2, cols, mode=mode, generators=[g.vector for g in gens])
        return cols if ok else None

    result: list = []

    def dfs(k: int, images: dict):
        if result:
            return
        searched["nodes"] += 1
        if k == len(gens):
            searched["leaves"] += 1
            cols = leaf(images)
            if cols is not None:
                result.append((dict(images), cols))
            return
        g = gens[k]
        cands = candidates(g, images)
        searched["candidates"][g.name] = max(searched["candidates"].get(g.name, 0), len(cands))
        for v in cands:
            images[g.name] = v
            if rel_ok(images):
                dfs(k + 1, images)
            del images[g.name]
            if result:
                return

    dfs(0, {})
    if result:
        images, cols = result[0]
        return IsoResult(True, images, cols, searched, mode)
    return IsoResult(False, None, None, searched, mode)


def check_hopf_map(
    H1: FdAlgebra,
    H2: FdAlgebra,
    cols: Sequence[Mapping],
    mode: str = "hopf",
    generators: Sequence[Mapping] | None = None,
) -> tuple[bool, str | None]:
    """Is e_i -> cols[i] a bijective algebra (and, in hopf mode, coalgebra) map?"""
    n = H1.dim
    if H2.dim != n or len(cols) != n:
        return False, "dimension mismatch"
    F = H2.field
    from .exactla import rank

    if rank(F, [dense(c, n, F) for c in cols], n) != n:
        return False, "not bijective"

    def phi(v: Mapping) -> dict:
        out: dict = {}
        for k, c in v.items():
            axpy(out, c, cols[k])
        return out

    if phi(H1.unit) != H2.unit:
        return False, "unit not preserved"
    gens = generators if generators is not None else H1.generators
    if gens is not None and len(_closure(H1, gens)) == n:
        pairs = [(s, H1.e(j)) for s in gens for j in range(n)]
    else:
        pairs = [(H1.e(i), H1.e(j)) for i in range(n) for j in range(n)]
    for x, y in pairs:
        if phi(H1.mul(x, y)) != H2.mul(phi(x), phi(y)):
            return False, "not multiplicative"
    if mode == "hopf":
        if not (isinstance(H1, FdHopf) and isinstance(H2, FdHopf)):
            raise ValueError("hopf mode needs Hopf algebras")
        for i in range(n):
            lhs: dict = {}
            for (j, k), c in H1.comult[i].items():
                for a, ca in cols[j].items():
                    for b, cb in cols[k].items():
                        add_into(lhs, (a, b), c * ca * cb)
            if lhs != H2.comul(cols[i]):
                return False, f"comultiplication differs at {H1.basis_labels[i]}"
            if H2.eps(cols[i]) != H1.counit[i]:
                return False, f"counit differs at {H1.basis_labels[i]}"
        if H1.antipode is not None and H2.antipode is not None:
            for i in range(n):
                if phi(H1.antipode[i]) != H2.S(cols[i]):
                    return False, f"antipode differs at {H1.basis_labels[i]}"
    return True, None


def bidual_check(H: FdHopf) -> tuple[bool, str | None]:
    """Certify the evaluation map H -> dual(dual(H)), e_i -> e_i**, as a Hopf isomorphism."""
    DD = dual(dual(H))
    cols = [DD.e(i) for i in range(H.dim)]
    if H.dim <= EXHAUSTIVE_MAX_DIM or H.generators is None:
        return check_hopf_map(H, DD, cols, "hopf")
    # large objects: compare structure tensors entrywise (exact equality)
    if DD.mult != H.mult:
        return False, "multiplication tensors differ"
    if DD.comult != H.comult:
        return False, "comultiplication tensors differ"
    if DD.unit != H.unit or DD.counit != H.counit:
        return False, "unit or counit differs"
    if (H.antipode is None) != (DD.antipode is None) or (H.antipode and DD.antipode != H.antipode):
        return False, "antipode differs"
    return True, None
