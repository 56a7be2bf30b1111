"""Stable ideals, cores and orbits for Hopf actions on finite-dimensional
commutative algebras.

Points of an algebra are its characters; an ideal is stored as a canonical
subspace.  The core of an ideal I is the largest submodule for the acting
Hopf algebra inside I; for module-algebra actions it is again an ideal.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from ._vec import axpy, dot
from .construct import ModAction, generated_ideal
from .exactla import Matrix, Subspace, rank, sparse_kernel
from .hopf import Character, FdAlgebra, characters
from .scalars import Scalar, field_to_json, parse_field, parse_scalar

__all__ = [
    "CommAlgFd",
    "IdealFd",
    "ModAction",
    "OrbSemiReport",
    "ideal",
    "is_stable",
    "core",
    "orbit",
    "orbits",
    "is_orbitally_semisimple",
    "is_H_simple",
    "frobenius_witness",
    "frobenius_search",
    "nilradical",
    "quotient_algebra",
    "induced_action",
    "kernel_ideal",
    "algebra_from_json",
    "algebra_to_json",
    "action_from_json",
    "action_to_json",
]


class CommAlgFd:
    """Commutative algebra with its list of points (characters)."""

    def __init__(self, algebra: FdAlgebra, points: Sequence[Character] | None = None, complete: bool | None = None):
        if not algebra.is_commutative():
            raise ValueError("algebra is not commutative")
        self.algebra = algebra
        if points is None:
            found = characters(algebra)
            self.points = list(found.characters)
            self.complete = found.complete
        else:
            self.points = list(points)
            self.complete = bool(complete)
        F = algebra.field
        for chi in self.points:
            if not dot(chi.values, algebra.unit, F).is_one() or any(
                dot(chi.values, algebra.mult.get((i, j), {}), F) != chi.values[i] * chi.values[j]
                for i in range(algebra.dim)
                for j in range(algebra.dim)
            ):
                raise ValueError("point is not multiplicative")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def field(self):
        return self.algebra.field


@dataclass(frozen=True)
class IdealFd:
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def vectors(self) -> list[dict]:
        return [{k: c for k, c in enumerate(r) if not c.is_zero()} for r in self.space.basis]

    def __contains__(self, v) -> bool:
        return v in self.space

    def __le__(self, other: "IdealFd") -> bool:
        return self.space <= other.space

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealFd) and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.space)

    def __and__(self, other: "IdealFd") -> "IdealFd":
        return IdealFd(self.space & other.space)

    def __add__(self, other: "IdealFd") -> "IdealFd":
        return IdealFd(self.space + other.space)


def _alg(A) -> FdAlgebra:
    return A.algebra if isinstance(A, CommAlgFd) else A


def ideal(A, gens: Iterable[Mapping]) -> IdealFd:
    return IdealFd(generated_ideal(_alg(A), list(gens)))


def _check_ideal(A: FdAlgebra, I: IdealFd) -> None:
    for v in I.vectors():
        for i in range(A.dim):
            if A.mul(A.e(i), v) not in I.space:
                raise ValueError("subspace is not an ideal")


def kernel_ideal(A, chi: Character) -> IdealFd:
    A = _alg(A)
    ker = sparse_kernel(A.field, [{k: c for k, c in enumerate(chi.values) if not c.is_zero()}], A.dim)
    return IdealFd(Subspace.span(A.field, A.dim, ker))


def is_stable(act: ModAction, I: IdealFd) -> bool:
    K = act.K
    return all(act.apply(K.e(h), v) in I.space for h in range(K.dim) for v in I.vectors())


def core(act: ModAction, I: IdealFd) -> IdealFd:
    """Descending chain I_{m+1} = {v in I_m : K . v in I_m} until it stabilizes."""
    K = act.K
    F = act.space.field
    n = act.space.dim
    cur = I.space
    while True:
        basis = [{k: c for k, c in enumerate(r) if not c.is_zero()} for r in cur.basis]
        if not basis:
            return IdealFd(cur)
        rows: dict = {}
        for t, b in enumerate(basis):
            for h in range(K.dim):
                rem = cur.reduce(act.apply(K.e(h), b))
                for col, c in enumerate(rem):
                    if not c.is_zero():
                        rows.setdefault((h, col), {})[t] = c
        ker = sparse_kernel(F, rows.values(), len(basis))
        new = []
        for coeffs in ker:
            v: dict = {}
            for t, c in enumerate(coeffs):
                axpy(v, c, basis[t])
            new.append(v)
        nxt = Subspace.span(F, n, new)
        if nxt.dim == cur.dim:
            return IdealFd(cur)
        cur = nxt


def _vanishes(chi: Character, I: IdealFd) -> bool:
    return all(chi(v).is_zero() for v in I.vectors())


def orbit(act: ModAction, chi: Character, all_points: Sequence[Character]) -> list[Character]:
    """Points chi' with core(ker chi) contained in ker chi'."""
    A = act.space
    if chi not in all_points:
        raise ValueError("chi is not among the given points")
    c = core(act, kernel_ideal(A, chi))
    return [p for p in all_points if _vanishes(p, c)]


def orbits(act: ModAction, all_points: Sequence[Character]) -> list[list[Character]]:
    seen: set = set()
    out = []
    for chi in all_points:
        if chi in seen:
            continue
        o = orbit(act, chi, all_points)
        seen.update(o)
        out.append(o)
    return out


@dataclass
class OrbSemiReport:
    holds: bool
    status: str  # "pass" | "fail" | "conditional"
    per_orbit: list = dc_field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


def quotient_algebra(A: FdAlgebra, I: IdealFd) -> FdAlgebra:
    A = _alg(A)
    keep = I.space.complement_indices()
    pos = {k: t for t, k in enumerate(keep)}

    def proj(x: Mapping) -> dict:
        r = I.space.reduce(x)
        return {pos[k]: r[k] for k in keep if not r[k].is_zero()}

    mult = {}
    for a in range(len(keep)):
        for b in range(len(keep)):
            v = proj(A.mult.get((keep[a], keep[b]), {}))
            if v:
                mult[(a, b)] = v
    Q = FdAlgebra(A.field, [A.basis_labels[k] for k in keep], mult, proj(A.unit), name=f"{A.name}/I")
    Q.projection = proj
    Q.lift = keep
    return Q


def induced_action(act: ModAction, I: IdealFd) -> ModAction:
    if not is_stable(act, I):
        raise ValueError("ideal is not stable; no induced action")
    Q = quotient_algebra(act.space, I)
    K = act.K
    new = {}
    for h in range(K.dim):
        for a, k in enumerate(Q.lift):
            v = Q.projection(act.apply(K.e(h), act.space.e(k)))
            if v:
                new[(h, a)] = v
    return ModAction(K, Q, new)


def _points_of_quotient(Q: FdAlgebra, A: FdAlgebra, points: Sequence[Character]) -> list[Character]:
    return [Character(tuple(p.values[k] for k in Q.lift)) for p in points]


def is_orbitally_semisimple(act: ModAction, all_points: Sequence[Character], complete: bool = True) -> OrbSemiReport:
    """Per orbit: core(ker chi) equals the intersection of ker chi' over the orbit.

    The result is cross-checked by the nilradical of A/core being zero.
    """
    A = act.space
    report = []
    ok = True
    for o in orbits(act, all_points):
        c = core(act, kernel_ideal(A, o[0]))
        inter = kernel_ideal(A, o[0])
        for p in o[1:]:
            inter = inter & kernel_ideal(A, p)
        eq = c == inter
        Q = quotient_algebra(A, c)
        qpts = [p for p in _points_of_quotient(Q, A, o)]
        nil = nilradical(Q, qpts, complete=True)
        semisimple = nil.dim == 0
        if eq != semisimple:
            raise ArithmeticError("orbital semisimplicity cross-check disagrees")
        ok = ok and eq
        report.append(
            {
                "orbit": [tuple(s.to_literal() for s in p.values) for p in o],
                "core_dim": c.dim,
                "codim": A.dim - c.dim,
                "equals_intersection": eq,
            }
        )
    status = ("pass" if ok else "fail") if complete else "conditional"
    return OrbSemiReport(ok, status, report)


def is_H_simple(act: ModAction, all_points: Sequence[Character], complete: bool = True) -> tuple[bool, str]:
    A = act.space
    ok = all(core(act, kernel_ideal(A, p)).dim == 0 for p in all_points)
    if not all_points:
        ok = A.dim == 0
    return ok, ("pass" if ok else "fail") if complete else "conditional"


def frobenius_witness(A, lam: Sequence) -> bool:
    """Nondegeneracy of (a, b) -> lam(ab)."""
    A = _alg(A)
    F = A.field
    lam = [Scalar.coerce(c, F) for c in lam]
    gram = [[dot(lam, A.mult.get((i, j), {}), F) for j in range(A.dim)] for i in range(A.dim)]
    return rank(F, gram, A.dim) == A.dim


def frobenius_search(A, seed: int = 0, budget: int = 256) -> list | None:
    """Deterministic search for a Frobenius functional, then a seeded random fallback."""
    A = _alg(A)
    F = A.field
    n = A.dim
    z, o = F.zero(), F.one()
    tried = 0
    for k in range(n):
        lam = [o if i == k else z for i in range(n)]
        if frobenius_witness(A, lam):
            return lam
    for bits in itertools.product((0, 1), repeat=n):
        tried += 1
        if tried > budget:
            break
        lam = [o if b else z for b in bits]
        if any(bits) and frobenius_witness(A, lam):
            return lam
    rng = random.Random(seed)
    for _ in range(budget):
        lam = [F(rng.randint(-3, 3)) for _ in range(n)]
        if frobenius_witness(A, lam):
            return lam
    return None


def nilradical(A, points: Sequence[Character] | None = None, complete: bool | None = None) -> IdealFd:
    """Intersection of the kernels of the points, verified to consist of nilpotents."""
    if isinstance(A, CommAlgFd):
        if points is None:
            points, complete = A.points, A.complete
        A = A.algebra
    elif points is None:
        found = characters(A)
        points, complete = found.characters, found.complete
    F = A.field
    n = A.dim
    if points:
        rows = [{k: c for k, c in enumerate(p.values) if not c.is_zero()} for p in points]
        N = Subspace.span(F, n, sparse_kernel(F, rows, n))
    else:
        N = Subspace.whole(F, n)
    I = IdealFd(N)
    for v in I.vectors():
        w = dict(v)
        for _ in range(n):
            w = A.mul(w, v)
            if not w:
                break
        if w:
            raise ValueError("character list incomplete: intersection of kernels is not nil")
    return I


# ---------------------------------------------------------------------------
# action files: {"hopf": <structure object or ref>, "algebra": {...}, "action": [[h, a, vector], ...]}


def algebra_to_json(A: FdAlgebra) -> dict:
    z = A.field.zero()
    return {
        "field": field_to_json(A.field),
        "basis": list(A.basis_labels),
        "mult": [[i, j, k, c.to_literal()] for (i, j) in sorted(A.mult) for k, c in sorted(A.mult[(i, j)].items())],
        "unit": [A.unit.get(k, z).to_literal() for k in range(A.dim)],
    }


def algebra_from_json(obj: Mapping, field=None) -> FdAlgebra:
    for key in ("basis", "mult", "unit"):
        if key not in obj:
            raise ValueError(f"algebra object is missing {key!r}")
    F = field or parse_field(obj.get("field", "Q"))
    labels = [str(x) for x in obj["basis"]]
    if len(obj["unit"]) != len(labels):
        raise ValueError("unit length does not match basis")
    mult: dict = {}
    for i, j, k, c in obj["mult"]:
        v = mult.setdefault((int(i), int(j)), {})
        v[int(k)] = v.get(int(k), F.zero()) + parse_scalar(str(c), F)
    unit = {k: parse_scalar(str(c), F) for k, c in enumerate(obj["unit"])}
    return FdAlgebra(F, labels, mult, unit, name=str(obj.get("name", "")))


def _vector_from_json(v, F, n: int) -> dict:
    if isinstance(v, Mapping):
        out = {int(k): parse_scalar(str(c), F) for k, c in v.items()}
    else:
        if len(v) != n:
            raise ValueError(f"dense action vector must have length {n}")
        out = {k: parse_scalar(str(c), F) for k, c in enumerate(v)}
    if any(not 0 <= k < n for k in out):
        raise ValueError("action vector index out of range")
    return {k: c for k, c in out.items() if not c.is_zero()}


def action_from_json(obj: Mapping, field=None) -> ModAction:
    """Parse an action file.  ``hopf`` may be a structure object or a finite-dimensional family ref."""
    from .hopf import FdHopf

    for key in ("hopf", "algebra", "action"):
        if key not in obj:
            raise ValueError(f"action file is missing {key!r}")
    if isinstance(obj["hopf"], str):
        from .families import parse_ref

        K = parse_ref(obj["hopf"], field)
        if not isinstance(K, FdHopf):
            raise ValueError("the acting Hopf algebra must be finite-dimensional")
    else:
        K = FdHopf.from_json(obj["hopf"])
    A = algebra_from_json(obj["algebra"], field or K.field)
    act = {}
    for ent in obj["action"]:
        h, a, v = ent
        h, a = int(h), int(a)
        if not (0 <= h < K.dim and 0 <= a < A.dim):
            raise ValueError(f"action index ({h}, {a}) out of range")
        vec = _vector_from_json(v, A.field, A.dim)
        if vec:
            act[(h, a)] = vec
    return ModAction(K, A, act)


def action_to_json(act: ModAction) -> dict:
    z = act.space.field.zero()
    return {
        "hopf": act.K.to_json(),
        "algebra": algebra_to_json(act.space),
        "action": [[h, a, [v.get(k, z).to_literal() for k in range(act.space.dim)]] for (h, a), v in sorted(act.act.items())],
    }
