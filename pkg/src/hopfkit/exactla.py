"""Exact linear algebra over the fields in :mod:`hopfkit.scalars`.

Matrices are dense row lists of Scalars.  Over Q, elimination is fraction-free
(Bareiss) on integer-scaled rows; over Q(zeta_n) it is plain Gauss-Jordan on
Scalars; over F_p it runs on machine integers.

Tensor convention used throughout the package: basis index pair (i, j) of
V (x) W flattens to ``i * dim(W) + j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import FieldDesc, Scalar

__all__ = [
    "Matrix",
    "rref",
    "solve",
    "kernel",
    "rank",
    "Subspace",
    "flat",
    "unflat",
    "dense",
    "sparse",
    "SparseEchelon",
    "sparse_kernel",
]

Vec = list  # list[Scalar]


def flat(i: int, j: int, dim: int) -> int:
    return i * dim + j


def unflat(k: int, dim: int) -> tuple[int, int]:
    return divmod(k, dim)


def dense(v: dict, n: int, field: FieldDesc) -> list[Scalar]:
    z = field.zero()
    out = [z] * n
    for k, c in v.items():
        out[k] = c
    return out


def sparse(v: Sequence[Scalar]) -> dict:
    return {k: c for k, c in enumerate(v) if not c.is_zero()}


@dataclass(frozen=True)
class Matrix:
    field: FieldDesc
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    @classmethod
    def of(cls, field: FieldDesc, rows: Iterable[Iterable], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(Scalar.coerce(x, field) for x in r) for r in rows)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(field, len(data), ncols, data)

    @classmethod
    def identity(cls, field: FieldDesc, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldDesc, r: int, c: int) -> "Matrix":
        z = field.zero()
        return cls(field, r, c, tuple((z,) * c for _ in range(r)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> list[Scalar]:
        return list(self.data[i])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.data)) if self.rows else ())

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ot = other.transpose().data
            z = self.field.zero()
            out = []
            for r in self.data:
                nz = [(k, a) for k, a in enumerate(r) if not a.is_zero()]
                row = []
                for col in ot:
                    acc = z
                    for k, a in nz:
                        b = col[k]
                        if not b.is_zero():
                            acc = acc + a * b
                    row.append(acc)
                out.append(tuple(row))
            return Matrix(self.field, self.rows, other.cols, tuple(out))
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        z = self.field.zero()
        res = []
        for r in self.data:
            acc = z
            for a, b in zip(r, vec):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            res.append(acc)
        return res

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.data for x in r)

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self.data]


# ---------------------------------------------------------------------------
# elimination kernels returning (pivots, rows) of the RREF of an input row list


def _rref_gf(rows: list[list[int]], ncols: int, p: int) -> tuple[list[int], list[list[int]]]:
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c] % p
                if f:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots, rows


def _rref_q(rows: list[list[Fraction]], ncols: int) -> tuple[list[int], list[list[Fraction]]]:
    """Bareiss forward elimination on integer-scaled rows, then back substitution."""
    ints = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints.append([int(x * den) for x in r])
    nrows = len(ints)
    prev = 1
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if ints[i][c]), None)
        if piv is None:
            continue
        ints[r], ints[piv] = ints[piv], ints[r]
        pv = ints[r][c]
        prow = ints[r]
        for i in range(r + 1, nrows):
            a = ints[i][c]
            row = ints[i]
            ints[i] = [(pv * x - a * y) // prev for x, y in zip(row, prow)]
        prev = pv
        pivots.append(c)
        r += 1
    echelon = []
    for i in range(r):
        row = ints[i]
        pv = row[pivots[i]]
        echelon.append([Fraction(x, pv) for x in row])
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = echelon[k][c]
            if f:
                echelon[k] = [x - f * y for x, y in zip(echelon[k], echelon[i])]
    zero_rows = [[Fraction(0)] * ncols for _ in range(nrows - r)]
    return pivots, echelon + zero_rows


def _rref_generic(rows: list[list[Scalar]], ncols: int) -> tuple[list[int], list[list[Scalar]]]:
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if not x.is_zero() else x for x in rows[r]]
        pr = rows[r]
        nzc = [k for k, y in enumerate(pr) if not y.is_zero()]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if not f.is_zero():
                    ri = rows[i]
                    for k in nzc:
                        ri[k] = ri[k] - f * pr[k]
        pivots.append(c)
        r += 1
    return pivots, rows


def _rref_rows(field: FieldDesc, rows: list[list[Scalar]], ncols: int) -> tuple[list[int], list[list[Scalar]]]:
    if field.kind == "gf":
        p = field.p
        piv, out = _rref_gf([[x.raw for x in r] for r in rows], ncols, p)
        return piv, [[Scalar._make(field, x) for x in r] for r in out]
    if field.kind == "Q":
        fr = [[Fraction(x.raw[0][0], x.raw[1]) for x in r] for r in rows]
        piv, out = _rref_q(fr, ncols)
        return piv, [[Scalar.coerce(x, field) for x in r] for r in out]
    return _rref_generic(rows, ncols)


def rref(M: Matrix) -> tuple[int, Matrix, Matrix]:
    """Return (rank, R, T) with R the reduced row echelon form and T @ M == R."""
    f = M.field
    n = M.rows
    z, o = f.zero(), f.one()
    aug = [list(M.data[i]) + [o if i == j else z for j in range(n)] for i in range(n)]
    pivots, out = _rref_rows(f, aug, M.cols + n)
    # pivots beyond the left block belong to the transform only
    rk = sum(1 for c in pivots if c < M.cols)
    R = Matrix(f, n, M.cols, tuple(tuple(r[: M.cols]) for r in out))
    T = Matrix(f, n, n, tuple(tuple(r[M.cols:]) for r in out))
    return rk, R, T


def _rref_only(field: FieldDesc, rows: list[list[Scalar]], ncols: int) -> tuple[list[int], list[list[Scalar]]]:
    if not rows:
        return [], []
    piv, out = _rref_rows(field, rows, ncols)
    return piv, out[: len(piv)]


def rank(field: FieldDesc, rows: list[list[Scalar]], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(_rref_only(field, rows, ncols if ncols is not None else len(rows[0]))[0])


def kernel(M: Matrix) -> list[list[Scalar]]:
    """Basis of {x : M x = 0}, one vector per free column."""
    f = M.field
    piv, R = _rref_only(f, [list(r) for r in M.data], M.cols)
    free = [c for c in range(M.cols) if c not in set(piv)]
    z, o = f.zero(), f.one()
    basis = []
    for fc in free:
        v = [z] * M.cols
        v[fc] = o
        for row, pc in zip(R, piv):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(M: Matrix, b: Sequence) -> list[Scalar] | None:
    """One solution of M x = b, or None when the system is inconsistent."""
    f = M.field
    if len(b) != M.rows:
        raise ValueError("shape mismatch")
    rows = [list(M.data[i]) + [Scalar.coerce(b[i], f)] for i in range(M.rows)]
    piv, R = _rref_only(f, rows, M.cols + 1)
    if piv and piv[-1] == M.cols:
        return None
    x = [f.zero()] * M.cols
    for row, pc in zip(R, piv):
        x[pc] = row[M.cols]
    return x


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of k^n stored by its canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldDesc, ambient_dim: int, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field: FieldDesc, ambient_dim: int, vectors: Iterable) -> "Subspace":
        rows = []
        for v in vectors:
            if isinstance(v, dict):
                v = dense(v, ambient_dim, field)
            v = [Scalar.coerce(x, field) for x in v]
            if len(v) != ambient_dim:
                raise ValueError("ambient dimension mismatch")
            rows.append(v)
        piv, R = _rref_only(field, rows, ambient_dim)
        return cls(field, ambient_dim, R, piv)

    @classmethod
    def zero(cls, field: FieldDesc, n: int) -> "Subspace":
        return cls(field, n, [], [])

    @classmethod
    def whole(cls, field: FieldDesc, n: int) -> "Subspace":
        return cls.span(field, n, Matrix.identity(field, n).tolist())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.field is not other.field:
            raise ValueError("field mismatch")

    def reduce(self, v) -> list[Scalar]:
        """Canonical remainder of v modulo the subspace (zero on pivot columns)."""
        if isinstance(v, dict):
            v = dense(v, self.ambient_dim, self.field)
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if not c.is_zero():
                v = [x - c * y if not y.is_zero() else x for x, y in zip(v, row)]
        return v

    def __contains__(self, v) -> bool:
        return all(x.is_zero() for x in self.reduce(v))

    def coords(self, v) -> list[Scalar] | None:
        """Coordinates of v in the canonical basis, or None if v is outside."""
        if isinstance(v, dict):
            v = dense(v, self.ambient_dim, self.field)
        if v not in self:
            return None
        return [v[pc] for pc in self.pivots]

    def complement_indices(self) -> list[int]:
        """Standard basis indices spanning a complement (the non-pivot columns)."""
        ps = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in ps]

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rref of [[u, u], [v, 0]] exposes U cap V in the right half."""
        self._check(other)
        n = self.ambient_dim
        z = self.field.zero()
        rows = [list(u) + list(u) for u in self.basis] + [list(v) + [z] * n for v in other.basis]
        piv, R = _rref_only(self.field, rows, 2 * n)
        inter = [row[n:] for row, pc in zip(R, piv) if pc >= n]
        return Subspace.span(self.field, n, inter)

    __and__ = intersect

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(v in other for v in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.pivots, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


# ---------------------------------------------------------------------------
# sparse incremental echelon form


class SparseEchelon:
    """Row space of sparse rows, kept in echelon form keyed by pivot column.

    Rows are ``{column: Scalar}`` dicts.  Columns ``>= ncols`` are tag columns:
    they ride along during reduction but never become pivots, which is how
    right-hand sides are tracked for consistency checks.
    """

    def __init__(self, field: FieldDesc, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = {k: c for k, c in row.items() if not c.is_zero()}
        while True:
            cols = [k for k in row if k < self.ncols and k in self.rows]
            if not cols:
                return row
            c = min(cols)
            fac = row[c]
            for k, v in self.rows[c].items():
                nv = row.get(k)
                nv = -(fac * v) if nv is None else nv - fac * v
                if nv.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = nv

    def add(self, row: dict) -> str:
        """Insert a row.  Returns "new", "dependent", or "inconsistent".

        "inconsistent" means the row reduced to a nonzero tag-only remainder.
        """
        r = self.reduce(row)
        main = [k for k in r if k < self.ncols]
        if not main:
            return "inconsistent" if r else "dependent"
        p = min(main)
        inv = r[p].inverse()
        r = {k: v * inv for k, v in r.items()}
        # keep full reduction: clear column p from existing rows
        for q, other in self.rows.items():
            f = other.get(p)
            if f is not None:
                for k, v in r.items():
                    nv = other.get(k)
                    nv = -(f * v) if nv is None else nv - f * v
                    if nv.is_zero():
                        other.pop(k, None)
                    else:
                        other[k] = nv
        self.rows[p] = r
        return "new"

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def kernel(self) -> list[list[Scalar]]:
        """Null space basis of the stored rows (restricted to main columns)."""
        piv = set(self.rows)
        z, o = self.field.zero(), self.field.one()
        out = []
        for fc in range(self.ncols):
            if fc in piv:
                continue
            v = [z] * self.ncols
            v[fc] = o
            for p, row in self.rows.items():
                c = row.get(fc)
                if c is not None:
                    v[p] = -c
            out.append(v)
        return out


def sparse_kernel(field: FieldDesc, rows: Iterable[dict], ncols: int) -> list[list[Scalar]]:
    ech = SparseEchelon(field, ncols)
    for r in rows:
        if r:
            ech.add(r)
            if len(ech) == ncols:
                break
    return ech.kernel()
