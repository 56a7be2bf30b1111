"""Independent dense numerical oracles (numpy over the complex embedding)."""

import functools

import numpy as np

einsum = functools.partial(np.einsum, optimize=True)

from conftest import to_complex


def dense(H):
    n = H.dim
    M = np.zeros((n, n, n), dtype=complex)
    for (i, j), v in H.mult.items():
        for k, c in v.items():
            M[i, j, k] = to_complex(c)
    u = np.zeros(n, dtype=complex)
    for k, c in H.unit.items():
        u[k] = to_complex(c)
    out = {"M": M, "u": u}
    if hasattr(H, "comult"):
        D = np.zeros((n, n, n), dtype=complex)
        for i in range(n):
            for (j, k), c in H.comult[i].items():
                D[i, j, k] = to_complex(c)
        out["D"] = D
        out["e"] = np.array([to_complex(c) for c in H.counit])
        if H.antipode is not None:
            S = np.zeros((n, n), dtype=complex)  # S[r, c]: e_r coefficient of S(e_c)
            for c in range(n):
                for r, s in H.antipode[c].items():
                    S[r, c] = to_complex(s)
            out["S"] = S
    return out


def axioms(H, tol=1e-8):
    d = dense(H)
    M, u = d["M"], d["u"]
    n = H.dim
    I = np.eye(n)
    res = {}
    # (e_i e_j) e_l = e_i (e_j e_l)
    lhs = einsum("ijk,klm->ijlm", M, M)
    rhs = einsum("jlk,ikm->ijlm", M, M)
    res["associativity"] = np.allclose(lhs, rhs, atol=tol)
    res["unit"] = np.allclose(einsum("i,ijk->jk", u, M), I, atol=tol) and np.allclose(
        einsum("j,ijk->ik", u, M), I, atol=tol)
    if "D" not in d:
        return res
    D, e = d["D"], d["e"]
    res["coassociativity"] = np.allclose(einsum("ijk,jab->iabk", D, D), einsum("ijk,kab->ijab", D, D), atol=tol)
    res["counit"] = np.allclose(einsum("ijk,j->ik", D, e), I, atol=tol) and np.allclose(
        einsum("ijk,k->ij", D, e), I, atol=tol)
    # Delta(e_i e_j) = Delta(e_i) Delta(e_j)
    l1 = einsum("ijk,kab->ijab", M, D)
    r1 = einsum("iac,jbd,abx,cdy->ijxy", D, D, M, M)
    res["bialgebra"] = np.allclose(l1, r1, atol=tol) and np.allclose(
        einsum("ijk,k->ij", M, e), np.outer(e, e), atol=tol)
    if "S" in d:
        S = d["S"]
        left = einsum("ijk,rj,rkm->im", D, S, M)
        right = einsum("ijk,rk,jrm->im", D, S, M)
        want = np.outer(e, u)
        res["antipode"] = np.allclose(left, want, atol=tol) and np.allclose(right, want, atol=tol)
    return res


def commutative(H, tol=1e-8):
    M = dense(H)["M"]
    return np.allclose(M, M.transpose(1, 0, 2), atol=tol)


def cocommutative(H, tol=1e-8):
    D = dense(H)["D"]
    return np.allclose(D, D.transpose(0, 2, 1), atol=tol)
