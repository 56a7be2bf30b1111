# Sparse vectors as {key: Scalar} dicts with zero entries dropped.
from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from .scalars import FieldDesc, Scalar


def add_into(acc: dict, key: Hashable, c: Scalar) -> None:
    if c.is_zero():
        return
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        s = old + c
        if s.is_zero():
            del acc[key]
        else:
            acc[key] = s


def axpy(acc: dict, a: Scalar, x: Mapping) -> dict:
    """acc += a*x in place."""
    if a.is_zero():
        return acc
    for k, c in x.items():
        add_into(acc, k, a * c)
    return acc


def vadd(x: Mapping, y: Mapping) -> dict:
    out = dict(x)
    for k, c in y.items():
        add_into(out, k, c)
    return out


def vsub(x: Mapping, y: Mapping) -> dict:
    out = dict(x)
    for k, c in y.items():
        add_into(out, k, -c)
    return out


def vscale(a: Scalar, x: Mapping) -> dict:
    if a.is_zero():
        return {}
    return {k: a * c for k, c in x.items()}


def vlin(terms: Iterable[tuple[Scalar, Mapping]]) -> dict:
    out: dict = {}
    for a, x in terms:
        axpy(out, a, x)
    return out


def dot(f, x: Mapping, field: FieldDesc) -> Scalar:
    """Pair a dense covector (sequence or mapping) with a sparse vector."""
    acc = field.zero()
    if isinstance(f, Mapping):
        for k, c in x.items():
            v = f.get(k)
            if v is not None:
                acc = acc + v * c
        return acc
    for k, c in x.items():
        v = f[k]
        if not v.is_zero():
            acc = acc + v * c
    return acc


def veq(x: Mapping, y: Mapping) -> bool:
    return vsub(x, y) == {}
