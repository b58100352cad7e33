"""Digit interleaving ``H_k``: (Z/p^n)^k <-> Z/p^(kn).

Digit ``i`` of coordinate ``j`` becomes digit ``i*k + j`` of the output.
The interleaved integer is also the canonical index of a k-dimensional state
(see :func:`encode`), so reducing every coordinate mod ``p**m`` is the same as
reducing the index mod ``p**(k*m)``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .padic import PAdicInt, PAdicVec


def interleave(x: PAdicVec) -> PAdicInt:
    k, n = x.k, x.precision
    out = [0] * (k * n)
    for j, comp in enumerate(x.components):
        for i, d in enumerate(comp.digits):
            out[i * k + j] = d
    return PAdicInt(x.p, k * n, tuple(out))


def deinterleave(h: PAdicInt, k: int) -> PAdicVec:
    if k < 1 or h.precision % k:
        raise ValueError(f"precision {h.precision} is not divisible by k={k}")
    n = h.precision // k
    comps = tuple(PAdicInt(h.p, n, tuple(h.digits[i * k + j] for i in range(n))) for j in range(k))
    return PAdicVec(comps)


def encode(values: Sequence[int], p: int, n: int) -> int:
    """Canonical index of the state ``values`` (each a residue mod ``p**n``)."""
    k = len(values)
    if k == 1:
        return values[0] % p**n
    vals = list(values)
    out = 0
    weight = 1
    for _ in range(n):
        for j in range(k):
            vals[j], d = divmod(vals[j], p)
            out += d * weight
            weight *= p
    return out


def decode(index: int, p: int, k: int, n: int) -> tuple[int, ...]:
    if k == 1:
        return (index % p**n,)
    vals = [0] * k
    weight = 1
    for _ in range(n):
        for j in range(k):
            index, d = divmod(index, p)
            vals[j] += d * weight
        weight *= p
    return tuple(vals)


def encode_array(columns: Sequence[np.ndarray], p: int, n: int) -> np.ndarray:
    """Vectorised :func:`encode` over arrays of coordinate values."""
    k = len(columns)
    # constant coordinates come back as scalars
    columns = np.broadcast_arrays(*[np.asarray(c, dtype=np.int64) for c in columns])
    if k == 1:
        return columns[0] % p**n
    vals = [c.copy() for c in columns]
    out = np.zeros_like(vals[0])
    weight = 1
    for _ in range(n):
        for j in range(k):
            out += (vals[j] % p) * weight
            vals[j] //= p
            weight *= p
    return out


def decode_array(index: np.ndarray, p: int, k: int, n: int) -> tuple[np.ndarray, ...]:
    index = np.asarray(index, dtype=np.int64)
    if k == 1:
        return (index % p**n,)
    rest = index.copy()
    vals = [np.zeros_like(index) for _ in range(k)]
    weight = 1
    for _ in range(n):
        for j in range(k):
            vals[j] += (rest % p) * weight
            rest //= p
        weight *= p
    return tuple(vals)
