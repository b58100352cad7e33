"""Compatible (1-Lipschitz) maps on (Z/p^n)^k.

A map is evaluated on a *state*: a tuple of ``k`` residues mod ``p**n``.
Every map can also produce its induced function at level ``n`` as a table
over canonical state indices (the interleave encoding).  Subclasses that can
evaluate on numpy arrays set ``vectorized = True`` and get a fast default
:meth:`CompatibleMap.table`.
"""

from __future__ import annotations

import numpy as np

from .interleave import decode, decode_array, encode, encode_array
from .padic import PAdicInt, PAdicVec, as_state, check_prime, check_state_space


class CompatibleMap:
    p: int
    k: int
    max_precision: int | None = None
    vectorized = False

    def __call__(self, state: tuple, n: int) -> tuple:
        raise NotImplementedError

    def _check_level(self, n: int) -> None:
        if n < 1:
            raise ValueError("precision must be >= 1")
        if self.max_precision is not None and n > self.max_precision:
            raise ValueError(f"map is only defined up to precision {self.max_precision}, asked for {n}")

    def evaluate(self, x: PAdicVec | PAdicInt, n: int | None = None) -> PAdicVec:
        """``F(x) mod p**n`` as a :class:`PAdicVec` (``n`` defaults to the precision of ``x``)."""
        if isinstance(x, PAdicInt):
            x = PAdicVec((x,))
        if x.k != self.k:
            raise ValueError(f"map has k={self.k}, state has k={x.k}")
        n = x.precision if n is None else n
        self._check_level(n)
        return PAdicVec.from_ints(self(as_state(x, self.p, n), n), self.p, n)

    def table(self, n: int) -> np.ndarray:
        """Induced function mod ``p**n`` as an array over canonical indices (read-only)."""
        cache = self.__dict__.setdefault("_table_cache", {})
        if n not in cache:
            self._check_level(n)
            check_state_space(self.p, self.k * n)
            t = np.ascontiguousarray(self._build_table(n), dtype=np.int64)
            t.flags.writeable = False
            cache[n] = t
        return cache[n]

    def _build_table(self, n: int) -> np.ndarray:
        size = self.p ** (self.k * n)
        if self.vectorized:
            cols = decode_array(np.arange(size, dtype=np.int64), self.p, self.k, n)
            images = [np.broadcast_to(np.asarray(c, dtype=np.int64), (size,)) for c in self(cols, n)]
            return encode_array(images, self.p, n)
        out = np.empty(size, dtype=np.int64)
        for idx in range(size):
            out[idx] = encode(self(decode(idx, self.p, self.k, n), n), self.p, n)
        return out


class TableMap(CompatibleMap):
    """Map given by an explicit image table at a fixed maximum precision.

    Below the maximum precision a state is looked up through its
    zero-padded representative and the image is reduced.  Nothing forces the
    table to be compatible; that is what ``check_compatibility`` is for.
    """

    def __init__(self, p: int, k: int, max_precision: int, images):
        check_prime(p)
        size = check_state_space(p, k * max_precision)
        images = np.asarray(images, dtype=np.int64)
        if images.shape != (size,):
            raise ValueError(f"table must have {size} entries, got {images.shape}")
        if images.size and (images.min() < 0 or images.max() >= size):
            raise ValueError("table entries out of range")
        self.p, self.k, self.max_precision = p, k, max_precision
        self.images = images
        self.images.flags.writeable = False

    def __call__(self, state, n):
        self._check_level(n)
        idx = encode(state, self.p, self.max_precision)
        return tuple(v % self.p**n for v in decode(int(self.images[idx]), self.p, self.k, self.max_precision))

    def _build_table(self, n):
        # a padded index at level n is the same integer at max precision
        return self.images[: self.p ** (self.k * n)] % self.p ** (self.k * n)

    def __repr__(self):
        return f"TableMap(p={self.p}, k={self.k}, max_precision={self.max_precision})"


class Interleaved(CompatibleMap):
    """``H_k o inner o H_k^-1``: a k-coordinate map seen as a map on Z_p.

    At a level that is not a multiple of k the state is zero-padded to the
    next multiple, evaluated there, and the image reduced.
    """

    def __init__(self, inner: CompatibleMap):
        self.inner = inner
        self.p, self.k = inner.p, 1
        self.arity = inner.k
        if inner.max_precision is not None:
            self.max_precision = inner.max_precision * inner.k

    def _inner_level(self, n):
        return -(-n // self.arity)

    def __call__(self, state, n):
        self._check_level(n)
        m = self._inner_level(n)
        x = decode(state[0] % self.p**n, self.p, self.arity, m)
        return (encode(self.inner(x, m), self.p, m) % self.p**n,)

    def _build_table(self, n):
        m = self._inner_level(n)
        return self.inner.table(m)[: self.p**n] % self.p**n

    def __repr__(self):
        return f"Interleaved({self.inner!r})"


class Deinterleaved(CompatibleMap):
    """``H_k^-1 o g o H_k``: a map on Z_p seen as a map on Z_p^k."""

    def __init__(self, g: CompatibleMap, k: int):
        if g.k != 1:
            raise ValueError("Deinterleaved wraps a map on Z_p (k=1)")
        self.g = g
        self.p, self.k = g.p, k
        if g.max_precision is not None:
            self.max_precision = g.max_precision // k

    def __call__(self, state, n):
        self._check_level(n)
        h = encode(state, self.p, n)
        return decode(self.g((h,), self.k * n)[0], self.p, self.k, n)

    def _build_table(self, n):
        return self.g.table(self.k * n)

    def __repr__(self):
        return f"Deinterleaved({self.g!r}, k={self.k})"


def tables_equal(f: CompatibleMap, g: CompatibleMap, n: int) -> bool:
    return bool(np.array_equal(f.table(n), g.table(n)))
