"""Orbit indexing and the twist operator ``T_{k,P}``.

For a dynamic ``d`` on m coordinates and a twist parameter ``k`` (m | k), the
residue space is ``R = (Z/p^(k/m))^m``, which has ``p**k`` elements.  When
``d`` permutes ``R`` in a single cycle ``c_0 = 0, c_1, ..., c_{p^k-1}``, every
state ``y`` gets

* a position ``j(y)``: the index of ``y``'s residue in that cycle;
* a twist index ``i(y) = j(y)``, or ``p**k`` when ``j(y) == 0``;
* an anchor ``b(y) = d^-i(y)(y)``, a state with zero residue.

The standalone twist is ``T_P(y) = d^P(i(y))(b(y))``.  Composed with ``d`` it
gives ``T_P(d(x)) = d^P(j+1)(x_0)`` for ``x = d^j(x_0)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .interleave import encode
from .maps import CompatibleMap, Interleaved
from .padic import PAdicVec, as_state


class NotTransitiveError(ValueError):
    pass


class NotBijectiveError(ValueError):
    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


@dataclass(frozen=True)
class TwistPermutation:
    """Permutation ``P`` of {1, ..., p^k}; ``images[i-1] == P(i)``."""

    p: int
    k: int
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        size = self.p**self.k
        if sorted(self.images) != list(range(1, size + 1)):
            raise ValueError(f"not a permutation of 1..{size}: {self.images}")

    @classmethod
    def identity(cls, p: int, k: int) -> TwistPermutation:
        return cls(p, k, tuple(range(1, p**k + 1)))

    @property
    def size(self) -> int:
        return self.p**self.k

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> TwistPermutation:
        inv = [0] * self.size
        for i, v in enumerate(self.images, 1):
            inv[v - 1] = i
        return TwistPermutation(self.p, self.k, tuple(inv))

    def compose(self, other: TwistPermutation) -> TwistPermutation:
        """``self o other``: apply ``other`` first."""
        if (self.p, self.k) != (other.p, other.k):
            raise ValueError("permutations of different size")
        return TwistPermutation(self.p, self.k, tuple(self(other(i)) for i in range(1, self.size + 1)))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.size + 1))

    def __str__(self) -> str:
        return "P: " + " ".join(str(v) for v in self.images)

    @classmethod
    def parse(cls, text: str, p: int, k: int) -> TwistPermutation:
        body = text.strip()
        if body.startswith("P:"):
            body = body[2:]
        return cls(p, k, tuple(int(t) for t in body.split()))

    @classmethod
    def all(cls, p: int, k: int):
        for perm in itertools.permutations(range(1, p**k + 1)):
            yield cls(p, k, perm)


@dataclass(frozen=True)
class ResidueCycle:
    """Single cycle of ``d`` on its residue space, as canonical residue indices."""

    p: int
    k: int
    level: int  # digits per coordinate of the residue space
    order: tuple[int, ...]  # order[t] = index of c_t
    position: np.ndarray  # position[index of c_t] = t

    def position_of(self, state, n) -> int:
        return int(self.position[encode(state, self.p, n) % self.p**self.k])


@lru_cache(maxsize=256)
def residue_cycle(d: CompatibleMap, k: int) -> ResidueCycle:
    """Walk ``d`` on the residue space from zero; raise unless it is one ``p**k``-cycle."""
    m = d.k
    if k % m:
        raise ValueError(f"twist parameter k={k} is not a multiple of the map's arity {m}")
    r = k // m
    size = d.p**k
    state = (0,) * m
    order = []
    seen = np.full(size, -1, dtype=np.int64)
    for t in range(size):
        idx = encode(state, d.p, r)
        if seen[idx] >= 0:
            raise NotTransitiveError(
                f"map is not transitive on residues mod {d.p}^{r}: cycle through 0 has length {t}"
            )
        seen[idx] = t
        order.append(idx)
        state = d(state, r)
    if encode(state, d.p, r) != 0:
        raise NotTransitiveError(f"map is not transitive on residues mod {d.p}^{r}")
    seen.flags.writeable = False
    return ResidueCycle(d.p, k, r, tuple(order), seen)


def invert(d: CompatibleMap, y, n: int, step: int = 1) -> tuple[int, ...]:
    """Preimage of ``y`` mod ``p**n``, lifted ``step`` digit levels at a time.

    Each lift tries every extension of the current partial preimage and keeps
    the one consistent with ``y``.  ``step`` > 1 suits maps that are only
    known to be compatible at multiples of ``step``.
    """
    p, m = d.p, d.k
    y = as_state(y, p, n)
    x = (0,) * m
    prev = 0
    for level in list(range(step, n, step)) + [n]:
        weight = p**prev
        mod = p**level
        target = tuple(v % mod for v in y)
        found = []
        for digits in itertools.product(range(p ** (level - prev)), repeat=m):
            cand = tuple(v + dg * weight for v, dg in zip(x, digits))
            if d(cand, level) == target:
                found.append(cand)
        if len(found) != 1:
            how = "no preimage" if not found else f"{len(found)} preimages"
            raise NotBijectiveError(f"{how} at level {level}: map is not bijective mod {p}^{level}", level)
        x = found[0]
        prev = level
    return x


def power(d: CompatibleMap, state, t: int, n: int, step: int = 1) -> tuple[int, ...]:
    """``d^t(state)`` mod ``p**n``; negative ``t`` uses :func:`invert`."""
    state = as_state(state, d.p, n)
    for _ in range(t):
        state = d(state, n)
    for _ in range(-t):
        state = invert(d, state, n, step)
    return state


@dataclass(frozen=True)
class OrbitCoords:
    base: tuple[int, ...]
    index: int


def _check_working_level(cyc: ResidueCycle, n: int) -> None:
    if n < cyc.level:
        raise ValueError(f"working precision {n} is below the residue precision {cyc.level}")


def orbit_coords(d: CompatibleMap, x, k: int, n: int) -> OrbitCoords:
    """Position ``j`` of ``x``'s residue in ``d``'s residue cycle and ``base = d^-j(x)``."""
    cyc = residue_cycle(d, k)
    _check_working_level(cyc, n)
    x = as_state(x, d.p, n)
    j = cyc.position_of(x, n)
    return OrbitCoords(power(d, x, -j, n, cyc.level), j)


def twist_anchor(d: CompatibleMap, y, k: int, n: int) -> tuple[tuple[int, ...], int]:
    """``(b(y), i(y))`` with ``i`` in 1..p^k and ``y = d^i(b)``."""
    cyc = residue_cycle(d, k)
    _check_working_level(cyc, n)
    y = as_state(y, d.p, n)
    i = cyc.position_of(y, n) or d.p**k
    return power(d, y, -i, n, cyc.level), i


def twist_apply(d: CompatibleMap, P: TwistPermutation, y, n: int) -> tuple[int, ...]:
    if P.p != d.p:
        raise ValueError("twist permutation and map disagree on p")
    b, i = twist_anchor(d, y, P.k, n)
    return power(d, b, P(i), n)


def _inverse_table(t: np.ndarray, n: int, p: int, k: int) -> np.ndarray:
    inv = np.full(len(t), -1, dtype=np.int64)
    inv[t] = np.arange(len(t), dtype=np.int64)
    if (inv < 0).any():
        raise NotBijectiveError(f"map is not bijective mod {p}^{n}", n)
    return inv


def _iterate(t: np.ndarray, start: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Apply table ``t`` ``counts[x]`` times to ``start[x]``, elementwise."""
    cur = start.copy()
    for step in range(int(counts.max(initial=0))):
        sel = counts > step
        cur[sel] = t[cur[sel]]
    return cur


def _twist_states(d: CompatibleMap, P: TwistPermutation, n: int, y: np.ndarray) -> np.ndarray:
    cyc = residue_cycle(d, P.k)
    _check_working_level(cyc, n)
    t = d.table(n)
    inv = _inverse_table(t, n, d.p, d.k)
    size = P.size
    i = cyc.position[y % size]
    i = np.where(i == 0, size, i)
    b = _iterate(inv, y, i)
    images = np.asarray((0,) + P.images, dtype=np.int64)
    return _iterate(t, b, images[i])


def twist_table(d: CompatibleMap, P: TwistPermutation, n: int) -> np.ndarray:
    """Standalone ``T_P`` over every canonical state index at level ``n``."""
    size = d.p ** (d.k * n)
    return _twist_states(d, P, n, np.arange(size, dtype=np.int64))


class TwistedMap(CompatibleMap):
    """``T_{k,P} o d``; ``k`` is taken from ``P``."""

    def __init__(self, d: CompatibleMap, P: TwistPermutation):
        if P.p != d.p:
            raise ValueError("twist permutation and map disagree on p")
        if P.k % d.k:
            raise ValueError(f"twist parameter k={P.k} is not a multiple of the map's arity {d.k}")
        self.d, self.P = d, P
        self.p, self.k = d.p, d.k
        self.max_precision = d.max_precision
        if not P.is_identity():  # the identity twist needs no residue cycle
            residue_cycle(d, P.k)

    def __call__(self, state, n):
        if self.P.is_identity():
            return self.d(state, n)
        return twist_apply(self.d, self.P, self.d(state, n), n)

    def _build_table(self, n):
        if self.P.is_identity():
            return self.d.table(n)
        return _twist_states(self.d, self.P, n, self.d.table(n))

    def __repr__(self):
        return f"TwistedMap({self.d!r}, {self.P})"


def _label_walk(P: TwistPermutation) -> tuple[np.ndarray, np.ndarray]:
    """Labels ``lam[s] = sigma^s(0)`` for ``sigma(t) = P(t+1)``, s = 0..p^k, and the inverse."""
    size = P.size
    lam = [0]
    while len(lam) <= size:
        t = lam[-1]
        if t == size:
            break
        lam.append(P(t + 1))
    if len(lam) != size + 1 or lam[-1] != size:
        raise NotTransitiveError(f"{P} cannot turn a single residue cycle into a single cycle")
    lam_arr = np.asarray(lam, dtype=np.int64)
    lam_inv = np.empty_like(lam_arr)
    lam_inv[lam_arr] = np.arange(size + 1)
    return lam_arr, lam_inv


class UntwistedMap(CompatibleMap):
    """``T'_{P^-1} o g`` on Z_p, where ``T'`` is the twist of the dynamic ``D`` with ``g = T'_P o D``.

    ``D`` is never formed separately: the orbit of ``g`` through a zero-residue
    anchor visits ``D``'s orbit segment in the order fixed by ``P``, so the
    positions ``D`` needs are read off ``g``'s positions.  By the inverse law the
    result is ``D`` itself.
    """

    def __init__(self, g: CompatibleMap, P: TwistPermutation):
        if g.k != 1 or g.p != P.p:
            raise ValueError("UntwistedMap needs a map on Z_p with matching p")
        self.g, self.P = g, P
        self.p, self.k = g.p, 1
        self.max_precision = g.max_precision
        if P.is_identity():
            return
        residue_cycle(g, P.k)
        self._lam, self._lam_inv = _label_walk(P)
        self._q = np.asarray((0,) + P.inverse().images, dtype=np.int64)

    def __call__(self, state, n):
        if self.P.is_identity():
            return self.g(state, n)
        cyc = residue_cycle(self.g, self.P.k)
        _check_working_level(cyc, n)
        z = self.g(state, n)
        b, i = twist_anchor(self.g, z, self.P.k, n)
        label = int(self._lam[i])
        return power(self.g, b, int(self._lam_inv[self._q[label]]), n)

    def _build_table(self, n):
        if self.P.is_identity():
            return self.g.table(n)
        g = self.g
        cyc = residue_cycle(g, self.P.k)
        _check_working_level(cyc, n)
        t = g.table(n)
        inv = _inverse_table(t, n, g.p, 1)
        size = self.P.size
        i = cyc.position[t % size]
        i = np.where(i == 0, size, i)
        b = _iterate(inv, t, i)
        steps = self._lam_inv[self._q[self._lam[i]]]
        return _iterate(t, b, steps)

    def __repr__(self):
        return f"UntwistedMap({self.g!r}, {self.P})"


def solve_twist(F: CompatibleMap, G1: CompatibleMap) -> TwistPermutation:
    """The permutation with ``H_k o T_P o F o H_k^-1 == G1`` mod ``p**k``.

    ``F`` must cycle through its residues mod p in one cycle and ``G1`` must
    be transitive mod ``p**k``.  The result is checked against the defining
    congruence before it is returned.
    """
    k, p = F.k, F.p
    if G1.k != 1 or G1.p != p:
        raise ValueError("target must be a map on Z_p with the same p")
    cyc = residue_cycle(F, k)
    residue_cycle(G1, k)
    size = p**k
    images = []
    for i in range(1, size + 1):
        c = cyc.order[i - 1]  # H_k(c_{i-1}) as an integer mod p^k
        target = G1((c,), k)[0]
        images.append(int(cyc.position[target]) or size)
    P = TwistPermutation(p, k, tuple(images))
    lifted = Interleaved(TwistedMap(F, P))
    if not np.array_equal(lifted.table(k), G1.table(k)):
        raise AssertionError("solved twist fails its defining congruence")
    return P


def state_str(state, p: int, n: int) -> str:
    return str(PAdicVec.from_ints(state, p, n))


__all__ = [
    "NotBijectiveError",
    "NotTransitiveError",
    "OrbitCoords",
    "ResidueCycle",
    "TwistPermutation",
    "TwistedMap",
    "UntwistedMap",
    "invert",
    "orbit_coords",
    "power",
    "residue_cycle",
    "solve_twist",
    "twist_anchor",
    "twist_apply",
    "twist_table",
]
