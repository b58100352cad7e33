"""Fixed-precision p-adic integers and vectors.

A :class:`PAdicInt` is a residue mod ``p**precision`` stored as base-p digits,
least significant first.  A :class:`PAdicVec` is a k-tuple of them sharing
``p`` and ``precision``.  Precision belongs to the value: arithmetic between
values of different precision is an error, never an implicit truncation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_PRIME = 251
MAX_STATES = 1 << 24


class StateSpaceError(ValueError):
    """Raised when an exhaustive operation would exceed ``MAX_STATES``."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> None:
    if not is_prime(p) or p > MAX_PRIME:
        raise ValueError(f"p must be a prime <= {MAX_PRIME}, got {p}")


def check_state_space(p: int, digits: int) -> int:
    """Return ``p**digits`` or raise if it is too large to enumerate."""
    size = p**digits
    if size > MAX_STATES:
        raise StateSpaceError(
            f"state space {p}^{digits} = {size} exceeds the enumeration bound {MAX_STATES}"
        )
    return size


def to_digits(value: int, p: int, precision: int) -> tuple[int, ...]:
    value %= p**precision
    out = []
    for _ in range(precision):
        value, r = divmod(value, p)
        out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class PAdicInt:
    p: int
    precision: int
    digits: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        if len(self.digits) != self.precision:
            raise ValueError(f"expected {self.precision} digits, got {len(self.digits)}")
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError(f"digits must lie in 0..{self.p - 1}")

    @classmethod
    def from_int(cls, value: int, p: int, precision: int) -> PAdicInt:
        """Reduce ``value`` mod ``p**precision``; negative values wrap."""
        return cls(p, precision, to_digits(value, p, precision))

    @property
    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.p + d
        return v

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _check(self, other: PAdicInt) -> None:
        if not isinstance(other, PAdicInt):
            raise TypeError(f"expected PAdicInt, got {type(other).__name__}")
        if other.p != self.p or other.precision != self.precision:
            raise ValueError(
                f"operand mismatch: {self.p}^{self.precision} vs {other.p}^{other.precision}"
            )

    def __add__(self, other: PAdicInt) -> PAdicInt:
        return add(self, other)

    def __sub__(self, other: PAdicInt) -> PAdicInt:
        self._check(other)
        return PAdicInt.from_int(self.value - other.value, self.p, self.precision)

    def __neg__(self) -> PAdicInt:
        return PAdicInt.from_int(-self.value, self.p, self.precision)

    def __mul__(self, other: PAdicInt) -> PAdicInt:
        return mul(self, other)

    def reduce(self, m: int) -> PAdicInt:
        return reduce(self, m)

    def __str__(self) -> str:
        return format_int(self)


def add(a: PAdicInt, b: PAdicInt) -> PAdicInt:
    """Digitwise base-p addition with carry, truncated to the common precision."""
    a._check(b)
    out = []
    carry = 0
    for x, y in zip(a.digits, b.digits):
        carry, d = divmod(x + y + carry, a.p)
        out.append(d)
    return PAdicInt(a.p, a.precision, tuple(out))


def mul(a: PAdicInt, b: PAdicInt) -> PAdicInt:
    """Schoolbook product; only the partial products below ``p**precision`` are kept."""
    a._check(b)
    n, p = a.precision, a.p
    acc = [0] * n
    for i, x in enumerate(a.digits):
        if x == 0:
            continue
        for j in range(n - i):
            acc[i + j] += x * b.digits[j]
    out = []
    carry = 0
    for c in acc:
        carry, d = divmod(c + carry, p)
        out.append(d)
    return PAdicInt(p, n, tuple(out))


def reduce(a: PAdicInt, m: int) -> PAdicInt:
    """Reduction mod ``p**m``: keep the first ``m`` digits."""
    if not 1 <= m <= a.precision:
        raise ValueError(f"cannot reduce precision {a.precision} to {m}")
    return PAdicInt(a.p, m, a.digits[:m])


@dataclass(frozen=True)
class PAdicVec:
    components: tuple[PAdicInt, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a PAdicVec needs at least one component")
        head = comps[0]
        for c in comps[1:]:
            if c.p != head.p or c.precision != head.precision:
                raise ValueError("components must share p and precision")

    @classmethod
    def from_ints(cls, values: Iterable[int], p: int, precision: int) -> PAdicVec:
        return cls(tuple(PAdicInt.from_int(v, p, precision) for v in values))

    @property
    def p(self) -> int:
        return self.components[0].p

    @property
    def precision(self) -> int:
        return self.components[0].precision

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.components)

    def reduce(self, m: int) -> PAdicVec:
        return PAdicVec(tuple(reduce(c, m) for c in self.components))

    def __str__(self) -> str:
        return ",".join(format_int(c) for c in self.components)


def _first_difference(a: PAdicInt, b: PAdicInt) -> int:
    for i, (x, y) in enumerate(zip(a.digits, b.digits)):
        if x != y:
            return i
    return a.precision


def distance(x: PAdicVec | PAdicInt, y: PAdicVec | PAdicInt) -> int:
    """Valuation exponent ``v`` of ``x - y`` under the max-metric.

    ``|x - y|_p = p**-v``; ``v == precision`` means the operands agree at
    this precision.
    """
    if isinstance(x, PAdicInt):
        x = PAdicVec((x,))
    if isinstance(y, PAdicInt):
        y = PAdicVec((y,))
    if x.k != y.k or x.p != y.p or x.precision != y.precision:
        raise ValueError("distance needs operands of identical shape")
    return min(_first_difference(a, b) for a, b in zip(x.components, y.components))


# Text form: "<p>^<precision>:<digits, most significant first>".  For p <= 10
# digits are concatenated, otherwise separated by '.' (e.g. "11^3:10.0.3").
_INT_RE = re.compile(r"^\s*(\d+)\^(\d+):([0-9.]+)\s*$")


def format_int(a: PAdicInt) -> str:
    digits = reversed(a.digits)
    sep = "" if a.p <= 10 else "."
    return f"{a.p}^{a.precision}:" + sep.join(str(d) for d in digits)


def parse_int(text: str) -> PAdicInt:
    m = _INT_RE.match(text)
    if not m:
        raise ValueError(f"not a p-adic literal: {text!r} (expected e.g. 2^4:1101)")
    p, n, body = int(m.group(1)), int(m.group(2)), m.group(3)
    if p <= 10:
        if "." in body:
            raise ValueError(f"digit separators are only used for p > 10: {text!r}")
        msd_first = [int(c) for c in body]
    else:
        msd_first = [int(c) for c in body.split(".")]
    if len(msd_first) != n:
        raise ValueError(f"{text!r}: expected {n} digits, got {len(msd_first)}")
    return PAdicInt(p, n, tuple(reversed(msd_first)))


def parse_vec(text: str) -> PAdicVec:
    """Parse comma-separated p-adic literals, e.g. ``2^2:01,2^2:11``."""
    return PAdicVec(tuple(parse_int(part) for part in text.split(",")))


def as_state(x: PAdicVec | PAdicInt | Sequence[int] | int, p: int, n: int) -> tuple[int, ...]:
    """Coerce ``x`` to a tuple of residues mod ``p**n``.

    p-adic values must carry at least ``n`` digits and are reduced; bare
    integers are taken mod ``p**n``.
    """
    if isinstance(x, PAdicInt):
        x = PAdicVec((x,))
    if isinstance(x, PAdicVec):
        if x.p != p:
            raise ValueError(f"state has p={x.p}, expected {p}")
        if x.precision < n:
            raise ValueError(f"state has precision {x.precision} < {n}")
        return tuple(v % p**n for v in x.values)
    if isinstance(x, int):
        return (x % p**n,)
    return tuple(int(v) % p**n for v in x)
