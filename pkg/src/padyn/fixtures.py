"""Named maps used by the tests, the acceptance run and the CLI (``fixture:NAME``)."""

from __future__ import annotations

from .dsl import MapSpec, parse
from .maps import CompatibleMap, Deinterleaved


def odometer(p: int = 2) -> MapSpec:
    return parse(f"p={p} k=1; f0 = x0 + 1")


def affine(p: int, c: int) -> MapSpec:
    """``x + c``; transitive exactly when ``c`` is a unit mod p."""
    return parse(f"p={p} k=1; f0 = x0 + {c}")


def interleaved_odometer(p: int = 2, k: int = 2) -> CompatibleMap:
    """``H_k^-1 o (x+1) o H_k``: +1 carried through the interleaved digits."""
    return Deinterleaved(odometer(p), k)


# The same map for p=2, k=2 written in the grammar: the carry into x0 is the
# run of low ones of (x0 and x1), and x1 sees that carry only where x0 is 1.
INTERLEAVED_ODOMETER_2_2 = (
    "p=2 k=2;\n"
    "f0 = x0 xor ((x0 and x1) xor ((x0 and x1) + 1));\n"
    "f1 = x1 xor (((x0 and x1) xor ((x0 and x1) + 1)) and x0)"
)


def doubling() -> MapSpec:
    """``x + x`` on Z_2: not measure-preserving."""
    return parse("p=2 k=1; f0 = x0 + x0")


def plus_two() -> MapSpec:
    """``x + 2`` on Z_2: bijective, not transitive mod 2."""
    return affine(2, 2)


def square_or_five() -> MapSpec:
    """``x + (x*x or 5)`` on Z_2, a nonlinear single-cycle T-function."""
    return parse("p=2 k=1; f0 = x0 + (x0 * x0 or 5)")


def interleaved_square_or_five(k: int = 2) -> CompatibleMap:
    return Deinterleaved(square_or_five(), k)


def swap_increment() -> MapSpec:
    """``(x0, x1) -> (x1, x0 + 1)``: one cycle mod 2, short cycles from mod 4 on."""
    return parse("p=2 k=2; f0 = x1; f1 = x0 + 1")


def shift_pair() -> MapSpec:
    """``x + 2`` in each coordinate of Z_2^2: fails transitivity at the first level."""
    return parse("p=2 k=2; f0 = x0 + 2; f1 = x1 + 2")


FIXTURES = {
    "odometer": lambda: odometer(2),
    "odometer-3": lambda: odometer(3),
    "plus-three": lambda: affine(2, 3),
    "doubling": doubling,
    "plus-two": plus_two,
    "interleaved-odometer-2-2": lambda: interleaved_odometer(2, 2),
    "interleaved-odometer-2-3": lambda: interleaved_odometer(2, 3),
    "interleaved-odometer-3-2": lambda: interleaved_odometer(3, 2),
    "interleaved-odometer-2-2-formula": lambda: parse(INTERLEAVED_ODOMETER_2_2),
    "square-or-five": square_or_five,
    "interleaved-square-or-five-2-2": lambda: interleaved_square_or_five(2),
    "swap-increment": swap_increment,
    "shift-pair": shift_pair,
}


def get_fixture(name: str) -> CompatibleMap:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}") from None
