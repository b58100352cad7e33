"""Fixed-precision p-adic dynamics: interleaving, orbit twists and transitivity certificates."""

from .analysis import (
    Certificate,
    InducedPermutation,
    check_compatibility,
    equidistribution_report,
    ergodicity_ladder,
    induced_permutation,
    is_bijective_mod,
    is_transitive_mod,
    measure_preservation_ladder,
)
from .dsl import MapSpec, SpecError, parse
from .interleave import deinterleave, interleave
from .maps import CompatibleMap, Deinterleaved, Interleaved, TableMap
from .padic import PAdicInt, PAdicVec, StateSpaceError, add, distance, mul, reduce
from .transfer import PreconditionError, lift, push, verify_theorem
from .twist import (
    TwistedMap,
    TwistPermutation,
    invert,
    orbit_coords,
    solve_twist,
    twist_apply,
)

__all__ = [
    "Certificate",
    "CompatibleMap",
    "Deinterleaved",
    "InducedPermutation",
    "Interleaved",
    "MapSpec",
    "PAdicInt",
    "PAdicVec",
    "PreconditionError",
    "SpecError",
    "StateSpaceError",
    "TableMap",
    "TwistPermutation",
    "TwistedMap",
    "add",
    "check_compatibility",
    "deinterleave",
    "distance",
    "equidistribution_report",
    "ergodicity_ladder",
    "induced_permutation",
    "interleave",
    "invert",
    "is_bijective_mod",
    "is_transitive_mod",
    "lift",
    "measure_preservation_ladder",
    "mul",
    "orbit_coords",
    "parse",
    "push",
    "reduce",
    "solve_twist",
    "twist_apply",
    "verify_theorem",
]
