"""Moving dynamics between Z_p^k and Z_p.

``lift(F, P) = H_k o T_P o F o H_k^-1`` and
``push(G, P) = H_k^-1 o T'_{P^-1} o G o H_k``, where ``T'`` is the twist of
the dynamic ``H_k o F o H_k^-1`` (recovered from ``G`` and ``P``, see
:class:`padyn.twist.UntwistedMap`).  At finite precision ``G mod p^(kn)`` is
exactly the composite evaluated at ``F mod p^n``; no limit object is built.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .analysis import LADDER_BUDGET, Certificate, ergodicity_ladder, is_transitive_mod
from .maps import CompatibleMap, Deinterleaved, Interleaved
from .twist import NotTransitiveError, TwistedMap, TwistPermutation, UntwistedMap, solve_twist


class PreconditionError(ValueError):
    def __init__(self, message: str, certificate: Certificate | None = None):
        super().__init__(message)
        self.certificate = certificate


def _check_twist(P: TwistPermutation, p: int, k: int) -> None:
    if (P.p, P.k) != (p, k):
        raise ValueError(f"twist permutation is for p={P.p}, k={P.k}; expected p={p}, k={k}")


def lift(F: CompatibleMap, P: TwistPermutation) -> CompatibleMap:
    _check_twist(P, F.p, F.k)
    return Interleaved(TwistedMap(F, P))


def push(G: CompatibleMap, P: TwistPermutation) -> CompatibleMap:
    if G.k != 1:
        raise ValueError("push takes a map on Z_p")
    _check_twist(P, G.p, P.k)
    return Deinterleaved(UntwistedMap(G, P), P.k)


def theorem_ladder(p: int, k: int) -> int:
    n = 1
    while p ** (k * (n + 1)) <= LADDER_BUDGET:
        n += 1
    return n


@dataclass
class TheoremReport:
    p: int
    k: int
    max_level: int
    twist: TwistPermutation
    target_match: bool  # lift == target mod p^k
    ladder: list[tuple[int, bool, bool]] = field(default_factory=list)  # (n, F transitive mod p^n, G transitive mod p^kn)
    round_trip: bool = False  # push(lift(F)) == F mod p^N

    @property
    def transfer_holds(self) -> bool:
        return all(a == b for _, a, b in self.ladder)

    @property
    def passed(self) -> bool:
        return self.target_match and self.transfer_holds and self.round_trip

    def render(self) -> str:
        lines = [
            "property: theorem",
            f"p: {self.p}",
            f"k: {self.k}",
            f"levels: 1..{self.max_level}",
            f"verdict: {'pass' if self.passed else 'fail'}",
            f"twist: {self.twist}",
            f"check target-congruence: {'pass' if self.target_match else 'fail'}",
            f"check ergodicity-transfer: {'pass' if self.transfer_holds else 'fail'}",
        ]
        for n, a, b in self.ladder:
            mark = "agree" if a == b else "DISAGREE"
            lines.append(
                f"  n={n}: F mod {self.p}^{n} {'transitive' if a else 'not transitive'}, "
                f"G mod {self.p}^{self.k * n} {'transitive' if b else 'not transitive'} [{mark}]"
            )
        lines.append(f"check round-trip: {'pass' if self.round_trip else 'fail'}")
        return "\n".join(lines)


def verify_theorem(F: CompatibleMap, G1: CompatibleMap, N: int | None = None) -> TheoremReport:
    """Solve for the twist, lift ``F``, and check the three finite-precision claims.

    (a) the lift agrees with ``G1`` mod ``p^k``; (b) for every n <= N, ``F`` is
    transitive mod ``p^n`` iff the lift is transitive mod ``p^(kn)``; (c) pushing
    the lift back reproduces ``F`` mod ``p^N``.
    """
    p, k = F.p, F.k
    if G1.p != p or G1.k != 1:
        raise ValueError("target must be a map on Z_p with the same p")
    N = theorem_ladder(p, k) if N is None else N
    if not is_transitive_mod(F, 1).passed:
        raise PreconditionError(f"F is not transitive mod {p}", ergodicity_ladder(F, 1))
    if not is_transitive_mod(G1, k).passed:
        raise PreconditionError(f"target is not transitive mod {p}^{k}", ergodicity_ladder(G1, k))
    try:
        P = solve_twist(F, G1)
    except NotTransitiveError as exc:
        raise PreconditionError(str(exc)) from exc
    G = lift(F, P)
    report = TheoremReport(p, k, N, P, bool(np.array_equal(G.table(k), G1.table(k))))
    for n in range(1, N + 1):
        report.ladder.append((n, is_transitive_mod(F, n).passed, is_transitive_mod(G, k * n).passed))
    report.round_trip = bool(np.array_equal(push(G, P).table(N), F.table(N)))
    return report
