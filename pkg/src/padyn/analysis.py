"""Exhaustive certificates on residue rings.

Measure-preservation and ergodicity of a compatible map are equivalent to
bijectivity, respectively single-cycle transitivity, of every induced
function mod p^n.  The ladders here check n = 1..N only, so a passing
certificate is finite evidence, never a proof; verdicts read
``pass-up-to-N`` or ``fail-at-n``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .interleave import decode
from .maps import CompatibleMap
from .padic import check_state_space

LADDER_BUDGET = 1 << 20


def default_ladder(p: int, k: int) -> int:
    """6 for maps on Z_p, else the largest N with p^(kN) <= 2^20."""
    if k == 1:
        return 6
    n = 1
    while p ** (k * (n + 1)) <= LADDER_BUDGET:
        n += 1
    return n


@dataclass
class InducedPermutation:
    p: int
    k: int
    n: int
    image: np.ndarray
    _cycles: list | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.image)

    def collision(self) -> tuple[int, int, int] | None:
        """First pair of states ``(a, b, image)`` with ``a < b`` sharing an image, if any."""
        order = np.argsort(self.image, kind="stable")
        sorted_img = self.image[order]
        dup = np.nonzero(sorted_img[1:] == sorted_img[:-1])[0]
        if not len(dup):
            return None
        # smallest second element over all colliding pairs
        best = None
        for pos in dup:
            a, b = sorted(int(v) for v in (order[pos], order[pos + 1]))
            if best is None or b < best[1]:
                best = (a, b, int(sorted_img[pos]))
        return best

    def is_permutation(self) -> bool:
        return self.collision() is None

    def cycles(self) -> list[list[int]]:
        """Cycle decomposition by a visited-bitmap walk (permutations only)."""
        if self._cycles is None:
            if not self.is_permutation():
                raise ValueError("cycle decomposition needs a permutation")
            img = self.image.tolist()
            seen = bytearray(self.size)
            out = []
            for start in range(self.size):
                if seen[start]:
                    continue
                cyc = []
                x = start
                while not seen[x]:
                    seen[x] = 1
                    cyc.append(x)
                    x = img[x]
                out.append(cyc)
            self._cycles = out
        return self._cycles

    def cycle_lengths(self) -> list[int]:
        return sorted(len(c) for c in self.cycles())

    def is_single_cycle(self) -> bool:
        return self.is_permutation() and len(self.cycles()) == 1


def induced_permutation(f: CompatibleMap, n: int) -> InducedPermutation:
    return InducedPermutation(f.p, f.k, n, f.table(n))


@dataclass(frozen=True)
class Rung:
    n: int
    passed: bool
    detail: str = ""


@dataclass
class Certificate:
    property: str
    p: int
    k: int
    max_level: int
    rungs: list[Rung]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rungs)

    @property
    def failed_at(self) -> int | None:
        for r in self.rungs:
            if not r.passed:
                return r.n
        return None

    @property
    def verdict(self) -> str:
        at = self.failed_at
        return f"pass-up-to-{self.max_level}" if at is None else f"fail-at-{at}"

    def as_dict(self) -> dict[str, Any]:
        return {
            "property": self.property,
            "p": self.p,
            "k": self.k,
            "levels": f"1..{self.max_level}",
            "verdict": self.verdict,
            "rungs": [{"n": r.n, "result": "pass" if r.passed else "fail", "detail": r.detail} for r in self.rungs],
        }

    def render(self) -> str:
        lines = [
            f"property: {self.property}",
            f"p: {self.p}",
            f"k: {self.k}",
            f"levels: 1..{self.max_level}",
            f"verdict: {self.verdict}",
        ]
        for r in self.rungs:
            line = f"  n={r.n}: {'pass' if r.passed else 'fail'}"
            if r.detail:
                line += f"  ({r.detail})"
            lines.append(line)
        return "\n".join(lines)


def _fmt(idx: int, p: int, k: int, n: int) -> str:
    vals = decode(idx, p, k, n)
    return str(vals[0]) if k == 1 else "(" + ",".join(map(str, vals)) + ")"


def is_bijective_mod(f: CompatibleMap, n: int) -> Rung:
    perm = induced_permutation(f, n)
    hit = perm.collision()
    if hit is None:
        return Rung(n, True)
    a, b, img = hit
    p, k = f.p, f.k
    return Rung(n, False, f"{_fmt(a, p, k, n)} and {_fmt(b, p, k, n)} both map to {_fmt(img, p, k, n)}")


def is_transitive_mod(f: CompatibleMap, n: int) -> Rung:
    perm = induced_permutation(f, n)
    if not perm.is_permutation():
        return Rung(n, False, "not bijective")
    lengths = perm.cycle_lengths()
    if len(lengths) == 1:
        return Rung(n, True)
    counts = Counter(lengths)
    shape = " ".join(f"{length}x{c}" if c > 1 else str(length) for length, c in sorted(counts.items()))
    return Rung(n, False, f"{len(lengths)} cycles, lengths {shape}")


def _ladder(prop, check, f, N, stop_on_failure):
    rungs = []
    for n in range(1, N + 1):
        r = check(f, n)
        rungs.append(r)
        if not r.passed and stop_on_failure:
            break
    return Certificate(prop, f.p, f.k, N, rungs)


def measure_preservation_ladder(f: CompatibleMap, N: int | None = None, stop_on_failure: bool = True) -> Certificate:
    N = default_ladder(f.p, f.k) if N is None else N
    return _ladder("bijective", is_bijective_mod, f, N, stop_on_failure)


def ergodicity_ladder(f: CompatibleMap, N: int | None = None, stop_on_failure: bool = True) -> Certificate:
    N = default_ladder(f.p, f.k) if N is None else N
    return _ladder("transitive", is_transitive_mod, f, N, stop_on_failure)


@dataclass(frozen=True)
class CompatibilityResult:
    passed: bool
    n: int
    counterexample: tuple[int, int] | None = None  # (state index at level n, failing level m)
    detail: str = ""


def check_compatibility(f: CompatibleMap, n: int) -> CompatibilityResult:
    """Check ``f(x) mod p^m == f(x mod p^m)`` for every ``x`` mod ``p^n`` and every ``m < n``.

    Reduction of a state to level m is the canonical index mod ``p^(k*m)``.
    The first failure in order of (m, x) is reported.
    """
    p, k = f.p, f.k
    check_state_space(p, k * n)
    top = f.table(n)
    idx = np.arange(len(top), dtype=np.int64)
    for m in range(1, n):
        mod = p ** (k * m)
        lower = f.table(m)
        bad = np.nonzero(top % mod != lower[idx % mod])[0]
        if len(bad):
            x = int(bad[0])
            detail = (
                f"x={_fmt(x, p, k, n)}: f(x) mod {p}^{m} = {_fmt(int(top[x]) % mod, p, k, m)}"
                f" but f(x mod {p}^{m}) = {_fmt(int(lower[x % mod]), p, k, m)}"
            )
            return CompatibilityResult(False, n, (x, m), detail)
    return CompatibilityResult(True, n)


def compatibility_ladder(f: CompatibleMap, N: int | None = None) -> Certificate:
    N = default_ladder(f.p, f.k) if N is None else N
    res = check_compatibility(f, N)
    if res.passed:
        rungs = [Rung(n, True) for n in range(1, N + 1)]
    else:
        _, m = res.counterexample
        rungs = [Rung(n, True) for n in range(1, m)] + [Rung(m, False, res.detail)]
    return Certificate("compatible", f.p, f.k, N, rungs)


def orbit(f: CompatibleMap, n: int, start: int = 0, steps: int | None = None) -> np.ndarray:
    """Canonical indices ``start, f(start), ...`` (``steps`` entries, default one full state count)."""
    t = f.table(n).tolist()
    steps = len(t) if steps is None else steps
    out = np.empty(steps, dtype=np.int64)
    x = start
    for s in range(steps):
        out[s] = x
        x = t[x]
    return out


@dataclass
class EquidistributionReport:
    p: int
    k: int
    n: int
    m: int
    period: int
    counts: np.ndarray  # visits per residue index mod p^(k*m)
    transitive: bool

    @property
    def expected(self) -> int:
        return self.p ** (self.k * (self.n - self.m))

    @property
    def balanced(self) -> bool:
        return bool((self.counts == self.expected).all())


def equidistribution_report(f: CompatibleMap, n: int, m: int | None = None, start: int = 0) -> EquidistributionReport:
    """Visit counts of residues mod ``p^(k*m)`` along ``p^(k*n)`` steps from ``start``.

    A transitive map visits every state once per period, hence each residue
    mod ``p^(k*m)`` exactly ``p^(k*(n-m))`` times.
    """
    m = n if m is None else m
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    p, k = f.p, f.k
    walk = orbit(f, n, start)
    counts = np.bincount(walk % p ** (k * m), minlength=p ** (k * m))
    return EquidistributionReport(p, k, n, m, len(walk), counts, is_transitive_mod(f, n).passed)
