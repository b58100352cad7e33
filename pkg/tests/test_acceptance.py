"""Acceptance gate; run with ``pytest tests/test_acceptance.py -s`` to see the report lines."""

import random
import time
from contextlib import contextmanager

import numpy as np

from conftest import random_spec
from padyn.analysis import (
    check_compatibility,
    equidistribution_report,
    ergodicity_ladder,
    measure_preservation_ladder,
)
from padyn.dsl import format_spec, parse
from padyn.fixtures import get_fixture, interleaved_odometer, odometer, shift_pair, swap_increment
from padyn.interleave import decode, decode_array, deinterleave, encode, encode_array, interleave
from padyn.maps import Interleaved, TableMap
from padyn.padic import PAdicInt
from padyn.transfer import lift, push, verify_theorem
from padyn.twist import TwistedMap, TwistPermutation, solve_twist, twist_anchor, twist_table


@contextmanager
def criterion(number, title, limit=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        took = time.perf_counter() - start
        if ok and limit is not None and took >= limit:
            ok = False
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} in {took:.2f}s{budget}")
    assert limit is None or took < limit, f"took {took:.2f}s"


def test_criterion_1_interleaver_bijection():
    with criterion(1, "interleave round trip, p in {2,3}, k in {2,3}, kn <= 12", limit=5.0):
        for p in (2, 3):
            for k in (2, 3):
                for n in range(1, 12 // k + 1):
                    size = p ** (k * n)
                    idx = np.arange(size, dtype=np.int64)
                    cols = decode_array(idx, p, k, n)
                    assert np.array_equal(encode_array(cols, p, n), idx)
                    seen = np.zeros(size, dtype=bool)
                    seen[encode_array(cols, p, n)] = True
                    assert seen.all()
                    # digit-level objects exhaustively up to 4096 states, sampled above
                    for h in range(0, size, max(1, size // 4096)):
                        x = deinterleave(PAdicInt.from_int(h, p, k * n), k)
                        assert interleave(x).value == h
                        assert x.values == tuple(int(c[h]) for c in cols)


def test_criterion_2_flagship():
    with criterion(2, "verify_theorem, interleaved odometer -> x+1, N=5", limit=10.0):
        F = interleaved_odometer(2, 2)
        rep = verify_theorem(F, odometer(2), N=5)
        assert rep.twist.is_identity()
        assert rep.passed
        G = lift(F, rep.twist)
        for n in range(1, 6):
            m = 2 * n
            assert np.array_equal(G.table(m), (np.arange(2**m) + 1) % 2**m)
        assert np.array_equal(push(G, rep.twist).table(5), F.table(5))


def test_criterion_3_nontrivial_twist():
    with criterion(3, "x+3 target: solved twist equals the 24-candidate brute force, theorem at N=4"):
        F = interleaved_odometer(2, 2)
        G1 = parse("p=2 k=1; f0 = x0 + 3")
        brute = [
            P for P in TwistPermutation.all(2, 2)
            if np.array_equal(Interleaved(TwistedMap(F, P)).table(2), G1.table(2))
        ]
        assert len(brute) == 1
        P = solve_twist(F, G1)
        assert brute == [P]
        assert str(P) == "P: 3 4 1 2"
        assert verify_theorem(F, G1, N=4).passed


TRANSFER_PAIRS = [
    ("interleaved-odometer-2-2", "p=2 k=1; f0 = x0 + 1"),
    ("interleaved-odometer-2-2", "p=2 k=1; f0 = x0 + 3"),
    ("interleaved-square-or-five-2-2", "p=2 k=1; f0 = x0 + 1"),
    ("interleaved-square-or-five-2-2", "p=2 k=1; f0 = 5 * x0 + 3"),
    ("swap-increment", "p=2 k=1; f0 = x0 + 1"),
    ("swap-increment", "p=2 k=1; f0 = x0 + (x0 * x0 or 5)"),
]


def test_criterion_4_ergodicity_transfer():
    with criterion(4, "F transitive mod 2^n iff lift transitive mod 2^2n, n <= 5, with negative controls"):
        for name, target in TRANSFER_PAIRS:
            rep = verify_theorem(get_fixture(name), parse(target), N=5)
            assert rep.transfer_holds and rep.target_match and rep.round_trip, (name, target)
        # negative controls: both sides fail at the same rung
        for F, P, rung in (
            (shift_pair(), TwistPermutation.identity(2, 2), 1),
            (swap_increment(), solve_twist(swap_increment(), odometer(2)), 2),
        ):
            G = lift(F, P)
            src = ergodicity_ladder(F, 5, stop_on_failure=False)
            dst = [ergodicity_ladder(G, 2 * n, stop_on_failure=False).rungs[-1].passed for n in range(1, 6)]
            assert src.failed_at == rung
            assert [r.passed for r in src.rungs] == dst


def test_criterion_5_twist_algebra():
    with criterion(5, "inverse, composition, fiber and bijectivity laws, all 24x24 twists, n <= 4"):
        perms = list(TwistPermutation.all(2, 2))
        for name in ("interleaved-odometer-2-2", "interleaved-square-or-five-2-2", "swap-increment", "odometer"):
            d = get_fixture(name)
            for n in range(1 if d.k == 2 else 2, 5):
                tables = {P: twist_table(d, P, n) for P in perms}
                idx = np.arange(d.p ** (d.k * n))
                anchors = np.array([encode(twist_anchor(d, decode(y, 2, d.k, n), 2, n)[0], 2, n) for y in idx])
                dt = d.table(n)
                for P in perms:
                    T = tables[P]
                    assert np.array_equal(tables[P.inverse()][T], idx)
                    assert np.array_equal(anchors[T], anchors)
                    assert len(np.unique(T[dt])) == len(idx)
                    for Q in perms:
                        assert np.array_equal(tables[Q][T], tables[Q.compose(P)])


def test_criterion_6_ladders():
    with criterion(6, "odometer, doubling and x+2 ladders"):
        f = odometer(2)
        assert measure_preservation_ladder(f, 8).verdict == "pass-up-to-8"
        assert ergodicity_ladder(f, 8).verdict == "pass-up-to-8"
        dbl = parse("p=2 k=1; f0 = x0 + x0")
        assert measure_preservation_ladder(dbl, 8).verdict == "fail-at-1"
        plus2 = parse("p=2 k=1; f0 = x0 + 2")
        assert ergodicity_ladder(plus2, 8).verdict == "fail-at-1"
        assert measure_preservation_ladder(plus2, 8).verdict == "pass-up-to-8"


def test_criterion_7_compatibility_oracle():
    with criterion(7, "120 random specs compatible at n=4; hand-built table rejected at m=1"):
        rng = random.Random(2024)
        for _ in range(120):
            spec = random_spec(rng, 2, rng.choice([1, 2]), depth=rng.randint(1, 4))
            assert check_compatibility(spec, 4).passed, format_spec(spec)
        res = check_compatibility(TableMap(2, 1, 2, [1, 0, 2, 3]), 2)
        assert not res.passed and res.counterexample[1] == 1


TRANSITIVE_FIXTURES = (
    "odometer",
    "odometer-3",
    "plus-three",
    "square-or-five",
    "interleaved-odometer-2-2",
    "interleaved-odometer-2-3",
    "interleaved-odometer-3-2",
    "interleaved-square-or-five-2-2",
)


def test_criterion_8_equidistribution():
    with criterion(8, "one period visits each state once and each residue p^(k(n-m)) times, n <= 5"):
        for name in TRANSITIVE_FIXTURES:
            f = get_fixture(name)
            for n in range(1, 6):
                assert (equidistribution_report(f, n).counts == 1).all(), (name, n)
                for m in range(1, n + 1):
                    rep = equidistribution_report(f, n, m)
                    assert rep.counts.tolist() == [f.p ** (f.k * (n - m))] * f.p ** (f.k * m), (name, n, m)
