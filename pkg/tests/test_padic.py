import itertools

import pytest
from hypothesis import given, strategies as st

from padyn.padic import (
    PAdicInt,
    PAdicVec,
    add,
    as_state,
    distance,
    mul,
    parse_int,
    parse_vec,
    reduce,
)


def P(v, p, n):
    return PAdicInt.from_int(v, p, n)


def test_add_examples():
    r = add(P(3, 2, 3), P(1, 2, 3))
    assert r.value == 4
    assert r.digits == (0, 0, 1)
    assert add(P(24, 5, 2), P(1, 5, 2)).value == 0
    for x in range(81):
        assert add(P(0, 3, 4), P(x, 3, 4)).value == x


def test_mul_examples():
    assert mul(P(3, 2, 4), P(5, 2, 4)).value == 15
    assert mul(P(3, 2, 3), P(5, 2, 3)).value == 7
    for x in range(49):
        assert mul(P(1, 7, 2), P(x, 7, 2)).value == x


def test_operand_mismatch():
    with pytest.raises(ValueError):
        add(P(1, 2, 3), P(1, 2, 4))
    with pytest.raises(ValueError):
        mul(P(1, 2, 3), P(1, 3, 3))


def test_reduce_examples():
    a = PAdicInt(2, 4, (1, 0, 1, 1))
    assert a.value == 13
    assert reduce(a, 2).digits == (1, 0)
    assert reduce(a, 4) == a
    assert reduce(P(26, 3, 3), 1).value == 2
    with pytest.raises(ValueError):
        reduce(a, 0)
    with pytest.raises(ValueError):
        reduce(a, 5)


def test_invalid_values():
    with pytest.raises(ValueError):
        PAdicInt(2, 2, (0, 2))
    with pytest.raises(ValueError):
        PAdicInt(4, 1, (0,))
    with pytest.raises(ValueError):
        PAdicInt(257, 1, (0,))
    with pytest.raises(ValueError):
        PAdicVec((P(1, 2, 2), P(1, 2, 3)))


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_ring_laws_exhaustive(p, n):
    M = p**n
    vals = [P(v, p, n) for v in range(M)]
    zero, one = P(0, p, n), P(1, p, n)
    for a, b in itertools.product(vals, repeat=2):
        assert (a + b).value == (a.value + b.value) % M
        assert (a * b).value == (a.value * b.value) % M
        assert a + b == b + a and a * b == b * a
    for a, b, c in itertools.product(vals, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in vals:
        assert a + zero == a and a * one == a
        assert a + (-a) == zero


@given(st.sampled_from([2, 3, 5, 7]), st.integers(2, 6), st.data())
def test_reduction_is_a_ring_morphism(p, n, data):
    a = P(data.draw(st.integers(0, p**n - 1)), p, n)
    b = P(data.draw(st.integers(0, p**n - 1)), p, n)
    m = data.draw(st.integers(1, n))
    assert reduce(a + b, m) == reduce(a, m) + reduce(b, m)
    assert reduce(a * b, m) == reduce(a, m) * reduce(b, m)


def test_distance_examples():
    x = PAdicVec.from_ints((0, 0), 2, 4)
    y = PAdicVec.from_ints((4, 8), 2, 4)
    assert distance(x, y) == 2
    assert distance(x, x) == 4
    assert distance(P(1, 3, 3), P(2, 3, 3)) == 0
    with pytest.raises(ValueError):
        distance(x, PAdicVec.from_ints((0,), 2, 4))


@pytest.mark.parametrize("p,k,n", [(2, 1, 3), (2, 2, 2), (3, 1, 2)])
def test_strong_triangle_inequality(p, k, n):
    vecs = [PAdicVec.from_ints(v, p, n) for v in itertools.product(range(p**n), repeat=k)]
    for x, y, z in itertools.product(vecs, repeat=3):
        assert distance(x, z) >= min(distance(x, y), distance(y, z))


def test_text_round_trip():
    a = P(13, 2, 4)
    assert str(a) == "2^4:1101"
    assert parse_int("2^4:1101") == a
    b = P(10 * 121 + 3, 11, 3)
    assert str(b) == "11^3:10.0.3"
    assert parse_int(str(b)) == b
    v = PAdicVec.from_ints((1, 3), 2, 2)
    assert str(v) == "2^2:01,2^2:11"
    assert parse_vec(str(v)) == v
    with pytest.raises(ValueError):
        parse_int("2^4:101")
    with pytest.raises(ValueError):
        parse_int("2^2:12")


def test_as_state():
    assert as_state(P(13, 2, 4), 2, 2) == (1,)
    assert as_state(-1, 2, 3) == (7,)
    with pytest.raises(ValueError):
        as_state(P(1, 2, 2), 2, 3)
