import math

import pytest
from hypothesis import given, strategies as st

import reference as ref
from artifact.errors import ParseError, SplittingMismatchError
from artifact.index import (
    EmbSet,
    PrimeSplitting,
    block_size,
    extend_set,
    ideal_block,
    is_prime,
    parse_primes,
    parse_subset,
    restrict_set,
    shift,
)
from strategies import emb_sets, splittings


def test_parse_and_spec_round_trip():
    s = PrimeSplitting.parse(" p = 3 ; f = 2, 1 ")
    assert s.p == 3 and s.degrees == (2, 1)
    assert s.g == 3 and s.num_primes == 2
    assert s.offsets == (0, 2)
    assert s.slots == ((0, 0), (0, 1), (1, 0))
    assert PrimeSplitting.parse(s.spec()) == s


@pytest.mark.parametrize("text", ["p=4;f=1", "p=3;f=0", "p=3", "q=3;f=1", "p=3;f=1,,2", ""])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        PrimeSplitting.parse(text)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_shift_example():
    s = PrimeSplitting(3, (2, 1))
    assert shift(EmbSet.of(s, [(0, 0)]), 1) == EmbSet.of(s, [(0, 1)])
    # the singleton cycle is fixed by sigma
    assert shift(EmbSet.of(s, [(1, 0)]), 1) == EmbSet.of(s, [(1, 0)])
    # wrap-around inside a cycle
    assert EmbSet.of(s, [(0, 1)]).right() == EmbSet.of(s, [(0, 0)])
    assert EmbSet.of(s, [(0, 0)]).left() == EmbSet.of(s, [(0, 1)])


@given(st.data())
def test_shift_matches_reference(data):
    s = data.draw(splittings(max_g=14))
    x = data.draw(emb_sets(s))
    k = data.draw(st.integers(-20, 20))
    assert set(x.shift(k)) == ref.shift(s.degrees, set(x), k)


@given(st.data())
def test_shift_is_a_group_action(data):
    s = data.draw(splittings(max_g=10))
    x = data.draw(emb_sets(s))
    a, b = data.draw(st.integers(-9, 9)), data.draw(st.integers(-9, 9))
    assert x.shift(a).shift(b) == x.shift(a + b)
    assert x.left().right() == x
    assert len(x.shift(a)) == len(x)
    assert x.shift(a) | x.shift(b) == (x.shift(a - b) | x).shift(b)
    # full orbit returns home after lcm of cycle lengths
    assert x.shift(math.lcm(*s.degrees)) == x


@given(st.data())
def test_boolean_algebra(data):
    s = data.draw(splittings(max_g=10))
    a, b = data.draw(emb_sets(s)), data.draw(emb_sets(s))
    full = EmbSet.full(s)
    assert set(a | b) == set(a) | set(b)
    assert set(a & b) == set(a) & set(b)
    assert set(a - b) == set(a) - set(b)
    assert set(a ^ b) == set(a) ^ set(b)
    assert set(~a) == set(full) - set(a)
    assert (a <= b) == set(a).issubset(set(b))
    assert a.isdisjoint(b) == (not set(a) & set(b))
    assert EmbSet.from_flags(s, a.flags()) == a
    assert EmbSet.of(s, [tuple(x) for x in a.to_list()]) == a


def test_mixing_splittings_is_rejected():
    a = EmbSet.full(PrimeSplitting(2, (2,)))
    b = EmbSet.full(PrimeSplitting(2, (1, 1)))
    with pytest.raises(SplittingMismatchError):
        a | b


def test_blocks_and_restriction_round_trip():
    s = PrimeSplitting(5, (2, 1, 3))
    blk = ideal_block(s, [0, 2])
    assert set(blk) == {(0, 0), (0, 1), (2, 0), (2, 1), (2, 2)}
    assert block_size(s, [0, 2]) == 5
    x = EmbSet.of(s, [(0, 1), (2, 2), (1, 0)])
    r = restrict_set(x, [0, 2])
    assert r.splitting == PrimeSplitting(5, (2, 3))
    assert set(r) == {(0, 1), (1, 2)}
    assert extend_set(r, s, [0, 2]) == x & blk


@given(st.data())
def test_restriction_commutes_with_shift(data):
    s = data.draw(splittings(max_g=9))
    primes = data.draw(st.sets(st.integers(0, s.num_primes - 1), min_size=1))
    x = data.draw(emb_sets(s))
    k = data.draw(st.integers(-5, 5))
    assert restrict_set(x.shift(k), primes) == restrict_set(x, primes).shift(k)


def test_parse_subset_forms():
    s = PrimeSplitting(3, (2, 1))
    assert parse_subset(s, "0:0,0:1") == EmbSet.of(s, [(0, 0), (0, 1)])
    assert parse_subset(s, "(0,1);(1,0)") == EmbSet.of(s, [(0, 1), (1, 0)])
    assert parse_subset(s, "all") == EmbSet.full(s)
    assert parse_subset(s, "none") == EmbSet.empty(s)
    for bad in ("0:5", "x", "0:0,zz"):
        with pytest.raises(ParseError):
            parse_subset(s, bad)
    assert parse_primes(s, "1,0") == frozenset({0, 1})
    assert parse_primes(s, "all") == frozenset({0, 1})
