import pytest
from hypothesis import given, settings, strategies as st

import reference as ref
from artifact.errors import DomainError
from artifact.index import EmbSet, PrimeSplitting, extend_set, ideal_block, restrict_set
from artifact.strata import (
    AdmissiblePair,
    closure_pairs_at,
    component_count_at,
    critical_indices,
    enumerate_admissible,
    enumerate_t_admissible,
    horizontal_pair,
    is_admissible,
    is_horizontal,
    is_t_admissible,
    pair_geq,
    pi_open_image_types,
    pi_stratum_image,
    stratum_dim,
    type_window,
    w_stratum_image,
)
from strategies import splittings

INERT2 = PrimeSplitting(2, (2,))
B0 = EmbSet.of(INERT2, [(0, 0)])
B1 = EmbSet.of(INERT2, [(0, 1)])


def full(s):
    return EmbSet.full(s)


def empty(s):
    return EmbSet.empty(s)


def test_admissibility_trivial_cases():
    s = PrimeSplitting(3, (2, 1))
    assert is_admissible(full(s), empty(s))
    assert not is_admissible(empty(s), empty(s))
    assert is_admissible(empty(s), full(s))
    with pytest.raises(DomainError):
        AdmissiblePair(empty(s), empty(s))


def test_g1_enumeration_order():
    s = PrimeSplitting(5, (1,))
    b = full(s)
    assert enumerate_admissible(s) == [
        AdmissiblePair(empty(s), b),
        AdmissiblePair(b, empty(s)),
        AdmissiblePair(b, b),
    ]


@pytest.mark.parametrize("degrees,count", [((2,), 9), ((2, 1), 27), ((1, 1, 1, 1), 81)])
def test_small_counts(degrees, count):
    assert len(enumerate_admissible(PrimeSplitting(2, degrees))) == count


@pytest.mark.parametrize("degrees", [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1), (4,), (2, 2), (3, 1), (2, 1, 1), (5,), (3, 2)])
def test_enumeration_matches_brute_force(degrees):
    s = PrimeSplitting(3, degrees)
    got = enumerate_admissible(s)
    assert {(frozenset(p.phi), frozenset(p.eta)) for p in got} == ref.admissible_pairs(degrees)
    keys = [p.sort_key() for p in got]
    assert keys == sorted(keys)
    assert len(set(got)) == len(got)


def test_max_g_guard():
    with pytest.raises(DomainError):
        enumerate_admissible(PrimeSplitting(2, (5,)), max_g=4)


@given(st.data())
def test_decomposition_identities(data):
    s = data.draw(splittings(max_g=7))
    pairs = enumerate_admissible(s)
    p = data.draw(st.sampled_from(pairs))
    i = critical_indices(p)
    assert i == p.phi.left() & p.eta
    a, b = (~p.eta).right(), i.right()
    assert a.isdisjoint(b) and a | b == p.phi
    c = (~p.phi).left()
    assert c.isdisjoint(i) and c | i == p.eta
    assert stratum_dim(p) == 2 * s.g - len(p.phi) - len(p.eta) == s.g - len(i)


def test_critical_and_dim_examples():
    assert critical_indices(AdmissiblePair(full(INERT2), full(INERT2))) == full(INERT2)
    assert critical_indices(AdmissiblePair(full(INERT2), empty(INERT2))) == empty(INERT2)
    assert critical_indices(AdmissiblePair(B0, full(INERT2))) == B1
    assert stratum_dim(AdmissiblePair(full(INERT2), full(INERT2))) == 0
    assert stratum_dim(AdmissiblePair(full(INERT2), empty(INERT2))) == 2
    g1 = PrimeSplitting(2, (1,))
    assert stratum_dim(AdmissiblePair(full(g1), full(g1))) == 0


def test_partial_order_examples():
    top = AdmissiblePair(full(INERT2), full(INERT2))
    f = AdmissiblePair(full(INERT2), empty(INERT2))
    v = AdmissiblePair(empty(INERT2), full(INERT2))
    assert all(pair_geq(top, p) for p in enumerate_admissible(INERT2))
    assert not pair_geq(f, v) and not pair_geq(v, f)
    assert pair_geq(f, f)


def test_closure_examples():
    s = INERT2
    top = AdmissiblePair(full(s), full(s))
    assert set(closure_pairs_at(top)) == set(enumerate_admissible(s))
    f = AdmissiblePair(full(s), empty(s))
    assert closure_pairs_at(f) == [f]
    g1 = PrimeSplitting(3, (1,))
    assert set(closure_pairs_at(AdmissiblePair(full(g1), full(g1)))) == set(enumerate_admissible(g1))


def _jk_count(degrees, crit):
    return sum(
        1
        for j in ref.subsets(ref.slots(degrees))
        for k in ref.subsets(crit)
        if ref.left(degrees, j) <= crit and not (ref.left(degrees, j) & k)
    )


@pytest.mark.parametrize("degrees", [(1,), (2,), (2, 1), (3,), (1, 1, 1), (2, 2)])
def test_closure_count_and_shape(degrees):
    s = PrimeSplitting(2, degrees)
    for p in enumerate_admissible(s):
        cl = closure_pairs_at(p)
        assert p in cl
        assert len(cl) == _jk_count(degrees, frozenset(p.crit))
        assert all(pair_geq(p, q) for q in cl)
        assert all(q.phi >= p.phi - p.crit.right() and q.eta >= p.eta - p.crit for q in cl)


def test_components_examples():
    assert component_count_at(AdmissiblePair(full(INERT2), empty(INERT2))) == 1
    assert component_count_at(AdmissiblePair(full(INERT2), full(INERT2))) == 4
    g1 = PrimeSplitting(2, (1,))
    assert component_count_at(AdmissiblePair(full(g1), full(g1))) == 2


def test_image_and_w_examples():
    s = INERT2
    F, V_, T = AdmissiblePair(full(s), empty(s)), AdmissiblePair(empty(s), full(s)), AdmissiblePair(full(s), full(s))
    assert pi_stratum_image(F) == empty(s)
    assert pi_stratum_image(T) == full(s)
    assert pi_stratum_image(AdmissiblePair(B0, full(s))) == B0
    assert w_stratum_image(F) == V_
    assert w_stratum_image(V_) == F
    assert w_stratum_image(AdmissiblePair(B0, B0)) == AdmissiblePair(B1, B1)


def test_type_window_examples():
    s = INERT2
    assert type_window(AdmissiblePair(full(s), full(s))) == (full(s), full(s))
    assert type_window(AdmissiblePair(full(s), empty(s))) == (empty(s), empty(s))
    assert type_window(AdmissiblePair(B0, full(s))) == (B0, B0)
    assert pi_open_image_types(AdmissiblePair(full(s), empty(s))) == [empty(s)]
    assert pi_open_image_types(AdmissiblePair(full(s), full(s))) == [full(s)]
    assert pi_open_image_types(AdmissiblePair(full(s), B0)) == [B0]


@given(st.data())
def test_w_is_an_involution_and_twists_the_type(data):
    s = data.draw(splittings(max_g=7))
    p = data.draw(st.sampled_from(enumerate_admissible(s)))
    w = w_stratum_image(p)
    assert w_stratum_image(w) == p
    assert pi_stratum_image(w) == p.eta.right() & p.phi.left()
    assert stratum_dim(w) == stratum_dim(p)
    lo, hi = type_window(p)
    assert lo <= hi


@settings(max_examples=40)
@given(splittings(max_g=8))
def test_horizontal_strata(s):
    pairs = enumerate_admissible(s)
    horiz = [p for p in pairs if is_horizontal(p) is not None]
    assert len(horiz) == 2 ** s.num_primes
    for p in horiz:
        t = is_horizontal(p)
        assert p == horizontal_pair(s, t)
        assert p.phi == ideal_block(s, t) and p.eta == ~ideal_block(s, t)
        assert not p.crit and stratum_dim(p) == s.g
        assert type_window(p) == (empty(s), empty(s))
    # the converse fails once g exceeds the number of primes
    top_dim = [p for p in pairs if stratum_dim(p) == s.g and not p.crit]
    assert len(top_dim) == 2**s.g


def test_horizontal_examples():
    s = PrimeSplitting(3, (2, 1))
    assert is_horizontal(AdmissiblePair(full(s), empty(s))) == frozenset({0, 1})
    assert is_horizontal(AdmissiblePair(empty(s), full(s))) == frozenset()
    assert is_horizontal(AdmissiblePair(full(s), full(s))) is None


def test_t_admissible_examples():
    s = PrimeSplitting(2, (2, 1))
    assert [(p.phi, p.eta) for p in enumerate_t_admissible(s, [])] == [(empty(s), empty(s))]
    assert len(enumerate_t_admissible(s, [0])) == 9
    whole = enumerate_t_admissible(s, [0, 1])
    assert [(p.phi, p.eta) for p in whole] == [(p.phi, p.eta) for p in enumerate_admissible(s)]


@given(st.data())
def test_t_admissible_matches_filter(data):
    s = data.draw(splittings(max_g=5))
    t = data.draw(st.sets(st.integers(0, s.num_primes - 1)))
    got = enumerate_t_admissible(s, t)
    f = sum(s.degrees[i] for i in t)
    assert len(got) == 3**f
    blk = ideal_block(s, t)
    brute = {
        (phi, eta)
        for phi in (EmbSet(s, b) for b in range(s.full_mask + 1))
        if phi <= blk
        for eta in (EmbSet(s, b) for b in range(s.full_mask + 1))
        if eta <= blk and is_t_admissible(t, phi, eta)
    }
    assert {(p.phi, p.eta) for p in got} == brute
    if t:
        sub = s.restrict(t)
        for p in got:
            assert is_admissible(restrict_set(p.phi, t), restrict_set(p.eta, t))
            assert extend_set(restrict_set(p.phi, t), s, t) == p.phi
            assert restrict_set(p.phi, t).splitting == sub
