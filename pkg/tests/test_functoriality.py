from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact import dynamics as dyn
from artifact.cube import FaceCode, face_of_vector, face_to_pair
from artifact.dynamics import Role, ValuationVector
from artifact.errors import DomainError, ParseError, SplittingMismatchError
from artifact.functoriality import ExtensionMap, GaloisElement, delta, galois_act, induce_pair, induce_set
from artifact.index import EmbSet, PrimeSplitting
from artifact.strata import enumerate_admissible, is_admissible
from artifact.suites import DEFAULT_EXTENSIONS
from strategies import rationals, splittings, vectors

EXTS = [ExtensionMap.parse(e) for e in DEFAULT_EXTENSIONS]


@st.composite
def source_vectors(draw, role=Role.X):
    ext = draw(st.sampled_from(EXTS))
    vals = draw(st.lists(rationals(), min_size=ext.source.g, max_size=ext.source.g))
    return ext, ValuationVector.of(ext.source, vals, role)


def test_parse_and_validate():
    ext = ExtensionMap.parse("p=3;f=1->p=3;f=2")
    assert ext.cover == (0,) and ext.restriction == (0, 0)
    ext = ExtensionMap.parse("p=2;f=1,1->p=2;f=2,1:cover=1,0")
    assert ExtensionMap.parse(ext.spec()) == ext
    assert ext.restrict_slot((0, 1)) == (1, 0)
    assert ext.covering_primes(1) == [0]
    for bad in (
        "p=2;f=2->p=2;f=3",  # 2 does not divide 3
        "p=2;f=1->p=3;f=2",  # different p
        "p=2;f=1,1->p=2;f=2",  # cover required
        "p=2;f=1,1->p=2;f=2:cover=0",  # prime 1 uncovered
        "nonsense",
    ):
        with pytest.raises(ParseError):
            ExtensionMap.parse(bad)
    with pytest.raises(DomainError):
        ExtensionMap(PrimeSplitting(2, (1,)), PrimeSplitting(2, (2,)), (3,))


def test_induce_examples():
    ext = ExtensionMap.parse("p=3;f=1->p=3;f=2")
    s, t = ext.source, ext.target
    assert induce_set(ext, EmbSet.empty(s)) == EmbSet.empty(t)
    assert induce_set(ext, EmbSet.full(s)) == EmbSet.full(t)
    with pytest.raises(SplittingMismatchError):
        induce_set(ext, EmbSet.full(t))


def test_delta_examples():
    ext = ExtensionMap.parse("p=3;f=1->p=3;f=2")
    assert delta(ext, ValuationVector.constant(ext.source, 0)) == ValuationVector.constant(ext.target, 0)
    x = ValuationVector.of(ext.source, [Fraction(2, 5)])
    assert delta(ext, x).entries == (Fraction(2, 5),) * 2
    assert dyn.in_U(x) and dyn.in_U(delta(ext, x))


@pytest.mark.parametrize("ext", EXTS, ids=DEFAULT_EXTENSIONS)
def test_induced_pairs_stay_admissible_and_commute_with_shift(ext):
    for p in enumerate_admissible(ext.source):
        q = induce_pair(ext, p)
        assert is_admissible(q.phi, q.eta)
        assert induce_set(ext, p.phi.left()) == q.phi.left()
        assert induce_set(ext, p.crit) == q.crit


@given(source_vectors())
def test_U_pulls_back_to_U(case):
    ext, x = case
    dx = delta(ext, x)
    assert dyn.in_U(x) == dyn.in_U(dx)
    y = x.with_role(Role.Y)
    dy = delta(ext, y)
    assert dyn.in_V(y) == dyn.in_V(dy)
    assert dyn.in_W(y) == dyn.in_W(dy)
    for j, i in enumerate(ext.cover):
        assert dyn.classify_at_prime(dy, j) is dyn.classify_at_prime(y, i)


@given(source_vectors(Role.Y))
def test_delta_commutes_with_dynamics(case):
    ext, y = case
    assert delta(ext, dyn.w_map(y)) == dyn.w_map(delta(ext, y))
    assert face_of_vector(delta(ext, y)) == FaceCode(
        ext.target, tuple(str(face_of_vector(y))[k] for k in ext.restriction)
    )
    assert face_to_pair(face_of_vector(delta(ext, y))) == induce_pair(ext, face_to_pair(face_of_vector(y)))
    x = y.with_role(Role.X)
    if dyn.in_U(x):
        assert delta(ext, dyn.section_dagger(x)) == dyn.section_dagger(delta(ext, x))
    if dyn.is_determined(y):
        assert delta(ext, dyn.pi_exact(y)) == dyn.pi_exact(delta(ext, y))


@pytest.mark.parametrize("ext", EXTS, ids=DEFAULT_EXTENSIONS)
def test_optimality_diagonal_is_transported(ext):
    c = dyn.optimality_threshold(ext.source.p)
    v = ValuationVector.constant(ext.source, c)
    assert delta(ext, v) == ValuationVector.constant(ext.target, c)
    assert not dyn.in_U(delta(ext, v))


def test_galois_examples():
    s = PrimeSplitting(2, (2,))
    b0, b1 = EmbSet.of(s, [(0, 0)]), EmbSet.of(s, [(0, 1)])
    assert galois_act(GaloisElement(0), b0) == b0
    assert galois_act(GaloisElement(1), b0) == b1
    x = ValuationVector.of(s, [Fraction(1, 3), Fraction(1, 2)])
    gx = galois_act(GaloisElement(1), x)
    assert gx.entries == (Fraction(1, 2), Fraction(1, 3))
    assert dyn.in_U(x) and dyn.in_U(gx)
    with pytest.raises(TypeError):
        galois_act(GaloisElement(1), 3)


@given(st.data())
def test_galois_is_a_group_action_compatible_with_everything(data):
    y = data.draw(vectors(Role.Y))
    s = y.splitting
    a, b = GaloisElement(data.draw(st.integers(-6, 6))), GaloisElement(data.draw(st.integers(-6, 6)))
    ga = lambda v: galois_act(a, v)  # noqa: E731
    assert galois_act(a, galois_act(b, y)) == galois_act(a * b, y)
    assert galois_act(a.inverse(), ga(y)) == y
    assert ga(dyn.w_map(y)) == dyn.w_map(ga(y))
    assert dyn.classify(ga(y)) == dyn.classify(y)
    assert face_of_vector(ga(y)) == ga(face_of_vector(y))
    assert face_to_pair(ga(face_of_vector(y))) == ga(face_to_pair(face_of_vector(y)))
    assert dyn.lambdas(ga(y)) == tuple(dyn.lambdas(y)[s.sigma_index(k, -a.k)] for k in range(s.g))
    if dyn.is_determined(y):
        assert dyn.pi_exact(ga(y)) == ga(dyn.pi_exact(y))
    x = y.with_role(Role.X)
    assert dyn.in_U(ga(x)) == dyn.in_U(x)
    if dyn.in_U(x):
        assert dyn.section_dagger(ga(x)) == ga(dyn.section_dagger(x))


@given(splittings(max_g=6))
def test_galois_permutes_admissible_pairs(s):
    g = GaloisElement(1)
    pairs = enumerate_admissible(s)
    assert {galois_act(g, p) for p in pairs} == set(pairs)
