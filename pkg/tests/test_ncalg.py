import random

import pytest
from hypothesis import given, settings, strategies as st

from qtwistor.ncalg import (
    Element,
    ReductionStats,
    adjoint_word,
    gauge_weight,
    is_mu_invariant,
    is_normal_word,
    monomial_word,
    mu_weight,
    normal_form,
    quotient_kill,
    random_strategy,
    reduce_word,
    rightmost,
    sphere_relations,
    verify_sphere_relations,
    weight_component,
    z,
    zs,
)
from qtwistor.parse import ParseError, parse, render
from qtwistor.scalar import ONE, Q, qpow

letters = st.sampled_from([1, 2, 3, 4, -1, -2, -3, -4])
words = st.lists(letters, max_size=7).map(tuple)


def E(text):
    return parse(text)


def test_reordering_unstarred():
    assert normal_form((2, 1)) == z(1) * z(2) * qpow(-1)
    assert z(2) * z(1) == E("q^-1 z1 z2")
    assert z(1) * z(2) == Element.monomial((0, 0, 0, 0, 1, 1, 0, 0))


def test_z4star_z4():
    assert normal_form((-4, 4)) == E("1 - q^6 z1' z1 - q^4 z2' z2 - q^2 z3' z3")


def test_z4_z4star():
    assert normal_form((4, -4)) == E("1 - q^4 z1' z1 - q^2 z2' z2 - z3' z3")


def test_z1_commutes_with_adjoint():
    assert normal_form((1, -1)) == normal_form((-1, 1))


def test_all_sphere_relations_vanish():
    result = verify_sphere_relations()
    assert len(result) == 6 + 12 + 4 + 1
    assert all(result.values())


def test_relations_vanish_under_generic_reduction():
    for _, rel in sphere_relations():
        assert reduce_word(rel).is_zero()


def test_adjoint_examples():
    assert z(1).adjoint() == Element.monomial((0, 0, 0, 1, 0, 0, 0, 0))
    R = E("z1 z1' + z2 z2'")
    assert R.adjoint() == R


def test_weights():
    assert mu_weight((0, 0, 0, 0, 1, 1, 0, 0)) == 0
    a = E("z1 z4' - z2 z3'")
    assert all(mu_weight(m) == 0 for m in a.terms)
    assert gauge_weight((0, 0, 0, 1, 1, 0, 0, 0)) == 0
    assert weight_component(z(1) + z(2), 1) == z(1)
    assert not is_mu_invariant(z(1))
    assert is_mu_invariant(E("b"))


def test_quotient_kill_examples():
    assert quotient_kill(E("a"), {1, 2}).is_zero()
    assert quotient_kill(z(3) * z(4), {1, 2}) == z(3) * z(4)
    assert quotient_kill(z(4) * zs(4), {1, 2}) == E("1 - z3' z3")


def test_quotient_kill_rejects_z4():
    with pytest.raises(ValueError):
        quotient_kill(z(4), {4})


def test_unit_and_scalars():
    one = Element.scalar(1)
    x = E("z3 z1' + q z4 z2")
    assert one * x == x * one == x
    assert (x - x).is_zero()


def test_reduction_depth_is_bounded():
    rng = random.Random(7)
    for _ in range(100):
        w = tuple(rng.choice([1, 2, 3, 4, -1, -2, -3, -4]) for _ in range(8))
        st_ = ReductionStats()
        reduce_word(w, random_strategy(rng), st_)
        assert st_.max_depth <= 2 * len(w) ** 3


@settings(max_examples=150, deadline=None)
@given(words)
def test_normal_form_support_is_normal(w):
    for m, _ in normal_form(w):
        assert is_normal_word(monomial_word(m))
        assert m[0] * m[7] == 0


@settings(max_examples=150, deadline=None)
@given(words, st.integers(0, 2**32))
def test_confluence(w, seed):
    rng = random.Random(seed)
    a = reduce_word(w, random_strategy(rng))
    b = reduce_word(w, random_strategy(rng))
    assert a == b == normal_form(w)
    assert reduce_word(w, rightmost) == a


@settings(max_examples=150, deadline=None)
@given(words)
def test_adjoint_compatibility(w):
    assert normal_form(adjoint_word(w)) == normal_form(w).adjoint()


@settings(max_examples=80, deadline=None)
@given(words, words, words)
def test_associative(u, v, w):
    x, y, t = normal_form(u), normal_form(v), normal_form(w)
    assert (x * y) * t == x * (y * t)
    assert (x * y).adjoint() == y.adjoint() * x.adjoint()
    assert x * (y + t) == x * y + x * t


@settings(max_examples=80, deadline=None)
@given(words, words)
def test_weights_additive(u, v):
    x, y = normal_form(u), normal_form(v)
    if x.is_zero() or y.is_zero():
        return
    assert len(x.weights()) == 1 and len(y.weights()) == 1
    assert (x * y).weights() <= {next(iter(x.weights())) + next(iter(y.weights()))}


@settings(max_examples=80, deadline=None)
@given(words, words)
def test_quotient_kill_multiplicative(u, v):
    x, y = normal_form(u), normal_form(v)
    k = lambda e: quotient_kill(e, {1, 2})
    assert k(x * y) == k(k(x) * k(y))


def test_parse_examples():
    a = E("z1 z4' - z2 z3'")
    assert a == z(1) * zs(4) - z(2) * zs(3)
    single = E("q^-1 z2 z4")
    assert len(single) == 1 and single.coefficient((0, 0, 0, 0, 0, 1, 0, 1)) == qpow(-1)
    assert E("z1 - z1").is_zero()


def test_parse_macros_and_adjoint():
    assert E("(z1 z2)'") == zs(2) * zs(1)
    assert E("z4^2'") == zs(4) * zs(4)
    assert E("R") == E("z1 z1' + z2 z2'")
    assert E("(1 - q^2)^-1 z3") == z(3) * (ONE / (ONE - Q**2))


@pytest.mark.parametrize("bad, pos", [("z1 + ", 5), ("z5", 0), ("z1^-1", 4), ("(z1", 3), ("z1 ) z2", 3)])
def test_parse_errors(bad, pos):
    with pytest.raises(ParseError) as err:
        parse(bad)
    assert err.value.position == pos


def test_parse_exponent_overflow():
    with pytest.raises(ParseError):
        parse("z1^100000")


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(words, st.integers(-3, 3), st.integers(-2, 2)), max_size=4))
def test_render_parse_roundtrip(parts):
    x = Element()
    for w, e, c in parts:
        x = x + normal_form(w) * (qpow(e) * c + Q**2 / (1 - Q))
    assert parse(render(x)) == x
    assert render(parse(render(x))) == render(x)
