import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcmk import ArityError, Bicomplex, MixedPolynomial, classify, eval_poly, idempotent_rep, parse, sym_partial
from bcmk.poly import KINDS, eval_components

from conftest import rand_exact, rand_poly


@pytest.mark.parametrize(
    "text, kind",
    [
        ("Z1^2", "holomorphic"),
        ("Z1*Z2 + Z3^3", "holomorphic"),
        ("bar(Z1)", "bar"),
        ("Z1*hat(Z1)", "hat"),
        ("Z1*tilde(Z1)", "tilde"),
        ("Z1*tilde(Z1) + bar(Z2)", "general"),
        ("7", "holomorphic"),
    ],
)
def test_classify(text, kind):
    assert classify(parse(text)) == kind


def test_normalisation_merges_and_drops():
    Z = MixedPolynomial.variable(0, 1)
    assert Z + Z - Z * 2 == MixedPolynomial(1, [])
    assert not (Z - Z)
    assert (Z + 1) ** 2 == Z * Z + Z * 2 + 1
    assert len(MixedPolynomial(1, [((1, 0, 0, 0), 1), ((1, 0, 0, 0), 2)])) == 1


def test_term_order_is_canonical():
    a = parse("Z1 + Z2^2 + bar(Z1)")
    b = parse("bar(Z1) + Z2^2 + Z1")
    assert a == b and a.terms == b.terms and hash(a) == hash(b)


def test_degree_and_used_variables():
    F = parse("Z1^2*bar(Z3) + 4")
    assert F.degree == 3
    assert F.used_variables() == [0, 2]


@given(st.integers(0, 10_000))
def test_ring_laws_on_polynomials(seed):
    rng = random.Random(seed)
    P, Q, R = (rand_poly(rng, 2, 3, 3) for _ in range(3))
    assert P * Q == Q * P
    assert (P * Q) * R == P * (Q * R)
    assert P * (Q + R) == P * Q + P * R


@given(st.integers(0, 10_000))
def test_evaluation_is_a_ring_map(seed):
    rng = random.Random(seed)
    P, Q = rand_poly(rng, 2, 3, 3), rand_poly(rng, 2, 3, 3)
    Zs = [rand_exact(rng), rand_exact(rng)]
    assert eval_poly(P * Q, Zs) == eval_poly(P, Zs) * eval_poly(Q, Zs)
    assert eval_poly(P + Q, Zs) == eval_poly(P, Zs) + eval_poly(Q, Zs)


@given(st.integers(0, 10_000))
def test_idempotent_representation_matches(seed):
    rng = random.Random(seed)
    F = rand_poly(rng, 3, 4, 4)
    Zs = [rand_exact(rng) for _ in range(3)]
    pair = idempotent_rep(F)
    assert pair.recombine(Zs) == eval_poly(F, Zs)


def test_formal_partials_are_dual():
    n = 2
    for i in range(n):
        for kind in KINDS:
            X = MixedPolynomial.variable(i, n, kind)
            for other in KINDS:
                d = sym_partial(other, X, i)
                expect = MixedPolynomial.constant(1, n) if other == kind else MixedPolynomial(n, [])
                assert d == expect
            assert not sym_partial(kind, X, 1 - i)


def test_formal_partial_power_rule():
    F = parse("Z1^3*bar(Z1)^2")
    assert sym_partial("Z", F, 0) == parse("3*Z1^2*bar(Z1)^2")
    assert sym_partial("bar", F, 0) == parse("2*Z1^3*bar(Z1)")
    assert not sym_partial("hat", F, 0)


def test_eval_components_uses_given_conjugates():
    F = parse("Z1*bar(Z1)")
    z = Bicomplex(1, 2, 3, 4)
    assert eval_components(F, [z], [0], [0], [2]) == z * 2
    assert F(z) == z * z.bar()


def test_arity_errors():
    F = parse("Z1 + Z2")
    with pytest.raises(ArityError):
        eval_poly(F, [Bicomplex(1)])
    with pytest.raises(ArityError):
        sym_partial("Z", F, 5)


@given(st.integers(0, 10_000))
def test_json_round_trip(seed):
    rng = random.Random(seed)
    F = rand_poly(rng, 3, 4, 5)
    assert MixedPolynomial.from_json(F.to_json()) == F


def test_with_arity_shifts_variables():
    F = parse("Z1^2")
    G = F.with_arity(3, 2)
    assert G == parse("Z3^2", 3)
