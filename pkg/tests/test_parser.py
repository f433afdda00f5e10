import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcmk import ArityError, Bicomplex, MixedPolynomial, ParseError, parse
from bcmk.parser import MAX_EXPONENT, format, parse_ast, tokenize

from conftest import rand_poly


def test_simple_sum():
    assert parse("Z1^2 + Z2^2") == MixedPolynomial.monomial([(2, 0, 0, 0), (0, 0, 0, 0)]) + MixedPolynomial.monomial(
        [(0, 0, 0, 0), (2, 0, 0, 0)]
    )


def test_coefficient_and_conjugate():
    F = parse("(1+2i+3j+4k)*Z1*bar(Z1)")
    [(exps, coeff)] = F.terms
    assert coeff == Bicomplex(1, 2, 3, 4)
    assert F.quads(exps) == [(1, 0, 0, 1)]


def test_nested_conjugations_compose():
    assert parse("tilde(hat(Z1))") == parse("bar(Z1)")
    assert parse("bar(bar(Z1))") == parse("Z1")


def test_literals():
    assert parse("1/2i").terms[0][1] == Bicomplex(0, 0.5)
    assert parse("0.25k").terms[0][1] == Bicomplex(0, 0, 0, 0.25)
    assert parse("1e-3").terms[0][1].components[0] * 1000 == 1
    assert parse("-j*Z1").terms[0][1] == Bicomplex(0, 0, -1)


def test_error_positions():
    with pytest.raises(ParseError) as info:
        parse("Z1^")
    assert (info.value.line, info.value.column) == (1, 4)
    with pytest.raises(ParseError) as info:
        parse("Z1 +\n  foo")
    assert (info.value.line, info.value.column) == (2, 3)
    with pytest.raises(ParseError):
        parse("bar(2)")
    with pytest.raises(ParseError):
        parse("Z0")
    with pytest.raises(ParseError):
        parse("1/0")
    with pytest.raises(ParseError):
        parse(f"Z1^{MAX_EXPONENT + 1}")
    with pytest.raises(ParseError):
        parse("Z1 Z2")


def test_declared_arity():
    assert parse("Z1", 3).n == 3
    with pytest.raises(ArityError):
        parse("Z4", 2)


def test_format_examples():
    assert format(MixedPolynomial(2, [])) == "0"
    assert format(parse("Z1^2*bar(Z2)")) == "Z1^2*bar(Z2)"


@given(st.integers(0, 100_000))
def test_round_trip(seed):
    rng = random.Random(seed)
    F = rand_poly(rng, rng.randint(1, 3), 4, rng.randint(0, 5))
    assert parse(format(F), F.n) == F


@given(st.binary(max_size=40))
def test_fuzz_never_crashes(data):
    text = data.decode("latin-1")
    try:
        parse(text)
    except (ParseError, ArityError, ValueError):
        pass


def test_ast_json():
    node = parse_ast("-(Z1 + 2)^2*hat(Z2)")
    js = node.to_json()
    assert js["type"] == "product" and js["factors"][0]["type"] == "neg"
    assert [t.kind for t in tokenize("Z1*hat(Z2)")][-1] == "end"
