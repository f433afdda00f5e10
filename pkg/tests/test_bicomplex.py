import cmath
import json
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bcmk import (
    E,
    E_DAG,
    ONE,
    ZERO,
    Bicomplex,
    BicomplexDomainError,
    NotInvertibleError,
    arg_complex,
    conj,
    exp_j,
    hyperbolic_polar,
    is_zero_divisor,
    norm_complex,
    norm_complex_sq,
    norm_hyperbolic,
    polar_form,
    proj_i,
    proj_k,
    to_idempotent,
    from_idempotent,
    try_inverse,
)
from bcmk.bicomplex import I, J, K, compose_conjugations, complex_sqrt_h, format_literal, parse_literal

from conftest import exact_bc, float_bc

CONJ = ("tilde", "hat", "bar")


def test_unit_table():
    assert I * I == -ONE
    assert J * J == -ONE
    assert K * K == ONE
    assert I * J == K and J * I == K
    assert I * K == -J and K * J == -I


def test_idempotent_table():
    assert E * E == E
    assert E_DAG * E_DAG == E_DAG
    assert E * E_DAG == ZERO
    assert E + E_DAG == ONE
    assert E - E_DAG == I * J


@given(exact_bc, exact_bc, exact_bc)
def test_ring_axioms_exact(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a


@given(exact_bc)
def test_idempotent_round_trip(a):
    pair = to_idempotent(a)
    assert from_idempotent(pair) == a
    assert Bicomplex.from_idempotent(a.z1, a.z2) == a
    assert Bicomplex.from_lambdas(a.lambda1, a.lambda2) == a


@given(exact_bc, exact_bc)
def test_idempotent_is_componentwise(a, b):
    p = a * b
    assert p.z1 == a.z1 * b.z1 and p.z2 == a.z2 * b.z2


def test_conjugation_formulas():
    z = Bicomplex(1, 2, 3, 4)
    assert z.tilde() == Bicomplex(1, -2, -3, 4)
    assert z.hat() == Bicomplex(1, 2, -3, -4)
    assert z.bar() == Bicomplex(1, -2, 3, -4)
    assert conj("bar", z) == z.bar()


@given(exact_bc, st.sampled_from(CONJ), st.sampled_from(CONJ))
def test_conjugation_composition(a, f, g):
    once = conj(f, a)
    assert conj(f, once) == a
    both = conj(g, once)
    expect = compose_conjugations(f, g)
    assert both == (a if expect is None else conj(expect, a))
    if f != g:
        assert expect not in (f, g, None)


@given(exact_bc, exact_bc, st.sampled_from(CONJ))
def test_conjugations_are_ring_automorphisms(a, b, kind):
    assert conj(kind, a * b) == conj(kind, a) * conj(kind, b)
    assert conj(kind, a + b) == conj(kind, a) + conj(kind, b)


@given(exact_bc)
def test_complex_norm_square(a):
    assert norm_complex_sq(a) == a.z1 * a.z2
    assert a * a.hat() == Bicomplex.from_lambdas(a.lambda1**2 + a.lambda2**2, 0)


@given(float_bc, float_bc)
def test_hyperbolic_norm_laws(a, b):
    na, nb, nab = norm_hyperbolic(a), norm_hyperbolic(b), norm_hyperbolic(a * b)
    prod = na * nb
    assert math.isclose(nab.nu, prod.nu, rel_tol=1e-12, abs_tol=1e-12)
    assert math.isclose(nab.mu, prod.mu, rel_tol=1e-12, abs_tol=1e-12)
    s = norm_hyperbolic(a + b)
    bound = na + nb
    assert s.nu <= bound.nu * (1 + 1e-12) + 1e-12
    assert s.mu <= bound.mu * (1 + 1e-12) + 1e-12


def test_complex_sqrt_branch():
    assert complex_sqrt_h(4) == 2
    assert complex_sqrt_h(-4) == 2j
    r = complex_sqrt_h(3 - 4j)
    assert r.imag > 0 and abs(r * r - (3 - 4j)) < 1e-14
    assert norm_complex(Bicomplex(3, 0, 4, 0)) == 5


def _close(a, b, rel):
    scale = max(1.0, max(abs(float(c)) for c in b.components))
    return max(abs(float(x) - float(y)) for x, y in zip(a.components, b.components)) <= rel * scale


@given(float_bc)
def test_polar_reconstruction(a):
    assume(bool(a) and not is_zero_divisor(a, 1e-3))
    assert _close(polar_form(a).reconstruct(), a, 1e-10)
    assert _close(exp_j(arg_complex(a)) * norm_complex(a), a, 1e-10)
    assert _close(hyperbolic_polar(a).reconstruct(), a, 1e-10)


def test_projections_unit_norms():
    a = Bicomplex(1.0, -2.0, 0.5, 3.0)
    assert abs(complex(norm_complex_sq(proj_i(a))) - 1) < 1e-12
    hv = norm_hyperbolic(proj_k(a))
    assert math.isclose(hv.nu, 1) and math.isclose(hv.mu, 1)


def test_zero_divisors_and_inverse():
    assert is_zero_divisor(E) and is_zero_divisor(E_DAG.scale(3))
    assert not is_zero_divisor(ZERO) and not is_zero_divisor(ONE)
    inv = try_inverse(Bicomplex(Fraction(1), 0, 0, Fraction(1, 2)))
    assert inv * Bicomplex(1, 0, 0, Fraction(1, 2)) == ONE
    for bad in (ZERO, E, Bicomplex(1, 1, 1, -1)):
        with pytest.raises(NotInvertibleError):
            try_inverse(bad)
    with pytest.raises(BicomplexDomainError):
        arg_complex(E)
    with pytest.raises(BicomplexDomainError):
        hyperbolic_polar(E_DAG)


def test_exp_j_addition():
    a, b = 0.3 - 0.2j, -1.1 + 0.4j
    lhs, rhs = exp_j(a) * exp_j(b), exp_j(a + b)
    assert all(abs(x - y) < 1e-14 for x, y in zip(lhs.components, rhs.components))
    assert exp_j(0) == ONE


@given(exact_bc)
def test_literal_and_json_round_trip(a):
    assert parse_literal(format_literal(a)) == a
    assert Bicomplex.from_json(json.loads(json.dumps(a.to_json()))) == a


def test_literal_forms():
    assert parse_literal("1+2i-3/4j+0.5k") == Bicomplex(1, 2, Fraction(-3, 4), Fraction(1, 2))
    assert parse_literal("-k") == Bicomplex(0, 0, 0, -1)
    assert format_literal(Bicomplex(0, 0, 0, 0)) == "0"
    with pytest.raises(ValueError):
        parse_literal("1+2q")


def test_float_mode_is_not_exact():
    a = Bicomplex(0.5, 0, 0, 0)
    assert not a.is_exact and Bicomplex(Fraction(1, 2)).is_exact
    z = Bicomplex(1.0, 2.0, 3.0, 4.0)
    assert cmath.isclose(complex(z.z1), 5 - 1j)
