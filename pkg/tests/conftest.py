import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from bcmk import Bicomplex, MixedPolynomial

settings.register_profile("bcmk", max_examples=60, deadline=None)
settings.load_profile("bcmk")

small_rational = st.fractions(min_value=-8, max_value=8, max_denominator=6)
exact_bc = st.builds(Bicomplex, small_rational, small_rational, small_rational, small_rational)
small_float = st.floats(min_value=-5, max_value=5, allow_nan=False, allow_infinity=False)
float_bc = st.builds(Bicomplex, small_float, small_float, small_float, small_float)


def rand_exact(rng: random.Random, span: int = 9, den: int = 5) -> Bicomplex:
    return Bicomplex(*(Fraction(rng.randint(-span, span), rng.randint(1, den)) for _ in range(4)))


def rand_float(rng: random.Random, scale: float = 1.0) -> Bicomplex:
    return Bicomplex(*(rng.gauss(0.0, scale) for _ in range(4)))


def rand_poly(rng: random.Random, n: int, max_deg: int = 4, terms: int = 4, exact: bool = True) -> MixedPolynomial:
    """Random mixed polynomial in n variables, each monomial of total degree <= max_deg."""
    out = MixedPolynomial(n, [])
    for _ in range(terms):
        deg = rng.randint(0, max_deg)
        quads = [[0, 0, 0, 0] for _ in range(n)]
        for _ in range(deg):
            quads[rng.randrange(n)][rng.randrange(4)] += 1
        coeff = rand_exact(rng, 4, 3) if exact else rand_float(rng)
        out = out + MixedPolynomial.monomial(quads, coeff)
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance summary lines, filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>3}: {'PASS' if ok else 'FAIL'}  {detail}")
