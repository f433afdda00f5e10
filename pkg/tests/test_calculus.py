import random

import numpy as np
import pytest

from bcmk import ArityError, Bicomplex, bc_jacobian, eval_poly, holomorphy_test, parse, partial, real_jacobian, singular_test
from bcmk.calculus import as_map, sym_operator, sym_real_jacobian
from bcmk.poly import KINDS

from conftest import rand_float, rand_poly


def _rel(a: Bicomplex, b: Bicomplex) -> float:
    diff = max(abs(float(x) - float(y)) for x, y in zip(a.components, b.components))
    return diff / max(1.0, max(abs(float(y)) for y in b.components))


def test_operators_are_dual_to_coordinates():
    z0 = Bicomplex(0.3, -0.7, 1.1, 0.4)
    for kind in KINDS:
        X = parse({"Z": "Z1", "tilde": "tilde(Z1)", "hat": "hat(Z1)", "bar": "bar(Z1)"}[kind])
        for other in KINDS:
            d = partial(other, X, 0, [z0])
            expect = Bicomplex(1) if other == kind else Bicomplex(0)
            assert _rel(d, expect) < 1e-9


def test_symbolic_matches_finite_differences():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 3)
        F = rand_poly(rng, n, 4, 4)
        Zs = [rand_float(rng) for _ in range(n)]
        for i in range(n):
            for kind in KINDS:
                assert _rel(partial(kind, F, i, Zs), sym_operator(kind, F, i, Zs).to_float()) < 1e-6


def test_real_jacobian_matches_symbolic():
    F = parse("Z1^2*bar(Z2) + hat(Z1)*Z2 + 3k")
    Zs = [Bicomplex(0.2, 0.5, -0.4, 1.0), Bicomplex(-1.0, 0.3, 0.2, 0.1)]
    np.testing.assert_allclose(real_jacobian(F, Zs), sym_real_jacobian(F, Zs), atol=1e-8)


def test_chain_rule_for_holomorphic_maps():
    rng = random.Random(12)
    F, G = parse("Z1^3 + 2*Z1"), parse("Z1^2 - j*Z1")
    comp = as_map(lambda Zs: [eval_poly(F, [eval_poly(G, Zs)])], 1)
    for _ in range(10):
        z = rand_float(rng)
        g = eval_poly(G, [z])
        lhs = partial("Z", comp, 0, [z])
        rhs = sym_operator("Z", F, 0, [g]) * sym_operator("Z", G, 0, [z])
        assert _rel(lhs, rhs.to_float()) < 1e-6


@pytest.mark.parametrize("text, expect", [
    ("Z1^2", True), ("Z1*Z2 + Z3^3", True),
    ("bar(Z1)", False), ("Z1*hat(Z1)", False), ("Z1*tilde(Z1)", False),
])
def test_holomorphy_classifier(text, expect):
    F = parse(text)
    rng = random.Random(13)
    samples = [[rand_float(rng) for _ in range(F.n)] for _ in range(5)]
    res = holomorphy_test(F, samples)
    assert res.holomorphic is expect
    if not expect:
        assert res.worst_kind in ("tilde", "hat", "bar")


def test_singular_points():
    F = parse("Z1^2 + Z2^2")
    assert singular_test(F, [Bicomplex(0), Bicomplex(0)])
    assert not singular_test(F, [Bicomplex(1.0, 0.2), Bicomplex(0.3, 0.1, 0.4)])
    Jb = bc_jacobian(F, [Bicomplex(1.0), Bicomplex(2.0)])
    assert Jb.shape == (1, 2)


def test_bad_arguments():
    F = parse("Z1 + Z2")
    with pytest.raises(ArityError):
        partial("Z", F, 3, [Bicomplex(1), Bicomplex(1)])
    with pytest.raises(ValueError):
        partial("wat", F, 0, [Bicomplex(1), Bicomplex(1)])
    with pytest.raises(ValueError):
        holomorphy_test(F, [])
