import math

import numpy as np
import pytest

from bcmk import E, E_DAG, ONE, ZERO, Bicomplex, PreconditionError, norm_euclid, parse
from bcmk.bicomplex import J, exp_j
from bcmk.topology import (
    FibrationContext,
    bouquet_count,
    check_unfolding,
    cnd_violations,
    cyclic_invariants,
    discriminant_ray_check,
    export_csv,
    global_trivialize,
    global_trivialize_inverse,
    in_VF,
    link_membership,
    monomial_fiber_points,
    phi_i,
    phi_s3,
    points_to_bicomplex,
    printed_unfolding_exponents,
    radial_transversality,
    regular_value_sample,
    sample_sphere,
    sphere_trivialize,
    transversality_sample,
    tube_membership,
    unfold,
    vector_norm,
)

QUADRIC = "Z1^2+Z2^2"
MIXED = "Z1^3*tilde(Z1)*hat(Z1)*bar(Z1) + Z2^2*hat(Z2)"


def _close(a, b, tol=1e-12):
    return norm_euclid(Bicomplex.coerce(a) - Bicomplex.coerce(b)) <= tol


def test_memberships():
    assert in_VF(FibrationContext(parse(QUADRIC)), [ONE, J])
    Fz = parse("Z1")
    assert link_membership(FibrationContext(Fz, epsilon=norm_euclid(E)), [E])
    assert not in_VF(FibrationContext(Fz), [ONE])
    ctx = FibrationContext(Fz)
    assert tube_membership(ctx, [Bicomplex(0.25)])
    assert tube_membership(ctx, [ONE], "quadric-target")
    assert not tube_membership(ctx, [E])


def test_milnor_maps():
    ctx = FibrationContext(parse("Z1"))
    assert _close(phi_i(ctx, [J.scale(2)]), J)
    assert _close(phi_s3(ctx, [Bicomplex(3)]), ONE)
    p = phi_i(ctx, [E + E_DAG.scale(2)])
    assert abs(complex(p.z1 * p.z2) - 1) < 1e-12
    with pytest.raises(Exception):
        phi_i(ctx, [E])


def test_trivialization_examples():
    c2 = FibrationContext(parse("Z1^2"))
    assert _close(global_trivialize(c2, 4, [ONE])[0], 2)
    assert _close(global_trivialize(c2, 1, [-ONE])[0], -ONE)
    with pytest.raises(PreconditionError):
        global_trivialize(c2, 4, [Bicomplex(0.5)])
    cz = FibrationContext(parse("Z1"))
    assert _close(sphere_trivialize(cz, math.pi / 2, [ONE])[0], J)
    z0 = Bicomplex(0.6, 0, 0, 0.8)
    assert _close(sphere_trivialize(cz, 0, [z0])[0], z0)


@pytest.mark.parametrize("text", [QUADRIC, MIXED, "Z1^3 + Z2^2"])
def test_trivialization_round_trip(text):
    ctx = FibrationContext(parse(text))
    rng = np.random.default_rng(5)
    for Zs in points_to_bicomplex(sample_sphere(ctx, 25, rng)):
        Z0, U = global_trivialize_inverse(ctx, Zs)
        assert _close(ctx.value(Z0), ONE, 1e-10)
        back = global_trivialize(ctx, U, Z0)
        assert vector_norm([a - b for a, b in zip(back, Zs)]) < 1e-9
        z = complex(rng.uniform(-1, 1))
        S = sphere_trivialize(ctx, z, Zs)
        assert abs(vector_norm(S) - ctx.epsilon) < 1e-12
        assert _close(phi_i(ctx, S), exp_j(z) * phi_i(ctx, Zs), 1e-9)


def test_regularity_and_discriminant():
    ctx = FibrationContext(parse(QUADRIC))
    rep = regular_value_sample(ctx, 50)
    assert rep.passed and rep.worst_margin > 1e-6
    assert regular_value_sample(FibrationContext(parse("Z1")), 10).passed
    assert discriminant_ray_check(ctx, [E, E])
    assert discriminant_ray_check(ctx, [ZERO, ZERO])
    with pytest.raises(PreconditionError):
        discriminant_ray_check(ctx, [ONE, ONE])


def test_radial_transversality():
    ctx = FibrationContext(parse(MIXED))
    assert radial_transversality(ctx, [ONE, ZERO])
    with pytest.raises(PreconditionError):
        radial_transversality(ctx, [ZERO, ZERO])
    assert transversality_sample(ctx, 200).passed


def test_sample_sphere_avoids_zero_divisor_values():
    ctx = FibrationContext(parse(QUADRIC), epsilon=2.0)
    X = sample_sphere(ctx, 64)
    assert X.shape == (64, 2, 4)
    np.testing.assert_allclose(np.sqrt((X**2).sum(axis=(1, 2))), 2.0)
    assert export_csv(X[:2]).count("\n") >= 2


def test_bouquet_examples():
    b = bouquet_count(parse("Z1^3"))
    assert b.sigmas == (8,) and b.m == 8
    assert len(monomial_fiber_points((3, 0, 0, 0))) == b.m + 1
    b2 = bouquet_count(parse("Z1^3 + Z2^2"))
    assert b2.sigmas == (8, 3) and b2.m == 24
    with pytest.raises(PreconditionError) as info:
        bouquet_count(parse("Z1^2*tilde(Z1)"))
    assert any("d-b" in v for v in info.value.violations)


def test_cnd():
    assert not cnd_violations((3, 1, 1, 1))
    assert not cnd_violations((4, 0, 1, 3))
    assert cnd_violations((4, 0, 1, 2))
    assert cnd_violations((2, 1, 1, 0))


def test_mixed_bouquet_against_brute_force():
    q = (4, 1, 1, 1)
    F = parse("Z1^4*tilde(Z1)*hat(Z1)*bar(Z1)")
    assert len(monomial_fiber_points(q)) == bouquet_count(F).m + 1


def test_cyclic_examples():
    c = cyclic_invariants(parse("Z1^2 + Z2^2*Z3^2"))
    assert (c.m1, c.m2, c.points) == (2, 2, 4)
    assert cyclic_invariants(parse("Z1^2 + Z2^2*Z3^3")).m == 1
    with pytest.raises(PreconditionError):
        cyclic_invariants(parse("Z1^2 + Z2^2 + Z3^2"))


def test_unfolding_trivial_case():
    F = parse("Z1^3 + Z2^2")
    u = unfold(F)
    assert u.G == F and u.exponents == ((0.0, 0.0), (0.0, 0.0))
    Z = [Bicomplex(0.3, 0.2, -0.1, 0.9), Bicomplex(1.0, -0.5, 0.2, 0.1)]
    assert all(_close(a, b) for a, b in zip(u.phi(Z), Z))


def test_unfolding_mixed():
    u = unfold(parse(MIXED))
    assert u.G == parse("Z1^2 + Z2^2*hat(Z2)")
    res = check_unfolding(u, samples=40)
    assert res["F_phi_minus_G"] < 1e-8 and res["round_trip"] < 1e-8


def test_unfolding_preconditions():
    # Z(2,1,1,0) breaks d - b >= 0; the printed exponent formula still gives (1, 0)
    assert printed_unfolding_exponents((2, 1, 1, 0)) == (1.0, 0.0)
    with pytest.raises(PreconditionError):
        unfold(parse("Z1^2*tilde(Z1)*hat(Z1)"))
    # a + b = c + d whenever d > b, which makes the modulus map singular
    with pytest.raises(PreconditionError):
        unfold(parse("Z1^4*hat(Z1)*bar(Z1)^3"))
