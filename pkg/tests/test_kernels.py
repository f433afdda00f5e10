import os
import random
import subprocess
import sys

import numpy as np
import pytest

from bcmk import Bicomplex, eval_poly, parse
from bcmk import kernels
from bcmk.kernels import eval_batch, eval_numpy, eval_points, idempotent_to_points, pack, points_to_idempotent

from conftest import rand_poly


def _reference(F, X):
    out = []
    for row in X:
        Zs = [Bicomplex(*map(float, z)) for z in row]
        out.append([float(c) for c in eval_poly(F, Zs).components])
    return np.array(out)


@pytest.mark.parametrize("text", ["Z1^2 + Z2^2", "Z1^3*bar(Z1) + hat(Z2)^2*tilde(Z1)", "2 + 3k*Z1*tilde(Z1)"])
def test_numpy_path_matches_exact_evaluation(text):
    F = parse(text)
    X = np.random.default_rng(0).normal(size=(50, F.n, 4))
    np.testing.assert_allclose(eval_points(F, X, use_numba=False), _reference(F, X), rtol=1e-12, atol=1e-12)


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba unavailable or disabled")
def test_numba_path_matches_numpy():
    rng = random.Random(7)
    for _ in range(5):
        F = rand_poly(rng, 3, 4, 6, exact=False)
        exps, c1, c2 = pack(F)
        X = np.random.default_rng(1).normal(size=(200, 3, 4))
        z1, z2 = points_to_idempotent(X)
        a = eval_batch(exps, c1, c2, z1, z2, use_numba=True)
        b = eval_numpy(exps, c1, c2, z1, z2)
        for u, v in zip(a, b):
            np.testing.assert_allclose(u, v, rtol=1e-12, atol=1e-12)


def test_idempotent_coordinates_round_trip():
    X = np.random.default_rng(2).normal(size=(10, 2, 4))
    w1, w2 = points_to_idempotent(X)
    np.testing.assert_allclose(idempotent_to_points(w1, w2), X, atol=1e-15)


def test_empty_polynomial_evaluates_to_zero():
    F = parse("Z1 - Z1", 1)
    X = np.ones((3, 1, 4))
    assert not eval_points(F, X).any()


def test_env_flag_selects_numpy_fallback():
    code = "import bcmk.kernels as k; print(k.HAVE_NUMBA)"
    env = dict(os.environ, BCMK_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
