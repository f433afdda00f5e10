"""Batch evaluation of mixed polynomials in idempotent coordinates.

The hot loop of every sampling check is "evaluate F at N points". In
idempotent coordinates a monomial with exponents (a, b, c, d) contributes

    f1: c1 * z1^a conj(z1)^b z2^c conj(z2)^d
    f2: c2 * z2^a conj(z2)^b z1^c conj(z1)^d

so F(Z) = f1 e + f2 e_dag needs only complex arithmetic. The numba kernel is
used when numba imports and ``BCMK_DISABLE_NUMBA`` is unset (or "0"); the
numpy path is the reference implementation.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("BCMK_DISABLE_NUMBA", "0") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError("numba disabled by BCMK_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def pack(F):
    """Flatten a MixedPolynomial into (exps[T, n, 4] int64, c1[T], c2[T] complex128)."""
    T = len(F.terms)
    exps = np.zeros((T, F.n, 4), dtype=np.int64)
    c1 = np.empty(T, dtype=np.complex128)
    c2 = np.empty(T, dtype=np.complex128)
    for k, (e, coeff) in enumerate(F.terms):
        exps[k] = np.asarray(e, dtype=np.int64).reshape(F.n, 4)
        c1[k] = complex(coeff.z1)
        c2[k] = complex(coeff.z2)
    return exps, c1, c2


def eval_numpy(exps, c1, c2, z1, z2):
    """Reference path. z1, z2: (N, n) complex arrays; returns (w1, w2) of shape (N,)."""
    z1 = np.asarray(z1, dtype=np.complex128)
    z2 = np.asarray(z2, dtype=np.complex128)
    a, b, c, d = (exps[None, :, :, s] for s in range(4))
    Z1, Z2 = z1[:, None, :], z2[:, None, :]
    C1, C2 = np.conj(Z1), np.conj(Z2)
    m1 = np.prod(Z1**a * C1**b * Z2**c * C2**d, axis=2)
    m2 = np.prod(Z2**a * C2**b * Z1**c * C1**d, axis=2)
    return m1 @ c1, m2 @ c2


def _ipow(z, k):
    r = 1.0 + 0.0j
    while k > 0:
        if k & 1:
            r *= z
        z *= z
        k >>= 1
    return r


if HAVE_NUMBA:
    _ipow_jit = njit(cache=True)(_ipow)

    @njit(cache=True)
    def _eval_jit(exps, c1, c2, z1, z2):
        N, n = z1.shape
        T = exps.shape[0]
        w1 = np.zeros(N, dtype=np.complex128)
        w2 = np.zeros(N, dtype=np.complex128)
        for p in range(N):
            acc1 = 0.0 + 0.0j
            acc2 = 0.0 + 0.0j
            for k in range(T):
                m1 = c1[k]
                m2 = c2[k]
                for i in range(n):
                    u = z1[p, i]
                    w = z2[p, i]
                    a = exps[k, i, 0]
                    b = exps[k, i, 1]
                    c = exps[k, i, 2]
                    d = exps[k, i, 3]
                    pu = _ipow_jit(u, a) * _ipow_jit(u.conjugate(), b)
                    pw = _ipow_jit(w, c) * _ipow_jit(w.conjugate(), d)
                    qw = _ipow_jit(w, a) * _ipow_jit(w.conjugate(), b)
                    qu = _ipow_jit(u, c) * _ipow_jit(u.conjugate(), d)
                    m1 *= pu * pw
                    m2 *= qw * qu
                acc1 += m1
                acc2 += m2
            w1[p] = acc1
            w2[p] = acc2
        return w1, w2


def eval_batch(exps, c1, c2, z1, z2, use_numba: bool | None = None):
    """Evaluate packed F at N points given in idempotent coordinates."""
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and HAVE_NUMBA:
        z1 = np.ascontiguousarray(z1, dtype=np.complex128)
        z2 = np.ascontiguousarray(z2, dtype=np.complex128)
        return _eval_jit(exps, c1, c2, z1, z2)
    return eval_numpy(exps, c1, c2, z1, z2)


def points_to_idempotent(X):
    """Real array (N, n, 4) of (x, y, v, t) to idempotent (z1, z2), each (N, n)."""
    X = np.asarray(X, dtype=np.float64)
    x, y, v, t = X[..., 0], X[..., 1], X[..., 2], X[..., 3]
    return (x + t) + 1j * (y - v), (x - t) + 1j * (y + v)


def idempotent_to_points(w1, w2):
    """Inverse of ``points_to_idempotent`` (any matching shapes); appends a length-4 axis."""
    w1, w2 = np.asarray(w1), np.asarray(w2)
    return np.stack(
        [
            (w1.real + w2.real) / 2,
            (w1.imag + w2.imag) / 2,
            (w2.imag - w1.imag) / 2,
            (w1.real - w2.real) / 2,
        ],
        axis=-1,
    )


def eval_points(F, X, use_numba: bool | None = None):
    """F at real points X (N, n, 4); returns values as (N, 4) real components."""
    exps, c1, c2 = pack(F)
    z1, z2 = points_to_idempotent(X)
    w1, w2 = eval_batch(exps, c1, c2, z1, z2, use_numba)
    return idempotent_to_points(w1, w2)
