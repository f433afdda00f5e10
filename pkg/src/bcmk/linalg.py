"""Bicomplex matrices through their idempotent split A = A1*e + A2*e_dag."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .bicomplex import Bicomplex, format_literal, parse_literal
from .errors import NotInvertibleError, ShapeError
from .gaussian import Gaussian

RANK_TOL = 1e-8


class RankPair(NamedTuple):
    r1: int
    r2: int


# -- exact elimination over Gaussian rationals ------------------------------

def _copy(block):
    return [list(row) for row in block]


def _eliminate(block, *, want_det=False):
    """Row-reduce a Gaussian matrix in place; return (rank, det or None)."""
    a = _copy(block)
    m = len(a)
    n = len(a[0]) if m else 0
    det = Gaussian(1, 0)
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if a[r][col]), None)
        if piv is None:
            det = Gaussian(0, 0)
            continue
        if piv != row:
            a[row], a[piv] = a[piv], a[row]
            det = -det
        p = a[row][col]
        det = det * p
        inv = p.reciprocal()
        for r in range(row + 1, m):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        row += 1
        if row == m:
            break
    if want_det and row < n:
        det = Gaussian(0, 0)
    return row, det


def _exact_inverse(block):
    n = len(block)
    a = [list(r) + [Gaussian(int(i == k), 0) for k in range(n)] for i, r in enumerate(block)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].reciprocal()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


# -- matrix type ------------------------------------------------------------

@dataclass(frozen=True)
class BCMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(Bicomplex.coerce(x) for x in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise ShapeError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "BCMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "BCMatrix":
        return cls(tuple(tuple(int(i == k) for k in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values) -> "BCMatrix":
        values = list(values)
        n = len(values)
        return cls(tuple(tuple(values[i] if i == k else 0 for k in range(n)) for i in range(n)))

    @classmethod
    def from_blocks(cls, A1, A2) -> "BCMatrix":
        A1, A2 = np.asarray(A1, dtype=object), np.asarray(A2, dtype=object)
        if A1.shape != A2.shape:
            raise ShapeError("idempotent blocks differ in shape")
        m, n = A1.shape
        return cls(
            tuple(
                tuple(Bicomplex.from_idempotent(A1[i, k], A2[i, k]) for k in range(n))
                for i in range(m)
            )
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    @property
    def is_exact(self) -> bool:
        return all(x.is_exact for row in self.entries for x in row)

    def __getitem__(self, ij):
        i, k = ij
        return self.entries[i][k]

    def blocks(self):
        """Idempotent blocks as nested lists of ``Gaussian``."""
        A1 = [[x.z1 for x in row] for row in self.entries]
        A2 = [[x.z2 for x in row] for row in self.entries]
        return A1, A2

    def __add__(self, other: "BCMatrix") -> "BCMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return BCMatrix(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries))
        )

    def __matmul__(self, other: "BCMatrix") -> "BCMatrix":
        m, n = self.shape
        n2, p = other.shape
        if n != n2:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(m):
            row = []
            for k in range(p):
                acc = Bicomplex(0, 0, 0, 0)
                for l in range(n):
                    acc = acc + self.entries[i][l] * other.entries[l][k]
                row.append(acc)
            out.append(tuple(row))
        return BCMatrix(tuple(out))

    def __eq__(self, other):
        if not isinstance(other, BCMatrix):
            return NotImplemented
        return self.entries == other.entries

    __hash__ = object.__hash__

    def to_json(self):
        return [[format_literal(x) for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, rows) -> "BCMatrix":
        return cls.from_rows([[parse_literal(x) for x in row] for row in rows])


# -- operations -------------------------------------------------------------

def _np_block(block, exact: bool):
    if exact:
        arr = np.empty((len(block), len(block[0]) if block else 0), dtype=object)
        for i, row in enumerate(block):
            for k, x in enumerate(row):
                arr[i, k] = x
        return arr
    return np.array([[complex(x) for x in row] for row in block], dtype=complex).reshape(
        len(block), len(block[0]) if block else 0
    )


def split(A: BCMatrix):
    """(A1, A2): object arrays of ``Gaussian`` in exact mode, complex128 otherwise."""
    A1, A2 = A.blocks()
    exact = A.is_exact
    return _np_block(A1, exact), _np_block(A2, exact)


def embed(A: BCMatrix):
    """Block-diagonal 2m x 2n complex matrix diag(A1, A2)."""
    A1, A2 = split(A)
    m, n = A.shape
    if A.is_exact:
        out = np.empty((2 * m, 2 * n), dtype=object)
        out[...] = Gaussian(0, 0)
    else:
        out = np.zeros((2 * m, 2 * n), dtype=complex)
    out[:m, :n] = A1
    out[m:, n:] = A2
    return out


def _square(A: BCMatrix) -> int:
    m, n = A.shape
    if m != n:
        raise ShapeError(f"square matrix required, got {m}x{n}")
    return n


def det(A: BCMatrix) -> Bicomplex:
    n = _square(A)
    if n == 0:
        return Bicomplex(1, 0, 0, 0)
    A1, A2 = A.blocks()
    if A.is_exact:
        d1 = _eliminate(A1, want_det=True)[1]
        d2 = _eliminate(A2, want_det=True)[1]
        return Bicomplex.from_idempotent(d1, d2)
    b1, b2 = split(A)
    return Bicomplex.from_idempotent(complex(np.linalg.det(b1)), complex(np.linalg.det(b2)))


def _float_rank(block: np.ndarray, threshold: float) -> int:
    if block.size == 0:
        return 0
    s = np.linalg.svd(block, compute_uv=False)
    return int(np.sum(s > threshold))


def rank_pair(A: BCMatrix, tol: float = RANK_TOL, atol: float = 0.0) -> RankPair:
    """Ranks of the idempotent blocks.

    Float threshold is ``max(tol * sigma_max, atol)`` where sigma_max is the
    largest singular value of the whole embedded matrix.
    """
    if A.is_exact:
        A1, A2 = A.blocks()
        return RankPair(_eliminate(A1)[0] if A1 and A1[0] else 0, _eliminate(A2)[0] if A2 and A2[0] else 0)
    b1, b2 = split(A)
    scale = max(
        (np.linalg.svd(b, compute_uv=False).max() for b in (b1, b2) if b.size),
        default=0.0,
    )
    threshold = max(tol * scale, atol)
    if scale == 0.0 or scale <= atol:
        return RankPair(0, 0)
    return RankPair(_float_rank(b1, threshold), _float_rank(b2, threshold))


def try_invert(A: BCMatrix, tol: float = RANK_TOL) -> BCMatrix:
    n = _square(A)
    if A.is_exact:
        A1, A2 = A.blocks()
        inv1, inv2 = _exact_inverse(A1), _exact_inverse(A2)
        if inv1 is None or inv2 is None:
            raise NotInvertibleError(
                f"determinant {det(A)} is zero or a zero divisor "
                f"(singular block: {'A1' if inv1 is None else 'A2'})"
            )
        return BCMatrix.from_blocks(inv1, inv2)
    r = rank_pair(A, tol)
    if r != (n, n):
        raise NotInvertibleError(
            f"determinant {det(A)} is numerically a zero divisor (rank pair {tuple(r)})"
        )
    b1, b2 = split(A)
    i1, i2 = np.linalg.inv(b1), np.linalg.inv(b2)
    return BCMatrix.from_blocks(
        [[complex(x) for x in row] for row in i1], [[complex(x) for x in row] for row in i2]
    )


def matmul(A: BCMatrix, B: BCMatrix) -> BCMatrix:
    return A @ B
