"""Bicomplex mixed polynomials.

A mixed monomial in ``n`` bicomplex variables is

    coeff * prod_i Z_i^a_i * tilde(Z_i)^b_i * hat(Z_i)^c_i * bar(Z_i)^d_i

and is stored as its coefficient plus the flattened exponent tuple
``(a_1, b_1, c_1, d_1, a_2, ...)``. Variable indices are 0-based in the API
(``Z1`` in text is index 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .bicomplex import Bicomplex, IdempotentPair, format_literal
from .errors import ArityError
from .gaussian import Gaussian

KINDS = ("Z", "tilde", "hat", "bar")
_SLOT = {k: s for s, k in enumerate(KINDS)}
LABELS = ("holomorphic", "tilde", "hat", "bar", "general")


def _slot(kind: str) -> int:
    try:
        return _SLOT[kind]
    except KeyError:
        raise ValueError(f"unknown derivative kind {kind!r}; expected one of {KINDS}") from None


class MixedPolynomial:
    """Immutable, normalized mixed polynomial.

    Construction always normalizes: duplicate exponent patterns are merged,
    zero coefficients dropped and terms sorted in descending lexicographic
    order of the flattened exponent tuple.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Iterable | Mapping = ()):
        if n < 0:
            raise ValueError("variable count must be nonnegative")
        acc: dict[tuple, Bicomplex] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != 4 * n:
                raise ArityError(f"exponent tuple of length {len(exps)} for n = {n}")
            if any(e < 0 for e in exps):
                raise ValueError("exponents must be nonnegative")
            coeff = Bicomplex.coerce(coeff)
            acc[exps] = acc[exps] + coeff if exps in acc else coeff
        object.__setattr__(self, "n", n)
        object.__setattr__(
            self,
            "terms",
            tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True, key=lambda ec: ec[0])),
        )
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MixedPolynomial is immutable")

    # -- constructors --------------------------------------------------
    @classmethod
    def constant(cls, value, n: int) -> "MixedPolynomial":
        return cls(n, [((0,) * (4 * n), value)])

    @classmethod
    def variable(cls, i: int, n: int, kind: str = "Z") -> "MixedPolynomial":
        if not 0 <= i < n:
            raise ArityError(f"variable index {i} out of range for n = {n}")
        exps = [0] * (4 * n)
        exps[4 * i + _slot(kind)] = 1
        return cls(n, [(exps, 1)])

    @classmethod
    def monomial(cls, quads: Sequence[Sequence[int]], coeff=1) -> "MixedPolynomial":
        """Single term from per-variable quadruples ``[(a, b, c, d), ...]``."""
        flat = [e for q in quads for e in q]
        return cls(len(quads), [(flat, coeff)])

    # -- basic protocol --------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, self.terms)))
        return self._hash

    def __repr__(self):
        return f"MixedPolynomial(n={self.n}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    def quads(self, exps: tuple) -> list[tuple[int, int, int, int]]:
        return [tuple(exps[4 * i : 4 * i + 4]) for i in range(self.n)]

    def monomials(self):
        """Yield ``(coeff, [(a, b, c, d), ...])`` per term."""
        for exps, coeff in self.terms:
            yield coeff, self.quads(exps)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for _, c in self.terms)

    def used_variables(self) -> list[int]:
        return [i for i in range(self.n) if any(any(e[4 * i : 4 * i + 4]) for e, _ in self.terms)]

    def with_arity(self, n: int, offset: int = 0) -> "MixedPolynomial":
        """Embed into ``n`` variables, shifting variable ``i`` to ``i + offset``."""
        if offset < 0 or offset + self.n > n:
            raise ArityError("cannot embed polynomial into fewer variables")
        pad_l = (0,) * (4 * offset)
        pad_r = (0,) * (4 * (n - offset - self.n))
        return MixedPolynomial(n, [(pad_l + e + pad_r, c) for e, c in self.terms])

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "MixedPolynomial":
        if isinstance(other, MixedPolynomial):
            if other.n != self.n:
                n = max(self.n, other.n)
                return other.with_arity(n)
            return other
        return MixedPolynomial.constant(other, self.n)

    def _lift(self, other):
        other = self._coerce(other)
        me = self if self.n == other.n else self.with_arity(other.n)
        return me, other

    def __add__(self, other):
        try:
            a, b = self._lift(other)
        except TypeError:
            return NotImplemented
        return MixedPolynomial(a.n, list(a.terms) + list(b.terms))

    __radd__ = __add__

    def __neg__(self):
        return MixedPolynomial(self.n, [(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        try:
            a, b = self._lift(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            a, b = self._lift(other)
        except TypeError:
            return NotImplemented
        out = []
        for e1, c1 in a.terms:
            for e2, c2 in b.terms:
                out.append((tuple(x + y for x, y in zip(e1, e2)), c1 * c2))
        return MixedPolynomial(a.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = MixedPolynomial.constant(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, *Zs):
        if len(Zs) == 1 and isinstance(Zs[0], (list, tuple)):
            Zs = Zs[0]
        return eval_poly(self, Zs)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"coeff": c.to_json(), "exps": [list(q) for q in self.quads(e)]}
                for e, c in self.terms
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "MixedPolynomial":
        n = obj["n"]
        return cls(
            n,
            [([x for q in t["exps"] for x in q], Bicomplex.from_json(t["coeff"])) for t in obj["terms"]],
        )


def normalize(F) -> MixedPolynomial:
    """Canonical form of ``F`` (a polynomial, or ``(n, terms)`` with raw terms)."""
    if isinstance(F, MixedPolynomial):
        return MixedPolynomial(F.n, F.terms)
    n, terms = F
    return MixedPolynomial(n, terms)


def _check_arity(F: MixedPolynomial, Zs) -> list[Bicomplex]:
    if len(Zs) != F.n:
        raise ArityError(f"polynomial has {F.n} variables, got {len(Zs)} values")
    return [Bicomplex.coerce(z) for z in Zs]


def _pow_table(base: Bicomplex, k: int, cache: dict):
    if k not in cache:
        cache[k] = base**k
    return cache[k]


def _eval_idempotent_float(F: MixedPolynomial, cols) -> Bicomplex:
    # products are componentwise in (z1, z2), so each component keeps its own
    # relative accuracy even when |z1| and |z2| are far apart
    ids = [[(complex(z.z1), complex(z.z2)) for z in col] for col in cols]
    f1 = f2 = 0j
    for exps, coeff in F.terms:
        t1, t2 = complex(coeff.z1), complex(coeff.z2)
        for i in range(F.n):
            for s in range(4):
                k = exps[4 * i + s]
                if k:
                    w1, w2 = ids[s][i]
                    t1 *= w1**k
                    t2 *= w2**k
        f1 += t1
        f2 += t2
    return Bicomplex.from_idempotent(f1, f2)


def eval_components(F: MixedPolynomial, Zs, tildes, hats, bars) -> Bicomplex:
    """Evaluate with the four argument tuples supplied independently.

    Exact inputs (and coefficients) are evaluated exactly; anything else in
    idempotent coordinates with complex floats.
    """
    cols = [_check_arity(F, v) for v in (Zs, tildes, hats, bars)]
    if not (F.is_exact and all(z.is_exact for col in cols for z in col)):
        return _eval_idempotent_float(F, cols)
    caches = [[{} for _ in range(F.n)] for _ in range(4)]
    total = Bicomplex(0, 0, 0, 0)
    for exps, coeff in F.terms:
        term = coeff
        for i in range(F.n):
            for s in range(4):
                k = exps[4 * i + s]
                if k:
                    term = term * _pow_table(cols[s][i], k, caches[s][i])
        total = total + term
    return total


def eval_poly(F: MixedPolynomial, Zs) -> Bicomplex:
    """Sum of coeff * prod Z^a tilde(Z)^b hat(Z)^c bar(Z)^d, in bicomplex arithmetic."""
    Zs = _check_arity(F, Zs)
    return eval_components(
        F, Zs, [z.tilde() for z in Zs], [z.hat() for z in Zs], [z.bar() for z in Zs]
    )


def classify(F: MixedPolynomial) -> str:
    """One of holomorphic / tilde / hat / bar / general."""
    used = set()
    for exps, _ in F.terms:
        for i in range(F.n):
            for s in (1, 2, 3):
                if exps[4 * i + s]:
                    used.add(s)
    if not used:
        return "holomorphic"
    if len(used) == 1:
        return KINDS[used.pop()]
    return "general"


def sym_partial(kind: str, F: MixedPolynomial, i: int) -> MixedPolynomial:
    """Formal derivative treating Z, tilde Z, hat Z, bar Z as independent symbols."""
    if not 0 <= i < F.n:
        raise ArityError(f"variable index {i} out of range for n = {F.n}")
    pos = 4 * i + _slot(kind)
    out = []
    for exps, coeff in F.terms:
        k = exps[pos]
        if k:
            e = list(exps)
            e[pos] = k - 1
            out.append((e, coeff * k))
    return MixedPolynomial(F.n, out)


def multiply_by_variable(F: MixedPolynomial, i: int, kind: str) -> MixedPolynomial:
    """``F`` times ``Z_i`` (or one of its conjugates)."""
    return F * MixedPolynomial.variable(i, F.n, kind)


# -- idempotent representation ---------------------------------------------

@dataclass(frozen=True)
class ComplexMixedPoly:
    """Complex mixed polynomial in the 4n symbols (z1_i, conj z1_i, z2_i, conj z2_i).

    ``terms`` maps flattened exponent tuples (same per-variable layout) to
    complex coefficients (``Gaussian``).
    """

    n: int
    terms: tuple

    def __call__(self, z1s, z2s):
        z1s = [Gaussian.coerce(z) for z in z1s]
        z2s = [Gaussian.coerce(z) for z in z2s]
        syms = []
        for i in range(self.n):
            syms.append((z1s[i], z1s[i].conjugate(), z2s[i], z2s[i].conjugate()))
        total = Gaussian(0, 0)
        for exps, coeff in self.terms:
            term = coeff
            for i in range(self.n):
                for s in range(4):
                    k = exps[4 * i + s]
                    if k:
                        term = term * syms[i][s] ** k
            total = total + term
        return total

    def __str__(self):
        names = ("z1_{i}", "cz1_{i}", "z2_{i}", "cz2_{i}")
        parts = []
        for exps, coeff in self.terms:
            factors = []
            for i in range(self.n):
                for s in range(4):
                    k = exps[4 * i + s]
                    if k:
                        sym = names[s].format(i=i + 1)
                        factors.append(sym if k == 1 else f"{sym}^{k}")
            c = complex(coeff)
            parts.append(f"({c.real:g}{c.imag:+g}i)" + ("*" + "*".join(factors) if factors else ""))
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class ComplexMixedPair:
    f1: ComplexMixedPoly
    f2: ComplexMixedPoly

    def __call__(self, Zs) -> IdempotentPair:
        Zs = [Bicomplex.coerce(z) for z in Zs]
        z1s = [z.z1 for z in Zs]
        z2s = [z.z2 for z in Zs]
        return IdempotentPair(self.f1(z1s, z2s), self.f2(z1s, z2s))

    def recombine(self, Zs) -> Bicomplex:
        w1, w2 = self(Zs)
        return Bicomplex.from_idempotent(w1, w2)


def idempotent_rep(F: MixedPolynomial) -> ComplexMixedPair:
    """Split F into (f1, f2) acting on the idempotent coordinates (z1, z2)."""
    t1, t2 = {}, {}
    for exps, coeff in F.terms:
        e1, e2 = [], []
        for i in range(F.n):
            a, b, c, d = exps[4 * i : 4 * i + 4]
            # slots are (z1, conj z1, z2, conj z2)
            e1 += [a, b, c, d]
            e2 += [c, d, a, b]
        for table, exps_, lam in ((t1, tuple(e1), coeff.z1), (t2, tuple(e2), coeff.z2)):
            table[exps_] = table.get(exps_, Gaussian(0, 0)) + lam
    clean = lambda t: tuple(sorted(((e, c) for e, c in t.items() if c), reverse=True))
    return ComplexMixedPair(ComplexMixedPoly(F.n, clean(t1)), ComplexMixedPoly(F.n, clean(t2)))


# -- text ------------------------------------------------------------------

_CONJ_NAMES = (None, "tilde", "hat", "bar")


def _format_factor(i: int, slot: int, k: int) -> str:
    var = f"Z{i + 1}"
    base = var if slot == 0 else f"{_CONJ_NAMES[slot]}({var})"
    return base if k == 1 else f"{base}^{k}"


def _is_real(c: Bicomplex) -> bool:
    return c.y == 0 and c.v == 0 and c.t == 0


def format_polynomial(F: MixedPolynomial) -> str:
    """Canonical text; ``parse(format_polynomial(F)) == F`` for exact F."""
    if not F.terms:
        return "0"
    out = []
    for exps, coeff in F.terms:
        factors = [
            _format_factor(i, s, exps[4 * i + s])
            for i in range(F.n)
            for s in range(4)
            if exps[4 * i + s]
        ]
        neg = False
        if _is_real(coeff):
            neg = coeff.x < 0
            mag = -coeff if neg else coeff
            lead = None if (mag == 1 and factors) else format_literal(mag)
        else:
            lead = f"({format_literal(coeff)})"
        body = "*".join(([lead] if lead else []) + factors)
        out.append((neg, body))
    first_neg, first = out[0]
    text = ("-" if first_neg else "") + first
    for neg, body in out[1:]:
        text += (" - " if neg else " + ") + body
    return text
