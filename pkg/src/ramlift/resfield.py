"""Exact arithmetic in finite fields F_{p^d}.

Fields are described by a monic irreducible defining polynomial over F_p and
elements by their coordinate vectors in the power basis.  Everything here is
brute force on purpose: the degrees in play stay small (d <= 6), and explicit
enumeration keeps embeddings and roots fully deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CharMismatch, DivisionByZero, FieldMismatch, NotPrime, Reducible


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over F_p (coefficient lists ascending, ints in [0,p)) --

def _poly_trim(c):
    while c and c[-1] == 0:
        c = c[:-1]
    return c


def _poly_mulmod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_divmod_p(num, den, p):
    # den must be nonzero; leading coefficient inverted mod p
    num = list(num)
    den = _poly_trim(list(den))
    inv = pow(den[-1], -1, p)
    deg_d = len(den) - 1
    quot = [0] * max(len(num) - deg_d, 0)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = (num[i] * inv) % p
        if c:
            quot[i - deg_d] = c
            for j, dj in enumerate(den):
                num[i - deg_d + j] = (num[i - deg_d + j] - c * dj) % p
    return quot, _poly_trim(num)


def _is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(poly) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            div = list(tail) + [1]
            _, rem = _poly_divmod_p(poly, div, p)
            if not rem:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """F_{p^d} presented as F_p[x]/(defining_poly)."""

    p: int
    d: int
    defining_poly: tuple  # ascending coefficients, length d+1, monic

    @property
    def q(self) -> int:
        return self.p ** self.d

    def zero(self) -> "FqElem":
        return FqElem(self, (0,) * self.d)

    def one(self) -> "FqElem":
        return self.from_int(1)

    def from_int(self, c: int) -> "FqElem":
        return FqElem(self, (c % self.p,) + (0,) * (self.d - 1))

    def from_coeffs(self, coeffs) -> "FqElem":
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.d:
            raise ValueError("too many coordinates")
        coeffs += [0] * (self.d - len(coeffs))
        return FqElem(self, tuple(coeffs))

    def generator(self) -> "FqElem":
        """The class of x: the root of defining_poly the power basis is built
        on (zero in a prime field, where defining_poly is x)."""
        if self.d == 1:
            return self.zero()
        return FqElem(self, (0, 1) + (0,) * (self.d - 2))

    def elements(self):
        """All q elements in lexicographic order of their coordinate vectors."""
        for coeffs in itertools.product(range(self.p), repeat=self.d):
            yield FqElem(self, coeffs)

    def text(self) -> str:
        return "F(%d^%d;%s)" % (self.p, self.d, ",".join(str(c) for c in self.defining_poly[:-1]))


def make_field(p: int, d: int, poly=None) -> FieldSpec:
    """Build F_{p^d}; with poly omitted the lexicographically smallest monic
    irreducible defining polynomial is chosen."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if d < 1:
        raise ValueError("d must be >= 1")
    if poly is not None:
        poly = [c % p for c in poly]
        if len(poly) != d + 1 or poly[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree d")
        if not _is_irreducible(poly, p):
            raise Reducible(f"polynomial {poly} factors over F_{p}")
        return FieldSpec(p, d, tuple(poly))
    for tail in itertools.product(range(p), repeat=d):
        cand = list(tail) + [1]
        if _is_irreducible(cand, p):
            return FieldSpec(p, d, tuple(cand))
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FqElem:
    """Element of F_{p^d} as a coordinate vector in the power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        coeffs = tuple(c % field.p for c in coeffs)
        assert len(coeffs) == field.d
        self.field = field
        self.coeffs = coeffs

    def __eq__(self, other):
        return (
            isinstance(other, FqElem)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"FqElem({self.text()} in {self.field.text()})"

    def text(self) -> str:
        if self.field.d == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _check(self, other):
        if not isinstance(other, FqElem) or other.field != self.field:
            raise FieldMismatch("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FqElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        p = self.field.p
        prod = _poly_mulmod_p(list(self.coeffs), list(other.coeffs), p)
        _, rem = _poly_divmod_p(prod, list(self.field.defining_poly), p)
        rem += [0] * (self.field.d - len(rem))
        return FqElem(self.field, tuple(rem))

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def field_arith(a: FqElem, b: FqElem, op: str) -> FqElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def frobenius(a: FqElem) -> FqElem:
    return a ** a.field.p


def pth_root(a: FqElem) -> FqElem:
    # x -> x^p permutes F_q with inverse x -> x^(p^(d-1))
    return a ** (a.field.p ** (a.field.d - 1))


def eval_poly(poly, x: FqElem) -> FqElem:
    """Evaluate an ascending integer-coefficient polynomial at x (coefficients
    reduced into the field of x)."""
    k = x.field
    acc = k.zero()
    for c in reversed(list(poly)):
        acc = acc * x + k.from_int(c)
    return acc


@dataclass(frozen=True)
class FieldEmbedding:
    """Ring homomorphism k1 -> k2, pinned down by the image of the generator."""

    source: FieldSpec
    target: FieldSpec
    image_of_generator: FqElem

    def __call__(self, a: FqElem) -> FqElem:
        if a.field != self.source:
            raise FieldMismatch("element not in the source field")
        acc = self.target.zero()
        for c in reversed(a.coeffs):
            acc = acc * self.image_of_generator + self.target.from_int(c)
        return acc

    def is_identity(self) -> bool:
        return self.source == self.target and self.image_of_generator == self.source.generator()

    def compose(self, first: "FieldEmbedding") -> "FieldEmbedding":
        """self o first."""
        if first.target != self.source:
            raise FieldMismatch("embeddings are not composable")
        return FieldEmbedding(first.source, self.target, self(first.image_of_generator))

    def inverse(self) -> "FieldEmbedding":
        if self.source.d != self.target.d or self.source.p != self.target.p:
            raise FieldMismatch("only equal-degree embeddings invert")
        for cand in embeddings(self.target, self.source):
            if cand.compose(self).is_identity():
                return cand
        raise AssertionError("bijective embedding without inverse")  # unreachable


def identity_embedding(k: FieldSpec) -> FieldEmbedding:
    return FieldEmbedding(k, k, k.generator())


def embeddings(k1: FieldSpec, k2: FieldSpec) -> list:
    """All ring homomorphisms k1 -> k2, ordered by the image of the generator.

    There are d1 of them when d1 | d2 and none otherwise.
    """
    if k1.p != k2.p:
        raise CharMismatch(f"characteristics differ: {k1.p} vs {k2.p}")
    roots = [x for x in k2.elements() if eval_poly(k1.defining_poly, x).is_zero()]
    roots.sort(key=lambda r: r.coeffs)
    return [FieldEmbedding(k1, k2, r) for r in roots]
