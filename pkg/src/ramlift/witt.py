"""The unramified coefficient ring W(k)/p^M.

The ring is realized as the polynomial quotient (Z/p^M)[y]/(lifted_poly),
where lifted_poly carries the same integer coefficients as the defining
polynomial of the residue field k.  Teichmuller digits are a derived
canonical form: the universal Witt addition polynomials are never needed
because multiplication here is ordinary polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotAUnit, RingMismatch
from .resfield import FieldSpec, FieldEmbedding, FqElem


@dataclass(frozen=True)
class WittRingSpec:
    """W(k)/p^M as (Z/p^M)[y]/(lifted_poly)."""

    k: FieldSpec
    M: int  # absolute p-adic precision
    lifted_poly: tuple  # ascending, length d+1, integer coefficients mod p^M

    @property
    def p(self) -> int:
        return self.k.p

    @property
    def d(self) -> int:
        return self.k.d

    @property
    def modulus(self) -> int:
        return self.k.p ** self.M

    def zero(self) -> "WittElem":
        return WittElem(self, (0,) * self.d)

    def one(self) -> "WittElem":
        return self.from_int(1)

    def from_int(self, c: int) -> "WittElem":
        return WittElem(self, (c % self.modulus,) + (0,) * (self.d - 1))

    def from_coeffs(self, coeffs) -> "WittElem":
        coeffs = [c % self.modulus for c in coeffs]
        if len(coeffs) > self.d:
            raise ValueError("too many coordinates")
        coeffs += [0] * (self.d - len(coeffs))
        return WittElem(self, tuple(coeffs))


def make_witt(k: FieldSpec, M: int) -> WittRingSpec:
    """W(k)/p^M with the canonical monic lift of k's defining polynomial."""
    if M < 1:
        raise ValueError("M must be >= 1")
    return WittRingSpec(k, M, tuple(int(c) for c in k.defining_poly))


def _reduce_poly(coeffs, lifted_poly, modulus):
    """Reduce an ascending coefficient list modulo (lifted_poly, modulus)."""
    d = len(lifted_poly) - 1
    coeffs = [c % modulus for c in coeffs]
    for i in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[i]
        if c:
            coeffs[i] = 0
            for j in range(d):
                coeffs[i - d + j] = (coeffs[i - d + j] - c * lifted_poly[j]) % modulus
    coeffs = coeffs[:d]
    coeffs += [0] * (d - len(coeffs))
    return coeffs


class WittElem:
    """Element of W(k)/p^M as power-basis coordinates mod p^M."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: WittRingSpec, coeffs):
        coeffs = tuple(c % ring.modulus for c in coeffs)
        assert len(coeffs) == ring.d
        self.ring = ring
        self.coeffs = coeffs

    def __eq__(self, other):
        return (
            isinstance(other, WittElem)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"WittElem({list(self.coeffs)} mod {self.ring.p}^{self.ring.M})"

    def _check(self, other):
        if not isinstance(other, WittElem) or other.ring != self.ring:
            raise RingMismatch("operands belong to different Witt rings")

    def __add__(self, other):
        self._check(other)
        m = self.ring.modulus
        return WittElem(self.ring, tuple((a + b) % m for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        m = self.ring.modulus
        return WittElem(self.ring, tuple((a - b) % m for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        m = self.ring.modulus
        return WittElem(self.ring, tuple((-a) % m for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        prod = [0] * (2 * self.ring.d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return WittElem(self.ring, _reduce_poly(prod, self.ring.lifted_poly, self.ring.modulus))

    def __pow__(self, n: int):
        assert n >= 0
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def residue(self) -> FqElem:
        """Image in k = W(k)/p."""
        return FqElem(self.ring.k, tuple(c % self.ring.p for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_unit(self) -> bool:
        return not self.residue().is_zero()

    def p_val(self) -> int:
        """p-adic valuation, capped at M (returns M for 0 mod p^M)."""
        v = 0
        coeffs = self.coeffs
        p = self.ring.p
        while v < self.ring.M:
            if any(c % (p ** (v + 1)) for c in coeffs):
                return v
            v += 1
        return v

    def divide_exact_by_p(self) -> "WittElem":
        """Divide by p an element all of whose coordinates are divisible by p.

        The result is only determined mod p^(M-1); the top digit of the output
        is an arbitrary representative choice.
        """
        p = self.ring.p
        assert all(c % p == 0 for c in self.coeffs)
        return WittElem(self.ring, tuple(c // p for c in self.coeffs))


def witt_arith(a: WittElem, b: WittElem, op: str) -> WittElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def witt_unit_inv(a: WittElem) -> WittElem:
    """Inverse of a unit: invert the residue, then lift the inverse p-adically
    by x <- x(2 - ax), doubling the correct digits each step."""
    if not a.is_unit():
        raise NotAUnit("element reduces to zero")
    ring = a.ring
    r_inv = a.residue().inverse()
    x = ring.from_coeffs(r_inv.coeffs)
    two = ring.from_int(2)
    correct = 1
    while correct < ring.M:
        x = x * (two - a * x)
        correct *= 2
    return x


@lru_cache(maxsize=65536)
def teichmuller(a: FqElem, ring: WittRingSpec) -> WittElem:
    """The unique multiplicative representative of a in W(k)/p^M.

    Computed by iterating x -> x^(p^d) from the coordinate lift of a until the
    value is fixed mod p^M; the iteration gains at least one correct p-digit
    per step, so the cap converts nontermination into a detectable bug.
    """
    if a.field != ring.k:
        raise RingMismatch("element not in the residue field of this ring")
    q = ring.p ** ring.d
    x = ring.from_coeffs(a.coeffs)
    cap = ring.M * ring.d * max(1, (ring.p ** ring.M).bit_length())
    for _ in range(cap):
        nxt = x ** q
        if nxt == x:
            return x
        x = nxt
    raise AssertionError("Teichmuller iteration failed to stabilize")


@dataclass(frozen=True)
class TeichDigits:
    """Canonical digit form a_0..a_{M-1}: x = sum teichmuller(a_r) p^r."""

    digits: tuple  # M FqElem values

    def __iter__(self):
        return iter(self.digits)

    def __len__(self):
        return len(self.digits)

    def __getitem__(self, i):
        return self.digits[i]


def teich_digits(x: WittElem) -> TeichDigits:
    """Expand x in Teichmuller digits: a_0 = residue(x), then peel
    (x - teichmuller(a_0))/p and repeat M times."""
    ring = x.ring
    digits = []
    cur = x
    for _ in range(ring.M):
        a = cur.residue()
        digits.append(a)
        cur = (cur - teichmuller(a, ring)).divide_exact_by_p()
    return TeichDigits(tuple(digits))


def from_digits(d: TeichDigits, ring: WittRingSpec) -> WittElem:
    acc = ring.zero()
    pw = 1
    for a in d.digits:
        acc = acc + teichmuller(a, ring) * ring.from_int(pw)
        pw *= ring.p
    return acc


def witt_elem_text(x: WittElem) -> str:
    """Digit string "t:a_0,a_1,...,a_{M-1}" in the field's coefficient form."""
    return "t:" + ",".join(a.text() for a in teich_digits(x).digits)


class WittMap:
    """The ring homomorphism W(k1)/p^M -> W(k2)/p^M induced digitwise by a
    residue-field embedding; it is the unique homomorphism inducing it."""

    def __init__(self, psi: FieldEmbedding, M: int):
        self.psi = psi
        self.source = make_witt(psi.source, M)
        self.target = make_witt(psi.target, M)

    def __call__(self, x: WittElem) -> WittElem:
        if x.ring != self.source:
            raise RingMismatch("element not in the source Witt ring")
        mapped = TeichDigits(tuple(self.psi(a) for a in teich_digits(x).digits))
        return from_digits(mapped, self.target)


def witt_functor(psi: FieldEmbedding, M: int) -> WittMap:
    return WittMap(psi, M)
