import itertools
import random

import pytest

from ramlift.errors import NotAUnit, RingMismatch
from ramlift.resfield import embeddings, frobenius, identity_embedding, make_field, pth_root
from ramlift.witt import (
    from_digits,
    make_witt,
    teich_digits,
    teichmuller,
    witt_arith,
    witt_elem_text,
    witt_functor,
    witt_unit_inv,
)

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F9 = make_field(3, 2, [1, 0, 1])
F4 = make_field(2, 2)

Z27 = make_witt(F3, 3)
W9 = make_witt(F9, 2)


def test_make_witt_prime_field_is_z_mod_p_to_m():
    assert Z27.modulus == 27
    assert Z27.lifted_poly == (0, 1)
    a = Z27.from_int(13)
    b = Z27.from_int(14)
    assert (a + b).is_zero()


def test_make_witt_canonical_lift():
    assert W9.lifted_poly == (1, 0, 1)
    y = W9.from_coeffs([0, 1])
    assert y * y == W9.from_int(8)  # y^2 = -1 mod 9


def test_make_witt_m1_is_residue_field():
    w = make_witt(F2, 1)
    assert w.modulus == 2
    assert w.from_int(3) == w.one()


def test_unit_inverse():
    inv = witt_unit_inv(Z27.from_int(2))
    assert inv == Z27.from_int(14)
    assert inv * Z27.from_int(2) == Z27.one()


def test_unit_inverse_rejects_non_units():
    with pytest.raises(NotAUnit):
        witt_unit_inv(Z27.from_int(3))


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        witt_arith(Z27.one(), make_witt(F3, 2).one(), "add")


def test_teichmuller_zero_one():
    for ring in (Z27, W9):
        assert teichmuller(ring.k.zero(), ring) == ring.zero()
        assert teichmuller(ring.k.one(), ring) == ring.one()


def test_teichmuller_2_mod_27():
    assert teichmuller(F3.from_int(2), Z27) == Z27.from_int(26)


def test_teichmuller_generator_of_f9():
    i = F9.generator()
    assert teichmuller(i, W9) == W9.from_coeffs([0, 1])


@pytest.mark.parametrize("p,d,M", [(3, 1, 4), (5, 1, 3), (2, 1, 6)])
def test_teichmuller_closed_form_oracle(p, d, M):
    # over Z/p^M the representative is a^(p^(M-1)) mod p^M
    k = make_field(p, d)
    ring = make_witt(k, M)
    for a in k.elements():
        expected = pow(a.coeffs[0], p ** (M - 1), p ** M)
        assert teichmuller(a, ring) == ring.from_int(expected)


def test_teich_digits_examples():
    assert [a.coeffs[0] for a in teich_digits(Z27.from_int(3))] == [0, 1, 0]
    assert [a.coeffs[0] for a in teich_digits(Z27.from_int(5))] == [2, 2, 1]


@pytest.mark.parametrize("ring", [Z27, W9, make_witt(F4, 3), make_witt(F2, 5)])
def test_digit_roundtrip_random(ring):
    rng = random.Random(7)
    for _ in range(100):
        x = ring.from_coeffs([rng.randrange(ring.modulus) for _ in range(ring.d)])
        assert from_digits(teich_digits(x), ring) == x


@pytest.mark.parametrize("ring", [Z27, W9, make_witt(F4, 3)])
def test_teichmuller_multiplicative_exhaustive(ring):
    for a, b in itertools.product(ring.k.elements(), repeat=2):
        assert teichmuller(a * b, ring) == teichmuller(a, ring) * teichmuller(b, ring)


@pytest.mark.parametrize("ring", [Z27, W9, make_witt(F4, 3)])
def test_teichmuller_pth_power_compat(ring):
    for a in ring.k.elements():
        assert teichmuller(frobenius(a), ring) == teichmuller(a, ring) ** ring.p


@pytest.mark.parametrize("ring", [W9, make_witt(F4, 3)])
def test_teichmuller_is_pn_th_power(ring):
    # h(a) = h(b)^(p^n) with b the n-fold p-th root of a
    for a in ring.k.elements():
        b = a
        for n in (1, 2, 3):
            b = pth_root(b)
            assert teichmuller(b, ring) ** (ring.p ** n) == teichmuller(a, ring)


def test_witt_functor_identity():
    ident = witt_functor(identity_embedding(F3), 3)
    for c in range(27):
        assert ident(Z27.from_int(c)) == Z27.from_int(c)


def test_witt_functor_frobenius_on_f9():
    frob = [e for e in embeddings(F9, F9) if not e.is_identity()][0]
    wmap = witt_functor(frob, 2)
    i = F9.generator()
    assert wmap(teichmuller(i, W9)) == teichmuller(-i, W9)
    rng = random.Random(11)
    for _ in range(50):
        x = W9.from_coeffs([rng.randrange(9), rng.randrange(9)])
        y = W9.from_coeffs([rng.randrange(9), rng.randrange(9)])
        assert wmap(x + y) == wmap(x) + wmap(y)
        assert wmap(x * y) == wmap(x) * wmap(y)
    assert wmap(W9.one()) == W9.one()


def test_witt_functor_no_map_when_no_embedding():
    assert embeddings(F9, F3) == []


def test_witt_functor_composition():
    F16 = make_field(2, 4)
    e1 = embeddings(F4, F16)[1]
    e2 = embeddings(F16, F16)[1]
    composed = witt_functor(e2.compose(e1), 3)
    m1 = witt_functor(e1, 3)
    m2 = witt_functor(e2, 3)
    ring = make_witt(F4, 3)
    rng = random.Random(13)
    for _ in range(25):
        x = ring.from_coeffs([rng.randrange(8), rng.randrange(8)])
        assert composed(x) == m2(m1(x))


def test_text_form():
    assert witt_elem_text(Z27.from_int(5)) == "t:2,2,1"
    i = teichmuller(F9.generator(), W9)
    assert witt_elem_text(i) == "t:(0,1),(0,0)"


def test_witt_functor_is_unique_hom_inducing_psi():
    # brute force: a (Z/p^M)-algebra map is pinned by the image of the
    # power-basis generator, which must be a root of the lifted polynomial
    # with the prescribed residue; exactly one image works per embedding
    M = 2
    ring = make_witt(F9, M)
    for psi in embeddings(F9, F9):
        candidates = []
        for c0 in range(9):
            for c1 in range(9):
                u = ring.from_coeffs([c0, c1])
                value = u * u + ring.one()  # lifted poly y^2 + 1 at u
                if value.is_zero() and u.residue() == psi(F9.generator()):
                    candidates.append(u)
        assert len(candidates) == 1
        wmap = witt_functor(psi, M)
        y = ring.from_coeffs([0, 1])
        assert wmap(y) == candidates[0]
