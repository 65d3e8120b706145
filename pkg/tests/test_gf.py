"""Tower construction, Frobenius, norm, and encodings."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewsf import gf
from skewsf.errors import PreconditionError, SizeBoundError


def test_f4_modulus_is_unique_quadratic(f4):
    assert f4.modulus_K == (1, 1, 1)  # w^2 + w + 1, the only choice over F_2
    assert f4.q == 2 and f4.order == 4


def test_f9_modulus_deterministic(f9):
    assert f9.modulus_K == (1, 0, 1)  # x^2 + 1 is the least irreducible over F_3


def test_tower_2_2_2_modulus_irreducible():
    desc = gf.build_tower(2, 2, 2)
    assert desc.modulus_q == (1, 1, 1)
    assert desc.modulus_K == (2, 1, 1)  # y^2 + y + w over F_4
    # no roots in F_4: exhaustive
    Fq = desc.Fq
    for x in range(4):
        val = Fq.add(Fq.add(Fq.mul(x, x), x), 2)
        assert val != 0


def test_non_prime_p_rejected():
    with pytest.raises(PreconditionError):
        gf.build_tower(4, 1, 2)


def test_size_bound():
    with pytest.raises(SizeBoundError):
        gf.build_tower(2, 1, 20)


@pytest.mark.parametrize("p,h,n", [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3), (5, 1, 2), (2, 3, 1)])
def test_field_axioms_exhaustive(p, h, n):
    desc = gf.build_tower(p, h, n)
    K = desc.K
    els = range(desc.order)
    for a in els:
        assert K.add(a, 0) == a
        assert K.mul(a, 1) == a
        assert K.add(a, K.neg(a)) == 0
        if a:
            assert K.mul(a, K.inv(a)) == 1
    if desc.order <= 16:
        for a, b, c in itertools.product(els, repeat=3):
            assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
            assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
    for a, b in itertools.product(els, repeat=2):
        assert K.mul(a, b) == K.mul(b, a)
        assert K.add(a, b) == K.add(b, a)


def test_frobenius_known_values(f4):
    w = f4.elem(2)
    assert int(gf.frobenius(w, 1)) == 3  # w -> w + 1
    for enc in range(4):
        a = f4.elem(enc)
        assert gf.frobenius(a, 0) == a
    # F_q is fixed pointwise
    for enc in range(f4.q):
        assert int(gf.frobenius(f4.elem(enc), 1)) == enc


@pytest.mark.parametrize("p,h,n", [(2, 1, 3), (3, 1, 2), (2, 2, 2)])
def test_frobenius_is_automorphism_and_has_order_n(p, h, n):
    desc = gf.build_tower(p, h, n)
    for a in range(desc.order):
        for b in range(desc.order):
            fa, fb = desc.qfrob(a, 1), desc.qfrob(b, 1)
            assert desc.qfrob(desc.K.mul(a, b), 1) == desc.K.mul(fa, fb)
            assert desc.qfrob(desc.K.add(a, b), 1) == desc.K.add(fa, fb)
    for s in range(1, n):
        for a in range(desc.order):
            x = a
            for _ in range(n):
                x = desc.qfrob(x, s)
            assert x == a


def test_norm_values(f4, f9):
    assert int(gf.norm(f4.elem(1))) == 1
    assert int(gf.norm(f4.elem(2))) == 1  # w * w^2 = w^3 = 1
    g = f9.elem(4)  # 1 + i generates F_9^x
    assert int(gf.norm(g)) == 2


@pytest.mark.parametrize("p,h,n", [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 4)])
def test_norm_multiplicative_and_surjective(p, h, n):
    desc = gf.build_tower(p, h, n)
    values = set()
    for a in range(desc.order):
        na = desc.norm_enc(a)
        assert desc.in_subfield(na)
        if a:
            values.add(na)
        for b in range(desc.order):
            assert desc.norm_enc(desc.K.mul(a, b)) == desc.K.mul(na, desc.norm_enc(b))
    assert values == set(range(1, desc.q))


def test_norm_preimage(f9, f4):
    assert int(gf.norm_preimage(f9.elem(1))) == 1
    alpha = gf.norm_preimage(f9.elem(2))
    assert int(alpha) == 4 and int(gf.norm(alpha)) == 2
    assert int(gf.norm_preimage(f4.elem(1))) == 1
    with pytest.raises(PreconditionError):
        gf.norm_preimage(f9.elem(0))
    with pytest.raises(PreconditionError):
        gf.norm_preimage(f9.elem(3))  # i is not in F_3


def test_subfield_membership_is_an_encoding_check(f4):
    for enc in range(4):
        assert f4.elem(enc).in_subfield() == (enc < 2)


def test_serialization_roundtrip():
    desc = gf.build_tower(2, 2, 2)
    doc = desc.to_json()
    assert doc == {
        "p": 2,
        "h": 2,
        "n": 2,
        "modulus_q": [1, 1, 1],
        "modulus_K": [2, 1, 1],
    }
    assert gf.FieldDesc.from_json(doc) is desc
    # element wire encoding: the integer itself
    for enc in range(desc.order):
        assert int(desc.elem(enc)) == enc
        assert desc.from_coeffs(desc.coeffs_of(enc)).enc == enc


def test_field_elem_operators(f9):
    a, b = f9.elem(4), f9.elem(7)
    assert int(a + b) == int(b + a)
    assert int((a - b) + b) == int(a)
    assert int(a * b / b) == int(a)
    assert (a * a) == a**2


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_field_axioms_random_f16(a, b, c):
    desc = gf.build_tower(2, 2, 2)
    K = desc.K
    assert K.mul(a, K.mul(b, c)) == K.mul(K.mul(a, b), c)
    assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 24), st.integers(0, 24))
def test_frobenius_multiplicative_f25(a, b):
    desc = gf.build_tower(5, 1, 2)
    assert desc.qfrob(desc.K.mul(a, b), 1) == desc.K.mul(desc.qfrob(a, 1), desc.qfrob(b, 1))
