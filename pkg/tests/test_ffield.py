import math

import pytest
from hypothesis import given, strategies as st

from hypercf.ffield import (
    GF,
    FieldElement,
    FieldError,
    binomial_mod,
    default_modulus,
    field_add,
    field_inv,
    field_mul,
    field_neg,
    field_sqrt,
    from_rational_literal,
    is_irreducible_mod_p,
    is_prime,
)

SMALL_FIELDS = [(2, 1), (3, 1), (7, 1), (13, 1), (2, 2), (3, 2), (5, 2), (2, 3), (13, 2)]


def test_f4_generator():
    F = GF(2, 2, (1, 1, 1))
    u = F.gen
    assert u * u == u + 1
    assert field_inv(u) == u + 1
    assert str(u * u) == "u+1"


def test_prime_field_inverse():
    assert field_inv(GF(13)(6)) == GF(13)(11)


def test_rational_literals():
    F = GF(7)
    # oracle: python's modular inverse
    assert int(from_rational_literal(32, 9, F)) == 32 * pow(9, -1, 7) % 7 == 2
    assert int(from_rational_literal(8, 27, F)) == 8 * pow(27, -1, 7) % 7 == 6
    assert int(from_rational_literal(-8, 27, F)) == 1
    with pytest.raises(FieldError):
        from_rational_literal(1, 14, F)


def test_sqrt_of_five():
    assert field_sqrt(GF(13)(5)) is None
    F = GF(13, 2)
    v = field_sqrt(F(5))
    assert v is not None and v * v == F(5)
    assert str(v) == "3*u"  # smallest encoding of the two roots


def test_binomial():
    F = GF(13)
    assert binomial_mod(8, 4, F) == F(math.comb(8, 4) % 13) == F(5)
    with pytest.raises(FieldError):
        binomial_mod(3, 5, F)


def test_bad_characteristic():
    with pytest.raises(FieldError):
        GF(4)
    with pytest.raises(FieldError):
        GF(5, 2, (1, 0, 1))  # u^2 + 1 = (u+2)(u+3) over F_5


def test_default_modulus_irreducible():
    for p in (3, 5, 7, 11, 13, 17):
        assert is_irreducible_mod_p(list(default_modulus(p, 2)), p)
    assert default_modulus(13, 2) == (11, 0, 1)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_elements_from_other_field_rejected():
    with pytest.raises(FieldError):
        GF(5)(1) + GF(7)(1)


def _elements(draw_field):
    p, n = draw_field
    F = GF(p, n)
    return F, st.integers(0, F.q - 1).map(lambda v: FieldElement(F, v))


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_field_axioms_exhaustive_small(p, n):
    F = GF(p, n)
    elems = list(F.elements())
    if F.q > 32:
        elems = elems[:32]
    for a in elems:
        assert field_add(a, field_neg(a)) == F.zero
        if a:
            assert field_mul(a, field_inv(a)) == F.one
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            for c in elems[:6]:
                assert a * (b + c) == a * b + a * c


@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_frobenius_is_ring_homomorphism(pn, data):
    F, elems = _elements(pn)
    a, b = data.draw(elems), data.draw(elems)
    p = F.p
    assert (a + b) ** p == a ** p + b ** p
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    assert a ** F.q == a


@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_sqrt_consistent(pn, data):
    F, elems = _elements(pn)
    a = data.draw(elems)
    r = field_sqrt(a)
    squares = {x * x for x in F.elements()}
    assert (r is not None) == (a in squares)
    if r is not None:
        assert r * r == a
