import random
from fractions import Fraction

import pytest

from ospkernel.scalars import (
    CycloNumber,
    GenericField,
    IntPoly,
    InvalidScalar,
    Scalar,
    SpecializedField,
    VanishingDenominator,
    cyclo_order,
    cyclotomic_polynomial,
    specialize_scalar,
)

F = GenericField()


def rand_poly(rng, max_terms=3, max_exp=3, laurent=True):
    lo = -max_exp if laurent else 0
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[(rng.randint(lo, max_exp), rng.randint(lo, max_exp))] = Fraction(
            rng.randint(-4, 4), rng.randint(1, 3)
        )
    return IntPoly(terms)


def rand_scalar(rng):
    num = rand_poly(rng)
    den = IntPoly.zero()
    while den.is_zero():
        den = rand_poly(rng, max_terms=2, max_exp=2)
    return Scalar(num, den)


def test_inverse_of_r_minus_s():
    assert F.r_minus_s * F.inv_r_minus_s == F.one


def test_q_times_q_prime():
    assert F.q * F.q_prime == -(F.q * F.q)


def test_eta_expansion():
    expected = IntPoly({(6, 0): 1, (4, 2): 1, (2, 4): -1, (0, 6): -1})
    assert F.eta == Scalar(expected)
    assert len(F.eta.num.terms) == 4


def test_scalar_reduction_cancels_common_factor():
    a = Scalar(F.r_minus_s.num * IntPoly.monomial(2, 0), F.r_minus_s.num * IntPoly.monomial(0, 2))
    assert a == Scalar(IntPoly.monomial(2, -2))


def test_division_by_zero_raises():
    with pytest.raises(InvalidScalar):
        F.zero.inv()
    with pytest.raises(InvalidScalar):
        Scalar(IntPoly.one(), IntPoly.zero())


def test_canonicalize_idempotent():
    rng = random.Random(7)
    for _ in range(50):
        s = rand_scalar(rng)
        assert s.canonicalize() == s
        assert s.canonicalize().canonicalize() == s.canonicalize()


def test_canonical_den_sign():
    s = Scalar(IntPoly.one(), IntPoly({(4, 0): -1, (0, 4): 1}))  # 1/(s - r)
    _, lead = s.den.leading()
    assert lead > 0
    assert s == -F.inv_r_minus_s


def test_field_axioms_random():
    rng = random.Random(20240901)
    for _ in range(60):
        a, b, c = (rand_scalar(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inv() == F.one


def test_cross_multiplication_equality():
    rng = random.Random(3)
    for _ in range(40):
        a = rand_scalar(rng)
        b = rand_scalar(rng)
        same = (a.num * b.den == b.num * a.den)
        assert (a == b) == same


def test_gaussian_arithmetic():
    G = GenericField(gaussian=True)
    i = G.i
    assert i * i == -G.one
    z = G.one + i
    assert z * z == 2 * i
    assert z * z.inv() == G.one
    assert (G.one + i) - i == G.one


def test_scalar_pow_negative():
    assert F.r_minus_s ** -2 == (F.inv_r_minus_s * F.inv_r_minus_s)


def test_scalar_json_round_trip():
    rng = random.Random(11)
    for _ in range(25):
        s = rand_scalar(rng)
        assert Scalar.from_json(s.to_json()) == s
    g = Scalar(IntPoly.one(), IntPoly.one(), IntPoly.monomial(1, 1), IntPoly.one())
    assert Scalar.from_json(g.to_json()) == g


def test_swap_vars_involution():
    rng = random.Random(5)
    for _ in range(20):
        s = rand_scalar(rng)
        assert s.swap_vars().swap_vars() == s
    assert F.r.swap_vars() == F.s
    assert F.eta.swap_vars() == -F.eta  # (sqrt r + sqrt s)(s - r)


# --- cyclotomic numbers -----------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(24) == (1, 0, 0, 0, -1, 0, 0, 0, 1)


@pytest.mark.parametrize("n", [4, 6, 8, 12, 24])
def test_phi_vanishes_at_generator(n):
    z = CycloNumber.zeta(n)
    acc = CycloNumber.from_rational(n, 0)
    for k, c in enumerate(cyclotomic_polynomial(n)):
        acc = acc + (z ** k) * Fraction(c)
    assert acc.is_zero()
    assert z ** n == CycloNumber.from_rational(n, 1)


def test_orders():
    assert CycloNumber.zeta(4) ** 2 == CycloNumber.from_rational(4, -1)
    assert cyclo_order(CycloNumber.zeta(4) ** 2) == 2
    assert cyclo_order(CycloNumber.zeta(24) ** 8) == 3
    assert cyclo_order(CycloNumber.from_rational(24, 1)) == 1
    assert cyclo_order(CycloNumber.from_rational(24, 2)) is None
    assert cyclo_order(CycloNumber.zeta(24) + 1) is None


def test_cyclo_inverse():
    rng = random.Random(13)
    for _ in range(20):
        z = CycloNumber(24, [Fraction(rng.randint(-3, 3)) for _ in range(8)])
        if z.is_zero():
            continue
        assert z * z.inv() == CycloNumber.from_rational(24, 1)


def test_cyclo_json_round_trip():
    z = CycloNumber.zeta(24, 7) + CycloNumber.from_rational(24, Fraction(2, 3))
    assert CycloNumber.from_json(z.to_json()) == z


# --- specialization ---------------------------------------------------------

def test_specialize_q_order():
    zx = CycloNumber.zeta(24, 1)
    zy = CycloNumber.zeta(24, 3)
    q = specialize_scalar(F.q, zx, zy)
    assert q == CycloNumber.zeta(24, 8)
    assert cyclo_order(q) == 3


def test_specialize_r_minus_s():
    zx = CycloNumber.zeta(24, 1)
    zy = CycloNumber.zeta(24, 3)
    val = specialize_scalar(F.r_minus_s, zx, zy)
    assert val == CycloNumber.zeta(24, 4) - CycloNumber.zeta(24, 12)
    assert val == CycloNumber.zeta(24, 4) + 1  # zeta_24^12 = -1
    assert not val.is_zero()


def test_specialize_vanishing_denominator():
    zx = CycloNumber.zeta(8, 1)
    zy = CycloNumber.zeta(8, 1)
    with pytest.raises(VanishingDenominator):
        specialize_scalar(F.inv_r_minus_s, zx, zy)


def test_specialized_field_rejects_r_equal_s():
    with pytest.raises(VanishingDenominator):
        SpecializedField(8, 1, 1)


def test_specialize_is_homomorphism():
    rng = random.Random(99)
    spec = SpecializedField(24, 1, 3)
    for _ in range(100):
        a = rand_scalar(rng)
        b = rand_scalar(rng)
        try:
            sa, sb = spec.specialize(a), spec.specialize(b)
        except VanishingDenominator:
            continue
        assert spec.specialize(a + b) == sa + sb
        assert spec.specialize(a * b) == sa * sb


def test_specialized_field_constants():
    spec = SpecializedField(24, 1, 3)
    assert spec.q == CycloNumber.zeta(24, 8)
    assert spec.q_half == CycloNumber.zeta(24, 4)
    assert spec.q_half * spec.q_half == spec.q
    assert spec.q * spec.q_inv == spec.one
    assert spec.eta == spec.specialize(F.eta)
