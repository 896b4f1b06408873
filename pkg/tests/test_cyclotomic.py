import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from colorzeta.cyclotomic import (
    CycNumber,
    EmbedDenominatorError,
    ModCycNumber,
    ZeroDivisorError,
    cyclotomic_poly,
    embed_cyc,
    embed_rational,
    euler_phi,
    get_prime_context,
)


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert euler_phi(3) == 2 and euler_phi(4) == 2 and euler_phi(1) == 1


def test_root_power_reduction():
    xi = CycNumber.root_power(3, 1)
    assert (xi * xi).coeffs == (Fraction(-1), Fraction(-1))  # xi^2 = -1 - xi
    assert xi**3 == CycNumber.one(3)
    i = CycNumber.root_power(4, 1)
    assert i * i == CycNumber.from_rational(4, -1)


def test_inverse_example():
    xi = CycNumber.root_power(3, 1)
    a = CycNumber.one(3) + xi
    assert a.inverse() == -1 * xi  # (1+xi)(-xi) = 1
    assert a * a.inverse() == CycNumber.one(3)
    assert CycNumber.one(4).inverse() == CycNumber.one(4)
    with pytest.raises(ZeroDivisionError):
        CycNumber.zero(3).inverse()


def test_conjugate_is_involutive_hom():
    rng = random.Random(5)
    for n in (3, 4):
        for _ in range(30):
            a = CycNumber(n, [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(euler_phi(n))])
            b = CycNumber(n, [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(euler_phi(n))])
            assert a.conjugate().conjugate() == a
            assert (a * b).conjugate() == a.conjugate() * b.conjugate()
            assert (a + b).conjugate() == a.conjugate() + b.conjugate()


@settings(max_examples=60, deadline=None, derandomize=True)
@given(
    st.integers(-40, 40),
    st.integers(-40, 40),
    st.integers(-40, 40),
    st.integers(-40, 40),
    st.integers(-40, 40),
    st.integers(-40, 40),
    st.sampled_from([3, 4]),
)
def test_field_axioms(a0, a1, b0, b1, c0, c1, n):
    a = CycNumber(n, (Fraction(a0, 7), Fraction(a1, 5)))
    b = CycNumber(n, (Fraction(b0, 3), Fraction(b1, 2)))
    c = CycNumber(n, (Fraction(c0, 4), Fraction(c1, 9)))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == CycNumber.one(n)


def test_mod_ring_basics():
    x = ModCycNumber.x_power(5, 3, 1)
    one = ModCycNumber.one(5, 3)
    assert (one + x) ** 5 == ModCycNumber(5, 3, (1, 0, 1))
    assert (one + x).conjugate() == ModCycNumber(5, 3, (1, 0, 1))
    assert x.conjugate() == ModCycNumber.x_power(5, 3, 2)
    const = ModCycNumber.scalar(7, 3, 4)
    assert const.conjugate() == const


def test_frobenius_is_conjugation():
    rng = random.Random(11)
    for n in (3, 4):
        from colorzeta.fcv import prime_range

        for p in prime_range(n, 2, 100):
            for _ in range(12):
                a = ModCycNumber(p, n, [rng.randrange(p) for _ in range(n)])
                assert a**p == a.conjugate()


def test_try_invert_zero_divisor():
    a = ModCycNumber(5, 3, (1, 1, 1))
    with pytest.raises(ZeroDivisorError) as err:
        a.try_invert()
    assert err.value.p == 5
    b = ModCycNumber(5, 3, (2, 1, 0))
    inv = b.try_invert()
    assert b * inv == ModCycNumber.one(5, 3)
    with pytest.raises(ZeroDivisionError):
        ModCycNumber.zero(5, 3).try_invert()


def test_embed_rational():
    assert embed_rational(Fraction(1, 2), 5) == 3
    assert embed_rational(0, 5) == 0
    assert embed_rational(Fraction(1, 5), 5) == 0
    with pytest.raises(EmbedDenominatorError):
        embed_rational(Fraction(1, 5), 5, strict=True)


def test_embed_cyc_examples():
    ctx = get_prime_context(5, 3)
    xi = CycNumber.root_power(3, 1)
    assert embed_cyc(xi, ctx) == ModCycNumber.x_power(5, 3, 1)
    assert embed_cyc(CycNumber.one(3), ctx) == ModCycNumber.one(5, 3)
    a = (CycNumber.one(3) + xi) * Fraction(1, 2)
    assert embed_cyc(a, ctx) == ModCycNumber(5, 3, (3, 3, 0))


def test_embed_cyc_hom_mod_cyclotomic():
    # coefficient-wise embedding is multiplicative after reduction mod Phi_N
    rng = random.Random(3)
    from colorzeta.fcv import prime_range

    for n in (3, 4):
        for p in prime_range(n, 3, 60):
            ctx = get_prime_context(p, n)
            for _ in range(20):
                a = CycNumber(n, [Fraction(rng.randint(-6, 6)) for _ in range(2)])
                b = CycNumber(n, [Fraction(rng.randint(-6, 6)) for _ in range(2)])
                lhs = embed_cyc(a * b, ctx)
                rhs = embed_cyc(a, ctx) * embed_cyc(b, ctx)
                assert lhs.eq_mod_cyclotomic(rhs)
                assert embed_cyc(a.conjugate(), ctx).eq_mod_cyclotomic(
                    embed_cyc(a, ctx).conjugate()
                )


def test_prime_context_inverses():
    for p in (5, 11, 1019):
        ctx = get_prime_context(p, 1 if p == 1019 else 3 if p % 3 == 2 else 4)
        for k in range(1, p):
            assert k * ctx.inv[k] % p == 1


def test_serialization_roundtrip():
    a = CycNumber(3, (Fraction(2, 3), Fraction(-1, 7)))
    assert CycNumber.from_json(a.to_json()) == a
    m = ModCycNumber(7, 4, (1, 2, 3, 4))
    assert ModCycNumber.from_json(m.to_json()) == m
