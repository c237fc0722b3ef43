import random
from fractions import Fraction

import pytest

from epwforge.arith import (
    DEGREE,
    ISQRT7,
    PHI21,
    XI3,
    CyclotomicNumber,
    PrimeFieldElement,
    ReductionMap,
    cyc_inverse,
    cyc_reduce,
    cyclotomic_polynomial,
    eval_int_poly_mod,
    find_reduction_primes,
    is_prime,
    residue_reduce,
)
from epwforge.errors import BadDenominator, ZeroInverse

# literal small cyclotomics for the independent division oracle
PHI1 = [-1, 1]
PHI3 = [1, 1, 1]
PHI7 = [1, 1, 1, 1, 1, 1, 1]


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divmod(num, den):
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        q[k] = c
        for j, dj in enumerate(den):
            num[k + j] -= c * dj
    while num and num[-1] == 0:
        num.pop()
    return q, num


def test_cyclotomic_polynomial_small():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(3) == [1, 1, 1]
    assert cyclotomic_polynomial(7) == [1] * 7


def test_cyclotomic_polynomial_21_against_division_oracle():
    # oracle: (x^21 - 1) / (Phi_1 Phi_3 Phi_7), divisors given as literals
    num = [0] * 22
    num[0], num[21] = -1, 1
    den = poly_mul(poly_mul(PHI1, PHI3), PHI7)
    q, rem = poly_divmod(num, den)
    assert rem == []
    assert [int(c) for c in q] == PHI21
    assert len(PHI21) == 13 and PHI21[-1] == 1
    # frozen value from the oracle above
    assert PHI21 == [1, -1, 0, 1, -1, 0, 1, 0, -1, 1, 0, -1, 1]


def test_cyc_reduce_powers():
    one = CyclotomicNumber.one()
    assert CyclotomicNumber.zeta_power(21) == one
    # degree 11 stays as is
    z11 = cyc_reduce([0] * 11 + [1])
    assert z11.nums == tuple([0] * 11 + [1])
    # zeta^13: oracle = long division of x^13 by Phi_21
    q, rem = poly_divmod([0] * 13 + [1], PHI21)
    expect = [int(c) for c in rem] + [0] * (DEGREE - len(rem))
    assert list(CyclotomicNumber.zeta_power(13).nums) == expect


def test_canonical_form():
    a = cyc_reduce([2, 4, 6], 8)
    assert a.den == 4 and a.nums[:3] == (1, 2, 3)
    b = cyc_reduce([-1], -2)
    assert b.den == 2 and b.nums[0] == 1
    assert cyc_reduce([2, 4], 2) == cyc_reduce([1, 2], 1)
    assert hash(cyc_reduce([2, 4], 2)) == hash(cyc_reduce([1, 2], 1))


def test_inverse():
    one = CyclotomicNumber.one()
    z = CyclotomicNumber.zeta_power(1)
    assert cyc_inverse(one) == one
    assert cyc_inverse(z) == CyclotomicNumber.zeta_power(20)
    rng = random.Random(11)
    for _ in range(50):
        a = CyclotomicNumber(
            [rng.randint(-9, 9) for _ in range(12)], rng.randint(1, 40)
        )
        if a.is_zero():
            continue
        assert a * cyc_inverse(a) == one
    with pytest.raises(ZeroInverse):
        cyc_inverse(CyclotomicNumber.zero())


def test_field_axioms_randomized():
    rng = random.Random(5)

    def rand():
        return CyclotomicNumber(
            [rng.randint(-6, 6) for _ in range(12)], rng.randint(1, 12)
        )

    for _ in range(40):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_reduction_map_basics():
    m = ReductionMap(127, 25)
    assert eval_int_poly_mod(PHI21, 25, 127) == 0
    z = CyclotomicNumber.zeta_power(1)
    assert m.reduce(z).value == 25
    assert m.reduce(CyclotomicNumber.one()).value == 1
    # zeta^7 is a primitive cube root downstairs
    x = m.reduce(XI3).value
    assert x == pow(25, 7, 127) == 19
    assert pow(x, 3, 127) == 1 and x != 1


def test_reduction_map_rejects_bad_input():
    with pytest.raises(ValueError):
        ReductionMap(128, 25)
    with pytest.raises(ValueError):
        ReductionMap(127, 26)
    with pytest.raises(ValueError):
        ReductionMap(131, 2)  # 131 != 1 mod 21, Phi_21 has no root


def test_residue_reduce_is_homomorphism():
    m = ReductionMap(127, 25)
    rng = random.Random(3)
    for _ in range(50):
        a = CyclotomicNumber(
            [rng.randint(-20, 20) for _ in range(12)], rng.randint(1, 50)
        )
        b = CyclotomicNumber(
            [rng.randint(-20, 20) for _ in range(12)], rng.randint(1, 50)
        )
        assert residue_reduce(a + b, m) == residue_reduce(a, m) + \
            residue_reduce(b, m)
        assert residue_reduce(a * b, m) == residue_reduce(a, m) * \
            residue_reduce(b, m)


def test_bad_denominator():
    m = ReductionMap(127, 25)
    with pytest.raises(BadDenominator):
        m.reduce(CyclotomicNumber([1], 127))
    with pytest.raises(BadDenominator):
        m.reduce(CyclotomicNumber([5], 254))


def test_prime_search_roots():
    pairs = find_reduction_primes(3)
    assert pairs[0] == (43, 9)
    assert (127, 25) in pairs
    for p, r in pairs:
        assert is_prime(p) and p % 21 == 1
        assert eval_int_poly_mod(PHI21, r, p) == 0
        ReductionMap(p, r)  # constructor accepts every found pair


def test_prime_field_element():
    a = PrimeFieldElement(130, 127)
    assert a.value == 3
    assert (a * a.inverse()).value == 1
    with pytest.raises(ValueError):
        PrimeFieldElement(1, 91)  # 91 = 7*13
    with pytest.raises(ZeroInverse):
        PrimeFieldElement(0, 127).inverse()


def test_serialization_13_tuple():
    a = CyclotomicNumber([3, -1, 0, 0, 7, 0, 0, 0, 0, 0, 0, 2], 5)
    parts = a.to_strings()
    assert len(parts) == 13 and parts[-1] == "5"
    assert CyclotomicNumber.from_strings(parts) == a


def test_gauss_sum_squares_to_minus_seven():
    assert ISQRT7 * ISQRT7 == CyclotomicNumber.from_int(-7)
    assert ISQRT7.conjugate() == -ISQRT7


def test_conjugation_is_involution():
    rng = random.Random(9)
    for _ in range(20):
        a = CyclotomicNumber(
            [rng.randint(-5, 5) for _ in range(12)], rng.randint(1, 9)
        )
        assert a.conjugate().conjugate() == a
