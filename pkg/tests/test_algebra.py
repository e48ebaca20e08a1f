"""Ring handles, vector helpers and cyclotomic integers."""

import random

import pytest

from pairpack.algebra import (ZZ, CycloInt, DimensionMismatch, ModRing,
                              NotInvertible, OrderMismatch, cyclotomic_poly,
                              factorial_quotient_mod, is_basis, is_prime,
                              mod_inverse, poly_eval_z, poly_mul_z,
                              rank_mod_p, vec_add, vec_sub)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for n in range(-3, 32):
        assert is_prime(n) == (n in primes)
    assert is_prime(7919)
    assert not is_prime(7917)


def test_mod_inverse():
    for n in (2, 5, 9, 24, 97):
        for a in range(1, n):
            if is_prime(n) or __import__("math").gcd(a, n) == 1:
                assert a * mod_inverse(a, n) % n == 1
    with pytest.raises(NotInvertible):
        mod_inverse(3, 9)
    with pytest.raises(NotInvertible):
        mod_inverse(0, 7)


def test_factorial_quotient_mod():
    import math
    # (md)! / (d!)^m is a multinomial, hence integral
    for m in range(1, 6):
        for d in range(1, 4):
            exact = math.factorial(m * d) // math.factorial(d) ** m
            for n in (2, 3, 5, 7, 9):
                assert factorial_quotient_mod(m, d, n) == exact % n
    assert factorial_quotient_mod(3, 1, 3) == 0          # 3! mod 3
    assert factorial_quotient_mod(2, 1, 5) == 2


def test_modring_basics():
    R = ModRing(7)
    assert R.is_field
    assert ModRing(9).is_field is False
    assert R.add(5, 4) == 2
    assert R.mul(3, 5) == 1
    assert R.neg(2) == 5
    assert R.sub(1, 3) == 5
    assert R.inv(3) == 5
    assert R.convert(-1) == 6
    assert ModRing(7) == ModRing(7)
    assert ModRing(7) != ModRing(5)
    assert len({ModRing(7), ModRing(7), ModRing(5)}) == 2
    assert ModRing(9).units() == (1, 2, 4, 5, 7, 8)
    with pytest.raises(NotInvertible):
        ModRing(9).inv(3)


def test_integer_ring():
    assert ZZ.add(2, 3) == 5
    assert ZZ.mul(-2, 3) == -6
    assert ZZ.convert(17) == 17
    assert ZZ.inv(1) == 1
    assert ZZ.inv(-1) == -1
    with pytest.raises(NotInvertible):
        ZZ.inv(2)


def test_vec_ops():
    assert vec_add((1, 2), (2, 2), 3) == (0, 1)
    assert vec_sub((0, 1), (2, 2), 3) == (1, 2)
    with pytest.raises(DimensionMismatch):
        vec_add((1,), (1, 2), 3)


def test_rank_and_basis():
    assert rank_mod_p(((1, 0), (0, 1)), 3) == 2
    assert rank_mod_p(((1, 2), (2, 4)), 5) == 1
    assert rank_mod_p(((1, 2), (2, 4)), 3) == 1
    assert is_basis(((1, 0), (0, 1)), 3, 2)
    assert is_basis(((1, 1), (1, 2)), 3, 2)
    assert not is_basis(((1, 1), (2, 2)), 3, 2)
    assert not is_basis(((1, 0),), 3, 2)
    # (1,2) and (2,4) are dependent mod 3 and mod 5 alike
    assert not is_basis(((1, 2), (2, 4)), 5, 2)


def test_cyclotomic_known_values():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    for p in (3, 5, 7, 11):
        assert cyclotomic_poly(p) == (1,) * p


def test_cyclotomic_degree_and_product():
    import math

    def phi(n):
        return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)

    for n in range(1, 31):
        assert len(cyclotomic_poly(n)) - 1 == phi(n)
        prod = [1]
        for d in range(1, n + 1):
            if n % d == 0:
                prod = poly_mul_z(prod, cyclotomic_poly(d))
        assert tuple(prod) == tuple([-1] + [0] * (n - 1) + [1])


def test_cyclotomic_value_at_one():
    # prime powers give p, everything else (n > 1) gives 1
    assert poly_eval_z(cyclotomic_poly(9), 1) == 3
    assert poly_eval_z(cyclotomic_poly(8), 1) == 2
    assert poly_eval_z(cyclotomic_poly(25), 1) == 5
    for n in (6, 10, 12, 15, 24):
        assert poly_eval_z(cyclotomic_poly(n), 1) == 1


def test_cycloint_construction_folds():
    z = CycloInt(5, (1, 2, 0, 0, 0, 3))     # exponent 5 wraps to 0
    assert z.coeffs == (4, 2, 0, 0, 0)
    assert CycloInt.from_int(5, 7).coeffs == (7, 0, 0, 0, 0)
    assert CycloInt.root_power(5, 7).coeffs == (0, 0, 1, 0, 0)


def test_cycloint_arithmetic():
    w = CycloInt.root_power(7, 1)
    assert (w ** 7).coeffs == CycloInt.from_int(7, 1).coeffs
    assert ((w + 1) * (w - 1) - (w * w - 1)).is_zero()
    assert (3 * w - w - w - w).is_zero()
    assert (2 - w).coeffs == (2, -1, 0, 0, 0, 0, 0)
    with pytest.raises(OrderMismatch):
        CycloInt.root_power(5, 1) + CycloInt.root_power(7, 1)


def test_cycloint_zero_detection():
    # the full sum of n-th roots vanishes for prime n
    for n in (3, 5, 7, 11):
        s = CycloInt(n, (1,) * n)
        assert s.is_zero()
        assert not CycloInt(n, (1,) * (n - 1)).is_zero()
    # the cyclotomic polynomial itself evaluates to zero at w
    for n in (4, 6, 9, 12):
        assert CycloInt(n, cyclotomic_poly(n)).is_zero()
    assert not CycloInt.root_power(9, 3).is_zero()
    assert CycloInt(1, (0,)).is_zero()
    assert not CycloInt(1, (2,)).is_zero()


def test_cycloint_equality_is_semantic():
    # 1 + w + w^2 + w^3 + w^4 == 0 in Z[w] for a primitive 5th root
    assert CycloInt(5, (1, 1, 1, 1, 1)) == CycloInt(5, (0, 0, 0, 0, 0))
    assert CycloInt(5, (1, 1, 1, 1, 1)) == 0
    assert CycloInt(6, (1, 0, 0, 0, 0, 0)) == 1
    # w^3 = -1 for a 6th root: w^3 + 1 == 0
    assert CycloInt.root_power(6, 3) == CycloInt.from_int(6, -1)
    assert CycloInt.root_power(8, 1) != CycloInt.root_power(8, 3)


def test_cycloint_eval_at_one():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randrange(2, 13)
        coeffs = [rng.randrange(-5, 6) for _ in range(2 * n)]
        z = CycloInt(n, coeffs)
        assert z.eval_at_one() == sum(coeffs)


def test_cycloint_mul_matches_convolution():
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randrange(2, 10)
        a = [rng.randrange(-4, 5) for _ in range(n)]
        b = [rng.randrange(-4, 5) for _ in range(n)]
        prod = CycloInt(n, a) * CycloInt(n, b)
        expect = [0] * n
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                expect[(i + j) % n] += ai * bj
        assert prod.coeffs == tuple(expect)
