"""Sparse multivariate polynomials and factored affine products."""

import random

import pytest

from pairpack.algebra import ZZ, ModRing
from pairpack.poly import (AffineProduct, ArityMismatch, BudgetExceeded,
                           MultiPoly, RingMismatch, difference_product,
                           product_of_affine_factors)


def rand_poly(rng, ring, arity, max_terms=6, max_exp=3, span=9):
    terms = []
    for _ in range(rng.randrange(max_terms + 1)):
        e = tuple(rng.randrange(max_exp + 1) for _ in range(arity))
        terms.append((e, rng.randrange(-span, span + 1)))
    return MultiPoly(ring, arity, terms)


def test_constructors_and_zero_pruning():
    R = ModRing(5)
    p = MultiPoly(R, 2, [((1, 0), 3), ((1, 0), 2), ((0, 1), 7)])
    # 3 + 2 = 5 = 0 mod 5, so the x-term drops out
    assert p.coefficient((1, 0)) == 0
    assert p.coefficient((0, 1)) == 2
    assert MultiPoly.zero(R, 3).is_zero()
    assert MultiPoly.one(R, 3).coefficient((0, 0, 0)) == 1
    assert MultiPoly.constant(R, 1, 12).coefficient((0,)) == 2
    v = MultiPoly.variable(R, 3, 1)
    assert v.coefficient((0, 1, 0)) == 1
    assert MultiPoly.monomial(R, 2, (2, 1), 4).total_degree() == 3


def test_bad_shapes():
    R = ModRing(5)
    with pytest.raises(ArityMismatch):
        MultiPoly(R, 2, [((1,), 1)])
    with pytest.raises(ValueError):
        MultiPoly(R, 2, [((1, -1), 1)])
    with pytest.raises(ArityMismatch):
        MultiPoly.variable(R, 2, 5)
    a = MultiPoly.one(R, 2)
    with pytest.raises(ArityMismatch):
        a + MultiPoly.one(R, 3)
    with pytest.raises(RingMismatch):
        a + MultiPoly.one(ModRing(7), 2)


def test_arithmetic_matches_evaluation():
    """Ring operations and evaluation must commute."""
    rng = random.Random(5)
    for _ in range(60):
        ring = ModRing(rng.choice((5, 7, 9, 13)))
        arity = rng.randrange(1, 4)
        a = rand_poly(rng, ring, arity)
        b = rand_poly(rng, ring, arity)
        pt = tuple(rng.randrange(ring.n) for _ in range(arity))
        av, bv = a.evaluate(pt), b.evaluate(pt)
        assert (a + b).evaluate(pt) == ring.add(av, bv)
        assert (a - b).evaluate(pt) == ring.sub(av, bv)
        assert (a * b).evaluate(pt) == ring.mul(av, bv)
        assert (a ** 3).evaluate(pt) == ring.mul(av, ring.mul(av, av))
        assert (-a).evaluate(pt) == ring.neg(av)
        assert (a + 2).evaluate(pt) == ring.add(av, 2)
        assert (3 * a).evaluate(pt) == ring.mul(3, av)


def test_arithmetic_over_integers():
    rng = random.Random(6)
    for _ in range(30):
        a = rand_poly(rng, ZZ, 2)
        b = rand_poly(rng, ZZ, 2)
        pt = (rng.randrange(-5, 6), rng.randrange(-5, 6))
        assert (a * b - b * a).is_zero()
        assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)


def test_total_degree():
    R = ModRing(7)
    assert MultiPoly.zero(R, 2).total_degree() == 0
    assert MultiPoly.one(R, 2).total_degree() == 0
    p = MultiPoly(R, 2, [((3, 1), 2), ((0, 2), 1)])
    assert p.total_degree() == 4


def test_binomial_identity():
    R = ModRing(13)
    x = MultiPoly.variable(R, 2, 0)
    y = MultiPoly.variable(R, 2, 1)
    p = (x + y) ** 4
    import math
    for k in range(5):
        assert p.coefficient((4 - k, k)) == math.comb(4, k) % 13


def test_json_round_trip():
    rng = random.Random(7)
    for ring in (ZZ, ModRing(11)):
        for _ in range(20):
            p = rand_poly(rng, ring, 3)
            doc = p.to_json()
            assert doc["arity"] == 3
            for term in doc["terms"]:
                assert isinstance(term["c"], str)
            q = MultiPoly.from_json(ring, doc)
            assert p == q


def test_sorted_terms_deterministic():
    R = ModRing(5)
    terms = [((0, 1), 1), ((2, 0), 3), ((1, 1), 4)]
    p = MultiPoly(R, 2, terms)
    q = MultiPoly(R, 2, list(reversed(terms)))
    assert [e for e, _ in p.sorted_terms()] == sorted(e for e, _ in terms)
    assert p.to_json() == q.to_json()


def test_affine_product_evaluate_and_expand():
    rng = random.Random(8)
    for _ in range(40):
        ring = ModRing(rng.choice((5, 7, 11)))
        arity = rng.randrange(1, 4)
        factors = []
        for _ in range(rng.randrange(1, 5)):
            lin = tuple((i, rng.randrange(ring.n))
                        for i in range(arity) if rng.random() < 0.7)
            factors.append((lin, rng.randrange(ring.n)))
        prod = AffineProduct(ring, arity, factors)
        poly = prod.expand()
        for _ in range(5):
            pt = tuple(rng.randrange(ring.n) for _ in range(arity))
            assert prod.evaluate(pt) == poly.evaluate(pt)


def test_affine_product_multiplication_concatenates():
    R = ModRing(5)
    a = AffineProduct(R, 2, [(((0, 1),), 0)])          # x
    b = AffineProduct(R, 2, [(((1, 1),), 3)])          # y + 3
    ab = a * b
    assert len(ab.factors) == 2
    assert ab.evaluate((2, 4)) == (2 * (4 + 3)) % 5
    assert ab.total_degree() == 2


def test_affine_evaluate_early_zero():
    R = ModRing(7)
    # first factor vanishes at x=3; the big tail must not matter
    factors = [(((0, 1),), 4)] + [(((0, 1),), 1)] * 50
    prod = AffineProduct(R, 1, factors)
    assert prod.evaluate((3,)) == 0


def test_expansion_budget():
    with pytest.raises(BudgetExceeded):
        difference_product(ZZ, 6, 4, budget=50)
    # (x0+1)(x1+1)...(x9+1) has 2^10 terms
    factors = [(((i, 1),), 1) for i in range(10)]
    with pytest.raises(BudgetExceeded):
        product_of_affine_factors(ZZ, 10, factors, budget=100)
    assert len(product_of_affine_factors(ZZ, 10, factors, budget=2000).terms) \
        == 1024


def test_difference_product_small():
    # (x0 - x1)^2 = x0^2 - 2 x0 x1 + x1^2
    p = difference_product(ZZ, 2, 2)
    assert p.coefficient((2, 0)) == 1
    assert p.coefficient((1, 1)) == -2
    assert p.coefficient((0, 2)) == 1
    # mapping form with mixed exponents
    q = difference_product(ZZ, 3, {(0, 1): 1, (1, 2): 1})
    pt = (3, 5, -2)
    assert q.evaluate(pt) == (3 - 5) * (5 + 2)
    with pytest.raises(ArityMismatch):
        difference_product(ZZ, 2, {(0, 2): 1})


def test_difference_product_antisymmetry():
    """Swapping two variables in prod_{i<j} (x_i - x_j) flips the sign."""
    p = difference_product(ZZ, 3, 1)
    rng = random.Random(9)
    for _ in range(10):
        a, b, c = (rng.randrange(-9, 10) for _ in range(3))
        assert p.evaluate((a, b, c)) == -p.evaluate((b, a, c))
