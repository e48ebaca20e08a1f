"""Sparse exact multivariate polynomials over a pluggable coefficient ring.

Two representations are used side by side:

* ``MultiPoly`` keeps a sparse map from exponent vectors to nonzero
  coefficients, for paths that need to read individual coefficients.
* ``AffineProduct`` keeps a product of degree-1 factors unexpanded, for
  evaluation-heavy paths where the expansion would have astronomically many
  terms but a point value is cheap.

Conversion from factored to expanded form is explicit and guarded by a term
budget.  The coefficient ring (exact integers or a residue ring) is fixed at
construction; mixing rings is an error, never a coercion.
"""

from __future__ import annotations

import math

from .algebra import ModRing, ZZ


class ArityMismatch(ValueError):
    """Polynomials or points with different variable counts were combined."""


class RingMismatch(ValueError):
    """Polynomials over different coefficient rings were combined."""


class BudgetExceeded(RuntimeError):
    """An expansion would exceed the configured term budget."""


DEFAULT_TERM_BUDGET = 10_000_000


def _check_pair(a, b):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")
    if a.arity != b.arity:
        raise ArityMismatch(f"arity {a.arity} vs {b.arity}")


class MultiPoly:
    """Sparse polynomial: exponent tuples mapped to nonzero ring elements."""

    __slots__ = ("ring", "arity", "terms")

    def __init__(self, ring, arity: int, terms=None):
        self.ring = ring
        self.arity = int(arity)
        clean: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = tuple(int(x) for x in e)
                if len(e) != self.arity:
                    raise ArityMismatch(f"exponent {e} in arity-{self.arity} polynomial")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                c = ring.convert(c)
                if e in clean:
                    c = ring.add(clean[e], c)
                if c == ring.zero:
                    clean.pop(e, None)
                else:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def zero(cls, ring, arity: int) -> MultiPoly:
        return cls(ring, arity)

    @classmethod
    def constant(cls, ring, arity: int, value) -> MultiPoly:
        return cls(ring, arity, {(0,) * arity: value})

    @classmethod
    def one(cls, ring, arity: int) -> MultiPoly:
        return cls.constant(ring, arity, ring.one)

    @classmethod
    def monomial(cls, ring, arity: int, exponents, coeff=1) -> MultiPoly:
        return cls(ring, arity, {tuple(exponents): coeff})

    @classmethod
    def variable(cls, ring, arity: int, index: int) -> MultiPoly:
        if not 0 <= index < arity:
            raise ArityMismatch(f"variable index {index} out of range for arity {arity}")
        e = [0] * arity
        e[index] = 1
        return cls(ring, arity, {tuple(e): ring.one})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.ring, self.arity, other)
        _check_pair(self, other)
        ring = self.ring
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = ring.add(out.get(e, ring.zero), c)
            if s == ring.zero:
                out.pop(e, None)
            else:
                out[e] = s
        res = MultiPoly(self.ring, self.arity)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        ring = self.ring
        res = MultiPoly(self.ring, self.arity)
        res.terms = {e: ring.neg(c) for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.ring, self.arity, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        ring = self.ring
        if isinstance(other, int):
            other = ring.convert(other)
            res = MultiPoly(self.ring, self.arity)
            if other != ring.zero:
                terms = {}
                for e, c in self.terms.items():
                    c = ring.mul(c, other)
                    if c != ring.zero:
                        terms[e] = c
                res.terms = terms
            return res
        _check_pair(self, other)
        out: dict = {}
        zero = ring.zero
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = ring.add(out.get(e, zero), ring.mul(ca, cb))
                if s == zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        res = MultiPoly(self.ring, self.arity)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.ring, self.arity)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.ring == other.ring and self.arity == other.arity
                and self.terms == other.terms)

    __hash__ = None

    def coefficient(self, exponents):
        """The stored coefficient at the given exponent vector, or ring zero."""
        e = tuple(exponents)
        if len(e) != self.arity:
            raise ArityMismatch(f"exponent {e} in arity-{self.arity} polynomial")
        return self.terms.get(e, self.ring.zero)

    def total_degree(self) -> int:
        """Largest exponent sum over the stored terms (0 for the zero polynomial)."""
        return max((sum(e) for e in self.terms), default=0)

    def evaluate(self, point):
        if len(point) != self.arity:
            raise ArityMismatch(f"point of length {len(point)} for arity {self.arity}")
        ring = self.ring
        if isinstance(ring, ModRing):
            n = ring.n
            total = 0
            for e, c in self.terms.items():
                v = c
                for x, k in zip(point, e):
                    if k:
                        v = v * pow(x, k, n) % n
                total += v
            return total % n
        total = ring.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                for _ in range(k):
                    v = ring.mul(v, x)
            total = ring.add(total, v)
        return total

    def sorted_terms(self):
        """Terms as (exponents, coeff) pairs in lexicographic exponent order."""
        return sorted(self.terms.items())

    def to_json(self) -> dict:
        """Stable JSON form; coefficients are decimal strings."""
        return {
            "arity": self.arity,
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, ring, doc: dict) -> MultiPoly:
        terms = [(tuple(t["e"]), int(t["c"])) for t in doc["terms"]]
        return cls(ring, doc["arity"], terms)

    def __repr__(self):
        shown = ", ".join(f"{e}:{c}" for e, c in self.sorted_terms()[:4])
        more = "" if len(self.terms) <= 4 else f", ... {len(self.terms)} terms"
        return f"MultiPoly(arity={self.arity}, {{{shown}{more}}})"


class AffineProduct:
    """A product of affine factors, kept unexpanded.

    Each factor is ``((var, coeff), ...), const`` and stands for
    sum(coeff * x_var) + const.  Points are evaluated factor by factor, so
    the cost is linear in the number of factors even when the expanded form
    would be enormous.
    """

    __slots__ = ("ring", "arity", "factors")

    def __init__(self, ring, arity: int, factors):
        self.ring = ring
        self.arity = int(arity)
        clean = []
        for linear, const in factors:
            lin = tuple((int(i), ring.convert(c)) for i, c in linear
                        if ring.convert(c) != ring.zero)
            for i, _ in lin:
                if not 0 <= i < self.arity:
                    raise ArityMismatch(f"variable {i} in arity-{self.arity} product")
            clean.append((lin, ring.convert(const)))
        self.factors = tuple(clean)

    def total_degree(self) -> int:
        """Number of factors with a nonzero linear part (an upper bound that
        is exact over an integral domain)."""
        return sum(1 for lin, _ in self.factors if lin)

    def evaluate(self, point):
        if len(point) != self.arity:
            raise ArityMismatch(f"point of length {len(point)} for arity {self.arity}")
        ring = self.ring
        if isinstance(ring, ModRing):
            n = ring.n
            acc = 1
            for lin, const in self.factors:
                v = const
                for i, c in lin:
                    v += c * point[i]
                acc = acc * v % n
                if acc == 0:
                    return 0
            return acc
        acc = ring.one
        for lin, const in self.factors:
            v = const
            for i, c in lin:
                v = ring.add(v, ring.mul(c, point[i]))
            acc = ring.mul(acc, v)
        return acc

    def __mul__(self, other: AffineProduct) -> AffineProduct:
        _check_pair(self, other)
        res = AffineProduct(self.ring, self.arity, ())
        res.factors = self.factors + other.factors
        return res

    def expand(self, budget: int = DEFAULT_TERM_BUDGET) -> MultiPoly:
        """Multiply the factors out into a MultiPoly.

        Raises BudgetExceeded if the predicted or actual term count passes
        the budget.
        """
        predicted = _predict_terms(self, budget)
        if predicted > budget:
            raise BudgetExceeded(
                f"predicted {predicted} terms exceeds budget {budget}")
        ring = self.ring
        result = MultiPoly.one(ring, self.arity)
        for lin, const in self.factors:
            terms = [((0,) * self.arity, const)] if const != ring.zero else []
            for i, c in lin:
                e = [0] * self.arity
                e[i] = 1
                terms.append((tuple(e), c))
            result = result * MultiPoly(ring, self.arity, terms)
            if len(result.terms) > budget:
                raise BudgetExceeded(
                    f"intermediate expansion passed {budget} terms")
        return result


def _predict_terms(prod: AffineProduct, budget: int) -> int:
    """Cheap a-priori bound on the expanded term count."""
    per_factor = 1
    for lin, const in prod.factors:
        per_factor *= len(lin) + (1 if const != prod.ring.zero else 0)
        if per_factor > budget:
            break
    # monomial-count bound: all monomials of total degree <= deg in `arity` vars
    deg = prod.total_degree()
    dense = math.comb(deg + prod.arity, prod.arity)
    return min(per_factor, dense)


def product_of_affine_factors(ring, arity: int, factors,
                              budget: int = DEFAULT_TERM_BUDGET) -> MultiPoly:
    """Exact expansion of a product of affine factors.

    ``factors`` is an iterable of ``(((var, coeff), ...), const)`` entries;
    an empty list yields the constant 1.
    """
    return AffineProduct(ring, arity, factors).expand(budget)


def _difference_power(ring, arity: int, i: int, j: int, e: int) -> MultiPoly:
    """(x_i - x_j)^e expanded through the binomial theorem."""
    terms = []
    for t in range(e + 1):
        exps = [0] * arity
        exps[i] = e - t
        exps[j] = t
        c = math.comb(e, t) * (-1) ** t
        terms.append((tuple(exps), c))
    return MultiPoly(ring, arity, terms)


def difference_product(ring, arity: int, exponents,
                       budget: int = DEFAULT_TERM_BUDGET) -> MultiPoly:
    """Exact expansion of prod_{i<j} (x_i - x_j)^{e_ij}.

    ``exponents`` is either a mapping from (i, j) pairs with i < j to
    non-negative exponents, or a single int applied to every pair.
    """
    if isinstance(exponents, int):
        exponents = {(i, j): exponents
                     for i in range(arity) for j in range(i + 1, arity)}
    result = MultiPoly.one(ring, arity)
    for (i, j), e in sorted(exponents.items()):
        if not 0 <= i < j < arity:
            raise ArityMismatch(f"pair ({i}, {j}) out of range for arity {arity}")
        if e < 0:
            raise ValueError("exponents must be non-negative")
        if e == 0:
            continue
        result = result * _difference_power(ring, arity, i, j, e)
        if len(result.terms) > budget:
            raise BudgetExceeded(f"expansion passed {budget} terms")
    return result
