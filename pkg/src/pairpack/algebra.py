"""Exact arithmetic substrates: residue rings, F_p linear algebra, and
cyclotomic integers.

Everything here runs on Python's arbitrary-precision integers; no floating
point is used anywhere.  Ring elements are plain ints kept canonical in
[0, n); the ring handle owns the modulus and performs all reductions.
Cyclotomic integers are integer coefficient vectors modulo x^n - 1, which
is deliberately not a canonical form: zero is decided by exact divisibility
by the n-th cyclotomic polynomial.
"""

from __future__ import annotations

import math
from functools import lru_cache


class NotInvertible(ArithmeticError):
    """Inversion of a residue a with gcd(a, n) > 1."""


class DimensionMismatch(ValueError):
    """Vector lengths disagree with the declared dimension."""


class OrderMismatch(ValueError):
    """Cyclotomic integers over different root orders were combined."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Trial-division primality test; moduli here are desk-scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def mod_inverse(a: int, n: int) -> int:
    """Inverse of a modulo n.  Raises NotInvertible when gcd(a, n) > 1."""
    try:
        return pow(a, -1, n)
    except ValueError:
        raise NotInvertible(f"{a} is not invertible modulo {n}") from None


def factorial_quotient_mod(m: int, d: int, n: int) -> int:
    """(m*d)! / (d!)^m reduced mod n.

    The quotient is a multinomial coefficient, hence an exact integer; it is
    computed over the integers first and reduced once at the end, so the
    result is meaningful for composite n as well.
    """
    if m < 1 or d < 1:
        raise ValueError("m and d must be positive")
    q = math.factorial(m * d) // math.factorial(d) ** m
    return q % n


class ModRing:
    """Handle for the ring Z/(n).  Elements are plain ints in [0, n)."""

    __slots__ = ("n",)

    zero = 0
    one = 1

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise ValueError("modulus must be an integer >= 2")
        self.n = n

    @property
    def is_field(self) -> bool:
        return is_prime(self.n)

    def convert(self, x: int) -> int:
        return x % self.n

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.n

    def neg(self, a: int) -> int:
        return -a % self.n

    def mul(self, a: int, b: int) -> int:
        return a * b % self.n

    def inv(self, a: int) -> int:
        return mod_inverse(a, self.n)

    def units(self) -> tuple[int, ...]:
        """The invertible residues, i.e. those coprime with n."""
        return tuple(a for a in range(1, self.n) if math.gcd(a, self.n) == 1)

    def __eq__(self, other):
        return isinstance(other, ModRing) and self.n == other.n

    def __hash__(self):
        return hash(("ModRing", self.n))

    def __repr__(self):
        return f"ModRing({self.n})"


class IntegerRing:
    """The ring of exact integers, usable wherever a ModRing is."""

    zero = 0
    one = 1
    is_field = False

    def convert(self, x: int) -> int:
        return int(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NotInvertible(f"{a} is not a unit in Z")

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("IntegerRing")

    def __repr__(self):
        return "ZZ"


ZZ = IntegerRing()


# ---------------------------------------------------------------------------
# Vectors over F_p.  Vectors are plain int tuples; the prime travels
# alongside as an argument.

def vec_add(u, v, p):
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return tuple((a + b) % p for a, b in zip(u, v))


def vec_sub(u, v, p):
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return tuple((a - b) % p for a, b in zip(u, v))


def rank_mod_p(vectors, p: int) -> int:
    """Row rank of the given int-tuple vectors over F_p."""
    rows = [[c % p for c in v] for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = mod_inverse(rows[rank][col], p)
        rows[rank] = [c * inv % p for c in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(c - f * d) % p for c, d in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def is_basis(vectors, p: int, k: int) -> bool:
    """True iff the vectors form a basis of (F_p)^k: k of them, independent.

    A wrong count is simply not a basis; a vector of the wrong length is a
    caller bug and raises DimensionMismatch.
    """
    vectors = list(vectors)
    for v in vectors:
        if len(v) != k:
            raise DimensionMismatch(f"vector {v!r} does not have length {k}")
    return len(vectors) == k and rank_mod_p(vectors, p) == k


# ---------------------------------------------------------------------------
# Univariate integer polynomials (coefficient lists, ascending degree) --
# just enough machinery for cyclotomic polynomials.

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul_z(a, b):
    """Product of two integer coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def poly_divmod_monic(num, den):
    """Quotient and remainder of integer polynomials; den must be monic."""
    den = _poly_trim(list(den))
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    _poly_trim(rem)
    dd = len(den) - 1
    if len(rem) - 1 < dd:
        return [], rem
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j, dj in enumerate(den):
                rem[i - dd + j] -= c * dj
    return _poly_trim(quot), _poly_trim(rem)


def poly_eval_z(c, x: int) -> int:
    acc = 0
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def _divisors(n: int) -> list[int]:
    out = []
    f = 1
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            if f != n // f:
                out.append(n // f)
        f += 1
    return sorted(out)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending degree.

    Computed by dividing x^n - 1 exactly by the cyclotomic polynomials of
    the proper divisors of n; results are memoized, so the recursion reuses
    sub-results.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d == n:
            continue
        num, rem = poly_divmod_monic(num, cyclotomic_poly(d))
        if rem:
            raise ArithmeticError(f"non-exact cyclotomic division at n={n}, d={d}")
    return tuple(num)


class CycloInt:
    """An element of Z[w] for w a primitive n-th root of unity.

    Stored as n integer coefficients of powers w^0 .. w^(n-1); products are
    convolutions with exponents wrapped mod n.  The representation is not
    canonical: is_zero() divides by the n-th cyclotomic polynomial, and
    equality compares differences through that test.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        if not isinstance(n, int) or n < 1:
            raise ValueError("root order must be a positive integer")
        c = [0] * n
        for i, v in enumerate(coeffs):
            if v:
                c[i % n] += v
        self.n = n
        self.coeffs = tuple(c)

    @classmethod
    def from_int(cls, n: int, value: int) -> CycloInt:
        return cls(n, (value,))

    @classmethod
    def root_power(cls, n: int, k: int) -> CycloInt:
        """w^k as a cyclotomic integer of order n."""
        c = [0] * n
        c[k % n] = 1
        return cls(n, c)

    def _check(self, other: CycloInt):
        if self.n != other.n:
            raise OrderMismatch(f"root orders {self.n} and {other.n} differ")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycloInt.from_int(self.n, other)
        self._check(other)
        return CycloInt(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycloInt.from_int(self.n, other)
        self._check(other)
        return CycloInt(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloInt(self.n, [other * a for a in self.coeffs])
        self._check(other)
        n = self.n
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        if k >= n:
                            k -= n
                        out[k] += a * b
        return CycloInt(n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined here")
        result = CycloInt.from_int(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        """True iff this element equals zero in Z[w], i.e. the coefficient
        polynomial is divisible by the n-th cyclotomic polynomial."""
        if not any(self.coeffs):
            return True
        _, rem = poly_divmod_monic(list(self.coeffs), cyclotomic_poly(self.n))
        return not rem

    def eval_at_one(self) -> int:
        """Value of the representing polynomial at w = 1 (coefficient sum)."""
        return sum(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycloInt.from_int(self.n, other)
        if not isinstance(other, CycloInt) or self.n != other.n:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        parts = [f"{c}*w^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CycloInt({self.n}, {' + '.join(parts) or '0'})"
