"""The constant term of prod_{i != j} (1 - x_i/x_j)^{a_i}, three ways.

Equivalently: the coefficient of prod x_i^(a - a_i), a = sum a_i, in

    f = prod_{i < j} (-1)^{a_j} (x_j - x_i)^{a_i + a_j}.

The closed form is the multinomial a! / (a_1! ... a_n!).  The brute-force
route expands f literally and reads the coefficient off; it shares nothing
with the other two routes past the basic polynomial type and serves as the
independent oracle.  The evaluation route reproduces the constant through
grid interpolation with consecutive-segment grids, where the sum collapses
to a single point with factorial closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import ZZ
from .poly import BudgetExceeded, MultiPoly, _difference_power

DEFAULT_DEGREE_BUDGET = 24


@dataclass(frozen=True)
class DysonInstance:
    """A vector of positive integer exponents a_1 .. a_n."""

    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if not a:
            raise ValueError("need at least one exponent")
        if any(x < 1 for x in a):
            raise ValueError("exponents must be positive")
        object.__setattr__(self, "a", a)

    @property
    def total(self) -> int:
        return sum(self.a)


def _as_instance(inst) -> DysonInstance:
    if isinstance(inst, DysonInstance):
        return inst
    return DysonInstance(tuple(inst))


def dyson_formula(inst) -> int:
    """The multinomial closed form a! / (a_1! ... a_n!)."""
    inst = _as_instance(inst)
    den = 1
    for x in inst.a:
        den *= math.factorial(x)
    return math.factorial(inst.total) // den


def dyson_bruteforce(inst, max_degree: int = DEFAULT_DEGREE_BUDGET) -> int:
    """Expand f literally and extract the target coefficient.

    The expansion degree sum_{i<j} (a_i + a_j) is capped by max_degree;
    larger instances raise BudgetExceeded.
    """
    inst = _as_instance(inst)
    a = inst.a
    n = len(a)
    total_degree = sum(a[i] + a[j] for i in range(n) for j in range(i + 1, n))
    if total_degree > max_degree:
        raise BudgetExceeded(
            f"expansion degree {total_degree} exceeds budget {max_degree}")
    f = MultiPoly.one(ZZ, n)
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            sign *= (-1) ** a[j]
            # (x_j - x_i)^(a_i + a_j)
            f = f * _difference_power(ZZ, n, j, i, a[i] + a[j])
    target = tuple(inst.total - x for x in a)
    return sign * f.coefficient(target)


def dyson_via_evaluation(inst) -> int:
    """The constant via the collapsed interpolation sum.

    With grids {0, 1, ..., a - a_i} and the shifted pair factors
    prod_s (x_j - x_i + s), s = -a_i+1 .. a_j, the only nonvanishing grid
    point is x_i = a_1 + ... + a_{i-1}, where both the factors and the
    derivative products have factorial closed forms:

        pair (i, j):   (a_i + ... + a_j)! / (a_{i+1} + ... + a_{j-1})!
        axis i:        (-1)^(a_{i+1}+...+a_n) * (a_1+...+a_{i-1})! * (a_{i+1}+...+a_n)!

    The signed quotient of the two products is exact.
    """
    inst = _as_instance(inst)
    a = inst.a
    n = len(a)
    prefix = [0] * (n + 1)
    for i, x in enumerate(a):
        prefix[i + 1] = prefix[i] + x

    num = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= (-1) ** a[j]
            # inclusive segment sums: a_i + ... + a_j and a_{i+1} + ... + a_{j-1}
            num *= math.factorial(prefix[j + 1] - prefix[i])
            num //= math.factorial(prefix[j] - prefix[i + 1])
    den = 1
    for i in range(n):
        tail = prefix[n] - prefix[i + 1]
        den *= (-1) ** tail
        den *= math.factorial(prefix[i]) * math.factorial(tail)
    if num % den:
        raise ArithmeticError(f"collapsed sum {num} not divisible by {den}")
    return num // den


def packing_coefficient(m: int, d: int) -> int:
    """Coefficient of (x_1 ... x_m)^((m-1)d) in prod_{i<j} (x_i - x_j)^(2d):
    the signed multinomial (-1)^(d*m*(m-1)/2) * (md)! / (d!)^m."""
    if m < 1 or d < 1:
        raise ValueError("m and d must be positive")
    sign = (-1) ** (d * (m * (m - 1) // 2))
    return sign * (math.factorial(m * d) // math.factorial(d) ** m)
