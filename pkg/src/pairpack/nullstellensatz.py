"""Coefficient extraction by grid interpolation, and full-field sums.

For a polynomial f of total degree at most c_1 + ... + c_n and finite grids
A_1, ..., A_n with |A_i| = c_i + 1, the coefficient of x_1^c_1 ... x_n^c_n
equals

    sum over (a_1 .. a_n) in A_1 x ... x A_n of
        f(a_1 .. a_n) / (phi_1'(a_1) ... phi_n'(a_n)),

where phi_i(x) = prod_{b in A_i} (x - b).  Over a field the denominators
are invertible because grid elements are distinct; over a general
commutative ring the same identity is applied in cleared-denominator form.
A nonzero coefficient forces a grid point where f itself is nonzero, which
is what the witness search exhumes.

Also here: the helpers specific to pairing the nonzero residues of a prime
field with prescribed differences, built as unexpanded affine products.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .algebra import ModRing, ZZ
from .poly import AffineProduct, ArityMismatch, RingMismatch


class DegreeTooHigh(ValueError):
    """deg f exceeds the sum of the grid degrees c_i."""


class NonInvertibleDenominator(ArithmeticError):
    """The cleared denominator is not invertible in the coefficient ring."""


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid A_1 x ... x A_n; set sizes fix the target exponents
    c_i = |A_i| - 1."""

    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        norm = tuple(tuple(int(a) for a in s) for s in self.sets)
        for s in norm:
            if not s:
                raise ValueError("grid sets must be nonempty")
            if len(set(s)) != len(s):
                raise ValueError(f"grid set {s} has repeated elements")
        object.__setattr__(self, "sets", norm)

    @property
    def arity(self) -> int:
        return len(self.sets)

    @property
    def target_exponents(self) -> tuple[int, ...]:
        return tuple(len(s) - 1 for s in self.sets)

    def points(self):
        """Grid points in lexicographic order over the sets as given."""
        return itertools.product(*self.sets)


def _check_grid(f, grid: GridSpec):
    if grid.arity != f.arity:
        raise ArityMismatch(f"grid arity {grid.arity} vs polynomial {f.arity}")
    limit = sum(grid.target_exponents)
    deg = f.total_degree()
    if deg > limit:
        raise DegreeTooHigh(f"deg {deg} > sum of grid degrees {limit}")


def _derivative_values(grid: GridSpec, ring):
    """phi_i'(a) = prod_{b in A_i, b != a} (a - b), per axis and element.

    Distinctness within each A_i is re-checked in the ring, since converting
    raw integers into a residue ring can collapse elements.
    """
    tables = []
    for s in grid.sets:
        conv = [ring.convert(a) for a in s]
        if len(set(conv)) != len(conv):
            raise ValueError(f"grid set {s} collapses in {ring!r}")
        row = []
        for a in conv:
            v = ring.one
            for b in conv:
                if b != a:
                    v = ring.mul(v, ring.sub(a, b))
            row.append(v)
        tables.append(row)
    return tables


def integral_over_field(f) -> int:
    """Sum of f over all points of F_p^m, reduced mod p.

    f may be a MultiPoly or an AffineProduct; its ring must be a prime
    residue ring.
    """
    ring = f.ring
    if not isinstance(ring, ModRing) or not ring.is_field:
        raise ValueError("full-field sums need a prime residue ring")
    p = ring.n
    total = 0
    for point in itertools.product(range(p), repeat=f.arity):
        total += f.evaluate(point)
    return total % p


def cn_coefficient_scaled(f, grid: GridSpec):
    """The cleared-denominator interpolation sum.

    Returns (N, D) with N = C * D, where C is the coefficient of
    x_1^c_1 ... x_n^c_n in f and D is the product of all phi_i'(a) over
    every axis i and every a in A_i.  Works over any coefficient ring; no
    division is performed.
    """
    _check_grid(f, grid)
    ring = f.ring
    phi = _derivative_values(grid, ring)
    # complement[i][t] = product of phi_i' over A_i minus its t-th element,
    # built from prefix and suffix products to avoid division
    complement = []
    denom = ring.one
    for row in phi:
        size = len(row)
        prefix = [ring.one] * (size + 1)
        for t in range(size):
            prefix[t + 1] = ring.mul(prefix[t], row[t])
        suffix = [ring.one] * (size + 1)
        for t in range(size - 1, -1, -1):
            suffix[t] = ring.mul(suffix[t + 1], row[t])
        complement.append([ring.mul(prefix[t], suffix[t + 1]) for t in range(size)])
        denom = ring.mul(denom, prefix[size])
    total = ring.zero
    axes = [range(len(s)) for s in grid.sets]
    conv_sets = [[ring.convert(a) for a in s] for s in grid.sets]
    for idx in itertools.product(*axes):
        point = tuple(conv_sets[i][t] for i, t in enumerate(idx))
        v = f.evaluate(point)
        if v == ring.zero:
            continue
        for i, t in enumerate(idx):
            v = ring.mul(v, complement[i][t])
        total = ring.add(total, v)
    return total, denom


def cn_coefficient(f, grid: GridSpec):
    """The coefficient of x_1^c_1 ... x_n^c_n in f, via the grid sum.

    Over a prime residue ring the sum is taken with per-point inverse
    denominators.  Over the integers or a composite residue ring the
    cleared-denominator sum is divided exactly at the end; when that
    division is not uniquely possible, NonInvertibleDenominator is raised.
    """
    _check_grid(f, grid)
    ring = f.ring
    if isinstance(ring, ModRing) and ring.is_field:
        p = ring.n
        phi = _derivative_values(grid, ring)
        weights = [[ring.inv(v) for v in row] for row in phi]
        total = 0
        axes = [range(len(s)) for s in grid.sets]
        conv_sets = [[ring.convert(a) for a in s] for s in grid.sets]
        for idx in itertools.product(*axes):
            point = tuple(conv_sets[i][t] for i, t in enumerate(idx))
            v = f.evaluate(point)
            if v == 0:
                continue
            for i, t in enumerate(idx):
                v = v * weights[i][t] % p
            total += v
        return total % p
    num, den = cn_coefficient_scaled(f, grid)
    if isinstance(ring, ModRing):
        if math.gcd(den, ring.n) != 1:
            raise NonInvertibleDenominator(
                f"denominator {den} is not invertible mod {ring.n}")
        return num * ring.inv(den) % ring.n
    if den == 0 or num % den:
        raise NonInvertibleDenominator(
            f"{num} is not an exact multiple of {den}")
    return num // den


def cn_witness(f, grid: GridSpec):
    """First grid point (lexicographic over the sets as given) where f is
    nonzero, or None when f vanishes on the whole grid."""
    if grid.arity != f.arity:
        raise ArityMismatch(f"grid arity {grid.arity} vs polynomial {f.arity}")
    ring = f.ring
    for point in grid.points():
        conv = tuple(ring.convert(a) for a in point)
        if f.evaluate(conv) != ring.zero:
            return conv
    return None


# ---------------------------------------------------------------------------
# The prescribed-difference pairing polynomials over F_p.

def partition_polynomial(p: int, d, include_nonzero_factors: bool = True) -> AffineProduct:
    """Affine product that is nonzero at (c_1 .. c_m) exactly when the pairs
    {c_i, c_i + d_i} are disjoint (and, with the optional unit factors, also
    avoid zero), i.e. when they partition the nonzero residues.

    Factors: optionally x_i and x_i + d_i for each i, and for i < j the four
    differences (x_i - x_j), (x_i + d_i - x_j), (x_i - x_j - d_j),
    (x_i + d_i - x_j - d_j).
    """
    ring = ModRing(p)
    m = len(d)
    d = [x % p for x in d]
    factors = []
    if include_nonzero_factors:
        for i in range(m):
            factors.append((((i, 1),), 0))
            factors.append((((i, 1),), d[i]))
    for i in range(m):
        for j in range(i + 1, m):
            pair = ((i, 1), (j, -1))
            factors.append((pair, 0))
            factors.append((pair, d[i]))
            factors.append((pair, -d[j]))
            factors.append((pair, d[i] - d[j]))
    return AffineProduct(ring, m, factors)


def odd_residue_polynomial(p: int) -> AffineProduct:
    """Affine product over F_p that is nonzero at (c_1 .. c_m) exactly when
    the coordinates are the odd residues 1, 3, ..., p-2 in some order.

    Same top-degree homogeneous part as the full pairing polynomial, which
    is what makes the two full-field sums match.
    """
    ring = ModRing(p)
    m = (p - 1) // 2
    factors = []
    for i in range(m):
        factors.append((((i, 1),), 0))       # x_i
        factors.append((((i, 1),), 1))       # x_i + 1
    for i in range(m):
        for j in range(i + 1, m):
            pair = ((i, 1), (j, -1))
            factors.append((pair, 0))        # (x_i - x_j) twice
            factors.append((pair, 0))
            factors.append((pair, -1))       # (x_i - x_j - 1)
            factors.append((pair, 1))        # (x_i - x_j + 1)
    return AffineProduct(ring, m, factors)


def partition_grid(p: int, d) -> GridSpec:
    """Grids A_i = F_p^* minus {-d_i}, matching the pairing polynomial
    without its unit factors (each c_i = p - 3)."""
    sets = []
    for di in d:
        banned = (-di) % p
        sets.append(tuple(a for a in range(1, p) if a != banned))
    return GridSpec(tuple(sets))
