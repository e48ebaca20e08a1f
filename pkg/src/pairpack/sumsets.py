"""Sumset cardinality bounds in Z/(p^alpha).

beta(p, r, s) is the smallest n such that p divides C(n, k) for every
integer k strictly between n-r and s; |A+B| >= beta(p, |A|, |B|) for
nonempty A, B inside Z/(p^alpha).  verify_cd_bound brute-forces that
inequality over all (or sampled) pairs of nonempty subsets, with subsets
as bitmasks so a sumset is a handful of cyclic shift-ORs.

The closing check mirrors the argument the bound rests on: writing the
coefficients of prod_i (x - c_i) for p^alpha-th roots of unity c_i as
signed elementary symmetric sums, a coefficient that vanishes in Z[w]
has its value at 1 divisible by p.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from random import Random

from .algebra import CycloInt, is_prime


def beta(p: int, r: int, s: int) -> int:
    """Smallest n with p | C(n, k) for every k with n-r < k < s.

    Exact binomials reduced mod p; the scan starts at n = 1 and is done
    by n = r+s-1 at the latest, where the k-range is empty.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1 or s < 1:
        raise ValueError("set sizes must be positive")
    for n in range(1, r + s):
        lo = max(0, n - r + 1)
        if all(math.comb(n, k) % p == 0 for k in range(lo, s)):
            return n
    raise AssertionError("unreachable: the range at n = r+s-1 is empty")


def lucas_binomial_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p through base-p digits; a fast path that must agree
    with the exact reduction."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        nd, n = n % p, n // p
        kd, k = k % p, k // p
        if kd > nd:
            return 0
        out = out * (math.comb(nd, kd) % p) % p
    return out


def sumset(A, B, modulus: int) -> tuple[int, ...]:
    """Sorted distinct pairwise sums mod the modulus."""
    return tuple(sorted({(a + b) % modulus for a in A for b in B}))


@dataclass(frozen=True)
class SumsetInstance:
    """A pair of nonempty subsets of Z/(p^alpha)."""

    p: int
    alpha: int
    A: tuple[int, ...]
    B: tuple[int, ...]

    def __post_init__(self):
        p, alpha = int(self.p), int(self.alpha)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if alpha < 1:
            raise ValueError("alpha must be at least 1")
        mod = p ** alpha
        A = tuple(sorted({int(a) % mod for a in self.A}))
        B = tuple(sorted({int(b) % mod for b in self.B}))
        if not A or not B:
            raise ValueError("subsets must be nonempty")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def modulus(self) -> int:
        return self.p ** self.alpha


def check_bound(inst: SumsetInstance) -> tuple[int, int, bool, bool]:
    """(|A+B|, beta value, bound holds, bound tight) for one pair."""
    card = len(sumset(inst.A, inst.B, inst.modulus))
    bound = beta(inst.p, len(inst.A), len(inst.B))
    return card, bound, card >= bound, card == bound


# ---------------------------------------------------------------------------
# brute-force verification over all subset pairs


@dataclass(frozen=True)
class CDReport:
    """Outcome of a bound sweep.

    violations lists every failing (A, B) pair (expected empty).  Tight
    pairs are counted exactly but only the first tight_cap of them, in
    (A, B) order, are kept.
    """

    p: int
    alpha: int
    pairs: int
    violations: tuple
    tight_count: int
    tight: tuple
    wall_time: float

    def to_json(self, include_timing: bool = False) -> dict:
        doc = {"p": self.p, "alpha": self.alpha, "pairs": self.pairs,
               "violations": [[list(a), list(b)] for a, b in self.violations],
               "tight_count": self.tight_count,
               "tight": [[list(a), list(b)] for a, b in self.tight]}
        if include_timing:
            doc["seconds"] = round(self.wall_time, 3)
        return doc


def _mask_to_set(mask: int, size: int) -> tuple[int, ...]:
    return tuple(a for a in range(size) if mask >> a & 1)


def _beta_table(p: int, size: int):
    return [[0] * (size + 1)] + \
        [[0] + [beta(p, r, s) for s in range(1, size + 1)]
         for r in range(1, size + 1)]


def _sweep_a_range(args):
    """All B against a contiguous range of A-masks; returns raw tallies."""
    p, alpha, a_lo, a_hi = args
    size = p ** alpha
    full = (1 << size) - 1
    table = _beta_table(p, size)
    bits_of = [(A, _mask_to_set(A, size)) for A in range(a_lo, a_hi)]
    pairs = 0
    violations = []
    tight = []
    for B in range(1, full + 1):
        rots = [((B << a) | (B >> (size - a))) & full for a in range(size)]
        s = B.bit_count()
        for A, bits in bits_of:
            acc = 0
            for a in bits:
                acc |= rots[a]
            pairs += 1
            bound = table[len(bits)][s]
            card = acc.bit_count()
            if card < bound:
                violations.append((A, B))
            elif card == bound:
                tight.append((A, B))
    violations.sort()
    tight.sort()
    return pairs, violations, len(tight), tight


def verify_cd_bound(p: int, alpha: int, sample: "int | None" = None,
                    seed: "int | None" = None, jobs: "int | None" = None,
                    tight_cap: int = 32) -> CDReport:
    """Check |A+B| >= beta(p, |A|, |B|) over nonempty subsets of Z/(p^alpha).

    Exhaustive by default: every one of (2^(p^alpha) - 1)^2 ordered pairs,
    sharded by A-mask ranges when jobs > 1, merged exactly.  With sample,
    that many seeded-uniform pairs instead.
    """
    if not is_prime(p) or alpha < 1:
        raise ValueError("need a prime p and alpha >= 1")
    size = p ** alpha
    full = (1 << size) - 1
    start = time.perf_counter()

    if sample is None:
        if jobs and jobs > 1:
            cuts = [1 + (full * i) // jobs for i in range(jobs)] + [full + 1]
            shards = [(p, alpha, cuts[i], cuts[i + 1]) for i in range(jobs)
                      if cuts[i] < cuts[i + 1]]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_sweep_a_range, shards))
        else:
            parts = [_sweep_a_range((p, alpha, 1, full + 1))]
        pairs = sum(x[0] for x in parts)
        violations = [pr for x in parts for pr in x[1]]
        tight_count = sum(x[2] for x in parts)
        tight = [pr for x in parts for pr in x[3]][:tight_cap]
    else:
        if seed is None:
            raise ValueError("sample mode needs a seed")
        rng = Random(seed)
        table = _beta_table(p, size)
        pairs = int(sample)
        violations = []
        all_tight = []
        for _ in range(pairs):
            A = rng.randrange(1, full + 1)
            B = rng.randrange(1, full + 1)
            bits = _mask_to_set(A, size)
            rots = [((B << a) | (B >> (size - a))) & full for a in bits]
            acc = 0
            for r in rots:
                acc |= r
            bound = table[len(bits)][B.bit_count()]
            card = acc.bit_count()
            if card < bound:
                violations.append((A, B))
            elif card == bound:
                all_tight.append((A, B))
        tight_count = len(all_tight)
        all_tight.sort()
        violations.sort()
        tight = all_tight[:tight_cap]

    wall = time.perf_counter() - start
    unpack = lambda prs: tuple((_mask_to_set(a, size), _mask_to_set(b, size))
                               for a, b in prs)
    return CDReport(p, alpha, pairs, unpack(violations), tight_count,
                    unpack(tight), wall)


# ---------------------------------------------------------------------------
# coefficients of prod (x - c_i) for roots of unity c_i


def root_product_coefficients(order: int, exponents) -> list[CycloInt]:
    """Ascending x-coefficients of prod_i (x - w^(e_i)) over Z[w]."""
    coeffs = [CycloInt.from_int(order, 1)]
    for e in exponents:
        root = CycloInt.root_power(order, e)
        nxt = [CycloInt(order)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * root
        coeffs = nxt
    return coeffs


def elementary_symmetric_roots(order: int, exponents, j: int) -> CycloInt:
    """sigma_j of the roots w^(e_i): a sum over j-element subsets."""
    total = CycloInt(order)
    for combo in combinations(tuple(exponents), j):
        total = total + CycloInt.root_power(order, sum(combo))
    return total


def coefficient_divisibility_check(p: int, alpha: int, exponents) -> bool:
    """Both halves of the symmetric-function argument, on one root list.

    The x^k coefficient of prod (x - w^(e_i)) must match the signed
    elementary symmetric sum (-1)^(n-k) sigma_(n-k), and whenever that
    coefficient vanishes in Z[w] its value at 1 must be divisible by p.
    """
    order = p ** alpha
    exps = tuple(int(e) for e in exponents)
    n = len(exps)
    coeffs = root_product_coefficients(order, exps)
    for k in range(n + 1):
        sig = elementary_symmetric_roots(order, exps, n - k)
        if (n - k) % 2:
            sig = -sig
        if not (coeffs[k] - sig).is_zero():
            return False
        if coeffs[k].is_zero() and coeffs[k].eval_at_one() % p != 0:
            return False
    return True
