"""Feasibility scans over unit difference vectors, and the root-of-unity
coefficient behind the odd-prime case.

A scan enumerates (or samples) d-vectors with every entry a unit mod n,
runs the pair-partition solver on each, and aggregates into a ScanReport.
Feasibility only depends on the multiset of differences, so the scan
solves one representative per multiset and weights it by the number of
orderings; totals still count ordered vectors.

The coefficient machinery evaluates two bijection sums over Z[w], w a
primitive n-th root of unity and w_i = w^(d_i):

    perm sum   (pairing form):    sum over pi of prod_i (w_i^pi(i) - w_i^(2m-1-pi(i)))
    perm2 sum  (geometric form):  sum over pi of prod_i (w_i^pi(i) + ... + w_i^(2m-2-pi(i)))

with pi ranging over bijections [m] -> {0..m-1}.  The first equals the
second times prod_i (1 - w_i).  Substituting w_i -> 1 in the second gives
m! (2m-1)!! whatever d is, which for odd prime n = 2m+1 is not divisible
by n; a value not divisible by n certifies the sum is nonzero in Z[w].
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement
from random import Random

from .algebra import CycloInt, is_prime
from .solvers import (Infeasible, InvalidInstance, PartitionInstance,
                      solve_pair_partition)


def units_mod(n: int) -> tuple[int, ...]:
    """Residues in 1..n-1 coprime to n, ascending."""
    return tuple(u for u in range(1, n) if math.gcd(u, n) == 1)


# ---------------------------------------------------------------------------
# scanning


@dataclass(frozen=True)
class ScanReport:
    """Aggregate of one scan.

    instances_total counts ordered d-vectors (units^m for exhaustive runs,
    the draw count for sampled ones).  failures holds one sorted
    representative per infeasible multiset; all orderings of a multiset
    stand or fall together, so the list is empty exactly when every
    scanned vector was feasible.
    """

    n: int
    universe: str
    instances_total: int
    instances_feasible: int
    failures: tuple[tuple[int, ...], ...]
    wall_time: float

    @property
    def all_feasible(self) -> bool:
        return self.instances_feasible == self.instances_total

    def to_json(self, include_timing: bool = False) -> dict:
        doc = {"n": self.n, "universe": self.universe,
               "total": self.instances_total,
               "feasible": self.instances_feasible,
               "failures": [list(f) for f in self.failures]}
        if include_timing:
            doc["seconds"] = round(self.wall_time, 3)
        return doc


def _solve_key(args):
    n, universe, key = args
    inst = PartitionInstance(n, key, universe)
    return key, not isinstance(solve_pair_partition(inst), Infeasible)


def _solve_many(n, universe, keys, jobs):
    """Feasibility of each difference multiset, keyed by sorted tuple."""
    out = {}
    keys = list(keys)
    if jobs and jobs > 1 and len(keys) > 64:
        chunk = max(1, len(keys) // (8 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            args = ((n, universe, k) for k in keys)
            for key, ok in pool.map(_solve_key, args, chunksize=chunk):
                out[key] = ok
    else:
        for k in keys:
            out[k] = _solve_key((n, universe, k))[1]
    return out


def _orderings(key) -> int:
    num = math.factorial(len(key))
    for c in Counter(key).values():
        num //= math.factorial(c)
    return num


def _load_checkpoint(path, n, universe):
    done = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if rec.get("n") == n and rec.get("universe") == universe:
                    done[rec["shard"]] = rec
    except FileNotFoundError:
        pass
    return done


def scan_conjecture(n: int, sample: "int | None" = None,
                    seed: "int | None" = None, jobs: "int | None" = None,
                    checkpoint: "str | None" = None) -> ScanReport:
    """Scan all (or sample many) unit d-vectors mod n for feasibility.

    Odd n pairs the nonzero residues with m = (n-1)/2 differences; even n
    pairs everything with m = n/2.  Exhaustive mode shards the multisets
    by their smallest entry; with a checkpoint path, finished shards are
    appended as JSON lines and skipped on rerun.  Sample mode draws
    `sample` vectors uniformly (seed mandatory) and is deterministic for
    a fixed seed regardless of jobs.
    """
    if n < 3:
        raise InvalidInstance("modulus too small to scan")
    universe = "nonzero" if n % 2 else "full"
    m = (n - 1) // 2 if n % 2 else n // 2
    units = units_mod(n)
    start = time.perf_counter()
    failures: list[tuple[int, ...]] = []

    if sample is None:
        total = feasible = 0
        done = _load_checkpoint(checkpoint, n, universe) if checkpoint else {}
        for u in units:
            if u in done:
                rec = done[u]
                total += rec["total"]
                feasible += rec["feasible"]
                failures.extend(tuple(f) for f in rec["failures"])
                continue
            tail = [v for v in units if v >= u]
            keys = [(u,) + rest
                    for rest in combinations_with_replacement(tail, m - 1)]
            verdict = _solve_many(n, universe, keys, jobs)
            shard_total = shard_feasible = 0
            shard_failures = []
            for key in keys:
                w = _orderings(key)
                shard_total += w
                if verdict[key]:
                    shard_feasible += w
                else:
                    shard_failures.append(key)
            total += shard_total
            feasible += shard_feasible
            failures.extend(shard_failures)
            if checkpoint:
                rec = {"n": n, "universe": universe, "shard": u,
                       "total": shard_total, "feasible": shard_feasible,
                       "failures": [list(f) for f in shard_failures]}
                with open(checkpoint, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
        if total != len(units) ** m:
            raise ArithmeticError("shard totals do not add up")
    else:
        if seed is None:
            raise InvalidInstance("sample mode needs a seed")
        rng = Random(seed)
        draws: Counter = Counter()
        for _ in range(int(sample)):
            key = tuple(sorted(rng.choice(units) for _ in range(m)))
            draws[key] += 1
        verdict = _solve_many(n, universe, sorted(draws), jobs)
        total = int(sample)
        feasible = sum(mult for key, mult in draws.items() if verdict[key])
        failures = sorted(key for key in draws if not verdict[key])

    wall = time.perf_counter() - start
    return ScanReport(n, universe, total, feasible, tuple(failures), wall)


# ---------------------------------------------------------------------------
# bijection sums over Z[w]


def _validated_units(n, d) -> tuple[int, ...]:
    if n < 2:
        raise InvalidInstance(f"root order {n} too small")
    out = tuple(int(x) % n for x in d)
    for x in out:
        if math.gcd(x, n) != 1:
            raise InvalidInstance(f"difference {x} is not a unit mod {n}")
    return out


def _permanent(matrix, n: int) -> CycloInt:
    """Permanent of a square matrix of CycloInt entries: direct bijection
    enumeration up to 8 rows, inclusion-exclusion beyond."""
    m = len(matrix)
    one = CycloInt.from_int(n, 1)
    if m == 0:
        return one
    if m > 8:
        return _permanent_ryser(matrix, n)
    total = CycloInt(n)
    used = [False] * m

    def walk(row, acc):
        nonlocal total
        if row == m:
            total = total + acc
            return
        for c in range(m):
            if not used[c]:
                used[c] = True
                walk(row + 1, acc * matrix[row][c])
                used[c] = False

    walk(0, one)
    return total


def _permanent_ryser(matrix, n: int) -> CycloInt:
    # gray-code subset walk: one column enters or leaves per step
    m = len(matrix)
    zero = CycloInt(n)
    rowsums = [zero] * m
    total = zero
    prev = 0
    for k in range(1, 1 << m):
        gray = k ^ (k >> 1)
        bit = gray ^ prev
        j = bit.bit_length() - 1
        if gray & bit:
            rowsums = [rs + matrix[i][j] for i, rs in enumerate(rowsums)]
        else:
            rowsums = [rs - matrix[i][j] for i, rs in enumerate(rowsums)]
        prev = gray
        prod = rowsums[0]
        for i in range(1, m):
            prod = prod * rowsums[i]
        if gray.bit_count() % 2:
            total = total - prod
        else:
            total = total + prod
    return -total if m % 2 else total


def permanent2_coefficient(n: int, d) -> CycloInt:
    """The geometric-form bijection sum over Z[w].

    Entry (i, c) is the explicit sum w_i^c + w_i^(c+1) + ... + w_i^(2m-2-c)
    with w_i = w^(d_i); no division anywhere.
    """
    d = _validated_units(n, d)
    m = len(d)
    matrix = []
    for di in d:
        row = []
        for c in range(m):
            coeffs = [0] * n
            for e in range(c, 2 * m - 1 - c):
                coeffs[(di * e) % n] += 1
            row.append(CycloInt(n, coeffs))
        matrix.append(row)
    return _permanent(matrix, n)


def permanent_coefficient(n: int, d) -> CycloInt:
    """The pairing-form bijection sum: entry (i, c) is
    w_i^c - w_i^(2m-1-c)."""
    d = _validated_units(n, d)
    m = len(d)
    matrix = []
    for di in d:
        row = []
        for c in range(m):
            coeffs = [0] * n
            coeffs[(di * c) % n] += 1
            coeffs[(di * (2 * m - 1 - c)) % n] -= 1
            row.append(CycloInt(n, coeffs))
        matrix.append(row)
    return _permanent(matrix, n)


def double_factorial_odd(k: int) -> int:
    """k!! for odd k >= -1: the product 1 * 3 * ... * k."""
    return math.prod(range(1, k + 1, 2))


def prime_nonzero_certificate(p: int, d) -> tuple[int, bool]:
    """Certify the geometric-form sum is nonzero in Z[w] for odd prime p.

    Evaluates the sum's representative at w = 1, checks the value equals
    m! (2m-1)!! independently of d, and reports whether it escapes
    divisibility by p.  If it does, the sum cannot vanish: a vanishing
    element of Z[w] has its value at 1 divisible by p.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidInstance(f"{p} is not an odd prime")
    m = (p - 1) // 2
    d = tuple(int(x) % p for x in d)
    if len(d) != m:
        raise InvalidInstance(f"need {m} differences, got {len(d)}")
    value = permanent2_coefficient(p, d).eval_at_one()
    expected = math.factorial(m) * double_factorial_odd(2 * m - 1)
    if value != expected:
        raise ArithmeticError(
            f"value at 1 is {value}, expected {expected}")
    return value, value % p != 0


def divisibility_lemma_check(coeffs, p: int) -> bool:
    """Does this integer polynomial obey: vanishing at a primitive p-th
    root of unity forces p to divide the value at 1?

    Vacuously true when the polynomial does not vanish there.
    """
    f = CycloInt(p, tuple(int(c) for c in coeffs))
    if not f.is_zero():
        return True
    return f.eval_at_one() % p == 0
