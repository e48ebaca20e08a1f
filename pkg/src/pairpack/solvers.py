"""Backtracking solvers with certified infeasibility.

Three search problems share one strategy: branch on the smallest object
not yet dealt with, so every partial state extends a partial solution.
The problems are pair partitions of Z/(n) with prescribed differences,
pair partitions of (F_p)^k where each pair picks its difference from a
private basis, and translate packings X_i + t_i with t_i drawn from a
finite T_i.  A solver either returns a solution (deterministic, first in
its branch order) or an Infeasible certificate recording how many search
nodes the exhaustion visited.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .algebra import factorial_quotient_mod, is_basis, is_prime, vec_add, vec_sub


class InvalidInstance(ValueError):
    """Instance data breaks a structural requirement."""


@dataclass(frozen=True)
class Infeasible:
    """A completed exhaustive search that found nothing.

    nodes counts search-tree states expanded before giving up; it makes
    the certificate auditable and keeps reports comparable across runs.
    """

    nodes: int

    def to_json(self) -> dict:
        return {"result": "infeasible", "nodes": self.nodes}


# ---------------------------------------------------------------------------
# pair partitions of Z/(n)


@dataclass(frozen=True)
class PartitionInstance:
    """Pair up a universe inside Z/(n) so that pair i has difference d[i].

    universe "nonzero" covers Z/(n) minus 0 and needs odd n; "full"
    covers all of Z/(n) and needs even n.  Differences are reduced mod n
    and must be nonzero; they need not be units.
    """

    n: int
    d: tuple[int, ...]
    universe: str = "nonzero"

    def __post_init__(self):
        n = int(self.n)
        if n < 2:
            raise InvalidInstance(f"modulus {n} too small")
        d = tuple(int(x) % n for x in self.d)
        if any(x == 0 for x in d):
            raise InvalidInstance("zero difference")
        if self.universe == "nonzero":
            if n % 2 == 0:
                raise InvalidInstance("universe 'nonzero' needs an odd modulus")
            m = (n - 1) // 2
        elif self.universe == "full":
            if n % 2:
                raise InvalidInstance("universe 'full' needs an even modulus")
            m = n // 2
        else:
            raise InvalidInstance(f"unknown universe {self.universe!r}")
        if len(d) != m:
            raise InvalidInstance(f"need {m} differences, got {len(d)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)

    @property
    def m(self) -> int:
        return len(self.d)

    def universe_elements(self) -> tuple[int, ...]:
        start = 1 if self.universe == "nonzero" else 0
        return tuple(range(start, self.n))

    def to_json(self) -> dict:
        return {"n": self.n, "universe": self.universe, "d": list(self.d)}

    @classmethod
    def from_json(cls, doc: dict) -> "PartitionInstance":
        n = int(doc["n"])
        universe = doc.get("universe") or ("nonzero" if n % 2 else "full")
        return cls(n, tuple(doc["d"]), universe)


@dataclass(frozen=True)
class PairPartition:
    """Pairs (x_i, y_i) with y_i - x_i = d_i, indexed like the instance."""

    pairs: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"result": "feasible", "pairs": [list(p) for p in self.pairs]}


def solve_pair_partition(inst: PartitionInstance) -> PairPartition | Infeasible:
    """Depth-first search for a pair partition, or proof there is none.

    Branching: take the smallest uncovered universe element e, then for
    each distinct remaining difference value (ascending) try the partner
    above (pair (e, e+d)) and then the partner below (pair (e-d, e)).
    Equal differences are collapsed into multiset counts; the returned
    pairs are re-dealt to indices in the order the instance listed them.
    """
    n = inst.n
    universe = inst.universe_elements()
    counts: dict[int, int] = {}
    for x in inst.d:
        counts[x] = counts.get(x, 0) + 1
    dvals = sorted(counts)
    member = bytearray(n)
    for e in universe:
        member[e] = 1
    used = bytearray(n)
    chosen: list[tuple[int, int, int]] = []
    nodes = 0

    def extend() -> bool:
        nonlocal nodes
        nodes += 1
        e = -1
        for u in universe:
            if not used[u]:
                e = u
                break
        if e < 0:
            return True
        used[e] = 1
        for dv in dvals:
            if not counts[dv]:
                continue
            up = (e + dv) % n
            down = (e - dv) % n
            # up == down happens only for dv = n/2; both orientations then
            # name the same pair, so branch once.
            branches = ((e, up),) if up == down else ((e, up), (down, e))
            for x, y in branches:
                partner = y if x == e else x
                if not member[partner] or used[partner]:
                    continue
                used[partner] = 1
                counts[dv] -= 1
                chosen.append((x, y, dv))
                if extend():
                    return True
                chosen.pop()
                counts[dv] += 1
                used[partner] = 0
        used[e] = 0
        return False

    if not extend():
        return Infeasible(nodes)
    queues: dict[int, deque[tuple[int, int]]] = {}
    for x, y, dv in chosen:
        queues.setdefault(dv, deque()).append((x, y))
    return PairPartition(tuple(queues[dv].popleft() for dv in inst.d))


# ---------------------------------------------------------------------------
# pair partitions of (F_p)^k with basis alternatives


@dataclass(frozen=True)
class VectorPartitionInstance:
    """(p^k - 1)/2 pair slots over (F_p)^k, one basis per slot.

    Slot i must realize some basis vector v_{i,j} (up to sign handled by
    orientation) as its pair difference y - x.  Construction with
    check=False skips the basis validation so that deliberately broken
    difference systems can still be fed to the search.
    """

    p: int
    k: int
    bases: tuple[tuple[tuple[int, ...], ...], ...]
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        p, k = int(self.p), int(self.k)
        if p < 2 or k < 1:
            raise InvalidInstance("need p >= 2 and k >= 1")
        m = (p ** k - 1) // 2
        bases = tuple(
            tuple(tuple(int(c) % p for c in v) for v in basis)
            for basis in self.bases)
        if len(bases) != m:
            raise InvalidInstance(f"need {m} bases, got {len(bases)}")
        for basis in bases:
            if len(basis) != k or any(len(v) != k for v in basis):
                raise InvalidInstance("basis shape mismatch")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "bases", bases)
        if self.check:
            if p % 2 == 0 or not is_prime(p):
                raise InvalidInstance(f"{p} is not an odd prime")
            for i, basis in enumerate(bases):
                if not is_basis(basis, p, k):
                    raise InvalidInstance(f"slot {i} does not hold a basis")

    @property
    def m(self) -> int:
        return len(self.bases)

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k,
                "bases": [[list(v) for v in basis] for basis in self.bases]}

    @classmethod
    def from_json(cls, doc: dict) -> "VectorPartitionInstance":
        bases = tuple(tuple(tuple(v) for v in basis) for basis in doc["bases"])
        return cls(int(doc["p"]), int(doc["k"]), bases,
                   check=bool(doc.get("check", True)))


def solve_vector_partition(inst: VectorPartitionInstance):
    """Pair the nonzero vectors of (F_p)^k, or certify Infeasible.

    Returns (pairs, g) on success: pairs[i] = (x, y) and g[i] = j with
    y - x = v_{i,j}.  Branching: smallest (lexicographic) uncovered
    vector, unused slots in ascending order, coordinates j ascending,
    partner e + v before partner e - v.
    """
    p, k, m = inst.p, inst.k, inst.m
    universe = [v for v in product(range(p), repeat=k) if any(v)]
    index = {v: i for i, v in enumerate(universe)}
    used = bytearray(len(universe))
    slot_used = bytearray(m)
    chosen: list[tuple[tuple[int, ...], tuple[int, ...], int] | None] = [None] * m
    nodes = 0

    def extend() -> bool:
        nonlocal nodes
        nodes += 1
        ei = -1
        for idx in range(len(universe)):
            if not used[idx]:
                ei = idx
                break
        if ei < 0:
            return True
        e = universe[ei]
        used[ei] = 1
        for i in range(m):
            if slot_used[i]:
                continue
            for j in range(k):
                v = inst.bases[i][j]
                for x, y in ((e, vec_add(e, v, p)), (vec_sub(e, v, p), e)):
                    partner = y if x == e else x
                    pi = index.get(partner)
                    if pi is None or used[pi]:
                        continue
                    used[pi] = 1
                    slot_used[i] = 1
                    chosen[i] = (x, y, j)
                    if extend():
                        return True
                    chosen[i] = None
                    slot_used[i] = 0
                    used[pi] = 0
        used[ei] = 0
        return False

    if not extend():
        return Infeasible(nodes)
    pairs = tuple((c[0], c[1]) for c in chosen)
    g = tuple(c[2] for c in chosen)
    return pairs, g


# ---------------------------------------------------------------------------
# translate packings


@dataclass(frozen=True)
class PackingInstance:
    """Finite sets X_i to be translated by representatives t_i in T_i.

    ambient is a modulus n (arithmetic in Z/(n)) or the string
    "integers" for exact integer arithmetic with finite explicit sets.
    d is the packing parameter the hypothesis report measures against.
    """

    ambient: "int | str"
    X: tuple[tuple[int, ...], ...]
    T: tuple[tuple[int, ...], ...]
    d: int

    def __post_init__(self):
        amb = self.ambient
        if amb != "integers":
            amb = int(amb)
            if amb < 2:
                raise InvalidInstance(f"modulus {amb} too small")
        d = int(self.d)
        if d < 1:
            raise InvalidInstance("packing parameter must be positive")
        if not self.X:
            raise InvalidInstance("no sets to pack")
        if len(self.X) != len(self.T):
            raise InvalidInstance("need one T per X")

        def clean(sets):
            out = []
            for s in sets:
                vals = {int(v) % amb for v in s} if isinstance(amb, int) \
                    else {int(v) for v in s}
                if not vals:
                    raise InvalidInstance("empty set")
                out.append(tuple(sorted(vals)))
            return tuple(out)

        object.__setattr__(self, "ambient", amb)
        object.__setattr__(self, "X", clean(self.X))
        object.__setattr__(self, "T", clean(self.T))
        object.__setattr__(self, "d", d)

    @property
    def m(self) -> int:
        return len(self.X)

    def to_json(self) -> dict:
        return {"n": self.ambient, "X": [list(s) for s in self.X],
                "T": [list(s) for s in self.T], "d": self.d}

    @classmethod
    def from_json(cls, doc: dict) -> "PackingInstance":
        return cls(doc["n"], tuple(map(tuple, doc["X"])),
                   tuple(map(tuple, doc["T"])), int(doc["d"]))


def solve_translate_packing(inst: PackingInstance):
    """First t-vector (lexicographic, T_i ascending) with disjoint
    translates X_i + t_i, or Infeasible."""
    mod = inst.ambient if isinstance(inst.ambient, int) else None
    m = inst.m
    occupied: set[int] = set()
    t: list[int] = [0] * m
    nodes = 0

    def place(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if i == m:
            return True
        base = inst.X[i]
        for cand in inst.T[i]:
            if mod is None:
                translate = [x + cand for x in base]
            else:
                translate = [(x + cand) % mod for x in base]
            if occupied.isdisjoint(translate):
                occupied.update(translate)
                t[i] = cand
                if place(i + 1):
                    return True
                occupied.difference_update(translate)
        return False

    if place(0):
        return tuple(t)
    return Infeasible(nodes)


@dataclass(frozen=True)
class PackingReport:
    """Which packing hypotheses an instance satisfies.

    factorial_nonzero: (md)!/(d!)^m does not vanish in the ambient ring.
    difference_bound: |X_i - X_j| <= 2d for all i < j (difference sets
    computed explicitly).  translate_bound: |T_i| >= (m-1)d + 1.
    squares_bound: sum of ceil(|X_i|^2 / 2) < p; only meaningful over a
    prime modulus with every T_i the full ring, else None.  guarantees
    lists which sufficient conditions ("main", "squares") apply in full.
    """

    m: int
    d: int
    factorial_nonzero: bool
    difference_bound: bool
    translate_bound: bool
    squares_bound: "bool | None"
    guarantees: tuple[str, ...]

    @property
    def main_hypotheses(self) -> bool:
        return (self.factorial_nonzero and self.difference_bound
                and self.translate_bound)

    def to_json(self) -> dict:
        return {"m": self.m, "d": self.d,
                "factorial_nonzero": self.factorial_nonzero,
                "difference_bound": self.difference_bound,
                "translate_bound": self.translate_bound,
                "squares_bound": self.squares_bound,
                "guarantees": list(self.guarantees)}


def check_packing_hypotheses(inst: PackingInstance) -> PackingReport:
    m, d = inst.m, inst.d
    if isinstance(inst.ambient, int):
        factorial_ok = factorial_quotient_mod(m, d, inst.ambient) != 0
    else:
        factorial_ok = True

    diff_ok = True
    for i in range(m):
        for j in range(i + 1, m):
            if isinstance(inst.ambient, int):
                diffs = {(a - b) % inst.ambient
                         for a in inst.X[i] for b in inst.X[j]}
            else:
                diffs = {a - b for a in inst.X[i] for b in inst.X[j]}
            if len(diffs) > 2 * d:
                diff_ok = False

    trans_ok = all(len(ts) >= (m - 1) * d + 1 for ts in inst.T)

    squares: "bool | None" = None
    if isinstance(inst.ambient, int) and is_prime(inst.ambient):
        full = tuple(range(inst.ambient))
        if all(ts == full for ts in inst.T):
            squares = sum((len(xs) ** 2 + 1) // 2
                          for xs in inst.X) < inst.ambient

    guarantees = []
    if factorial_ok and diff_ok and trans_ok:
        guarantees.append("main")
    if squares:
        guarantees.append("squares")
    return PackingReport(m, d, factorial_ok, diff_ok, trans_ok, squares,
                         tuple(guarantees))


# ---------------------------------------------------------------------------
# the pair-partition problem as a translate packing


def partition_as_packing(inst: PartitionInstance) -> PackingInstance:
    """Encode a nonzero-universe partition instance as a packing:
    X_i = {0, d_i}, T_i omits 0 and -d_i, packing parameter 2."""
    if inst.universe != "nonzero":
        raise InvalidInstance("only the nonzero universe reduces to a packing")
    n = inst.n
    X = tuple((0, dv) for dv in inst.d)
    T = tuple(tuple(x for x in range(n) if x != 0 and x != (n - dv) % n)
              for dv in inst.d)
    return PackingInstance(n, X, T, 2)


def packing_to_partition(inst: PartitionInstance, t) -> PairPartition:
    """Read a t-vector of the encoded packing back as pairs (t_i, t_i+d_i)."""
    n = inst.n
    return PairPartition(tuple((ti % n, (ti + dv) % n)
                               for ti, dv in zip(t, inst.d)))


# ---------------------------------------------------------------------------
# independent certification


def verify_solution(instance, solution) -> bool:
    """Re-check every invariant of a solution from scratch.

    Shares no state with the solvers: distinctness, coverage, the
    difference equations and disjointness are all recomputed.  An
    Infeasible value is not a solution and yields False.
    """
    if isinstance(solution, Infeasible):
        return False

    if isinstance(instance, PartitionInstance):
        pairs = solution.pairs if isinstance(solution, PairPartition) \
            else tuple(solution)
        n = instance.n
        if len(pairs) != instance.m:
            return False
        seen: list[int] = []
        for (x, y), dv in zip(pairs, instance.d):
            x, y = x % n, y % n
            if (y - x) % n != dv:
                return False
            seen.extend((x, y))
        return len(set(seen)) == 2 * instance.m and \
            set(seen) == set(instance.universe_elements())

    if isinstance(instance, VectorPartitionInstance):
        try:
            pairs, g = solution
        except (TypeError, ValueError):
            return False
        p, k, m = instance.p, instance.k, instance.m
        if len(pairs) != m or len(g) != m:
            return False
        seen = []
        for i in range(m):
            j = g[i]
            if not 0 <= j < k:
                return False
            x = tuple(c % p for c in pairs[i][0])
            y = tuple(c % p for c in pairs[i][1])
            if len(x) != k or len(y) != k:
                return False
            if vec_sub(y, x, p) != instance.bases[i][j]:
                return False
            seen.extend((x, y))
        nonzero = {v for v in product(range(p), repeat=k) if any(v)}
        return len(set(seen)) == 2 * m and set(seen) == nonzero

    if isinstance(instance, PackingInstance):
        t = tuple(solution)
        if len(t) != instance.m:
            return False
        mod = instance.ambient if isinstance(instance.ambient, int) else None
        covered: set[int] = set()
        total = 0
        for xs, ts, ti in zip(instance.X, instance.T, t):
            if ti not in ts:
                return False
            translate = {(x + ti) % mod if mod else x + ti for x in xs}
            covered |= translate
            total += len(translate)
        return len(covered) == total

    raise TypeError(f"cannot verify {type(instance).__name__}")
