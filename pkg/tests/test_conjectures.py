"""Feasibility scans over unit differences and the root-of-unity sums."""

import json
import random

import pytest

from pairpack.algebra import CycloInt
from pairpack.conjectures import (ScanReport, _permanent, _permanent_ryser,
                                  divisibility_lemma_check,
                                  double_factorial_odd,
                                  permanent2_coefficient, permanent_coefficient,
                                  prime_nonzero_certificate, scan_conjecture,
                                  units_mod)
from pairpack.solvers import InvalidInstance


def test_units_mod():
    assert units_mod(9) == (1, 2, 4, 5, 7, 8)
    assert units_mod(7) == (1, 2, 3, 4, 5, 6)
    assert units_mod(12) == (1, 5, 7, 11)


def test_scan_exhaustive_small_odd():
    rep = scan_conjecture(5)
    assert rep.universe == "nonzero"
    assert rep.instances_total == 4 ** 2
    assert rep.all_feasible
    assert rep.failures == ()
    rep = scan_conjecture(9)
    assert rep.instances_total == 6 ** 4
    assert rep.all_feasible


def test_scan_exhaustive_small_even():
    rep = scan_conjecture(4)
    assert rep.universe == "full"
    assert rep.instances_total == 2 ** 2
    assert rep.all_feasible
    rep = scan_conjecture(6)
    assert rep.instances_total == 2 ** 3
    assert rep.all_feasible


def test_scan_report_json():
    rep = ScanReport(5, "nonzero", 16, 16, (), 0.12345)
    doc = rep.to_json()
    assert doc == {"n": 5, "universe": "nonzero", "total": 16,
                   "feasible": 16, "failures": []}
    assert rep.to_json(include_timing=True)["seconds"] == 0.123
    assert not ScanReport(5, "nonzero", 16, 15, ((1, 1),), 0.0).all_feasible


def test_scan_sample_mode():
    a = scan_conjecture(9, sample=200, seed=42)
    b = scan_conjecture(9, sample=200, seed=42)
    assert a.to_json() == b.to_json()
    assert a.instances_total == 200
    assert a.all_feasible
    c = scan_conjecture(9, sample=200, seed=43)
    assert c.instances_total == 200
    with pytest.raises(InvalidInstance):
        scan_conjecture(9, sample=10)
    with pytest.raises(InvalidInstance):
        scan_conjecture(2)


def test_scan_sample_ignores_job_count():
    a = scan_conjecture(11, sample=300, seed=7, jobs=1)
    b = scan_conjecture(11, sample=300, seed=7, jobs=2)
    assert a.to_json() == b.to_json()


def test_scan_checkpoint_resume(tmp_path):
    path = tmp_path / "scan.jsonl"
    want = scan_conjecture(7).to_json()
    first = scan_conjecture(7, checkpoint=str(path))
    assert first.to_json() == want
    lines = path.read_text().strip().splitlines()
    assert len(lines) == len(units_mod(7))
    for line in lines:
        rec = json.loads(line)
        assert rec["n"] == 7 and rec["universe"] == "nonzero"

    # drop the tail, rerun: skipped shards come from the file
    path.write_text("\n".join(lines[:3]) + "\n")
    resumed = scan_conjecture(7, checkpoint=str(path))
    assert resumed.to_json() == want
    assert len(path.read_text().strip().splitlines()) == len(lines)

    # records for other runs in the same file are ignored
    path.write_text(json.dumps({"n": 99, "universe": "nonzero", "shard": 1,
                                "total": 5, "feasible": 0, "failures": []})
                    + "\n")
    assert scan_conjecture(7, checkpoint=str(path)).to_json() == want


def test_permanent_matches_inclusion_exclusion():
    rng = random.Random(29)
    for m in (1, 2, 3, 4):
        order = 7
        mat = [[CycloInt(order, [rng.randrange(-2, 3) for _ in range(order)])
                for _ in range(m)] for _ in range(m)]
        assert _permanent(mat, order) == _permanent_ryser(mat, order)
    assert _permanent([], 5) == CycloInt.from_int(5, 1)


def test_bijection_sum_smallest_case():
    assert permanent2_coefficient(3, (1,)) == CycloInt.from_int(3, 1)
    w = CycloInt.root_power(3, 1)
    assert permanent_coefficient(3, (1,)) == CycloInt.from_int(3, 1) - w


def test_two_forms_differ_by_unit_product():
    """pairing form = geometric form * prod_i (1 - w^(d_i))"""
    for n, d in ((3, (1,)), (5, (1, 2)), (7, (1, 2, 3)), (9, (1, 2, 4, 5)),
                 (9, (5, 5, 7, 8))):
        lhs = permanent_coefficient(n, d)
        rhs = permanent2_coefficient(n, d)
        for di in d:
            rhs = rhs * (CycloInt.from_int(n, 1) - CycloInt.root_power(n, di))
        assert lhs == rhs


def test_nonunit_differences_rejected():
    with pytest.raises(InvalidInstance):
        permanent2_coefficient(9, (3, 1, 1, 1))
    with pytest.raises(InvalidInstance):
        permanent_coefficient(5, (0, 1))


def test_double_factorial():
    assert [double_factorial_odd(k) for k in (-1, 1, 3, 5, 7)] == \
        [1, 1, 3, 15, 105]


def test_certificates():
    for p, want in ((3, 1), (5, 6), (7, 90)):
        m = (p - 1) // 2
        value, nonzero = prime_nonzero_certificate(p, (1,) * m)
        assert value == want
        assert nonzero
    # the value at 1 does not depend on the chosen differences
    for d in ((1, 2), (3, 3), (2, 4)):
        assert prime_nonzero_certificate(5, d) == (6, True)
    with pytest.raises(InvalidInstance):
        prime_nonzero_certificate(9, (1, 2, 4, 5))
    with pytest.raises(InvalidInstance):
        prime_nonzero_certificate(5, (1,))


def test_divisibility_lemma():
    from pairpack.algebra import cyclotomic_poly
    for p in (3, 5, 7):
        phi = cyclotomic_poly(p)
        assert divisibility_lemma_check(phi, p)
        assert divisibility_lemma_check((1, 2, 3), p)   # no vanishing: vacuous
    rng = random.Random(31)
    for _ in range(50):
        p = rng.choice((3, 5, 7, 11))
        phi = list(cyclotomic_poly(p))
        g = [rng.randrange(-5, 6) for _ in range(rng.randrange(1, 6))]
        prod = [0] * (len(phi) + len(g) - 1)
        for i, a in enumerate(phi):
            for j, b in enumerate(g):
                prod[i + j] += a * b
        assert CycloInt(p, prod).is_zero()
        assert divisibility_lemma_check(prod, p)
