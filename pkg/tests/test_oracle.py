from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from ppitemset.catalog import ItemCatalog, TransactionDb
from ppitemset.miner import frequent_itemsets
from ppitemset.oracle import (
    OracleCheck,
    OracleReport,
    brute_force_frequent,
    exact_fake_expectation_enum,
    mc_reconstruction_check,
)
from ppitemset.randomizer import RandomizationParams
from ppitemset.reconstructor import fake_support_expectation

from conftest import random_db, random_threshold


def test_brute_force_table1(table1):
    found = brute_force_frequent(table1, Fraction(2, 5))
    assert [(f.items, f.support) for f in found] == [((1,), Fraction(1, 2)), ((3,), Fraction(1, 2))]


def test_brute_force_minimal_threshold(table1):
    found = brute_force_frequent(table1, Fraction(1, table1.count))
    expected = set()
    for t in table1.transactions:
        for k in range(1, len(t) + 1):
            expected.update(combinations(t, k))
    assert {f.items for f in found} == expected


def test_brute_force_limits():
    db = TransactionDb(ItemCatalog.numbered(21), ((1,),))
    with pytest.raises(ValueError):
        brute_force_frequent(db, Fraction(1, 2))


def test_brute_force_equals_apriori_random():
    rng = np.random.default_rng(99)
    for _ in range(200):
        db = random_db(rng)
        s_min = random_threshold(rng, db.count)
        bf = [(f.items, f.count) for f in brute_force_frequent(db, s_min)]
        ap = [(f.items, f.count) for f in frequent_itemsets(db, s_min)]
        assert bf == ap


@pytest.mark.parametrize(
    "n, k, l, expected",
    [(5, 1, 2, Fraction(2, 5)), (5, 2, 2, Fraction(2, 15)), (5, 4, 2, Fraction(0)), (7, 7, 4, Fraction(1, 7))],
)
def test_enum_examples(n, k, l, expected):
    assert exact_fake_expectation_enum(n, k, l) == expected


def test_enum_limits():
    with pytest.raises(ValueError):
        exact_fake_expectation_enum(13, 1, 2)
    with pytest.raises(ValueError):
        exact_fake_expectation_enum(5, 1, 5)
    with pytest.raises(ValueError):
        exact_fake_expectation_enum(3, 1, 3)


def test_enum_matches_formula_small():
    for n in range(1, 9):
        for l in range(1, 4):
            if 2 * l - 1 > n:
                continue
            for k in range(1, n + 1):
                assert exact_fake_expectation_enum(n, k, l) == fake_support_expectation(n, k, l)


def test_mc_check_table1(table1):
    params = RandomizationParams(Fraction(3, 2), 2, 4, 2024)
    report = mc_reconstruction_check(table1, params, [(1,)], runs=200)
    assert report.passed, report.format()
    identity, mean = report.checks
    assert identity.tolerance == 0 and identity.observed == 0
    assert mean.expected == Fraction(1, 2)
    assert mean.tolerance > 0


def test_mc_check_absent_large_itemset_is_exactly_zero():
    db = TransactionDb(ItemCatalog.numbered(6), ((1,), (2,), (1, 2), (3,)))
    params = RandomizationParams(2, 1, 1, 0)
    # k = 2 > 2l-1 = 1: no fake can contain a pair, and no real row holds {4,5}
    report = mc_reconstruction_check(db, params, [(4, 5)], runs=30)
    assert report.passed
    mean = report.checks[1]
    assert mean.observed == 0 and mean.tolerance == 0


def test_mc_check_explicit_tolerance_can_fail(table1):
    params = RandomizationParams(Fraction(3, 2), 2, 4, 1)
    report = mc_reconstruction_check(table1, params, [(1,)], runs=30, tolerance=0)
    assert not report.passed
    assert report.checks[0].passed


def test_mc_check_needs_runs(table1):
    with pytest.raises(ValueError):
        mc_reconstruction_check(table1, RandomizationParams(1, 2, 1, 0), [(1,)], runs=10)


def test_report_format_and_pass_logic():
    report = OracleReport()
    report.add("exact", Fraction(1, 3), Fraction(1, 3))
    report.add("loose", 1, Fraction(11, 10), Fraction(1, 10))
    report.add("bad", 0, 1, 0)
    assert [c.passed for c in report.checks] == [True, True, False]
    assert not report.passed
    text = report.format()
    lines = text.splitlines()
    assert lines[0].split() == ["check", "expected", "observed", "tolerance", "result"]
    assert lines[-1] == "2/3 checks passed"
    assert lines[3].rstrip().endswith("FAIL")
    assert OracleCheck("x", Fraction(0), Fraction(1, 10), Fraction(1, 10)).passed
