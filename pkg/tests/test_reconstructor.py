import warnings
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ppitemset.catalog import ItemCatalog, TransactionDb
from ppitemset.miner import frequent_itemsets, support
from ppitemset.randomizer import LengthModel, RandomizationParams, randomize_pipeline, shift_item
from ppitemset.reconstructor import (
    ReconstructedSupport,
    ReconstructionParams,
    deshift_item,
    fake_support_expectation,
    invert_threshold,
    plausible_real_count,
    reconstruct_support,
    recover_frequent_itemsets,
)

from conftest import db_from_rows

EXAMPLE = ReconstructionParams(Fraction(3, 2), 2, 5, 4)


@pytest.mark.parametrize(
    "n, k, l, expected",
    [
        (5, 1, 2, Fraction(2, 5)),
        (5, 2, 2, Fraction(2, 15)),
        (5, 3, 2, Fraction(1, 30)),  # k = 2l-1: single term 1/(C(5,3)*3)
        (5, 4, 2, Fraction(0)),  # k > 2l-1: empty sum
        (1, 1, 1, Fraction(1)),
    ],
)
def test_fake_support_expectation_examples(n, k, l, expected):
    assert fake_support_expectation(n, k, l) == expected


@pytest.mark.parametrize("n, k, l", [(5, 6, 2), (5, 0, 2), (3, 1, 3), (5, 1, 0)])
def test_fake_support_expectation_domain(n, k, l):
    with pytest.raises(ValueError):
        fake_support_expectation(n, k, l)


def test_fake_support_expectation_large_n_exact():
    t = fake_support_expectation(10_000, 3, 40)
    assert t == Fraction(comb(80, 4), comb(10_000, 3) * 79)


def test_reconstruct_worked_example():
    rec = reconstruct_support(Fraction(2, 5), 1, EXAMPLE)
    assert rec.raw == Fraction(2, 5)
    assert not rec.was_clamped


def test_reconstruct_zero_is_clamped():
    rec = reconstruct_support(0, 1, EXAMPLE)
    assert rec.raw == Fraction(-3, 5)
    assert rec.clamped == 0 and rec.was_clamped


def test_reconstruct_pair():
    assert reconstruct_support(Fraction(1, 5), 2, EXAMPLE).raw == Fraction(3, 10)


def test_reconstruct_above_one_clamped():
    rec = reconstruct_support(1, 4, EXAMPLE)
    assert rec.raw == Fraction(5, 2)
    assert rec.clamped == 1 and rec.was_clamped


@pytest.mark.parametrize("s_star", [-Fraction(1, 10), Fraction(11, 10)])
def test_reconstruct_rejects_out_of_range(s_star):
    with pytest.raises(ValueError):
        reconstruct_support(s_star, 1, EXAMPLE)


def test_invert_threshold_examples():
    assert invert_threshold(Fraction(2, 5), 1, EXAMPLE) == Fraction(2, 5)
    # k beyond 2l-1: t = 0
    assert invert_threshold(Fraction(2, 5), 4, EXAMPLE) == Fraction(2, 5) / Fraction(5, 2)
    values = [invert_threshold(Fraction(2, 5), k, EXAMPLE) for k in range(1, 6)]
    assert values == sorted(values, reverse=True)


@given(
    st.fractions(min_value=Fraction(1, 1000), max_value=1, max_denominator=1000),
    st.integers(1, 6),
    st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=20),
)
def test_invert_then_reconstruct_identity(s, k, w):
    p = ReconstructionParams(w, 3, 6, 2)
    s_star = invert_threshold(s, k, p)
    assert reconstruct_support(s_star, k, p).raw == s


@pytest.mark.parametrize("r, key, n, expected", [(5, 4, 5, 1), (2, 4, 5, 3), (1, 4, 5, 2), (3, 0, 5, 3)])
def test_deshift_examples(r, key, n, expected):
    assert deshift_item(r, key, n) == expected


def test_deshift_out_of_range():
    with pytest.raises(ValueError):
        deshift_item(6, 1, 5)


def test_deshift_round_trip_small_exhaustive():
    for n in range(1, 20):
        for key in range(0, 2 * n + 1):
            for a in range(1, n + 1):
                assert deshift_item(shift_item(a, key, n), key, n) == a


def test_recover_worked_example(table3):
    recovered = recover_frequent_itemsets(table3, EXAMPLE, Fraction(2, 5))
    assert [r.items for r in recovered] == [(1,), (3,)]
    assert [r.mixed_items for r in recovered] == [(5,), (2,)]
    assert all(r.support.raw == Fraction(2, 5) for r in recovered)
    assert all(r.mixed_support == Fraction(2, 5) for r in recovered)


def test_recover_identity_key_small_w():
    # with key 0 and w -> 0 recovery approaches plain mining of the mixed db
    db = db_from_rows([(1, 2), (1, 3), (1, 2, 3), (2,), (1,)] * 40, n=3)
    params = RandomizationParams(Fraction(1, 200), 1, 0, 5)
    mixed, _ = randomize_pipeline(db, params)
    rec = ReconstructionParams.from_randomization(params, 3)
    got = [r.items for r in recover_frequent_itemsets(mixed, rec, Fraction(1, 2))]
    assert got == [f.items for f in frequent_itemsets(mixed, Fraction(1, 2))]


def test_recover_multi_level_matches_reconstruction():
    rng = np.random.default_rng(3)
    rows = [tuple(sorted(rng.choice(np.arange(1, 9), size=int(rng.integers(1, 5)), replace=False).tolist())) for _ in range(300)]
    db = db_from_rows(rows, n=8)
    params = RandomizationParams(2, 2, 3, 17)
    mixed, _ = randomize_pipeline(db, params)
    rec = ReconstructionParams.from_randomization(params, 8)
    s_min = Fraction(1, 10)
    recovered = recover_frequent_itemsets(mixed, rec, s_min)
    # brute force over the mixed db: every itemset whose reconstructed support passes
    expected = []
    for k in range(1, 5):
        for combo in combinations(range(1, 9), k):
            shifted = tuple(sorted(shift_item(a, 3, 8) for a in combo))
            value = reconstruct_support(support(mixed, shifted), k, rec)
            if value.clamped >= s_min:
                expected.append(combo)
    assert [r.items for r in recovered] == expected
    assert any(len(r.items) == 2 for r in recovered)


def test_recover_catalog_size_mismatch(table3):
    with pytest.raises(ValueError):
        recover_frequent_itemsets(table3, ReconstructionParams(Fraction(3, 2), 2, 6, 4), Fraction(2, 5))


def test_recover_warns_on_inconsistent_count():
    db = TransactionDb(ItemCatalog.numbered(5), ((1,),) * 21)
    with pytest.warns(RuntimeWarning):
        recover_frequent_itemsets(db, ReconstructionParams(Fraction(3, 2), 2, 5, 4), Fraction(2, 5))


def test_recover_no_warning_on_consistent_count(table3):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        recover_frequent_itemsets(table3, EXAMPLE, Fraction(2, 5))


def test_plausible_real_count():
    assert plausible_real_count(20, Fraction(3, 2)) == 8
    assert plausible_real_count(21, Fraction(3, 2)) is None
    assert plausible_real_count(24372, Fraction(2)) == 8124


def test_params_from_normal_model_rejected():
    p = RandomizationParams(1, 2, 1, 0, LengthModel("normal", Fraction(2), Fraction(1)))
    with pytest.raises(ValueError, match="normal model"):
        ReconstructionParams.from_randomization(p, 5)


def test_params_validation():
    with pytest.raises(ValueError):
        ReconstructionParams(0, 2, 5, 1)
    with pytest.raises(ValueError):
        ReconstructionParams(1, 3, 4, 1)


def test_reconstructed_support_invariants():
    for raw in [Fraction(-1, 3), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(4, 3)]:
        rec = ReconstructedSupport(raw)
        assert rec.clamped == min(1, max(0, raw))
        assert rec.was_clamped == (not 0 <= raw <= 1)
