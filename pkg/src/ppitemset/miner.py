"""Support counting, Apriori frequent-itemset mining and association rules.

Counts are exact integers; supports and confidences are reported as
:class:`fractions.Fraction`. Counting runs on a vertical bitmap index
(one packed row-bitmap per item) through :mod:`ppitemset.kernels`.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, TextIO

import numpy as np

from . import kernels
from ._rational import as_fraction, format_ratio
from .catalog import ItemCatalog, TransactionDb, make_transaction

Itemset = tuple[int, ...]


@dataclass(frozen=True)
class FrequentItemset:
    items: Itemset
    count: int
    n_transactions: int

    @property
    def k(self) -> int:
        return len(self.items)

    @property
    def support(self) -> Fraction:
        return Fraction(self.count, self.n_transactions)


@dataclass(frozen=True)
class AssociationRule:
    antecedent: Itemset
    consequent: Itemset
    count: int
    antecedent_count: int
    n_transactions: int

    @property
    def support(self) -> Fraction:
        return Fraction(self.count, self.n_transactions)

    @property
    def confidence(self) -> Fraction:
        return Fraction(self.count, self.antecedent_count)


class VerticalIndex:
    """Packed per-item row bitmaps of a database."""

    def __init__(self, db: TransactionDb):
        self.n_items = db.catalog.n
        self.n_rows = db.count
        lengths = np.fromiter((len(t) for t in db.transactions), dtype=np.int64, count=db.count)
        indptr = np.zeros(db.count + 1, dtype=np.int64)
        np.cumsum(lengths, out=indptr[1:])
        indices = np.fromiter(
            (a - 1 for t in db.transactions for a in t), dtype=np.int32, count=int(indptr[-1])
        )
        self.bitmaps = kernels.build_bitmaps(indptr, indices, self.n_items)
        self.max_length = int(lengths.max())

    def count_many(self, itemsets: Sequence[Itemset]) -> list[int]:
        """Counts for equally sized itemsets (1-based ids)."""
        if not itemsets:
            return []
        cand = np.ascontiguousarray(np.asarray(itemsets, dtype=np.int32) - 1)
        return kernels.count_supports(self.bitmaps, cand).tolist()

    def count(self, itemset: Itemset) -> int:
        return self.count_many([tuple(itemset)])[0]


def _checked_itemset(db: TransactionDb, itemset: Iterable[int]) -> Itemset:
    items = make_transaction(itemset)
    if not items:
        raise ValueError("itemset must be non-empty")
    for a in items:
        db.catalog.check_id(a)
    return items


def support_count(db: TransactionDb, itemset: Iterable[int], index: VerticalIndex | None = None) -> int:
    items = _checked_itemset(db, itemset)
    return (index or VerticalIndex(db)).count(items)


def support(db: TransactionDb, itemset: Iterable[int], index: VerticalIndex | None = None) -> Fraction:
    return Fraction(support_count(db, itemset, index), db.count)


def _check_threshold(value, what: str) -> Fraction:
    value = as_fraction(value)
    if not 0 < value <= 1:
        raise ValueError(f"{what} must lie in (0, 1], got {value}")
    return value


def _join_level(prev: list[Itemset]) -> list[Itemset]:
    """Prefix join of sorted k-itemsets, keeping candidates whose k-subsets all survive."""
    survivors = set(prev)
    out = []
    start = 0
    while start < len(prev):
        prefix = prev[start][:-1]
        end = start + 1
        while end < len(prev) and prev[end][:-1] == prefix:
            end += 1
        for i in range(start, end):
            for j in range(i + 1, end):
                cand = prev[i] + (prev[j][-1],)
                # dropping either of the last two items gives prev[i] / prev[j]
                if all(cand[:d] + cand[d + 1:] in survivors for d in range(len(cand) - 2)):
                    out.append(cand)
        start = end
    return out


def frequent_itemsets(
    db: TransactionDb,
    s_min,
    per_level_thresholds: Mapping[int, object] | None = None,
    index: VerticalIndex | None = None,
) -> list[FrequentItemset]:
    """Itemsets whose support meets the threshold of their size.

    Level ``k`` uses ``per_level_thresholds[k]`` when present, else ``s_min``.
    Thresholds may decrease with ``k``: candidates are pruned against the
    lowest threshold of any level ``>= k`` (which keeps Apriori sound), and
    each itemset is then emitted only if it meets its own level's threshold.
    Output is sorted by size, then lexicographically.
    """
    s_min = _check_threshold(s_min, "minimum support")
    levels = {k: _check_threshold(v, f"threshold for k={k}") for k, v in (per_level_thresholds or {}).items()}
    index = index or VerticalIndex(db)
    n_rows = db.count
    max_k = index.max_length

    def threshold(k: int) -> Fraction:
        return levels.get(k, s_min)

    floors = {}
    running = None
    for k in range(max_k, 0, -1):
        running = threshold(k) if running is None else min(running, threshold(k))
        floors[k] = running

    def meets(count: int, thr: Fraction) -> bool:
        return count * thr.denominator >= thr.numerator * n_rows

    result: list[FrequentItemset] = []
    candidates: list[Itemset] = [(a,) for a in range(1, db.catalog.n + 1)]
    k = 1
    while candidates and k <= max_k:
        counts = index.count_many(candidates)
        survivors = []
        thr, floor = threshold(k), floors[k]
        for cand, count in zip(candidates, counts):
            if meets(count, floor):
                survivors.append(cand)
                if meets(count, thr):
                    result.append(FrequentItemset(cand, count, n_rows))
        candidates = _join_level(survivors)
        k += 1
    return result


def association_rules(
    frequent: Sequence[FrequentItemset], db: TransactionDb, s_min, c_min
) -> list[AssociationRule]:
    """Rules ``X => Z\\X`` from every frequent ``Z`` with ``|Z| >= 2``.

    Sorted by support then confidence (both descending), then antecedent
    and consequent ids.
    """
    s_min = _check_threshold(s_min, "minimum support")
    c_min = _check_threshold(c_min, "minimum confidence")
    n_rows = db.count
    counts = {f.items: f.count for f in frequent}
    index = None

    def count_of(items: Itemset) -> int:
        nonlocal index
        if items not in counts:
            index = index or VerticalIndex(db)
            counts[items] = index.count(items)
        return counts[items]

    rules = []
    for f in frequent:
        if f.k < 2 or Fraction(f.count, n_rows) < s_min:
            continue
        for size in range(1, f.k):
            for antecedent in combinations(f.items, size):
                consequent = tuple(a for a in f.items if a not in antecedent)
                ante_count = count_of(antecedent)
                if Fraction(f.count, ante_count) >= c_min:
                    rules.append(AssociationRule(antecedent, consequent, f.count, ante_count, n_rows))
    rules.sort(key=lambda r: (-r.support, -r.confidence, r.antecedent, r.consequent))
    return rules


# -- reports ---------------------------------------------------------------

def _writer(stream: TextIO, fmt: str):
    if fmt not in ("tsv", "csv"):
        raise ValueError(f"unknown report format {fmt!r}")
    return csv.writer(stream, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")


def join_ids(items: Iterable[int]) -> str:
    return ",".join(map(str, items))


def join_names(catalog: ItemCatalog, items: Iterable[int]) -> str:
    return ",".join(catalog.decode(items))


def write_itemset_report(
    itemsets: Sequence[FrequentItemset], catalog: ItemCatalog, stream: TextIO, fmt: str = "tsv"
) -> None:
    out = _writer(stream, fmt)
    out.writerow(["k", "items", "item_names", "count", "support"])
    for f in itemsets:
        out.writerow([f.k, join_ids(f.items), join_names(catalog, f.items), f.count, format_ratio(f.support)])


def write_rule_report(rules: Sequence[AssociationRule], stream: TextIO, fmt: str = "tsv") -> None:
    out = _writer(stream, fmt)
    out.writerow(["antecedent", "consequent", "support", "confidence"])
    for r in rules:
        out.writerow([join_ids(r.antecedent), join_ids(r.consequent), format_ratio(r.support), format_ratio(r.confidence)])
