"""Recovering real-database supports and original item ids.

A mixed database holds ``N`` real and ``round(w*N)`` fake rows; a fake of
uniform length in ``{1..2l-1}`` contains a fixed k-itemset with probability
:func:`fake_support_expectation`. Subtracting that expected share from the
scaled mixed support gives an unbiased estimate of the real support.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, TextIO

from ._rational import as_fraction, format_ratio, round_half_up
from .catalog import ItemCatalog, TransactionDb
from .miner import Itemset, VerticalIndex, frequent_itemsets, join_ids, join_names
from .randomizer import RandomizationParams


@dataclass(frozen=True)
class ReconstructionParams:
    w: Fraction
    l: int
    n: int
    key_i: int

    def __post_init__(self):
        object.__setattr__(self, "w", as_fraction(self.w))
        if self.w <= 0:
            raise ValueError(f"w must be positive, got {self.w}")
        if self.l < 1 or self.n < 1:
            raise ValueError("l and n must be positive")
        if 2 * self.l - 1 > self.n:
            raise ValueError(f"2l-1 = {2 * self.l - 1} exceeds the catalog size n = {self.n}")

    @classmethod
    def from_randomization(cls, params: RandomizationParams, n: int) -> "ReconstructionParams":
        if params.length_model.kind != "uniform":
            raise ValueError(
                "reconstruction unsupported for normal model: the support correction "
                "assumes uniformly distributed fake lengths"
            )
        return cls(params.w, params.l, n, params.key_i % n)


@dataclass(frozen=True)
class ReconstructedSupport:
    raw: Fraction

    @property
    def clamped(self) -> Fraction:
        return min(Fraction(1), max(Fraction(0), self.raw))

    @property
    def was_clamped(self) -> bool:
        return not 0 <= self.raw <= 1


def fake_support_expectation(n: int, k: int, l: int) -> Fraction:
    """Probability that a uniform-model fake transaction contains a fixed k-itemset."""
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..n={n}, got {k}")
    if l < 1:
        raise ValueError("l must be positive")
    top = 2 * l - 1
    if top > n:
        raise ValueError(f"2l-1 = {top} exceeds n = {n}; fake lengths would be infeasible")
    # sum_{Y=k}^{top} C(Y, k) = C(top+1, k+1) (hockey stick); kept explicit
    total = sum(comb(y, k) for y in range(k, top + 1))
    return Fraction(total, comb(n, k) * top)


def reconstruct_support(s_star, k: int, params: ReconstructionParams) -> ReconstructedSupport:
    s_star = as_fraction(s_star)
    if not 0 <= s_star <= 1:
        raise ValueError(f"mixed support must lie in [0, 1], got {s_star}")
    t = fake_support_expectation(params.n, k, params.l)
    return ReconstructedSupport(s_star * (1 + params.w) - params.w * t)


def invert_threshold(s_min, k: int, params: ReconstructionParams) -> Fraction:
    """Mixed-database support that reconstructs to exactly ``s_min`` at size ``k``."""
    s_min = as_fraction(s_min)
    if not 0 < s_min <= 1:
        raise ValueError(f"minimum support must lie in (0, 1], got {s_min}")
    t = fake_support_expectation(params.n, k, params.l)
    return (s_min + params.w * t) / (1 + params.w)


def deshift_item(r: int, key_i: int, n: int) -> int:
    if not 1 <= r <= n:
        raise ValueError(f"item {r} outside 1..{n}")
    return (r - key_i - 1) % n + 1


@dataclass(frozen=True)
class RecoveredItemset:
    items: Itemset
    mixed_items: Itemset
    mixed_count: int
    n_mixed: int
    support: ReconstructedSupport

    @property
    def mixed_support(self) -> Fraction:
        return Fraction(self.mixed_count, self.n_mixed)


def plausible_real_count(n_mixed: int, w: Fraction) -> int | None:
    """A real-row count ``N`` with ``N + round(w*N) == n_mixed``, if one exists."""
    guess = int(n_mixed / (1 + w))
    for n_real in range(max(1, guess - 2), guess + 3):
        if n_real + round_half_up(w * n_real) == n_mixed:
            return n_real
    return None


def recover_frequent_itemsets(
    mixed_db: TransactionDb, params: ReconstructionParams, s_min
) -> list[RecoveredItemset]:
    """Mine a shifted mixed database and map results back to the real one.

    Level ``k`` is mined at the inverted threshold, every itemset is
    de-shifted, and those whose clamped reconstructed support reaches
    ``s_min`` are returned sorted by size then original ids.
    """
    s_min = as_fraction(s_min)
    if mixed_db.catalog.n != params.n:
        raise ValueError(
            f"mixed database catalog has {mixed_db.catalog.n} items, key says n = {params.n}"
        )
    if plausible_real_count(mixed_db.count, params.w) is None:
        warnings.warn(
            f"{mixed_db.count} mixed rows cannot arise from w = {params.w}; "
            "the key file may not belong to this database",
            RuntimeWarning,
            stacklevel=2,
        )
    index = VerticalIndex(mixed_db)
    top = min(index.max_length, params.n)
    thresholds = {k: invert_threshold(s_min, k, params) for k in range(1, top + 1)}
    mined = frequent_itemsets(mixed_db, thresholds[1], thresholds, index=index)

    out = []
    for f in mined:
        original = tuple(sorted(deshift_item(r, params.key_i, params.n) for r in f.items))
        rec = reconstruct_support(f.support, f.k, params)
        if rec.clamped >= s_min:
            out.append(RecoveredItemset(original, f.items, f.count, mixed_db.count, rec))
    out.sort(key=lambda r: (len(r.items), r.items))
    return out


def write_reconstruction_report(
    recovered: Sequence[RecoveredItemset], catalog: ItemCatalog, stream: TextIO, fmt: str = "tsv"
) -> None:
    out = csv.writer(stream, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
    out.writerow(["items", "item_names", "mixed_support", "reconstructed_support", "clamped_flag"])
    for r in recovered:
        out.writerow([
            join_ids(r.items),
            join_names(catalog, r.items),
            format_ratio(r.mixed_support),
            format_ratio(r.support.clamped),
            int(r.support.was_clamped),
        ])
