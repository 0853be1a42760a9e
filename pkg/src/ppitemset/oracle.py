"""Independent brute-force and Monte-Carlo validators.

Nothing here uses the bitmap kernels or Apriori: counts come from plain set
containment so that the checks stay independent of the code they verify.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import sqrt
from typing import Iterable, Sequence

import numpy as np

from ._rational import as_fraction
from .catalog import TransactionDb
from .miner import FrequentItemset, Itemset
from .randomizer import RandomizationParams, randomize_pipeline, shift_item
from .reconstructor import ReconstructionParams, reconstruct_support

BRUTE_FORCE_MAX_ITEMS = 20
ENUM_MAX_ITEMS = 12
ENUM_MAX_L = 4


@dataclass(frozen=True)
class OracleCheck:
    name: str
    expected: Fraction
    observed: Fraction
    tolerance: Fraction

    @property
    def passed(self) -> bool:
        return abs(self.expected - self.observed) <= self.tolerance


@dataclass
class OracleReport:
    checks: list[OracleCheck] = field(default_factory=list)

    def add(self, name: str, expected, observed, tolerance=0) -> OracleCheck:
        check = OracleCheck(name, as_fraction(expected), as_fraction(observed), as_fraction(tolerance))
        self.checks.append(check)
        return check

    def extend(self, other: "OracleReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def format(self) -> str:
        rows = [("check", "expected", "observed", "tolerance", "result")]
        for c in self.checks:
            rows.append((
                c.name,
                f"{float(c.expected):.10g}",
                f"{float(c.observed):.10g}",
                f"{float(c.tolerance):.3g}",
                "PASS" if c.passed else "FAIL",
            ))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        failed = sum(not c.passed for c in self.checks)
        lines.append(f"{len(self.checks) - failed}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def brute_force_frequent(db: TransactionDb, s_min) -> list[FrequentItemset]:
    """Count every sub-itemset of every transaction, then filter by ``s_min``."""
    if db.catalog.n > BRUTE_FORCE_MAX_ITEMS:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_ITEMS}")
    s_min = as_fraction(s_min)
    if not 0 < s_min <= 1:
        raise ValueError(f"minimum support must lie in (0, 1], got {s_min}")
    counts: Counter[Itemset] = Counter()
    for t in db.transactions:
        for size in range(1, len(t) + 1):
            counts.update(combinations(t, size))
    n_rows = db.count
    found = [
        FrequentItemset(items, c, n_rows)
        for items, c in counts.items()
        if Fraction(c, n_rows) >= s_min
    ]
    found.sort(key=lambda f: (f.k, f.items))
    return found


def exact_fake_expectation_enum(n: int, k: int, l: int) -> Fraction:
    """Average over fake lengths of the share of length-Y subsets holding ``{1..k}``."""
    if n > ENUM_MAX_ITEMS or l > ENUM_MAX_L:
        raise ValueError(f"enumeration limited to n <= {ENUM_MAX_ITEMS}, l <= {ENUM_MAX_L}")
    if not 1 <= k <= n or l < 1:
        raise ValueError("need 1 <= k <= n and l >= 1")
    top = 2 * l - 1
    if top > n:
        raise ValueError(f"no {top}-subsets of a {n}-item universe")
    target = set(range(k))
    total = Fraction(0)
    for y in range(1, top + 1):
        hits = subsets = 0
        for subset in combinations(range(n), y):
            subsets += 1
            hits += target.issubset(subset)
        total += Fraction(hits, subsets)
    return total / top


def _count(rows: Iterable[tuple[int, ...]], itemset: Itemset) -> int:
    want = set(itemset)
    return sum(1 for t in rows if want.issubset(t))


def mc_reconstruction_check(
    db: TransactionDb,
    params: RandomizationParams,
    itemsets: Sequence[Itemset],
    runs: int,
    tolerance=None,
) -> OracleReport:
    """Repeat the randomization pipeline and check each itemset two ways.

    Every run must satisfy ``real = mixed - fake`` exactly (counts of the
    shifted itemset, split with the mask). Across runs, the mean raw
    reconstructed support must be within ``tolerance`` of the true support;
    ``None`` means three standard errors of the run mean. Run ``r`` uses a
    seed derived from ``params.seed`` so runs are reproducible.
    """
    if runs < 30:
        raise ValueError("need at least 30 runs")
    n = db.catalog.n
    rec_params = ReconstructionParams.from_randomization(params, n)
    seeds = np.random.SeedSequence(params.seed).generate_state(runs, dtype=np.uint64)
    itemsets = [tuple(sorted(set(a))) for a in itemsets]
    true_counts = [_count(db.transactions, a) for a in itemsets]
    worst_identity = [0] * len(itemsets)
    estimates: list[list[Fraction]] = [[] for _ in itemsets]

    for seed in seeds:
        run_params = RandomizationParams(params.w, params.l, params.key_i, int(seed), params.length_model)
        mixed, mask = randomize_pipeline(db, run_params)
        fake_rows = mask.fake_rows(mixed)
        for pos, items in enumerate(itemsets):
            shifted = tuple(shift_item(a, params.key_i, n) for a in items)
            mixed_count = _count(mixed.transactions, shifted)
            fake_count = _count(fake_rows, shifted)
            gap = abs(true_counts[pos] - (mixed_count - fake_count))
            worst_identity[pos] = max(worst_identity[pos], gap)
            rec = reconstruct_support(Fraction(mixed_count, mixed.count), len(items), rec_params)
            estimates[pos].append(rec.raw)

    report = OracleReport()
    for pos, items in enumerate(itemsets):
        label = "{" + ",".join(map(str, items)) + "}"
        report.add(f"masked identity {label}", 0, worst_identity[pos], 0)
        values = estimates[pos]
        mean = sum(values, Fraction(0)) / runs
        if tolerance is None:
            as_float = [float(v) for v in values]
            spread = float(np.std(as_float, ddof=1)) if runs > 1 else 0.0
            tol = as_fraction(3 * spread / sqrt(runs))
        else:
            tol = as_fraction(tolerance)
        report.add(f"mean reconstructed {label}", Fraction(true_counts[pos], db.count), mean, tol)
    return report
