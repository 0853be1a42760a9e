"""Fake-transaction injection and the keyed per-transaction item shift.

The pipeline always injects fakes first and shifts afterwards, so real and
fake rows go through the same item permutation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import numpy as np

from ._rational import as_fraction, round_half_up
from .catalog import ItemCatalog, ParseError, Transaction, TransactionDb, make_transaction


@dataclass(frozen=True)
class LengthModel:
    """Distribution of fake transaction lengths.

    ``uniform`` draws from ``{1, ..., 2l-1}``; ``normal`` draws from a normal
    with the given mean and variance, rounded and clamped to ``[1, n]``.
    """

    kind: str = "uniform"
    mean: Fraction | None = None
    variance: Fraction | None = None

    def __post_init__(self):
        if self.kind == "uniform":
            if self.mean is not None or self.variance is not None:
                raise ValueError("uniform length model takes no mean/variance")
        elif self.kind == "normal":
            if self.mean is None or self.variance is None:
                raise ValueError("normal length model needs mean and variance")
            object.__setattr__(self, "mean", as_fraction(self.mean))
            object.__setattr__(self, "variance", as_fraction(self.variance))
            if self.variance < 0:
                raise ValueError("variance must be non-negative")
        else:
            raise ValueError(f"unknown length model {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "uniform":
            return "uniform"
        return f"normal({self.mean}, {self.variance})"

    @classmethod
    def parse(cls, text: str) -> "LengthModel":
        text = text.strip()
        if text == "uniform":
            return cls()
        m = re.fullmatch(r"normal\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)", text)
        if not m:
            raise ValueError(f"cannot parse length model {text!r}")
        return cls("normal", as_fraction(m.group(1)), as_fraction(m.group(2)))


UNIFORM = LengthModel()


@dataclass(frozen=True)
class RandomizationParams:
    w: Fraction
    l: int
    key_i: int
    seed: int
    length_model: LengthModel = UNIFORM

    def __post_init__(self):
        object.__setattr__(self, "w", as_fraction(self.w))
        if self.w <= 0:
            raise ValueError(f"w must be positive, got {self.w}")
        if int(self.l) != self.l or self.l < 1:
            raise ValueError(f"l must be a positive integer, got {self.l}")
        if int(self.key_i) != self.key_i or self.key_i < 0:
            raise ValueError(f"key must be a non-negative integer, got {self.key_i}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

    def check_catalog(self, n: int) -> None:
        if self.length_model.kind == "uniform" and 2 * self.l - 1 > n:
            raise ValueError(
                f"fake transactions need up to 2l-1 = {2 * self.l - 1} distinct items "
                f"but the catalog has only {n}"
            )

    def fake_count(self, n_real: int) -> int:
        return round_half_up(self.w * n_real)


@dataclass(frozen=True)
class MixMask:
    """Which rows of a mixed database are real (oracle/debug use only)."""

    flags: tuple[bool, ...]

    @property
    def n_real(self) -> int:
        return sum(self.flags)

    def real_rows(self, db: TransactionDb) -> list[Transaction]:
        self._check(db)
        return [t for t, real in zip(db.transactions, self.flags) if real]

    def fake_rows(self, db: TransactionDb) -> list[Transaction]:
        self._check(db)
        return [t for t, real in zip(db.transactions, self.flags) if not real]

    def _check(self, db: TransactionDb) -> None:
        if len(self.flags) != db.count:
            raise ValueError("mask length does not match the database")


def gen_fake_transaction(
    params: RandomizationParams, catalog: ItemCatalog, rng: np.random.Generator
) -> Transaction:
    n = catalog.n
    model = params.length_model
    if model.kind == "uniform":
        params.check_catalog(n)
        length = int(rng.integers(1, 2 * params.l - 1, endpoint=True))
    else:
        draw = rng.normal(float(model.mean), float(model.variance) ** 0.5)
        length = min(n, max(1, int(np.floor(draw + 0.5))))
    picks = rng.choice(n, size=length, replace=False)
    return make_transaction(int(p) + 1 for p in picks)


def mix_fake(
    db: TransactionDb,
    params: RandomizationParams,
    rng: np.random.Generator,
    pinned: Sequence[tuple[int, Iterable[int]]] | None = None,
) -> tuple[TransactionDb, MixMask]:
    """Insert ``round(w*N)`` fake transactions among the real ones.

    Each fake lands in one of the ``N+1`` gaps chosen uniformly at random
    (gap ``g`` = after the ``g``-th real row). ``pinned`` replaces the random
    fakes with fixed ``(gap, items)`` pairs; their number must still equal
    ``round(w*N)``.
    """
    n_real = db.count
    total = params.fake_count(n_real)
    if total == 0:
        raise ValueError(f"w*N = {params.w * n_real} rounds to zero fake transactions")

    if pinned is None:
        params.check_catalog(db.catalog.n)
        fakes = [gen_fake_transaction(params, db.catalog, rng) for _ in range(total)]
        gaps = rng.integers(0, n_real + 1, size=total)
    else:
        if len(pinned) != total:
            raise ValueError(f"expected {total} pinned fakes, got {len(pinned)}")
        gaps, fakes = [], []
        for gap, items in pinned:
            if not 0 <= gap <= n_real:
                raise ValueError(f"gap {gap} outside 0..{n_real}")
            gaps.append(gap)
            fakes.append(make_transaction(items))

    per_gap: list[list[Transaction]] = [[] for _ in range(n_real + 1)]
    for gap, fake in zip(gaps, fakes):
        per_gap[int(gap)].append(fake)

    rows: list[Transaction] = list(per_gap[0])
    flags: list[bool] = [False] * len(per_gap[0])
    for real, bucket in zip(db.transactions, per_gap[1:]):
        rows.append(real)
        flags.append(True)
        rows.extend(bucket)
        flags.extend([False] * len(bucket))
    return TransactionDb(db.catalog, tuple(rows)), MixMask(tuple(flags))


def shift_item(a: int, key_i: int, n: int) -> int:
    """Keyed cyclic shift of an item id within ``1..n``."""
    if not 1 <= a <= n:
        raise ValueError(f"item {a} outside 1..{n}")
    return (a + key_i - 1) % n + 1


def shift_table(key_i: int, n: int) -> list[int]:
    """``table[a]`` is the shifted id of ``a``; index 0 is unused."""
    return [0] + [(a + key_i - 1) % n + 1 for a in range(1, n + 1)]


def shift_db(db: TransactionDb, key_i: int) -> TransactionDb:
    table = shift_table(key_i, db.catalog.n)
    rows = tuple(tuple(sorted(table[a] for a in t)) for t in db.transactions)
    return TransactionDb(db.catalog, rows)


def randomize_pipeline(
    db: TransactionDb,
    params: RandomizationParams,
    pinned: Sequence[tuple[int, Iterable[int]]] | None = None,
) -> tuple[TransactionDb, MixMask]:
    rng = np.random.default_rng(params.seed)
    mixed, mask = mix_fake(db, params, rng, pinned=pinned)
    return shift_db(mixed, params.key_i), mask


# -- key file -------------------------------------------------------------

_KEY_FIELDS = ("key_i", "seed", "w", "l", "length_model", "n")


def write_key_file(params: RandomizationParams, n: int, stream: TextIO) -> None:
    stream.write("# secret: do not distribute together with the mixed database\n")
    stream.write(f"key_i = {params.key_i % n}\n")
    stream.write(f"seed = {params.seed}\n")
    stream.write(f"w = {params.w}\n")
    stream.write(f"l = {params.l}\n")
    stream.write(f"length_model = {params.length_model}\n")
    stream.write(f"n = {n}\n")


def read_key_file(stream: TextIO) -> tuple[RandomizationParams, int]:
    """Parse a key file into its parameters and the catalog size ``n``."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, value = line.partition("=")
        name = name.strip()
        if not sep or name not in _KEY_FIELDS:
            raise ParseError(f"unrecognized key file entry {line!r}", lineno)
        if name in values:
            raise ParseError(f"duplicate field {name!r}", lineno)
        values[name] = value.strip()
    missing = [f for f in _KEY_FIELDS if f not in values]
    if missing:
        raise ParseError(f"key file is missing {', '.join(missing)}")
    try:
        n = int(values["n"])
        if n < 1:
            raise ValueError("n must be positive")
        params = RandomizationParams(
            w=as_fraction(values["w"]),
            l=int(values["l"]),
            key_i=int(values["key_i"]),
            seed=int(values["seed"]),
            length_model=LengthModel.parse(values["length_model"]),
        )
    except ValueError as exc:
        raise ParseError(f"corrupt key file: {exc}") from None
    return params, n
