import os
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ppitemset.catalog import ItemCatalog, TransactionDb, build_catalog, make_transaction

TABLE_I = [(1, 5), (3,), (3, 5), (2, 4), (4,), (1, 2), (1, 3), (3, 1, 5)]

# rows exactly as printed in the worked example (order inside a row is the printed one)
TABLE_II = [
    (1, 5), (3,), (1, 4), (2,), (5, 4), (3, 5), (2, 4), (1,), (3, 1), (5, 2),
    (4,), (1, 2), (3,), (4, 2), (1, 3), (3, 1, 5), (5, 3), (3,), (4, 5), (1, 4),
]
TABLE_II_REAL_ROWS = [1, 2, 6, 7, 11, 12, 15, 16]

TABLE_III = [
    (5, 4), (2,), (5, 3), (1,), (4, 3), (2, 4), (1, 3), (5,), (2, 5), (4, 1),
    (3,), (5, 1), (2,), (3, 1), (5, 2), (2, 5, 4), (4, 2), (2,), (3, 4), (5, 3),
]

SUPERMARKET = ["green apples", "red apples", "oranges", "bananas", "grapes"]

DATA_DIR = Path(__file__).parent / "data"


def db_from_rows(rows, n=5):
    return TransactionDb(ItemCatalog.numbered(n), tuple(make_transaction(r) for r in rows))


@pytest.fixture
def table1():
    return TransactionDb(build_catalog(SUPERMARKET), tuple(make_transaction(r) for r in TABLE_I))


@pytest.fixture
def table2():
    return db_from_rows(TABLE_II)


@pytest.fixture
def table3():
    return db_from_rows(TABLE_III)


def random_db(rng: np.random.Generator, max_items=12, max_rows=50, min_items=1):
    """Random small database; every row non-empty."""
    n = int(rng.integers(min_items, max_items + 1))
    n_rows = int(rng.integers(1, max_rows + 1))
    density = rng.uniform(0.1, 0.8)
    rows = []
    for _ in range(n_rows):
        row = [a for a in range(1, n + 1) if rng.random() < density]
        if not row:
            row = [int(rng.integers(1, n + 1))]
        rows.append(row)
    return db_from_rows(rows, n)


def random_threshold(rng: np.random.Generator, n_rows: int) -> Fraction:
    return Fraction(int(rng.integers(1, n_rows + 1)), n_rows)


def mushroom_path():
    """UCI agaricus-lepiota.data, if available locally."""
    env = os.environ.get("PPITEMSET_MUSHROOM_DATA")
    if env:
        return Path(env)
    return DATA_DIR / "agaricus-lepiota.data"
