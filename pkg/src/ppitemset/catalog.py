"""Item encoding, the transaction data model, and dataset ingestion.

Items are addressed by 1-based contiguous ids. A transaction is a sorted
tuple of distinct ids; a :class:`TransactionDb` is an ordered, validated
sequence of them over an :class:`ItemCatalog`.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from ._rational import round_half_up

Transaction = tuple[int, ...]

_TOKEN_SPLIT = re.compile(r"[\s,]+")


class ParseError(ValueError):
    """Malformed input file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class ItemCatalog:
    """Bijection between item names and ids ``1..n``."""

    names: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("catalog must contain at least one item")
        index = {}
        for pos, name in enumerate(names, start=1):
            if name in index:
                raise ValueError(f"duplicate item name {name!r}")
            index[name] = pos
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def id_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown item {name!r}") from None

    def name_of(self, item: int) -> str:
        self.check_id(item)
        return self.names[item - 1]

    def check_id(self, item: int) -> None:
        if not 1 <= item <= self.n:
            raise ValueError(f"item id {item} outside 1..{self.n}")

    def encode(self, names: Iterable[str]) -> Transaction:
        return make_transaction(self.id_of(name) for name in names)

    def decode(self, items: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.name_of(item) for item in items)

    @classmethod
    def numbered(cls, n: int) -> "ItemCatalog":
        """Catalog whose item names are the decimal ids themselves."""
        return cls(tuple(str(i) for i in range(1, n + 1)))


def build_catalog(names: Sequence[str]) -> ItemCatalog:
    """Assign ids 1..n to ``names`` in list order (names are whitespace-trimmed)."""
    if not names:
        raise ValueError("cannot build a catalog from an empty name list")
    return ItemCatalog(tuple(name.strip() for name in names))


def make_transaction(items: Iterable[int]) -> Transaction:
    return tuple(sorted(set(items)))


@dataclass(frozen=True)
class TransactionDb:
    """Ordered transactions over a catalog.

    ``duplicate_warnings`` counts items that were collapsed while loading;
    it is informational and ignored by equality.
    """

    catalog: ItemCatalog
    transactions: tuple[Transaction, ...]
    duplicate_warnings: int = field(default=0, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(t) for t in self.transactions)
        object.__setattr__(self, "transactions", rows)
        if not rows:
            raise ValueError("a transaction database needs at least one transaction")
        n = self.catalog.n
        for pos, row in enumerate(rows, start=1):
            if not row:
                raise ValueError(f"transaction {pos} is empty")
            prev = 0
            for item in row:
                if item <= prev:
                    raise ValueError(f"transaction {pos} is not a strictly ascending id set: {row}")
                prev = item
            if row[-1] > n:
                raise ValueError(f"transaction {pos} uses item {row[-1]} outside 1..{n}")

    @property
    def count(self) -> int:
        return len(self.transactions)

    def __len__(self) -> int:
        return len(self.transactions)

    def __iter__(self):
        return iter(self.transactions)

    def lengths(self) -> list[int]:
        return [len(t) for t in self.transactions]

    def decoded(self) -> list[tuple[str, ...]]:
        return [self.catalog.decode(t) for t in self.transactions]


def load_basket_file(stream: TextIO, catalog: ItemCatalog | None = None) -> TransactionDb:
    """Parse a basket file: one transaction of positive integer ids per line.

    Tokens are separated by any run of spaces, tabs or commas; blank lines
    and lines starting with ``#`` are skipped. Without an explicit catalog
    one is synthesized as ``1..max id``.
    """
    rows: list[Transaction] = []
    duplicates = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        items = []
        for token in _TOKEN_SPLIT.split(line):
            if not token:
                continue
            try:
                item = int(token)
            except ValueError:
                raise ParseError(f"non-integer token {token!r}", lineno) from None
            if item <= 0:
                raise ParseError(f"item ids must be positive, got {item}", lineno)
            if catalog is not None and item > catalog.n:
                raise ParseError(f"item id {item} outside catalog 1..{catalog.n}", lineno)
            items.append(item)
        row = make_transaction(items)
        duplicates += len(items) - len(row)
        rows.append(row)
    if not rows:
        raise ParseError("basket file contains no transactions")
    if catalog is None:
        catalog = ItemCatalog.numbered(max(row[-1] for row in rows))
    return TransactionDb(catalog, tuple(rows), duplicate_warnings=duplicates)


def write_basket_file(db: TransactionDb, stream: TextIO) -> None:
    for row in db.transactions:
        stream.write(" ".join(map(str, row)))
        stream.write("\n")


def load_catalog_file(stream: TextIO) -> ItemCatalog:
    """Read ``id<TAB>name`` lines; ids must run 1..n in order."""
    names = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        ident, sep, name = line.partition("\t")
        if not sep:
            raise ParseError("expected 'id<TAB>name'", lineno)
        try:
            expected = int(ident)
        except ValueError:
            raise ParseError(f"bad item id {ident!r}", lineno) from None
        if expected != len(names) + 1:
            raise ParseError(f"ids must be contiguous from 1, got {expected}", lineno)
        names.append(name)
    if not names:
        raise ParseError("catalog file is empty")
    try:
        return build_catalog(names)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_catalog_file(catalog: ItemCatalog, stream: TextIO) -> None:
    for item, name in enumerate(catalog.names, start=1):
        stream.write(f"{item}\t{name}\n")


def load_attribute_table(
    stream: TextIO,
    attributes: Sequence[str],
    header: Sequence[str] | None = None,
    value_names: dict[str, dict[str, str]] | None = None,
) -> tuple[ItemCatalog, TransactionDb]:
    """Binarize a comma-separated attribute table into ``attr=value`` items.

    The first line is the header unless ``header`` is given, in which case
    every line is data. Item ids follow first-encounter order scanning rows
    top to bottom and the selected attributes left to right. ``value_names``
    optionally maps raw codes to display values per attribute.
    """
    reader = csv.reader(stream)
    if header is None:
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("attribute table is empty") from None
        first_data_line = 2
    else:
        first_data_line = 1
    header = [h.strip() for h in header]
    positions = []
    for attr in attributes:
        if attr not in header:
            raise ParseError(f"unknown attribute {attr!r}")
        positions.append((attr, header.index(attr)))
    if not positions:
        raise ValueError("select at least one attribute")

    ids: dict[str, int] = {}
    rows: list[Transaction] = []
    for lineno, record in enumerate(reader, start=first_data_line):
        if not record or (len(record) == 1 and not record[0].strip()):
            continue
        if len(record) != len(header):
            raise ParseError(f"expected {len(header)} values, got {len(record)}", lineno)
        items = []
        for attr, pos in positions:
            value = record[pos].strip()
            if value_names is not None and attr in value_names:
                value = value_names[attr].get(value, value)
            name = f"{attr}={value}"
            if name not in ids:
                ids[name] = len(ids) + 1
            items.append(ids[name])
        rows.append(make_transaction(items))
    if not rows:
        raise ParseError("attribute table has no data rows")
    catalog = ItemCatalog(tuple(ids))
    return catalog, TransactionDb(catalog, tuple(rows))


def average_real_length(db: TransactionDb) -> tuple[Fraction, int]:
    """Exact mean transaction length and its nearest integer (half up, at least 1)."""
    mean = Fraction(sum(db.lengths()), db.count)
    return mean, max(1, round_half_up(mean))


def length_variance(db: TransactionDb) -> Fraction:
    """Population variance of transaction lengths."""
    mean, _ = average_real_length(db)
    return sum((Fraction(x) - mean) ** 2 for x in db.lengths()) / db.count
