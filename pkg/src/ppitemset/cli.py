"""Command-line interface: randomize, mine, reconstruct, rules, compare, oracle.

Exit codes: 0 success, 1 validation error, 2 I/O error, 3 oracle failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from ._rational import as_fraction, format_ratio
from .catalog import (
    ItemCatalog,
    ParseError,
    TransactionDb,
    average_real_length,
    length_variance,
    load_attribute_table,
    load_basket_file,
    load_catalog_file,
    write_basket_file,
    write_catalog_file,
)
from .datasets import MUSHROOM_COLUMNS, MUSHROOM_VALUE_NAMES, supermarket_db
from .miner import (
    VerticalIndex,
    association_rules,
    frequent_itemsets,
    join_ids,
    join_names,
    write_itemset_report,
    write_rule_report,
)
from .randomizer import (
    LengthModel,
    RandomizationParams,
    randomize_pipeline,
    read_key_file,
    shift_item,
    write_key_file,
)
from .reconstructor import (
    ReconstructionParams,
    recover_frequent_itemsets,
    reconstruct_support,
    write_reconstruction_report,
)

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_ORACLE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _threshold(text: str) -> Fraction:
    value = _rational(text)
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"threshold must lie in (0, 1], got {text}")
    return value


@contextlib.contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _read_catalog(path: str | None) -> ItemCatalog | None:
    if path is None:
        return None
    with open(path, encoding="utf-8") as fh:
        return load_catalog_file(fh)


def _load_input(args, path: str | None = None) -> TransactionDb:
    path = path or args.input
    attributes = getattr(args, "attributes", None)
    if attributes:
        selected = [a.strip() for a in attributes.split(",") if a.strip()]
        header = value_names = None
        columns = getattr(args, "columns", None)
        if columns == "mushroom":
            header, value_names = MUSHROOM_COLUMNS, MUSHROOM_VALUE_NAMES
        elif columns:
            header = [c.strip() for c in columns.split(",")]
        with open(path, encoding="utf-8", newline="") as fh:
            _, db = load_attribute_table(fh, selected, header=header, value_names=value_names)
        return db
    catalog = _read_catalog(getattr(args, "catalog", None))
    with open(path, encoding="utf-8") as fh:
        db = load_basket_file(fh, catalog)
    if db.duplicate_warnings:
        print(f"warning: collapsed {db.duplicate_warnings} duplicate item(s) in {path}", file=sys.stderr)
    return db


def _load_key(path: str) -> tuple[RandomizationParams, int]:
    with open(path, encoding="utf-8") as fh:
        return read_key_file(fh)


def _load_mixed(path: str, n: int, catalog_path: str | None) -> TransactionDb:
    catalog = _read_catalog(catalog_path)
    if catalog is None:
        catalog = ItemCatalog.numbered(n)
    elif catalog.n != n:
        raise UsageError(f"catalog has {catalog.n} items but the key file says n = {n}")
    with open(path, encoding="utf-8") as fh:
        return load_basket_file(fh, catalog)


def _parse_itemset(text: str, catalog: ItemCatalog) -> tuple[int, ...]:
    items = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if token.isdigit():
            item = int(token)
            if not 1 <= item <= catalog.n:
                raise UsageError(f"unknown item id {item} (catalog has 1..{catalog.n})")
        else:
            try:
                item = catalog.id_of(token)
            except KeyError:
                raise UsageError(f"unknown item {token!r}") from None
        items.append(item)
    if not items:
        raise UsageError("--itemset is empty")
    return tuple(sorted(set(items)))


def read_pinned_fakes(path: str) -> list[tuple[int, tuple[int, ...]]]:
    """Test hook format: one ``gap: id id ...`` line per fake transaction."""
    pinned = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            gap, sep, rest = line.partition(":")
            try:
                if not sep:
                    raise ValueError
                items = tuple(int(tok) for tok in rest.replace(",", " ").split())
                pinned.append((int(gap), items))
            except ValueError:
                raise ParseError("expected 'gap: id id ...'", lineno) from None
    return pinned


# -- subcommands -----------------------------------------------------------

def cmd_randomize(args) -> int:
    db = _load_input(args)
    n = db.catalog.n
    mean, rounded = average_real_length(db)
    l = args.l if args.l is not None else rounded
    if args.length_model == "normal":
        model = LengthModel("normal", mean, length_variance(db))
    else:
        model = LengthModel()
    key = args.key
    if key is None:
        key_rng = np.random.default_rng(np.random.SeedSequence([args.seed, 1]))
        key = int(key_rng.integers(1, n)) if n > 1 else 0
    params = RandomizationParams(args.w, l, key, args.seed, model)
    if key % n == 0:
        print("warning: key is a multiple of n; the item shift is the identity", file=sys.stderr)
    pinned = read_pinned_fakes(args.fakes_from) if args.fakes_from else None
    mixed, _ = randomize_pipeline(db, params, pinned=pinned)

    with _open_out(args.output) as fh:
        write_basket_file(mixed, fh)
    with open(args.key_file, "w", encoding="utf-8") as fh:
        write_key_file(params, n, fh)
    if args.catalog_out:
        with open(args.catalog_out, "w", encoding="utf-8") as fh:
            write_catalog_file(db.catalog, fh)

    print(f"real transactions (N): {db.count}")
    print(f"fake transactions: {mixed.count - db.count}")
    print(f"items (n): {n}")
    print(f"mean real length: {float(mean):.6g}")
    print(f"fake length parameter (l): {l}")
    print(
        f"warning: {args.key_file} is the secret key; keep it away from the mixed database",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_mine(args) -> int:
    db = _load_input(args)
    index = VerticalIndex(db)
    if args.itemset:
        items = _parse_itemset(args.itemset, db.catalog)
        count = index.count(items)
        with _open_out(args.output) as fh:
            out = csv.writer(fh, delimiter="\t" if args.format == "tsv" else ",", lineterminator="\n")
            out.writerow(["items", "item_names", "count", "support"])
            out.writerow([join_ids(items), join_names(db.catalog, items), count, format_ratio(Fraction(count, db.count))])
        return EXIT_OK
    if args.min_support is None:
        raise UsageError("mine needs --min-support or --itemset")
    found = frequent_itemsets(db, args.min_support, index=index)
    with _open_out(args.output) as fh:
        write_itemset_report(found, db.catalog, fh, args.format)
    return EXIT_OK


def cmd_rules(args) -> int:
    db = _load_input(args)
    found = frequent_itemsets(db, args.min_support)
    rules = association_rules(found, db, args.min_support, args.min_confidence)
    with _open_out(args.output) as fh:
        write_rule_report(rules, fh, args.format)
    return EXIT_OK


def _reconstruction_params(key_file: str) -> ReconstructionParams:
    params, n = _load_key(key_file)
    return ReconstructionParams.from_randomization(params, n)


def cmd_reconstruct(args) -> int:
    rec = _reconstruction_params(args.key_file)
    mixed = _load_mixed(args.input, rec.n, args.catalog)
    recovered = recover_frequent_itemsets(mixed, rec, args.min_support)
    with _open_out(args.output) as fh:
        write_reconstruction_report(recovered, mixed.catalog, fh, args.format)
    return EXIT_OK


def cmd_compare(args) -> int:
    rec = _reconstruction_params(args.key_file)
    real = _load_input(args)
    if real.catalog.n != rec.n:
        raise UsageError(f"catalog mismatch: real database has {real.catalog.n} items, key says {rec.n}")
    mixed = _load_mixed(args.mixed, rec.n, None)
    recovered = recover_frequent_itemsets(mixed, rec, args.min_support)
    real_index, mixed_index = VerticalIndex(real), VerticalIndex(mixed)
    itemsets = {f.items for f in frequent_itemsets(real, args.min_support, index=real_index)}
    itemsets.update(r.items for r in recovered)

    rows = []
    for items in sorted(itemsets, key=lambda s: (len(s), s)):
        real_support = Fraction(real_index.count(items), real.count)
        shifted = tuple(sorted(shift_item(a, rec.key_i, rec.n) for a in items))
        mixed_support = Fraction(mixed_index.count(shifted), mixed.count)
        rebuilt = reconstruct_support(mixed_support, len(items), rec).clamped
        rows.append((items, real_support, mixed_support, rebuilt))

    delim = "\t" if args.format == "tsv" else ","
    with _open_out(args.output) as fh:
        out = csv.writer(fh, delimiter=delim, lineterminator="\n")
        out.writerow(["items", "item_names", "real_support", "mixed_support", "reconstructed_support", "abs_diff"])
        for items, real_s, mixed_s, rebuilt in rows:
            out.writerow([
                join_ids(items),
                join_names(real.catalog, items),
                format_ratio(real_s),
                format_ratio(mixed_s),
                format_ratio(rebuilt),
                format_ratio(abs(real_s - rebuilt)),
            ])
    closeness = args.closeness or (args.output + ".closeness.csv" if args.output and args.output != "-" else None)
    if closeness:
        with open(closeness, "w", encoding="utf-8", newline="") as fh:
            out = csv.writer(fh, lineterminator="\n")
            out.writerow(["real_support", "reconstructed_support"])
            for _, real_s, _, rebuilt in rows:
                out.writerow([format_ratio(real_s), format_ratio(rebuilt)])
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import (
        OracleReport,
        brute_force_frequent,
        exact_fake_expectation_enum,
        mc_reconstruction_check,
    )
    from .reconstructor import fake_support_expectation

    db = _load_input(args) if args.input else supermarket_db()
    n = db.catalog.n
    l = args.l if args.l is not None else average_real_length(db)[1]
    params = RandomizationParams(args.w, l, args.key, args.seed)
    params.check_catalog(n)
    report = OracleReport()

    for n_small in range(1, 9):
        for l_small in range(1, 4):
            if 2 * l_small - 1 > n_small:
                continue
            for k in range(1, n_small + 1):
                report.add(
                    f"fake expectation n={n_small} k={k} l={l_small}",
                    exact_fake_expectation_enum(n_small, k, l_small),
                    fake_support_expectation(n_small, k, l_small),
                )
    if n <= 20:
        expected = brute_force_frequent(db, args.min_support)
        observed = frequent_itemsets(db, args.min_support)
        same = [(f.items, f.count) for f in expected] == [(f.items, f.count) for f in observed]
        report.add(f"apriori == brute force (s_min={args.min_support})", 1, int(same))
    singles = [(a,) for a in range(1, min(n, 20) + 1)]
    report.extend(mc_reconstruction_check(db, params, singles, args.runs))

    print(report.format())
    return EXIT_OK if report.passed else EXIT_ORACLE


# -- argument parsing ------------------------------------------------------

def _add_input_options(p, required=True):
    p.add_argument("--input", required=required, help="basket file (or attribute table with --attributes)")
    p.add_argument("--catalog", help="catalog file with 'id<TAB>name' lines")
    p.add_argument("--attributes", help="read --input as a comma-separated attribute table; select these attributes")
    p.add_argument("--columns", help="header for headerless tables: comma-separated names, or 'mushroom' for UCI agaricus-lepiota.data")


def _add_report_options(p):
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--format", choices=("tsv", "csv"), default="tsv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppitemset", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("randomize", help="inject fake transactions and shift items")
    _add_input_options(p)
    p.add_argument("--output", required=True, help="mixed basket file to write")
    p.add_argument("--key-file", required=True, help="secret key file to write")
    p.add_argument("--w", type=_rational, required=True, help="fake-to-real ratio, e.g. 1.5 or 3/2")
    p.add_argument("--l", type=int, help="mean fake length (default: rounded mean real length)")
    p.add_argument("--key", type=int, help="shift key i (default: drawn from the seed)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--length-model", choices=("uniform", "normal"), default="uniform")
    p.add_argument("--catalog-out", help="also write the item catalog here")
    p.add_argument("--fakes-from", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_randomize)

    p = sub.add_parser("mine", help="frequent itemsets, or one itemset's support")
    _add_input_options(p)
    _add_report_options(p)
    p.add_argument("--min-support", type=_threshold)
    p.add_argument("--itemset", help="comma-separated ids or names; print its support")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("reconstruct", help="recover frequent itemsets from a mixed database")
    p.add_argument("--input", required=True, help="mixed basket file")
    p.add_argument("--key-file", required=True)
    p.add_argument("--catalog", help="catalog file for item names")
    p.add_argument("--min-support", type=_threshold, required=True)
    _add_report_options(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("rules", help="association rules")
    _add_input_options(p)
    _add_report_options(p)
    p.add_argument("--min-support", type=_threshold, required=True)
    p.add_argument("--min-confidence", type=_threshold, required=True)
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("compare", help="real vs reconstructed supports")
    _add_input_options(p)
    p.add_argument("--mixed", required=True, help="mixed basket file")
    p.add_argument("--key-file", required=True)
    p.add_argument("--min-support", type=_threshold, required=True)
    p.add_argument("--closeness", help="two-column CSV of (real, reconstructed) supports")
    _add_report_options(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("oracle", help="run brute-force and Monte-Carlo self checks")
    _add_input_options(p, required=False)
    p.add_argument("--w", type=_rational, default=Fraction(3, 2))
    p.add_argument("--l", type=int)
    p.add_argument("--key", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=200)
    p.add_argument("--min-support", type=_threshold, default=Fraction(2, 5))
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
