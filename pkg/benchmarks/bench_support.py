"""Support counting: compiled kernel vs numpy fallback.

Builds a mushroom-sized synthetic database (8124 rows, 23 attributes with
a few values each, one value per attribute per row), then times bitmap
construction and counting of all 2- and 3-itemsets over the frequent
items. Run from the repository root:

    python benchmarks/bench_support.py [--rows 8124] [--repeat 5]
"""

import argparse
import timeit
from itertools import combinations

import numpy as np

from ppitemset import _kernels_py

try:
    from ppitemset import _kernels
except ImportError:
    _kernels = None


def synthetic(rows, attributes, values, seed):
    rng = np.random.default_rng(seed)
    # skewed value frequencies so some items are frequent
    probs = rng.dirichlet(np.full(values, 0.5), size=attributes)
    cols = [rng.choice(values, size=rows, p=p) + a * values for a, p in enumerate(probs)]
    indices = np.sort(np.stack(cols, axis=1), axis=1).astype(np.int32).ravel()
    indptr = np.arange(0, rows * attributes + 1, attributes, dtype=np.int64)
    return indptr, indices, attributes * values


def candidates(bitmaps, module, rows, k, floor=0.3):
    singles = np.arange(bitmaps.shape[0], dtype=np.int32)[:, None]
    counts = module.count_supports(bitmaps, singles)
    frequent = [int(a) for a in np.flatnonzero(counts >= floor * rows)]
    return np.array(list(combinations(frequent, k)), dtype=np.int32).reshape(-1, k)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--rows", type=int, default=8124)
    parser.add_argument("--attributes", type=int, default=23)
    parser.add_argument("--values", type=int, default=4)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    indptr, indices, n_items = synthetic(args.rows, args.attributes, args.values, args.seed)
    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    if _kernels is None:
        print("compiled extension not built; timing the numpy fallback only")

    reference = _kernels_py.build_bitmaps(indptr, indices, n_items)
    workloads = {k: candidates(reference, _kernels_py, args.rows, k) for k in (2, 3)}
    print(f"rows={args.rows} items={n_items} "
          + " ".join(f"k{k}_candidates={len(c)}" for k, c in workloads.items()))

    results = {}
    for name, module in backends:
        bitmaps = module.build_bitmaps(indptr, indices, n_items)
        assert np.array_equal(bitmaps, reference)
        timings = {"build": min(timeit.repeat(
            lambda: module.build_bitmaps(indptr, indices, n_items), number=1, repeat=args.repeat))}
        for k, cand in workloads.items():
            counts = module.count_supports(bitmaps, cand)
            assert np.array_equal(counts, _kernels_py.count_supports(reference, cand))
            timings[f"count k={k}"] = min(timeit.repeat(
                lambda: module.count_supports(bitmaps, cand), number=1, repeat=args.repeat))
        results[name] = timings

    print(f"{'stage':<12}" + "".join(f"{name:>14}" for name in results) + ("  speedup" if len(results) == 2 else ""))
    for stage in results["python"]:
        row = f"{stage:<12}" + "".join(f"{results[name][stage] * 1e3:>12.3f}ms" for name in results)
        if len(results) == 2:
            row += f"  {results['python'][stage] / results['cython'][stage]:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
