"""Benchmark the compiled kernels against the pure numpy fallback.

Times the two training loops on a synthetic workload shaped like the
toolkit's real one (90 rows, 15 standardized features, 3 classes) and
prints per-backend timings plus agreement checks.

Usage: python benchmarks/bench_kernels.py [--rows 90] [--repeat 5]
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np

from filread import _pykernels


def _load_compiled():
    try:
        return importlib.import_module("filread._ckernels")
    except ImportError:
        return None


def make_workload(rows: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    classes = 3
    features = 15
    y = rng.integers(classes, size=rows).astype(np.int64)
    X = rng.normal(size=(rows, features))
    X += 1.5 * np.eye(classes, features)[y]
    X = np.ascontiguousarray((X - X.mean(0)) / X.std(0))
    return X, y


def time_logreg(impl, X, y, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = impl.logreg_fit(X, y, 3, 0.1, 2000, 1e-10, 1e-3)
        best = min(best, time.perf_counter() - start)
    return best, result


def time_svm(impl, X, y, repeat: int):
    n = X.shape[0]
    lam = 1.0 / n
    rng = np.random.default_rng(7)
    perms = np.stack([rng.permutation(n) for _ in range(100)]).astype(np.int64)
    y_pm = np.where(y == 0, 1.0, -1.0)
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = impl.svm_fit_binary(X, y_pm, lam, perms)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=90)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    X, y = make_workload(args.rows)
    compiled = _load_compiled()
    backends = [("python", _pykernels)]
    if compiled is not None:
        backends.append(("cython", compiled))
    else:
        print("compiled backend unavailable; timing the fallback only")

    results = {}
    for name, impl in backends:
        lr_time, lr_out = time_logreg(impl, X, y, args.repeat)
        svm_time, svm_out = time_svm(impl, X, y, args.repeat)
        results[name] = (lr_out, svm_out)
        print(f"{name:>7s}  logreg_fit: {lr_time * 1e3:8.2f} ms   "
              f"svm_fit_binary: {svm_time * 1e3:8.2f} ms")

    if len(results) == 2:
        (w_py, b_py, _), (sw_py, sb_py) = results["python"]
        (w_cy, b_cy, _), (sw_cy, sb_cy) = results["cython"]
        print("max |logreg weight diff|:",
              float(np.max(np.abs(w_py - w_cy))))
        print("max |svm weight diff|:   ",
              float(np.max(np.abs(sw_py - sw_cy))))
        np.testing.assert_allclose(w_py, w_cy, rtol=1e-8, atol=1e-10)
        np.testing.assert_allclose(b_py, b_cy, rtol=1e-8, atol=1e-10)
        np.testing.assert_allclose(sw_py, sw_cy, rtol=1e-8, atol=1e-10)
        np.testing.assert_allclose(sb_py, sb_cy, rtol=1e-8, atol=1e-10)
        print("backends agree within tolerance")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
