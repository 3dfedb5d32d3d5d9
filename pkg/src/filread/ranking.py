"""Feature ranking by information gain and Pearson correlation.

Continuous features are discretized into equal-frequency bins before
the entropy computation.  Correlation against the numeric level is
reported alongside; a constant input has no defined correlation and is
reported as NaN rather than a fabricated 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, EmptyInput, InvalidParams
from .features import LEX_NAMES, TRAD_NAMES

__all__ = [
    "RankingEntry",
    "RankingReport",
    "discretize_equal_frequency",
    "entropy",
    "information_gain",
    "pearson",
    "rank_features",
    "write_ranking_csv",
]

DEFAULT_BINS = 10
DEFAULT_TOP_K = 10


def discretize_equal_frequency(values, bins: int) -> np.ndarray:
    """Bin index per value; bin populations differ by at most 1.

    Values are ranked with a stable sort and dealt into consecutive
    chunks.  Equal values always share a bin: a run of ties keeps the
    bin of its first (lowest-position) member, so boundary ties fall
    into the lower bin and a constant input occupies a single bin.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected 1-D values, got {arr.ndim}-D")
    if arr.size == 0:
        raise EmptyInput("nothing to discretize")
    if bins < 2:
        raise InvalidParams(f"bins must be >= 2, got {bins}")
    n = arr.size
    order = np.argsort(arr, kind="stable")
    base, extra = divmod(n, bins)
    planned = np.empty(n, dtype=np.int64)
    start = 0
    for b in range(bins):
        size = base + (1 if b < extra else 0)
        planned[start:start + size] = b
        start += size
    assigned = np.empty(n, dtype=np.int64)
    assigned[order[0]] = planned[0]
    for pos in range(1, n):
        i, prev = order[pos], order[pos - 1]
        assigned[i] = assigned[prev] if arr[i] == arr[prev] else planned[pos]
    return assigned


def entropy(labels) -> float:
    """Shannon entropy of the label distribution, in bits."""
    arr = np.asarray(labels)
    if arr.size == 0:
        raise EmptyInput("entropy needs at least one label")
    _, counts = np.unique(arr, return_counts=True)
    p = counts / arr.size
    return float(-(p * np.log2(p)).sum())


def information_gain(values, labels, bins: int = DEFAULT_BINS) -> float:
    """Label-entropy reduction from conditioning on the binned feature."""
    arr = np.asarray(values, dtype=np.float64)
    y = np.asarray(labels)
    if arr.size == 0 or y.size == 0:
        raise EmptyInput("information gain needs data")
    if arr.shape != y.shape:
        raise DimensionMismatch(f"{arr.size} values vs {y.size} labels")
    assigned = discretize_equal_frequency(arr, bins)
    conditional = 0.0
    for b in np.unique(assigned):
        members = y[assigned == b]
        conditional += (members.size / y.size) * entropy(members)
    return entropy(y) - conditional


def pearson(values, levels) -> float:
    """Sample correlation coefficient; NaN when either side is constant.

    NaN is the flagged "undefined" value: a constant feature carries no
    direction, and pretending its correlation is 0 would fabricate a
    rank signal.
    """
    x = np.asarray(values, dtype=np.float64)
    y = np.asarray(levels, dtype=np.float64)
    if x.shape != y.shape:
        raise DimensionMismatch(f"{x.size} values vs {y.size} levels")
    if x.size < 2:
        raise EmptyInput("correlation needs at least two pairs")
    dx = x - x.mean()
    dy = y - y.mean()
    ssx = float(dx @ dx)
    ssy = float(dy @ dy)
    if ssx == 0.0 or ssy == 0.0:
        return math.nan
    # Single square root of the product keeps x == +/-y at exactly 1.
    return float(dx @ dy) / math.sqrt(ssx * ssy)


@dataclass(frozen=True)
class RankingEntry:
    feature_name: str
    feature_set: str
    info_gain: float
    pearson_rho: float


@dataclass(frozen=True)
class RankingReport:
    entries: tuple
    bins: int


def _set_tag(name: str) -> str:
    if name in TRAD_NAMES:
        return "TRAD"
    if name in LEX_NAMES:
        return "LEX"
    return "OTHER"


def rank_features(data, bins: int = DEFAULT_BINS,
                  top_k: int = DEFAULT_TOP_K) -> RankingReport:
    """Score every feature column, sort, and keep the top_k.

    Order: information gain descending, then |rho| descending (NaN
    sorts last), then the dataset's column order.
    """
    entries = []
    for idx, name in enumerate(data.feature_names):
        column = data.X[:, idx]
        entries.append(RankingEntry(
            feature_name=name,
            feature_set=_set_tag(name),
            info_gain=information_gain(column, data.y, bins),
            pearson_rho=pearson(column, data.y),
        ))

    def sort_key(pair):
        idx, entry = pair
        rho = entry.pearson_rho
        abs_rho = -1.0 if math.isnan(rho) else abs(rho)
        return (-entry.info_gain, -abs_rho, idx)

    ranked = [e for _, e in sorted(enumerate(entries), key=sort_key)]
    return RankingReport(entries=tuple(ranked[:top_k]), bins=bins)


def write_ranking_csv(report: RankingReport, path) -> None:
    lines = ["feature,set,info_gain,pearson_rho,rank"]
    for rank, entry in enumerate(report.entries, start=1):
        lines.append(f"{entry.feature_name},{entry.feature_set},"
                     f"{entry.info_gain!r},{entry.pearson_rho!r},{rank}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
