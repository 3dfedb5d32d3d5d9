"""Cross-validation and every reported metric.

Folds are stratified per class (seed-shuffle, then round-robin), each
row is predicted exactly once by a model that never saw it, and all
metrics are computed over the pooled predictions.  Two RMSE readings
are reported side by side: one over ordinal level values and one over
class-indicator probability vectors.  Percent rates are truncated to
one decimal, not rounded, so printed tables match exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classifiers import Hyperparams, train_logistic, train_svm_ova
from .errors import (
    CrossValidationError,
    DimensionMismatch,
    EmptyClassRow,
    EmptyDataset,
    EmptyInput,
    EmptyMatrix,
    FilreadError,
    InvalidParams,
    TooFewRows,
    UnnormalizedProbabilities,
)
from .features import FEATURE_NAMES, FeatureSet

__all__ = [
    "LabeledDataset",
    "ConfusionMatrix",
    "EvalReport",
    "LevelProfile",
    "ProfileReport",
    "stratified_kfold",
    "cross_validate",
    "accuracy",
    "macro_f1",
    "weighted_f1",
    "rmse_label",
    "rmse_prob",
    "per_class_rates",
    "polysyllabic_profile",
    "write_report",
    "write_confusion_csv",
    "write_profile_csv",
    "sha256_file",
]


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Aligned feature rows and readability levels."""

    doc_ids: tuple[str, ...]
    X: np.ndarray
    y: np.ndarray
    feature_names: tuple[str, ...]
    feature_set: FeatureSet = FeatureSet.BOTH

    def __post_init__(self):
        object.__setattr__(self, "doc_ids", tuple(self.doc_ids))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "feature_set", FeatureSet(self.feature_set))
        X = np.asarray(self.X, dtype=np.float64)
        if X.ndim != 2:
            raise DimensionMismatch(f"expected a 2-D matrix, got {X.ndim}-D")
        y = np.asarray(self.y, dtype=np.int64)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        if X.shape[0] == 0:
            raise EmptyDataset("a labeled dataset needs at least one row")
        if not (X.shape[0] == y.shape[0] == len(self.doc_ids)):
            raise DimensionMismatch(
                f"{len(self.doc_ids)} ids, {X.shape[0]} rows, "
                f"{y.shape[0]} labels")
        if X.shape[1] != len(self.feature_names):
            raise DimensionMismatch(
                f"{X.shape[1]} columns but {len(self.feature_names)} "
                f"feature names")

    def __len__(self) -> int:
        return self.X.shape[0]

    @classmethod
    def from_feature_vectors(cls, vectors, levels,
                             feature_set: FeatureSet = FeatureSet.BOTH):
        """Select one feature set's columns out of full 15-value vectors."""
        vectors = list(vectors)
        levels = list(levels)
        if len(vectors) != len(levels):
            raise DimensionMismatch(
                f"{len(vectors)} vectors but {len(levels)} levels")
        if not vectors:
            raise EmptyDataset("no feature vectors")
        feature_set = FeatureSet(feature_set)
        indices = feature_set.indices
        rows = []
        for fv in vectors:
            if len(fv.values) != len(FEATURE_NAMES):
                raise DimensionMismatch(
                    f"vector {fv.doc_id!r} has {len(fv.values)} values, "
                    f"expected {len(FEATURE_NAMES)}")
            rows.append([fv.values[i] for i in indices])
        return cls(doc_ids=tuple(fv.doc_id for fv in vectors),
                   X=np.asarray(rows, dtype=np.float64),
                   y=np.asarray([int(lv) for lv in levels], dtype=np.int64),
                   feature_names=feature_set.names,
                   feature_set=feature_set)

    def subset(self, indices) -> "LabeledDataset":
        idx = np.asarray(indices)
        return LabeledDataset(
            doc_ids=tuple(self.doc_ids[i] for i in idx),
            X=self.X[idx],
            y=self.y[idx],
            feature_names=self.feature_names,
            feature_set=self.feature_set)


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[actual][predicted] over the level axis ``levels``."""

    levels: tuple[int, ...]
    counts: tuple[tuple[int, ...], ...]

    @classmethod
    def from_predictions(cls, actual, predicted, levels=None):
        actual = np.asarray(actual, dtype=np.int64)
        predicted = np.asarray(predicted, dtype=np.int64)
        if actual.shape != predicted.shape:
            raise DimensionMismatch(
                f"{actual.size} actual vs {predicted.size} predicted")
        if levels is None:
            levels = np.union1d(actual, predicted)
        levels = tuple(int(c) for c in levels)
        pos = {c: i for i, c in enumerate(levels)}
        counts = np.zeros((len(levels), len(levels)), dtype=np.int64)
        for a, p in zip(actual, predicted):
            counts[pos[int(a)], pos[int(p)]] += 1
        return cls(levels=levels,
                   counts=tuple(tuple(int(v) for v in row) for row in counts))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=np.int64)

    def total(self) -> int:
        return int(self.as_array().sum())

    def row_sums(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.as_array().sum(axis=1))


def _counts(cm) -> np.ndarray:
    if isinstance(cm, ConfusionMatrix):
        return cm.as_array()
    arr = np.asarray(cm, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"confusion matrix must be square, "
                                f"got shape {arr.shape}")
    return arr


def _levels_of(cm, arr) -> tuple[int, ...]:
    if isinstance(cm, ConfusionMatrix):
        return cm.levels
    return tuple(range(1, arr.shape[0] + 1))


def accuracy(cm) -> float:
    """Correctly classified fraction: trace over total."""
    arr = _counts(cm)
    total = int(arr.sum())
    if total == 0:
        raise EmptyMatrix("confusion matrix has zero total")
    return float(np.trace(arr)) / total


def _per_class_f1(arr: np.ndarray) -> np.ndarray:
    diag = np.diag(arr).astype(np.float64)
    actual = arr.sum(axis=1).astype(np.float64)
    predicted = arr.sum(axis=0).astype(np.float64)
    f1 = np.zeros(arr.shape[0])
    for i in range(arr.shape[0]):
        precision = diag[i] / predicted[i] if predicted[i] else 0.0
        recall = diag[i] / actual[i] if actual[i] else 0.0
        if precision + recall > 0.0:
            f1[i] = 2.0 * precision * recall / (precision + recall)
    return f1


def macro_f1(cm) -> float:
    """Unweighted mean of per-class F1; absent classes contribute 0."""
    arr = _counts(cm)
    if arr.sum() == 0:
        raise EmptyMatrix("confusion matrix has zero total")
    return float(_per_class_f1(arr).mean())


def weighted_f1(cm) -> float:
    """Per-class F1 averaged with actual-class counts as weights."""
    arr = _counts(cm)
    total = int(arr.sum())
    if total == 0:
        raise EmptyMatrix("confusion matrix has zero total")
    weights = arr.sum(axis=1).astype(np.float64) / total
    return float((_per_class_f1(arr) * weights).sum())


def rmse_label(predicted, actual) -> float:
    """Root mean squared error over ordinal level values."""
    p = np.asarray(predicted, dtype=np.float64)
    a = np.asarray(actual, dtype=np.float64)
    if p.shape != a.shape:
        raise DimensionMismatch(f"{p.size} predictions vs {a.size} labels")
    if p.size == 0:
        raise EmptyInput("rmse_label needs at least one prediction")
    return float(np.sqrt(np.mean((p - a) ** 2)))


def rmse_prob(probs, actual, levels) -> float:
    """RMSE between probability vectors and one-hot label indicators.

    Averages over instances and classes, so a uniform 3-class
    prediction scores sqrt(2/9) regardless of the labels.
    """
    P = np.asarray(probs, dtype=np.float64)
    a = np.asarray(actual, dtype=np.int64)
    levels = tuple(int(c) for c in levels)
    if P.ndim != 2 or P.shape[1] != len(levels):
        raise DimensionMismatch(
            f"probability matrix shape {P.shape} does not match "
            f"{len(levels)} levels")
    if P.shape[0] != a.size:
        raise DimensionMismatch(f"{P.shape[0]} rows vs {a.size} labels")
    if P.size == 0:
        raise EmptyInput("rmse_prob needs at least one prediction")
    sums = P.sum(axis=1)
    if np.any(np.abs(sums - 1.0) > 1e-9):
        worst = int(np.argmax(np.abs(sums - 1.0)))
        raise UnnormalizedProbabilities(
            f"row {worst} sums to {sums[worst]!r}")
    pos = {c: i for i, c in enumerate(levels)}
    onehot = np.zeros_like(P)
    for i, label in enumerate(a):
        onehot[i, pos[int(label)]] = 1.0
    return float(np.sqrt(np.mean((P - onehot) ** 2)))


def _truncate_pct(numerator: int, denominator: int) -> float:
    # Integer arithmetic so 9/29 prints 31.0 and 20/29 prints 68.9,
    # matching truncation of the repeating decimal.
    return (numerator * 1000 // denominator) / 10.0


def per_class_rates(cm) -> dict[int, tuple[float, float]]:
    """Per level: (correct %, misclassified %), truncated to one decimal."""
    arr = _counts(cm)
    levels = _levels_of(cm, arr)
    rates = {}
    for i, level in enumerate(levels):
        row_sum = int(arr[i].sum())
        if row_sum == 0:
            raise EmptyClassRow(f"level {level} has no actual rows")
        correct = int(arr[i, i])
        rates[level] = (_truncate_pct(correct, row_sum),
                        _truncate_pct(row_sum - correct, row_sum))
    return rates


@dataclass(frozen=True)
class EvalReport:
    model_type: str
    feature_set: FeatureSet
    folds: int
    seed: int
    hyperparams: Hyperparams
    accuracy: float
    macro_f1: float
    weighted_f1: float
    rmse_label: float
    rmse_prob: float
    confusion: ConfusionMatrix
    per_class: dict

    def to_dict(self) -> dict:
        return {
            "model_type": self.model_type,
            "feature_set": self.feature_set.value,
            "folds": self.folds,
            "seed": self.seed,
            "hyperparams": self.hyperparams.to_dict(),
            "accuracy": self.accuracy,
            "macro_f1": self.macro_f1,
            "weighted_f1": self.weighted_f1,
            "rmse_label": self.rmse_label,
            "rmse_prob": self.rmse_prob,
            "confusion": {
                "levels": list(self.confusion.levels),
                "counts": [list(row) for row in self.confusion.counts],
            },
            "per_class": {str(level): list(rates)
                          for level, rates in sorted(self.per_class.items())},
        }


def stratified_kfold(data, k: int, seed: int) -> np.ndarray:
    """Fold index per row: per-class seed-shuffle, then round-robin.

    Classes are visited in ascending label order against one shared
    generator, so the assignment is deterministic.  Per-fold class
    counts deviate from perfect proportionality by at most 1.
    """
    y = np.asarray(data.y if hasattr(data, "y") else data, dtype=np.int64)
    if k < 2:
        raise InvalidParams(f"k must be >= 2, got {k}")
    if y.size < k:
        raise TooFewRows(f"{y.size} rows cannot fill {k} folds")
    rng = np.random.default_rng(seed)
    folds = np.empty(y.size, dtype=np.int64)
    for c in np.unique(y):
        rows = np.flatnonzero(y == c)
        order = rng.permutation(rows)
        folds[order] = np.arange(order.size) % k
    return folds


def cross_validate(data: LabeledDataset, model_type: str = "svm",
                   hp: Hyperparams | None = None, k: int = 10,
                   seed: int = 7) -> EvalReport:
    """Pooled k-fold evaluation: every row predicted exactly once.

    The standardizer and model are refitted per fold on the training
    split only.  Training failures carry the fold index.
    """
    if model_type not in ("lr", "svm"):
        raise InvalidParams(f"unknown model type {model_type!r}")
    hp = hp or Hyperparams()
    folds = stratified_kfold(data, k, seed)
    y = data.y
    levels = tuple(int(c) for c in np.unique(y))
    pos = {c: i for i, c in enumerate(levels)}
    predicted = np.empty(y.size, dtype=np.int64)
    probs = np.zeros((y.size, len(levels)))
    for fold in range(k):
        test_idx = np.flatnonzero(folds == fold)
        if test_idx.size == 0:
            continue
        train_idx = np.flatnonzero(folds != fold)
        try:
            subset = data.subset(train_idx)
            if model_type == "lr":
                model = train_logistic(subset, hp)
            else:
                model = train_svm_ova(subset, hp)
        except FilreadError as exc:
            raise CrossValidationError(str(exc), fold) from exc
        X_test = data.X[test_idx]
        predicted[test_idx] = model.predict(X_test)
        if model_type == "lr":
            P = model.predict_proba(X_test)
        else:
            P = model.predict_pseudo_proba(X_test)
        for j, c in enumerate(model.classes):
            probs[test_idx, pos[c]] = P[:, j]
    cm = ConfusionMatrix.from_predictions(y, predicted, levels)
    return EvalReport(
        model_type=model_type,
        feature_set=data.feature_set,
        folds=k,
        seed=seed,
        hyperparams=hp,
        accuracy=accuracy(cm),
        macro_f1=macro_f1(cm),
        weighted_f1=weighted_f1(cm),
        rmse_label=rmse_label(predicted, y),
        rmse_prob=rmse_prob(probs, y, levels),
        confusion=cm,
        per_class=per_class_rates(cm),
    )


@dataclass(frozen=True)
class LevelProfile:
    documents: int
    total: int
    mean: float


@dataclass(frozen=True)
class ProfileReport:
    """Per-level polysyllabic totals, plus levels that had no documents."""

    per_level: dict
    missing: tuple[int, ...]


def polysyllabic_profile(levels, counts,
                         expected_levels=(1, 2, 3)) -> ProfileReport:
    """Sum and average polysyllabic counts per readability level."""
    levels = [int(lv) for lv in levels]
    counts = [int(c) for c in counts]
    if len(levels) != len(counts):
        raise DimensionMismatch(
            f"{len(levels)} levels but {len(counts)} counts")
    per_level = {}
    for level in sorted(set(levels) | set(int(lv) for lv in expected_levels)):
        values = [c for lv, c in zip(levels, counts) if lv == level]
        if values:
            per_level[level] = LevelProfile(
                documents=len(values),
                total=sum(values),
                mean=sum(values) / len(values))
    missing = tuple(lv for lv in expected_levels if lv not in per_level)
    return ProfileReport(per_level=per_level, missing=missing)


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_report(report: EvalReport, path, input_digests=None) -> None:
    """Serialize an EvalReport as JSON with tool version and input digests.

    Nothing time- or host-dependent goes in, so identical runs produce
    byte-identical files.
    """
    from . import __version__

    payload = {
        "tool": "filread",
        "version": __version__,
        "inputs": dict(sorted((input_digests or {}).items())),
    }
    payload.update(report.to_dict())
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def write_confusion_csv(cm: ConfusionMatrix, path) -> None:
    lines = ["actual," + ",".join(f"predicted_{c}" for c in cm.levels)]
    for level, row in zip(cm.levels, cm.counts):
        lines.append(str(level) + "," + ",".join(str(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_profile_csv(profile: ProfileReport, path) -> None:
    lines = ["level,documents,total_polysyllabic,mean_per_document"]
    for level in sorted(profile.per_level):
        entry = profile.per_level[level]
        lines.append(f"{level},{entry.documents},{entry.total},"
                     f"{entry.mean!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
