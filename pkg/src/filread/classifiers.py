"""Linear classifiers trained from scratch on standardized features.

Two model families: multinomial logistic regression (full-batch
gradient descent on softmax cross-entropy with L2 on the weights) and
a one-vs-all linear SVM (epoch-based subgradient descent on the hinge
objective).  Both are deterministic: logistic regression starts from
zero weights with a fixed iteration order, and the SVM's row-visit
orders are derived from the seed before training starts.

The inner loops live in the kernel backend (see ``kernels``); this
module owns standardization, the one-vs-all assembly, prediction, and
model serialization.
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from . import kernels
from .errors import (
    DimensionMismatch,
    EmptyDataset,
    InvalidParams,
    MalformedModelFile,
    MissingFile,
    SingleClassDataset,
)
from .features import FeatureSet

if TYPE_CHECKING:
    from .evaluation import LabeledDataset

__all__ = [
    "STD_FLOOR",
    "Standardizer",
    "fit_standardizer",
    "apply_standardizer",
    "Hyperparams",
    "LogisticModel",
    "SvmModel",
    "train_logistic",
    "train_svm_ova",
    "predict_proba_lr",
    "predict_svm",
    "predict_pseudo_proba_svm",
    "save_model",
    "load_model",
]

# Stddev floor: constant features standardize to exactly 0 instead of
# dividing by zero.
STD_FLOOR = 1e-9


@dataclasses.dataclass(frozen=True)
class Standardizer:
    """Per-feature z-score transform fitted on training rows only."""

    means: tuple[float, ...]
    stds: tuple[float, ...]

    def apply(self, rows):
        X = np.asarray(rows, dtype=np.float64)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.shape[1] != len(self.means):
            raise DimensionMismatch(
                f"row has {X.shape[1]} features, standardizer expects "
                f"{len(self.means)}")
        out = (X - np.asarray(self.means)) / np.asarray(self.stds)
        return out[0] if single else out

    def to_dict(self):
        return {"means": list(self.means), "stds": list(self.stds)}

    @classmethod
    def from_dict(cls, payload):
        return cls(means=tuple(float(v) for v in payload["means"]),
                   stds=tuple(float(v) for v in payload["stds"]))


def fit_standardizer(rows) -> Standardizer:
    """Fit per-feature mean and floored stddev on a 2-D row matrix."""
    try:
        X = np.asarray(rows, dtype=np.float64)
    except ValueError as exc:
        raise DimensionMismatch(f"rows have unequal lengths: {exc}") from exc
    if len(X) == 0:
        raise EmptyDataset("cannot fit a standardizer on zero rows")
    if X.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D row matrix, got {X.ndim}-D")
    means = X.mean(axis=0)
    stds = np.maximum(X.std(axis=0), STD_FLOOR)
    return Standardizer(means=tuple(float(m) for m in means),
                        stds=tuple(float(s) for s in stds))


def apply_standardizer(std: Standardizer, rows):
    return std.apply(rows)


@dataclasses.dataclass(frozen=True)
class Hyperparams:
    """Training settings for both model families.

    Defaults are stable on standardized 15-feature inputs at the
    corpus sizes this toolkit targets (tens of documents per level).
    """

    learning_rate: float = 0.1
    max_iters: int = 5000
    tolerance: float = 1e-8
    l2_lambda: float = 1e-3
    svm_c: float = 1.0
    svm_epochs: int = 100
    seed: int = 7

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not value > 0:
                raise InvalidParams(
                    f"hyperparameter {field.name} must be positive, "
                    f"got {value!r}")

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, payload):
        return cls(**{f.name: payload[f.name]
                      for f in dataclasses.fields(cls)})


class _LinearModel:
    """Shared plumbing: standardize, score, argmax with low-class ties."""

    model_type = ""

    def __init__(self, classes, weights, biases, standardizer,
                 feature_order, feature_set, hyperparams):
        self.classes = tuple(int(c) for c in classes)
        self.weights = np.asarray(weights, dtype=np.float64)
        self.biases = np.asarray(biases, dtype=np.float64)
        self.standardizer = standardizer
        self.feature_order = tuple(feature_order)
        self.feature_set = FeatureSet(feature_set)
        self.hyperparams = hyperparams

    def _scores(self, x):
        arr = np.asarray(x, dtype=np.float64)
        single = arr.ndim == 1
        X = np.atleast_2d(arr)
        if X.shape[1] != len(self.feature_order):
            raise DimensionMismatch(
                f"input has {X.shape[1]} features, model expects "
                f"{len(self.feature_order)}")
        scores = self.standardizer.apply(X) @ self.weights.T + self.biases
        return scores, single

    def decision_values(self, x):
        scores, single = self._scores(x)
        return scores[0] if single else scores

    def _softmax(self, x):
        scores, single = self._scores(x)
        scores -= scores.max(axis=1, keepdims=True)
        exp_scores = np.exp(scores)
        probs = exp_scores / exp_scores.sum(axis=1, keepdims=True)
        return probs[0] if single else probs

    def predict(self, x):
        """Class of the largest score; ties go to the lowest level."""
        scores, single = self._scores(x)
        picks = np.asarray(self.classes)[scores.argmax(axis=1)]
        return int(picks[0]) if single else picks

    def _payload(self):
        return {
            "model_type": self.model_type,
            "classes": list(self.classes),
            "feature_set": self.feature_set.value,
            "feature_order": list(self.feature_order),
            "standardizer": self.standardizer.to_dict(),
            "weights": [[float(v) for v in row] for row in self.weights],
            "biases": [float(v) for v in self.biases],
            "hyperparams": self.hyperparams.to_dict(),
        }


class LogisticModel(_LinearModel):
    """Multinomial logistic regression: softmax over linear scores."""

    model_type = "lr"

    def predict_proba(self, x):
        return self._softmax(x)


class SvmModel(_LinearModel):
    """One-vs-all linear SVM: one (w, bias) separator per class."""

    model_type = "svm"

    def predict_pseudo_proba(self, x):
        """Softmax over decision values; preserves the argmax."""
        return self._softmax(x)


def _training_arrays(data):
    X = np.ascontiguousarray(data.X, dtype=np.float64)
    y = np.asarray(data.y, dtype=np.int64)
    if X.shape[0] == 0:
        raise EmptyDataset("cannot train on zero rows")
    if X.shape[0] != y.shape[0]:
        raise DimensionMismatch(
            f"{X.shape[0]} rows but {y.shape[0]} labels")
    classes = np.unique(y)
    if classes.size < 2:
        raise SingleClassDataset(
            f"training needs >= 2 classes, got {classes.size}")
    std = fit_standardizer(X)
    Xs = np.ascontiguousarray(std.apply(X))
    return Xs, y, classes, std


def train_logistic(data: "LabeledDataset",
                   hp: Hyperparams | None = None) -> LogisticModel:
    hp = hp or Hyperparams()
    Xs, y, classes, std = _training_arrays(data)
    y_idx = np.ascontiguousarray(np.searchsorted(classes, y),
                                 dtype=np.int64)
    W, b, _ = kernels.logreg_fit(Xs, y_idx, int(classes.size),
                                 hp.learning_rate, hp.max_iters,
                                 hp.tolerance, hp.l2_lambda)
    return LogisticModel(classes=classes, weights=W, biases=b,
                         standardizer=std,
                         feature_order=data.feature_names,
                         feature_set=data.feature_set, hyperparams=hp)


def train_svm_ova(data: "LabeledDataset",
                  hp: Hyperparams | None = None) -> SvmModel:
    hp = hp or Hyperparams()
    Xs, y, classes, std = _training_arrays(data)
    n, d = Xs.shape
    lam = 1.0 / (hp.svm_c * n)
    W = np.empty((classes.size, d))
    b = np.empty(classes.size)
    for j, c in enumerate(classes):
        y_pm = np.where(y == c, 1.0, -1.0)
        # Row-visit orders are fixed up front so both kernel backends
        # replay the identical sequence.
        rng = np.random.default_rng(np.random.SeedSequence([hp.seed, j]))
        perms = np.empty((hp.svm_epochs, n), dtype=np.int64)
        for epoch in range(hp.svm_epochs):
            perms[epoch] = rng.permutation(n)
        W[j], b[j] = kernels.svm_fit_binary(Xs, y_pm, lam, perms)
    return SvmModel(classes=classes, weights=W, biases=b, standardizer=std,
                    feature_order=data.feature_names,
                    feature_set=data.feature_set, hyperparams=hp)


def predict_proba_lr(model: LogisticModel, x):
    return model.predict_proba(x)


def predict_svm(model: SvmModel, x):
    return model.predict(x)


def predict_pseudo_proba_svm(model: SvmModel, x):
    return model.predict_pseudo_proba(x)


_MODEL_CLASSES = {"lr": LogisticModel, "svm": SvmModel}


def save_model(model, path):
    """Write the model as JSON; floats survive the round trip exactly."""
    payload = model._payload()
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


def load_model(path):
    p = Path(path)
    if not p.exists():
        raise MissingFile(f"model file not found: {path}")
    try:
        payload = json.loads(p.read_text(encoding="utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise MalformedModelFile(f"{path}: {exc}") from exc
    try:
        cls = _MODEL_CLASSES[payload["model_type"]]
        return cls(classes=payload["classes"],
                   weights=np.asarray(payload["weights"], dtype=np.float64),
                   biases=np.asarray(payload["biases"], dtype=np.float64),
                   standardizer=Standardizer.from_dict(payload["standardizer"]),
                   feature_order=payload["feature_order"],
                   feature_set=payload["feature_set"],
                   hyperparams=Hyperparams.from_dict(payload["hyperparams"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedModelFile(f"{path}: {exc}") from exc
