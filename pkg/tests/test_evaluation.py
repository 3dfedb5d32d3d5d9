"""Cross-validation, metrics, and report artifacts."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from filread.classifiers import Hyperparams
from filread.errors import (
    CrossValidationError,
    DimensionMismatch,
    EmptyClassRow,
    EmptyInput,
    InvalidParams,
    TooFewRows,
    UnnormalizedProbabilities,
)
from filread.evaluation import (
    ConfusionMatrix,
    LabeledDataset,
    accuracy,
    cross_validate,
    macro_f1,
    per_class_rates,
    polysyllabic_profile,
    rmse_label,
    rmse_prob,
    stratified_kfold,
    weighted_f1,
    write_confusion_csv,
    write_profile_csv,
    write_report,
)
from filread.features import FeatureSet


def _dataset(X, y):
    X = np.asarray(X, dtype=np.float64)
    return LabeledDataset(
        doc_ids=tuple(f"doc{i}" for i in range(X.shape[0])),
        X=X,
        y=np.asarray(y),
        feature_names=tuple(f"f{i}" for i in range(X.shape[1])),
        feature_set=FeatureSet.BOTH,
    )


def _onehot_dataset(counts=(29, 30, 30), seed=0):
    # Features literally encode the label, plus jitter so no column is
    # constant inside a training split.
    rng = np.random.default_rng(seed)
    rows, labels = [], []
    for level, count in zip((1, 2, 3), counts):
        for _ in range(count):
            row = 0.01 * rng.normal(size=3)
            row[level - 1] += 4.0
            rows.append(row)
            labels.append(level)
    return _dataset(np.array(rows), labels)


class TestStratifiedKfold:
    def test_table_shaped_counts(self):
        y = np.array([1] * 29 + [2] * 30 + [3] * 30)
        folds = stratified_kfold(y, k=10, seed=7)
        for fold in range(10):
            for level in (1, 2, 3):
                n = int(((folds == fold) & (y == level)).sum())
                assert n in (2, 3)

    def test_two_folds_one_per_class(self):
        y = np.array([1, 1, 2, 2])
        folds = stratified_kfold(y, k=2, seed=0)
        for fold in (0, 1):
            picked = y[folds == fold]
            assert sorted(picked.tolist()) == [1, 2]

    def test_same_seed_identical(self):
        y = np.array([1] * 10 + [2] * 12 + [3] * 9)
        a = stratified_kfold(y, k=5, seed=3)
        b = stratified_kfold(y, k=5, seed=3)
        np.testing.assert_array_equal(a, b)

    def test_too_few_rows(self):
        with pytest.raises(TooFewRows):
            stratified_kfold(np.array([1, 2, 3]), k=4, seed=0)

    def test_k_below_two(self):
        with pytest.raises(InvalidParams):
            stratified_kfold(np.array([1, 2, 3]), k=1, seed=0)

    @given(
        st.lists(st.sampled_from([1, 2, 3]), min_size=10, max_size=60),
        st.integers(min_value=2, max_value=10),
        st.integers(min_value=0, max_value=99),
    )
    def test_partition_properties(self, labels, k, seed):
        y = np.array(labels)
        folds = stratified_kfold(y, k=k, seed=seed)
        assert folds.shape == y.shape
        assert set(folds.tolist()) <= set(range(k))
        # Per-class fold occupancy never deviates from even by more
        # than one row.
        for level in np.unique(y):
            per_fold = [int(((folds == f) & (y == level)).sum()) for f in range(k)]
            assert max(per_fold) - min(per_fold) <= 1


class TestAccuracy:
    def test_both_features_diagonal(self):
        cm = [[15, 7, 7], [8, 12, 10], [5, 10, 15]]
        assert accuracy(cm) == pytest.approx(42 / 89, abs=1e-12)
        assert abs(accuracy(cm) - 0.472) < 0.001

    def test_lex_diagonal(self):
        cm = [[9, 10, 10], [12, 11, 7], [16, 8, 6]]
        assert accuracy(cm) == pytest.approx(26 / 89, abs=1e-12)

    def test_perfect(self):
        assert accuracy([[4, 0], [0, 9]]) == 1.0

    def test_empty_raises(self):
        from filread.errors import EmptyMatrix

        with pytest.raises(EmptyMatrix):
            accuracy([[0, 0], [0, 0]])


class TestF1:
    def test_perfect(self):
        assert macro_f1([[5, 0], [0, 5]]) == 1.0

    def test_uniform_confusion(self):
        assert macro_f1([[1, 1], [1, 1]]) == pytest.approx(0.5, abs=1e-12)

    def test_absent_class_contributes_zero(self):
        # Class 2 is never predicted and never correct: F1 convention 0.
        cm = [[4, 0], [2, 0]]
        per_class1 = 2 * (4 / 6) * 1.0 / (4 / 6 + 1.0)
        assert macro_f1(cm) == pytest.approx(per_class1 / 2, abs=1e-12)

    def test_weighted_uses_support(self):
        cm = [[3, 0], [1, 1]]
        f1_c1 = 2 * (3 / 4) * 1.0 / (3 / 4 + 1.0)
        f1_c2 = 2 * 1.0 * (1 / 2) / (1.0 + 1 / 2)
        expected = (3 * f1_c1 + 2 * f1_c2) / 5
        assert weighted_f1(cm) == pytest.approx(expected, abs=1e-12)
        assert macro_f1(cm) == pytest.approx((f1_c1 + f1_c2) / 2, abs=1e-12)


class TestRmse:
    def test_all_correct(self):
        assert rmse_label([1, 2, 3], [1, 2, 3]) == 0.0

    def test_one_off_among_four(self):
        assert rmse_label([1, 2, 3, 3], [1, 2, 3, 2]) == pytest.approx(0.5)

    def test_swapped_extremes(self):
        assert rmse_label([1, 3], [3, 1]) == pytest.approx(2.0)

    def test_empty_raises(self):
        with pytest.raises(EmptyInput):
            rmse_label([], [])

    def test_prob_exact_one_hot(self):
        assert rmse_prob([[1.0, 0.0, 0.0]], [1], levels=(1, 2, 3)) == 0.0

    def test_prob_uniform(self):
        probs = [[1 / 3] * 3] * 7
        actual = [1, 2, 3, 1, 2, 3, 1]
        expected = math.sqrt(2 / 9)
        assert rmse_prob(probs, actual, levels=(1, 2, 3)) == pytest.approx(
            expected, abs=1e-12
        )

    def test_prob_wrong_one_hot(self):
        value = rmse_prob([[0.0, 1.0, 0.0]], [1], levels=(1, 2, 3))
        assert value == pytest.approx(math.sqrt(2 / 3), abs=1e-12)

    def test_prob_unnormalized_raises(self):
        with pytest.raises(UnnormalizedProbabilities):
            rmse_prob([[0.5, 0.2, 0.2]], [1], levels=(1, 2, 3))

    def test_prob_empty_raises(self):
        with pytest.raises(EmptyInput):
            rmse_prob(np.empty((0, 3)), [], levels=(1, 2, 3))


class TestPerClassRates:
    def test_repeating_decimal_truncates(self):
        cm = [[9, 11, 9], [9, 14, 7], [6, 10, 14]]
        rates = per_class_rates(cm)
        assert rates[1] == (31.0, 68.9)
        assert rates[2] == (46.6, 53.3)
        assert rates[3] == (46.6, 53.3)

    def test_twenty_eighty(self):
        cm = [[9, 10, 10], [12, 11, 7], [16, 8, 6]]
        assert per_class_rates(cm)[3] == (20.0, 80.0)

    def test_perfect_row(self):
        assert per_class_rates([[10, 0], [0, 4]])[1] == (100.0, 0.0)

    def test_empty_row_raises(self):
        with pytest.raises(EmptyClassRow):
            per_class_rates([[3, 1], [0, 0]])

    def test_accepts_confusion_matrix(self):
        cm = ConfusionMatrix.from_predictions([1, 1, 2], [1, 2, 2], levels=(1, 2))
        rates = per_class_rates(cm)
        assert rates[1] == (50.0, 50.0)
        assert rates[2] == (100.0, 0.0)


class TestConfusionMatrix:
    def test_from_predictions(self):
        cm = ConfusionMatrix.from_predictions(
            actual=[1, 1, 2, 3], predicted=[1, 2, 2, 3], levels=(1, 2, 3)
        )
        assert cm.counts == ((1, 1, 0), (0, 1, 0), (0, 0, 1))
        assert cm.total() == 4
        assert cm.row_sums() == (2, 1, 1)

    def test_levels_inferred(self):
        cm = ConfusionMatrix.from_predictions([2, 3], [3, 2])
        assert cm.levels == (2, 3)

    def test_mismatched_lengths_raise(self):
        with pytest.raises(DimensionMismatch):
            ConfusionMatrix.from_predictions([1, 2], [1])


class TestCrossValidate:
    @pytest.mark.parametrize("model_type", ["lr", "svm"])
    def test_label_encoding_features_are_learned(self, model_type):
        data = _onehot_dataset()
        report = cross_validate(data, model_type=model_type, k=10, seed=7)
        assert report.accuracy == 1.0
        assert report.rmse_label == 0.0
        assert report.confusion.total() == len(data)
        assert report.confusion.row_sums() == (29, 30, 30)

    def test_report_consistency(self):
        data = _onehot_dataset(seed=5)
        report = cross_validate(data, model_type="svm", k=5, seed=3)
        assert accuracy(report.confusion) == pytest.approx(report.accuracy, abs=1e-12)
        assert 0.0 <= report.macro_f1 <= 1.0
        assert 0.0 <= report.rmse_label <= 2.0
        assert 0.0 <= report.rmse_prob <= 1.0

    def test_unknown_model_type(self):
        with pytest.raises(InvalidParams):
            cross_validate(_onehot_dataset(), model_type="forest")

    def test_training_error_carries_fold_index(self):
        data = _dataset([[0.0], [1.0], [2.0]], [1, 1, 2])
        with pytest.raises(CrossValidationError) as info:
            cross_validate(data, model_type="lr", k=2, seed=0)
        assert info.value.fold == 0
        assert "fold 0" in str(info.value)

    def test_deterministic_reports(self, tmp_path):
        data = _onehot_dataset(seed=2)
        paths = []
        for name in ("a.json", "b.json"):
            report = cross_validate(data, model_type="svm", k=10, seed=7)
            path = tmp_path / name
            write_report(report, path, input_digests={"features": "00ff"})
            paths.append(path)
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestPolysyllabicProfile:
    def test_no_polysyllables(self):
        profile = polysyllabic_profile([1, 2, 3], [0, 0, 0])
        assert all(p.total == 0 for p in profile.per_level.values())
        assert profile.missing == ()

    def test_single_document(self):
        profile = polysyllabic_profile([1], [4])
        assert profile.per_level[1].total == 4
        assert profile.per_level[1].mean == 4.0
        assert profile.missing == (2, 3)

    def test_aggregates_per_level(self):
        profile = polysyllabic_profile([1, 1, 2, 3, 3], [1, 3, 5, 7, 9])
        assert profile.per_level[1].total == 4
        assert profile.per_level[1].documents == 2
        assert profile.per_level[3].mean == 8.0

    def test_misaligned_raises(self):
        with pytest.raises(DimensionMismatch):
            polysyllabic_profile([1, 2], [1])


class TestArtifacts:
    def _report(self):
        return cross_validate(_onehot_dataset(seed=9), model_type="svm", k=5, seed=7)

    def test_report_json_shape(self, tmp_path):
        path = tmp_path / "report.json"
        write_report(self._report(), path, input_digests={"features": "ab"})
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload["tool"] == "filread"
        assert payload["inputs"] == {"features": "ab"}
        assert payload["model_type"] == "svm"
        assert payload["confusion"]["levels"] == [1, 2, 3]
        assert set(payload["per_class"]) == {"1", "2", "3"}

    def test_confusion_csv(self, tmp_path):
        path = tmp_path / "cm.csv"
        cm = ConfusionMatrix(levels=(1, 2), counts=((3, 1), (0, 4)))
        write_confusion_csv(cm, path)
        lines = path.read_text(encoding="utf-8").strip().splitlines()
        assert lines[0] == "actual,predicted_1,predicted_2"
        assert lines[1] == "1,3,1"
        assert lines[2] == "2,0,4"

    def test_profile_csv(self, tmp_path):
        path = tmp_path / "profile.csv"
        write_profile_csv(polysyllabic_profile([1, 1, 2], [2, 4, 5]), path)
        lines = path.read_text(encoding="utf-8").strip().splitlines()
        assert lines[0] == "level,documents,total_polysyllabic,mean_per_document"
        assert lines[1] == "1,2,6,3.0"
