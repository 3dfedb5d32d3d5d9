"""Command-line front door: extract, train, evaluate, rank, predict, synth.

Data goes to files or standard output; diagnostics go to standard
error.  Exit codes: 0 success, 1 fatal, 2 partial per-file failures.
All randomness flows from --seed: sentence sampling hashes it with the
document id, fold assignment feeds it to the shuffler, and training
derives per-class orders from it, so identical invocations produce
byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import sys

from .classifiers import Hyperparams, load_model, save_model, train_logistic, train_svm_ova
from .corpus import (
    SynthParams,
    generate_synthetic,
    load_corpus,
    read_features_csv,
    write_features_csv,
)
from .errors import FilreadError, MalformedFeaturesRow
from .evaluation import (
    LabeledDataset,
    cross_validate,
    polysyllabic_profile,
    sha256_file,
    write_confusion_csv,
    write_profile_csv,
    write_report,
)
from .features import FEATURE_NAMES, FeatureSet, build_feature_vector
from .postags import DEFAULT_MAPPING, TagsetMapping
from .ranking import rank_features, write_ranking_csv

__all__ = ["main", "console_main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="filread",
        description="Readability feature extraction aimed at Filipino "
                    "children's texts, with level classifiers and "
                    "feature ranking.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_corpus_flags(p):
        p.add_argument("--separator", default="|",
                       help="word/tag separator in tagged files")
        p.add_argument("--mapping", default=None,
                       help="tagset mapping file (prefix=Category lines)")
        p.add_argument("--k-sample", type=int, default=5, dest="k_sample",
                       help="sentences sampled for length-sensitive "
                            "features; 0 disables sampling")
        p.add_argument("--threshold", type=int, default=6,
                       help="syllable count a polysyllabic word must exceed")

    def add_seed(p):
        p.add_argument("--seed", type=int, default=7)

    p = sub.add_parser("extract", help="corpus manifest -> features CSV")
    p.add_argument("--corpus", required=True, help="manifest CSV path")
    p.add_argument("--out", required=True, help="features CSV to write")
    add_corpus_flags(p)
    add_seed(p)

    p = sub.add_parser("evaluate",
                       help="cross-validate a model and write a report")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--features", help="features CSV (labeled)")
    src.add_argument("--corpus", help="manifest CSV to extract on the fly")
    p.add_argument("--report", help="report JSON to write")
    p.add_argument("--confusion-csv", dest="confusion_csv",
                   help="also export the confusion matrix as CSV")
    p.add_argument("--profile-csv", dest="profile_csv",
                   help="also export the per-level polysyllabic profile")
    p.add_argument("--model", choices=("lr", "svm"), default="svm")
    p.add_argument("--feature-set", dest="feature_set",
                   choices=("trad", "lex", "both"), default="both")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--weighted-f1", action="store_true", dest="show_weighted",
                   help="also print the support-weighted F1")
    add_corpus_flags(p)
    add_seed(p)

    p = sub.add_parser("rank", help="score features by information gain")
    p.add_argument("--features", required=True, help="features CSV (labeled)")
    p.add_argument("--out", help="ranking CSV to write")
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--top-k", type=int, default=10, dest="top_k")

    p = sub.add_parser("train", help="fit a model and serialize it")
    p.add_argument("--features", required=True, help="features CSV (labeled)")
    p.add_argument("--model-out", required=True, dest="model_out")
    p.add_argument("--model", choices=("lr", "svm"), default="svm")
    p.add_argument("--feature-set", dest="feature_set",
                   choices=("trad", "lex", "both"), default="both")
    add_seed(p)

    p = sub.add_parser("predict",
                       help="print doc_id, level, probabilities per document")
    p.add_argument("--model", required=True, help="model JSON path")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--features", help="features CSV")
    src.add_argument("--corpus", help="manifest CSV to extract on the fly")
    p.add_argument("--feature-set", dest="feature_set", default=None,
                   choices=("trad", "lex", "both"),
                   help="must match the model's set when given")
    add_corpus_flags(p)
    add_seed(p)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("--out", required=True, help="directory to create")
    p.add_argument("--per-level", type=int, default=None, dest="per_level",
                   help="documents per level (default: 29/30/30)")
    add_seed(p)

    return parser


def _mapping_from(args) -> TagsetMapping:
    if getattr(args, "mapping", None):
        return TagsetMapping.from_file(args.mapping)
    return DEFAULT_MAPPING


def _sample_k(args):
    return None if args.k_sample == 0 else args.k_sample


def _extract_vectors(args, manifest_path):
    """Load a corpus and featurize it; returns (vectors, levels, errors)."""
    docs, errors = load_corpus(manifest_path, separator=args.separator,
                               mapping=_mapping_from(args))
    vectors = [
        build_feature_vector(doc.tagged, FeatureSet.BOTH,
                             k=_sample_k(args), seed=args.seed,
                             threshold=args.threshold)
        for doc in docs
    ]
    return vectors, [doc.level for doc in docs], errors


def _report_corpus_errors(errors) -> None:
    for problem in errors:
        print(f"filread: {problem.location}: {problem.error}",
              file=sys.stderr)


def _labeled_dataset(vectors, levels, feature_set) -> LabeledDataset:
    unlabeled = [fv.doc_id for fv, lv in zip(vectors, levels) if lv is None]
    if unlabeled:
        raise MalformedFeaturesRow(
            f"{len(unlabeled)} rows have no level (first: "
            f"{unlabeled[0]!r}); labels are required here")
    return LabeledDataset.from_feature_vectors(
        vectors, levels, FeatureSet(feature_set))


def _cmd_extract(args) -> int:
    vectors, levels, errors = _extract_vectors(args, args.corpus)
    write_features_csv(args.out, vectors, levels)
    _report_corpus_errors(errors)
    print(f"filread: wrote {len(vectors)} rows to {args.out}",
          file=sys.stderr)
    return 2 if errors else 0


def _load_features(args):
    if args.features:
        vectors, levels = read_features_csv(args.features)
        return vectors, levels, [], {"features": sha256_file(args.features)}
    vectors, levels, errors = _extract_vectors(args, args.corpus)
    return vectors, levels, errors, {"corpus": sha256_file(args.corpus)}


def _print_report(report, show_weighted: bool) -> None:
    print(f"model={report.model_type} feature_set={report.feature_set.value} "
          f"folds={report.folds} seed={report.seed}")
    line = (f"accuracy={report.accuracy:.3f} macro_f1={report.macro_f1:.3f} "
            f"rmse_label={report.rmse_label:.3f} "
            f"rmse_prob={report.rmse_prob:.3f}")
    if show_weighted:
        line += f" weighted_f1={report.weighted_f1:.3f}"
    print(line)
    cm = report.confusion
    print("confusion (rows actual, columns predicted):")
    print("level  " + "  ".join(f"{c:>4d}" for c in cm.levels))
    for level, row in zip(cm.levels, cm.counts):
        print(f"{level:<5d}  " + "  ".join(f"{v:>4d}" for v in row))
    print("per-class rates (correct / misclassified):")
    for level in cm.levels:
        correct, wrong = report.per_class[level]
        print(f"level {level}: {correct:.1f}% / {wrong:.1f}%")


def _cmd_evaluate(args) -> int:
    vectors, levels, errors, digests = _load_features(args)
    _report_corpus_errors(errors)
    data = _labeled_dataset(vectors, levels, args.feature_set)
    hp = Hyperparams(seed=args.seed)
    report = cross_validate(data, model_type=args.model, hp=hp,
                            k=args.folds, seed=args.seed)
    _print_report(report, args.show_weighted)
    if args.report:
        write_report(report, args.report, input_digests=digests)
        print(f"filread: wrote report to {args.report}", file=sys.stderr)
    if args.confusion_csv:
        write_confusion_csv(report.confusion, args.confusion_csv)
    if args.profile_csv:
        poly_idx = FEATURE_NAMES.index("polysyllabic_count")
        labeled = [(lv, fv.values[poly_idx])
                   for fv, lv in zip(vectors, levels) if lv is not None]
        profile = polysyllabic_profile([lv for lv, _ in labeled],
                                       [c for _, c in labeled])
        write_profile_csv(profile, args.profile_csv)
        for level in profile.missing:
            print(f"filread: level {level} has no documents",
                  file=sys.stderr)
    return 2 if errors else 0


def _cmd_rank(args) -> int:
    vectors, levels = read_features_csv(args.features)
    data = _labeled_dataset(vectors, levels, FeatureSet.BOTH)
    report = rank_features(data, bins=args.bins, top_k=args.top_k)
    print("rank  feature                  set   info_gain  pearson_rho")
    for rank, entry in enumerate(report.entries, start=1):
        print(f"{rank:>4d}  {entry.feature_name:<23s} {entry.feature_set:<5s} "
              f"{entry.info_gain:>9.4f}  {entry.pearson_rho:>11.4f}")
    if args.out:
        write_ranking_csv(report, args.out)
        print(f"filread: wrote ranking to {args.out}", file=sys.stderr)
    return 0


def _cmd_train(args) -> int:
    vectors, levels = read_features_csv(args.features)
    data = _labeled_dataset(vectors, levels, args.feature_set)
    hp = Hyperparams(seed=args.seed)
    trainer = train_logistic if args.model == "lr" else train_svm_ova
    model = trainer(data, hp)
    save_model(model, args.model_out)
    print(f"filread: wrote {args.model} model to {args.model_out}",
          file=sys.stderr)
    return 0


def _cmd_predict(args) -> int:
    model = load_model(args.model)
    if args.feature_set and args.feature_set != model.feature_set.value:
        print(f"filread: model was trained on feature set "
              f"'{model.feature_set.value}', not '{args.feature_set}'",
              file=sys.stderr)
        return 1
    if args.features:
        vectors, _ = read_features_csv(args.features)
        errors = []
    else:
        vectors, _, errors = _extract_vectors(args, args.corpus)
        _report_corpus_errors(errors)
    try:
        columns = [FEATURE_NAMES.index(name) for name in model.feature_order]
    except ValueError:
        print(f"filread: model feature order {list(model.feature_order)} "
              f"does not match the canonical features", file=sys.stderr)
        return 1
    for fv in vectors:
        x = [fv.values[i] for i in columns]
        level = model.predict(x)
        if model.model_type == "lr":
            probs = model.predict_proba(x)
        else:
            probs = model.predict_pseudo_proba(x)
        cells = "\t".join(repr(float(p)) for p in probs)
        print(f"{fv.doc_id}\t{level}\t{cells}")
    return 2 if errors else 0


def _cmd_synth(args) -> int:
    params = SynthParams(seed=args.seed)
    if args.per_level is not None:
        params = params.scaled_counts(args.per_level)
    manifest = generate_synthetic(params, args.out)
    total = sum(params.doc_counts)
    print(f"filread: wrote {total} documents under {args.out}",
          file=sys.stderr)
    print(manifest)
    return 0


_COMMANDS = {
    "extract": _cmd_extract,
    "evaluate": _cmd_evaluate,
    "rank": _cmd_rank,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "synth": _cmd_synth,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FilreadError as exc:
        print(f"filread: error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main(sys.argv[1:]))
