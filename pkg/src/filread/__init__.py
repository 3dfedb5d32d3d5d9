"""Readability assessment toolkit for Filipino children's texts.

Pipeline: segment and tokenize (textproc), attach lexical categories
(postags), extract 15 surface and lexical-richness features
(features), train linear classifiers (classifiers), evaluate with
stratified cross-validation (evaluation), rank features by
information gain (ranking).  corpus handles manifests, feature files,
and synthetic corpora; cli wires everything into subcommands.
"""

from .classifiers import (
    Hyperparams,
    LogisticModel,
    Standardizer,
    SvmModel,
    load_model,
    save_model,
    train_logistic,
    train_svm_ova,
)
from .corpus import SynthParams, generate_synthetic, load_corpus
from .errors import FilreadError
from .evaluation import (
    ConfusionMatrix,
    EvalReport,
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
)
from .features import (
    FEATURE_NAMES,
    LEX_NAMES,
    TRAD_NAMES,
    FeatureSet,
    FeatureVector,
    build_feature_vector,
    extract_lex,
    extract_trad,
)
from .postags import (
    DEFAULT_MAPPING,
    LexicalCategory,
    TaggedDocument,
    TagsetMapping,
    parse_tagged,
    tag_document,
)
from .ranking import information_gain, pearson, rank_features
from .textproc import Document, Sentence, Token, count_syllables, tokenize

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "FilreadError",
    "Document",
    "Sentence",
    "Token",
    "count_syllables",
    "tokenize",
    "LexicalCategory",
    "TaggedDocument",
    "TagsetMapping",
    "DEFAULT_MAPPING",
    "parse_tagged",
    "tag_document",
    "FeatureSet",
    "FeatureVector",
    "FEATURE_NAMES",
    "TRAD_NAMES",
    "LEX_NAMES",
    "build_feature_vector",
    "extract_trad",
    "extract_lex",
    "Standardizer",
    "Hyperparams",
    "LogisticModel",
    "SvmModel",
    "train_logistic",
    "train_svm_ova",
    "save_model",
    "load_model",
    "LabeledDataset",
    "ConfusionMatrix",
    "EvalReport",
    "stratified_kfold",
    "cross_validate",
    "accuracy",
    "macro_f1",
    "weighted_f1",
    "rmse_label",
    "rmse_prob",
    "per_class_rates",
    "polysyllabic_profile",
    "information_gain",
    "pearson",
    "rank_features",
    "SynthParams",
    "generate_synthetic",
    "load_corpus",
]
