"""Per-document feature extraction.

Each document is summarized by 15 features in a fixed canonical order:
seven surface statistics (TRAD) followed by eight lexical-richness
statistics (LEX).

====  =====================  ==============================================
idx   name                   definition
====  =====================  ==============================================
0     avg_sentence_length    tokens per sentence
1     avg_token_length       letters per token
2     sentence_count         number of sentences
3     word_count             number of tokens
4     phrase_count           punctuation-delimited chunks, summed
5     avg_syllables_per_word syllables per token
6     polysyllabic_count     tokens with more syllables than the threshold
7     noun_token_ratio       noun tokens / all tokens
8     verb_token_ratio       verb tokens / all tokens
9     ttr                    types T / tokens N
10    root_ttr               T / sqrt(N)
11    corr_ttr               T / sqrt(2N)
12    bilog_ttr              log T / log N
13    lexical_density        content-word tokens / all tokens
14    foreign_ratio          foreign tokens / all tokens
====  =====================  ==============================================

Because length-sensitive richness metrics reward short texts, the TTR
family and lexical density are computed over a seeded uniform sample of
five sentences per document rather than the whole text; noun/verb
ratios and the foreign ratio use the full document.  Sampling is
deterministic: each document's sample seed is derived by hashing the
global seed with the document id, so extraction order (or parallelism)
cannot change any value.
"""

from __future__ import annotations

import enum
import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyDocument, EmptyInput
from .postags import CONTENT_CATEGORIES, LexicalCategory, TaggedDocument, TaggedSentence
from .textproc import POLYSYLLABIC_THRESHOLD, Document, Token, is_polysyllabic

__all__ = [
    "FeatureSet",
    "TradFeatures",
    "LexFeatures",
    "FeatureVector",
    "FEATURE_NAMES",
    "TRAD_NAMES",
    "LEX_NAMES",
    "DEFAULT_SAMPLE_SENTENCES",
    "derive_doc_seed",
    "extract_trad",
    "sample_sentences",
    "compute_ttr_family",
    "lexical_density",
    "lexical_variation",
    "foreign_ratio",
    "extract_lex",
    "build_feature_vector",
]

TRAD_NAMES = (
    "avg_sentence_length",
    "avg_token_length",
    "sentence_count",
    "word_count",
    "phrase_count",
    "avg_syllables_per_word",
    "polysyllabic_count",
)

LEX_NAMES = (
    "noun_token_ratio",
    "verb_token_ratio",
    "ttr",
    "root_ttr",
    "corr_ttr",
    "bilog_ttr",
    "lexical_density",
    "foreign_ratio",
)

FEATURE_NAMES = TRAD_NAMES + LEX_NAMES

DEFAULT_SAMPLE_SENTENCES = 5

_SQRT2 = math.sqrt(2.0)


class FeatureSet(str, enum.Enum):
    TRAD = "trad"
    LEX = "lex"
    BOTH = "both"

    @property
    def names(self) -> tuple[str, ...]:
        if self is FeatureSet.TRAD:
            return TRAD_NAMES
        if self is FeatureSet.LEX:
            return LEX_NAMES
        return FEATURE_NAMES

    @property
    def indices(self) -> tuple[int, ...]:
        if self is FeatureSet.TRAD:
            return tuple(range(len(TRAD_NAMES)))
        if self is FeatureSet.LEX:
            return tuple(range(len(TRAD_NAMES), len(FEATURE_NAMES)))
        return tuple(range(len(FEATURE_NAMES)))


@dataclass(frozen=True)
class TradFeatures:
    avg_sentence_length: float
    avg_token_length: float
    sentence_count: int
    word_count: int
    phrase_count: int
    avg_syllables_per_word: float
    polysyllabic_count: int

    def as_values(self) -> tuple[float, ...]:
        return (
            self.avg_sentence_length,
            self.avg_token_length,
            float(self.sentence_count),
            float(self.word_count),
            float(self.phrase_count),
            self.avg_syllables_per_word,
            float(self.polysyllabic_count),
        )


@dataclass(frozen=True)
class LexFeatures:
    noun_token_ratio: float
    verb_token_ratio: float
    ttr: float
    root_ttr: float
    corr_ttr: float
    bilog_ttr: float
    lexical_density: float
    foreign_ratio: float

    def as_values(self) -> tuple[float, ...]:
        return (
            self.noun_token_ratio,
            self.verb_token_ratio,
            self.ttr,
            self.root_ttr,
            self.corr_ttr,
            self.bilog_ttr,
            self.lexical_density,
            self.foreign_ratio,
        )


@dataclass(frozen=True)
class FeatureVector:
    """All 15 feature values for one document, in canonical order.

    ``feature_set`` records which slice downstream consumers should
    use; ``selected_values`` applies it.
    """

    doc_id: str
    values: tuple[float, ...]
    feature_set: FeatureSet = FeatureSet.BOTH

    def selected_values(self) -> tuple[float, ...]:
        return tuple(self.values[i] for i in self.feature_set.indices)


def derive_doc_seed(global_seed: int, doc_id: str) -> int:
    """Per-document sample seed: a stable hash of (global seed, doc id)."""
    digest = hashlib.blake2b(f"{global_seed}:{doc_id}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _content_sentences(doc: Document | TaggedDocument) -> tuple:
    if isinstance(doc, TaggedDocument):
        return doc.content_sentences
    return doc.sentences


def extract_trad(
    doc: Document | TaggedDocument,
    threshold: int = POLYSYLLABIC_THRESHOLD,
) -> TradFeatures:
    """Surface statistics over the whole document; all zeros when empty."""
    sentences = _content_sentences(doc)
    word_count = sum(len(s.tokens) for s in sentences)
    if word_count == 0:
        return TradFeatures(0.0, 0.0, 0, 0, 0, 0.0, 0)
    letters = 0
    syllables = 0
    polysyllabic = 0
    for sentence in sentences:
        for token in sentence.tokens:
            letters += token.char_length
            syllables += token.syllable_count
            polysyllabic += is_polysyllabic(token, threshold)
    sentence_count = len(sentences)
    return TradFeatures(
        avg_sentence_length=word_count / sentence_count,
        avg_token_length=letters / word_count,
        sentence_count=sentence_count,
        word_count=word_count,
        phrase_count=sum(s.phrase_count for s in sentences),
        avg_syllables_per_word=syllables / word_count,
        polysyllabic_count=polysyllabic,
    )


def sample_sentences(doc: Document | TaggedDocument, k: int, seed: int) -> list:
    """Draw min(k, n) distinct sentences uniformly, returned in document order."""
    sentences = _content_sentences(doc)
    if not sentences:
        raise EmptyDocument(f"document {doc.id!r} has no sentences to sample")
    if k < 1:
        raise ValueError("k must be >= 1")
    if k >= len(sentences):
        return list(sentences)
    rng = np.random.default_rng(seed)
    picked = rng.choice(len(sentences), size=k, replace=False)
    return [sentences[i] for i in sorted(picked)]


def compute_ttr_family(tokens: list[Token]) -> tuple[float, float, float, float]:
    """Type-token ratio and its root / corrected / bilogarithmic variants.

    Types are distinct case-folded surface forms.  The bilogarithmic
    variant degenerates for one-token texts (log 1 = 0); a single token
    is maximally rich, so it is fixed to 1.0 there, and returned as
    exactly 1.0 whenever T = N.
    """
    if not tokens:
        raise EmptyInput("TTR needs at least one token")
    n = len(tokens)
    t = len({token.normalized for token in tokens})
    root = t / math.sqrt(n)
    # root / sqrt(2) keeps the corrected/root relation exact in floats.
    corr = root / _SQRT2
    if n <= 1 or t == n:
        bilog = 1.0
    else:
        bilog = math.log(t) / math.log(n)
    return (t / n, root, corr, bilog)


def lexical_density(tagged: list) -> float:
    """Fraction of tokens in the four content categories."""
    if not tagged:
        raise EmptyInput("lexical density needs at least one token")
    content = sum(1 for tt in tagged if tt.category in CONTENT_CATEGORIES)
    return content / len(tagged)


def lexical_variation(tagged: list, category: LexicalCategory) -> float:
    """Fraction of tokens belonging to one named category."""
    if not tagged:
        raise EmptyInput("lexical variation needs at least one token")
    return sum(1 for tt in tagged if tt.category is category) / len(tagged)


def foreign_ratio(tagged: list) -> float:
    """Fraction of tokens categorized as foreign."""
    if not tagged:
        raise EmptyInput("foreign ratio needs at least one token")
    return sum(1 for tt in tagged if tt.category is LexicalCategory.FOREIGN) / len(tagged)


def _tagged_tokens(sentences: list[TaggedSentence]) -> list:
    return [tt for sentence in sentences for tt in sentence.tagged]


def extract_lex(
    doc: TaggedDocument,
    k: int | None = DEFAULT_SAMPLE_SENTENCES,
    seed: int = 0,
) -> LexFeatures:
    """Lexical-richness statistics for one tagged document.

    The TTR family and lexical density are length-sensitive and are
    computed over a k-sentence sample (k=None disables sampling so
    every metric uses the whole document); noun/verb ratios and the
    foreign ratio always use the full document.
    """
    sentences = list(doc.content_sentences)
    if not sentences:
        raise EmptyDocument(f"document {doc.id!r} has no sentences")
    if k is None:
        sampled = sentences
    else:
        sampled = sample_sentences(doc, k, seed)
    sampled_tagged = _tagged_tokens(sampled)
    full_tagged = _tagged_tokens(sentences)

    ttr, root, corr, bilog = compute_ttr_family([tt.token for tt in sampled_tagged])
    return LexFeatures(
        noun_token_ratio=lexical_variation(full_tagged, LexicalCategory.NOUN),
        verb_token_ratio=lexical_variation(full_tagged, LexicalCategory.VERB),
        ttr=ttr,
        root_ttr=root,
        corr_ttr=corr,
        bilog_ttr=bilog,
        lexical_density=lexical_density(sampled_tagged),
        foreign_ratio=foreign_ratio(full_tagged),
    )


def build_feature_vector(
    doc: TaggedDocument,
    feature_set: FeatureSet = FeatureSet.BOTH,
    k: int | None = DEFAULT_SAMPLE_SENTENCES,
    seed: int = 0,
    threshold: int = POLYSYLLABIC_THRESHOLD,
) -> FeatureVector:
    """TRAD then LEX values in canonical order, tagged with the requested set.

    ``seed`` is the global seed; the document's own sample seed is
    derived from it and the document id.
    """
    trad = extract_trad(doc, threshold)
    lex = extract_lex(doc, k, derive_doc_seed(seed, doc.id))
    return FeatureVector(
        doc_id=doc.id,
        values=trad.as_values() + lex.as_values(),
        feature_set=FeatureSet(feature_set),
    )
