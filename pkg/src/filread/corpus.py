"""Corpus loading, feature-file round-tripping, and synthetic corpora.

A corpus is a manifest CSV (``path,level,format``) next to its
document files.  Loading is not fail-fast: bad rows and unreadable
files are collected as located errors while the healthy remainder is
returned.

The synthetic generator emits tagged documents whose statistics
concentrate around per-level parameters.  Words are assembled from
consonant-vowel syllables, so the syllable counter sees exactly the
intended counts, and categories are drawn at generation time, never
inferred from the text.  Every document has its own derived seed, so
output is byte-stable for a given parameter set.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .errors import (
    FilreadError,
    InvalidParams,
    MalformedFeaturesRow,
    MalformedManifestRow,
    MissingFile,
)
from .features import FEATURE_NAMES, FeatureSet, FeatureVector
from .postags import (
    DEFAULT_MAPPING,
    TaggedDocument,
    TagsetMapping,
    parse_tagged,
    tag_document,
)
from .textproc import Document

__all__ = [
    "ManifestEntry",
    "LabeledDoc",
    "CorpusError",
    "read_manifest",
    "load_corpus",
    "write_manifest",
    "write_features_csv",
    "read_features_csv",
    "SynthParams",
    "generate_synthetic",
]

MANIFEST_HEADER = ("path", "level", "format")
FEATURES_HEADER = ("doc_id", "level") + FEATURE_NAMES
VALID_LEVELS = (1, 2, 3)
_FORMATS = ("plain", "tagged")


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    level: int
    format: str


@dataclass(frozen=True)
class LabeledDoc:
    doc_id: str
    level: int
    tagged: object


@dataclass(frozen=True)
class CorpusError:
    """One located failure from a partial corpus load."""

    location: str
    error: Exception


def read_manifest(path):
    """Parse a manifest CSV into entries plus per-row errors.

    A missing file or wrong header makes the whole manifest unusable
    and raises; individual bad rows are collected instead.
    """
    p = Path(path)
    if not p.is_file():
        raise MissingFile(f"manifest not found: {path}")
    with open(p, newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    if not rows or tuple(rows[0]) != MANIFEST_HEADER:
        raise MalformedManifestRow(
            f"{path}: expected header {','.join(MANIFEST_HEADER)}")
    entries = []
    problems = []
    seen = set()
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        location = f"{path}:{lineno}"
        try:
            entries.append(_parse_manifest_row(row, seen))
        except MalformedManifestRow as exc:
            problems.append(CorpusError(location=location, error=exc))
    return entries, problems


def _parse_manifest_row(row, seen) -> ManifestEntry:
    if len(row) != 3:
        raise MalformedManifestRow(f"expected 3 cells, got {len(row)}")
    rel_path, level_text, fmt = (cell.strip() for cell in row)
    if not rel_path:
        raise MalformedManifestRow("empty path")
    if rel_path in seen:
        raise MalformedManifestRow(f"duplicate path {rel_path!r}")
    try:
        level = int(level_text)
    except ValueError:
        raise MalformedManifestRow(f"level {level_text!r} is not an integer")
    if level not in VALID_LEVELS:
        raise MalformedManifestRow(
            f"level {level} outside {list(VALID_LEVELS)}")
    if fmt not in _FORMATS:
        raise MalformedManifestRow(
            f"format {fmt!r} not one of {list(_FORMATS)}")
    seen.add(rel_path)
    return ManifestEntry(path=rel_path, level=level, format=fmt)


def write_manifest(entries, path) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(MANIFEST_HEADER)
    for entry in entries:
        writer.writerow([entry.path, entry.level, entry.format])
    Path(path).write_text(buffer.getvalue(), encoding="utf-8")


def load_corpus(manifest_path, separator: str = "|",
                mapping: TagsetMapping = DEFAULT_MAPPING):
    """Load every document a manifest names, collecting per-file errors.

    Returns (docs, errors).  Document ids are the manifest's relative
    paths, resolved against the manifest's directory for reading.
    """
    entries, problems = read_manifest(manifest_path)
    base = Path(manifest_path).parent
    docs = []
    errors = list(problems)
    for entry in entries:
        full = base / entry.path
        try:
            if not full.is_file():
                raise MissingFile(f"document not found: {full}")
            text = full.read_text(encoding="utf-8")
            if entry.format == "tagged":
                sentences = parse_tagged(text, separator, mapping)
                tagged = TaggedDocument(id=entry.path,
                                        sentences=tuple(sentences))
            else:
                tagged = tag_document(Document.from_text(entry.path, text))
            docs.append(LabeledDoc(doc_id=entry.path, level=entry.level,
                                   tagged=tagged))
        except (FilreadError, OSError, UnicodeDecodeError) as exc:
            errors.append(CorpusError(location=str(full), error=exc))
    return docs, errors


def write_features_csv(path, vectors, levels) -> None:
    """One row per document: id, level (blank if unknown), 15 values.

    Floats are written with repr, which round-trips exactly.
    """
    vectors = list(vectors)
    levels = list(levels)
    if len(vectors) != len(levels):
        raise MalformedFeaturesRow(
            f"{len(vectors)} vectors but {len(levels)} levels")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(FEATURES_HEADER)
    for fv, level in zip(vectors, levels):
        if len(fv.values) != len(FEATURE_NAMES):
            raise MalformedFeaturesRow(
                f"vector {fv.doc_id!r} has {len(fv.values)} values")
        row = [fv.doc_id, "" if level is None else int(level)]
        row.extend(repr(float(v)) for v in fv.values)
        writer.writerow(row)
    Path(path).write_text(buffer.getvalue(), encoding="utf-8")


def read_features_csv(path):
    """Inverse of write_features_csv: (vectors, levels) with None gaps."""
    p = Path(path)
    if not p.is_file():
        raise MissingFile(f"features file not found: {path}")
    with open(p, newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    if not rows or tuple(rows[0]) != FEATURES_HEADER:
        raise MalformedFeaturesRow(
            f"{path}: expected header starting doc_id,level,"
            f"{FEATURE_NAMES[0]},...")
    vectors = []
    levels = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(FEATURES_HEADER):
            raise MalformedFeaturesRow(
                f"{path}:{lineno}: expected {len(FEATURES_HEADER)} cells, "
                f"got {len(row)}")
        doc_id, level_text = row[0], row[1].strip()
        if level_text == "":
            level = None
        else:
            try:
                level = int(level_text)
            except ValueError:
                raise MalformedFeaturesRow(
                    f"{path}:{lineno}: bad level {level_text!r}")
            if level not in VALID_LEVELS:
                raise MalformedFeaturesRow(
                    f"{path}:{lineno}: level {level} outside "
                    f"{list(VALID_LEVELS)}")
        try:
            values = tuple(float(cell) for cell in row[2:])
        except ValueError as exc:
            raise MalformedFeaturesRow(f"{path}:{lineno}: {exc}")
        vectors.append(FeatureVector(doc_id=doc_id, values=values,
                                     feature_set=FeatureSet.BOTH))
        levels.append(level)
    return vectors, levels


# ---------------------------------------------------------------------------
# Synthetic corpora

_VOWELS = ("a", "e", "i", "o", "u")
_NATIVE_ONSETS = ("b", "d", "g", "h", "k", "l", "m", "n", "ng",
                  "p", "r", "s", "t", "w", "y")
_LOAN_ONSETS = ("c", "f", "j", "v", "z")
_FUNCTION_WORDS = ("ang", "ng", "sa", "at", "ay", "na", "mga",
                   "ni", "si", "kung", "para", "dito")
_FUNCTION_TAG = "CCP"
_CONTENT_TAGS = (("NNC", 0.5), ("VBTS", 0.3), ("JJD", 0.1), ("RBW", 0.1))
_FOREIGN_TAG = "FW"
_COMMA_RATE = 0.15


@dataclass(frozen=True)
class SynthParams:
    """Per-level generation targets, aligned with ``levels``.

    Defaults mirror the published corpus shape this toolkit targets:
    29/30/30 documents whose token volumes come out near-equal because
    sentence counts fall as sentence lengths grow, and polysyllable
    rates that triple from the easiest to the hardest level.
    """

    levels: tuple[int, ...] = VALID_LEVELS
    doc_counts: tuple[int, ...] = (29, 30, 30)
    mean_sentences: tuple[float, ...] = (38.0, 27.0, 21.0)
    mean_sentence_length: tuple[float, ...] = (6.2, 8.5, 10.8)
    polysyllable_rate: tuple[float, ...] = (0.03, 0.06, 0.09)
    content_density: tuple[float, ...] = (0.45, 0.55, 0.65)
    foreign_rate: tuple[float, ...] = (0.02, 0.05, 0.08)
    seed: int = 7

    def __post_init__(self):
        n = len(self.levels)
        if n == 0:
            raise InvalidParams("at least one level is required")
        for field in fields(self):
            value = getattr(self, field.name)
            if field.name in ("levels", "seed"):
                continue
            if len(value) != n:
                raise InvalidParams(
                    f"{field.name} has {len(value)} entries for {n} levels")
        if len(set(self.levels)) != n:
            raise InvalidParams("levels must be distinct")
        for count in self.doc_counts:
            if int(count) != count or count < 1:
                raise InvalidParams(f"doc count {count!r} must be a "
                                    f"positive integer")
        for mean in self.mean_sentences + self.mean_sentence_length:
            if not mean > 0:
                raise InvalidParams(f"mean {mean!r} must be positive")
        for i in range(n):
            poly = self.polysyllable_rate[i]
            foreign = self.foreign_rate[i]
            density = self.content_density[i]
            for name, rate in (("polysyllable_rate", poly),
                               ("foreign_rate", foreign),
                               ("content_density", density)):
                if not 0.0 <= rate <= 1.0:
                    raise InvalidParams(f"{name} {rate!r} outside [0, 1]")
            if poly + foreign > 1.0:
                raise InvalidParams(
                    f"polysyllable_rate + foreign_rate exceeds 1 for "
                    f"level {self.levels[i]}")
        if self.seed < 0:
            raise InvalidParams("seed must be non-negative")

    def scaled_counts(self, per_level: int) -> "SynthParams":
        """Same targets with a uniform document count per level."""
        return SynthParams(
            levels=self.levels,
            doc_counts=(per_level,) * len(self.levels),
            mean_sentences=self.mean_sentences,
            mean_sentence_length=self.mean_sentence_length,
            polysyllable_rate=self.polysyllable_rate,
            content_density=self.content_density,
            foreign_rate=self.foreign_rate,
            seed=self.seed,
        )


def _native_syllable(rng) -> str:
    return (_NATIVE_ONSETS[rng.integers(len(_NATIVE_ONSETS))]
            + _VOWELS[rng.integers(len(_VOWELS))])


def _make_word(rng, kind: str) -> str:
    if kind == "poly":
        count = 7 + int(rng.integers(2))
        return "".join(_native_syllable(rng) for _ in range(count))
    if kind == "foreign":
        head = (_LOAN_ONSETS[rng.integers(len(_LOAN_ONSETS))]
                + _VOWELS[rng.integers(len(_VOWELS))])
        count = int(rng.integers(1, 3))
        return head + "".join(_native_syllable(rng) for _ in range(count))
    count = int(rng.integers(1, 5))
    return "".join(_native_syllable(rng) for _ in range(count))


def _content_tag(rng) -> str:
    u = rng.random()
    acc = 0.0
    for tag, weight in _CONTENT_TAGS:
        acc += weight
        if u < acc:
            return tag
    return _CONTENT_TAGS[-1][0]


def _make_sentence(rng, mean_length, poly_rate, foreign_rate,
                   density) -> str:
    n_words = max(1, int(rng.poisson(mean_length)))
    items = []
    for position in range(n_words):
        u = rng.random()
        if u < poly_rate:
            kind = "poly"
        elif u < poly_rate + foreign_rate:
            kind = "foreign"
        else:
            kind = "regular"
        if kind == "foreign":
            tag = _FOREIGN_TAG
        elif rng.random() < density:
            tag = _content_tag(rng)
        else:
            tag = _FUNCTION_TAG
        if kind == "regular" and tag == _FUNCTION_TAG:
            word = _FUNCTION_WORDS[rng.integers(len(_FUNCTION_WORDS))]
        else:
            word = _make_word(rng, kind)
        items.append(f"{word}|{tag}")
        if position < n_words - 1 and rng.random() < _COMMA_RATE:
            items.append(",|PMC")
    items.append(".|PMP")
    return " ".join(items)


def generate_synthetic(params: SynthParams, out_dir) -> Path:
    """Write one tagged file per document plus a manifest; returns its path.

    Each document draws from its own generator seeded by
    (seed, level, document index), so corpus content is independent of
    generation order.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, level in enumerate(params.levels):
        for doc_idx in range(int(params.doc_counts[i])):
            rng = np.random.default_rng(
                np.random.SeedSequence([params.seed, level, doc_idx]))
            n_sentences = max(1, int(rng.poisson(params.mean_sentences[i])))
            lines = [
                _make_sentence(rng, params.mean_sentence_length[i],
                               params.polysyllable_rate[i],
                               params.foreign_rate[i],
                               params.content_density[i])
                for _ in range(n_sentences)
            ]
            name = f"level{level}_doc{doc_idx:03d}.txt"
            with open(out / name, "w", encoding="utf-8", newline="\n") as fh:
                fh.write("\n".join(lines) + "\n")
            entries.append(ManifestEntry(path=name, level=level,
                                         format="tagged"))
    manifest_path = out / "manifest.csv"
    write_manifest(entries, manifest_path)
    return manifest_path
