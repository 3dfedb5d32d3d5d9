"""Deterministic segmentation and counting for Filipino text.

Raw text is decomposed into sentences, phrases, and tokens using plain
orthographic rules, with no language model and no randomness:

* Sentences end at a run of ``.`` ``!`` ``?`` followed by whitespace or
  end of input; a run of terminators (``...``) counts as one boundary,
  and trailing unterminated text forms a final sentence.
* Tokens are maximal runs of letters, optionally joined by internal
  hyphens or apostrophes, so affixed forms like ``mag-aral`` stay one
  token.  Digits and punctuation are discarded.
* Phrases are the comma/semicolon/colon/dash-delimited chunks of a
  sentence that contain at least one token.
* Syllables are counted as vowel letters (a e i o u).  Filipino
  orthography is near-phonemic and adjacent vowels are pronounced as
  separate syllables (pa-a-no), so every vowel letter is its own
  nucleus.  Vowel-less tokens such as the abbreviation ``mga`` count as
  one syllable.

All functions are pure; identical input yields identical output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

__all__ = [
    "Token",
    "Sentence",
    "Document",
    "segment_sentences",
    "tokenize",
    "segment_phrases",
    "count_syllables",
    "is_polysyllabic",
    "make_token",
    "POLYSYLLABIC_THRESHOLD",
]

# Words with strictly more syllables than this are polysyllabic.
POLYSYLLABIC_THRESHOLD = 6

_VOWELS = frozenset("aeiou")

# A terminator run ends a sentence only before whitespace or end of input,
# so decimal points and similar in-word punctuation never split.
_SENTENCE_BREAK = re.compile(r"[.!?]+(?:\s+|$)")

# Letters (unicode), optionally joined by internal hyphens/apostrophes.
_TOKEN = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*")

# Phrase delimiters: comma, semicolon, colon, en dash, em dash.
_PHRASE_SPLIT = re.compile(r"[,;:–—]")


@dataclass(frozen=True)
class Token:
    """One word token.

    ``normalized`` is the case-folded surface, ``char_length`` counts
    letters only (joiners excluded), and ``syllable_count`` is at least
    1 for any token (tokens always contain a letter by construction).
    """

    surface: str
    normalized: str
    syllable_count: int
    char_length: int


@dataclass(frozen=True)
class Sentence:
    """An ordered list of tokens plus the sentence's phrase count."""

    tokens: tuple[Token, ...]
    phrase_count: int


@dataclass(frozen=True)
class Document:
    """Raw text plus its segmentation.

    Only sentences that contain at least one token are kept; chunks of
    pure punctuation or digits carry no countable content and would
    distort per-sentence averages.
    """

    id: str
    raw_text: str
    sentences: tuple[Sentence, ...] = field(default_factory=tuple)

    @staticmethod
    def from_text(doc_id: str, text: str) -> "Document":
        return Document(id=doc_id, raw_text=text, sentences=tuple(segment_sentences(text)))


def count_syllables(token: "Token | str") -> int:
    """Count syllables of a token as its vowel letters, floored at 1.

    Each vowel letter is one nucleus (hiatus: ``paano`` -> 3).  'y' and
    'w' are consonants.  A token with letters but no vowels counts as 1.
    """
    word = token.surface if isinstance(token, Token) else token
    n = sum(1 for ch in word.casefold() if ch in _VOWELS)
    return max(n, 1)


def is_polysyllabic(token: "Token | int", threshold: int = POLYSYLLABIC_THRESHOLD) -> bool:
    """True iff the token's syllable count strictly exceeds the threshold."""
    count = token.syllable_count if isinstance(token, Token) else token
    return count > threshold


def make_token(surface: str) -> Token:
    """Build a Token from a surface form that contains >= 1 letter."""
    letters = sum(1 for ch in surface if ch.isalpha())
    return Token(
        surface=surface,
        normalized=surface.casefold(),
        syllable_count=count_syllables(surface),
        char_length=letters,
    )


def tokenize(sentence_text: str) -> list[Token]:
    """Extract the word tokens of one sentence, in order.

    Tokens are maximal letter runs, optionally containing internal
    hyphens or apostrophes that join letter runs (``mag-aral`` is one
    token).  Everything else is discarded.
    """
    return [make_token(m.group(0)) for m in _TOKEN.finditer(sentence_text)]


def segment_phrases(sentence_text: str) -> int:
    """Count the phrase chunks of a sentence.

    A phrase is a delimiter-separated segment containing at least one
    token; delimiters with no token on one side (e.g. doubled commas or
    a trailing comma) do not open a new phrase.  A sentence with tokens
    has at least one phrase; with no tokens, zero.
    """
    segments = _PHRASE_SPLIT.split(sentence_text)
    return sum(1 for seg in segments if _TOKEN.search(seg))


def segment_sentences(text: str) -> list[Sentence]:
    """Split raw text into tokenized sentences.

    Splits on terminator runs followed by whitespace or end of input;
    trailing unterminated content forms a final sentence.  Chunks that
    yield no tokens (whitespace, bare punctuation, digits) are dropped,
    so whitespace-only input yields an empty list.
    """
    sentences = []
    for chunk in _SENTENCE_BREAK.split(text):
        tokens = tokenize(chunk)
        if not tokens:
            continue
        sentences.append(Sentence(tokens=tuple(tokens), phrase_count=segment_phrases(chunk)))
    return sentences
