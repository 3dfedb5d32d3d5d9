"""POS-tagged text ingestion and lexical-category mapping.

The primary input path is tagger output: UTF-8 text with one sentence
per line and whitespace-separated ``word|TAG`` items (separator
configurable).  Raw tags are mapped onto seven lexical categories via a
longest-prefix table; the default table targets the common Filipino
tagger conventions (NN/VB/JJ/RB/PR prefixes plus FW for foreign words).

For plain, untagged text a deliberately small heuristic tagger is
provided as a fallback.  It is approximate by design: foreign words are
flagged by non-native letters, verbs by a few common affix patterns,
and everything else defaults to noun.  Pipelines that care about
lexical categories should feed tagged input.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import MalformedItem, MalformedMapping
from .textproc import Document, Sentence, Token, make_token

__all__ = [
    "LexicalCategory",
    "TagsetMapping",
    "TaggedToken",
    "TaggedSentence",
    "TaggedDocument",
    "DEFAULT_MAPPING",
    "CONTENT_CATEGORIES",
    "NON_NATIVE_LETTERS",
    "map_category",
    "parse_tagged",
    "serialize_tagged",
    "looks_foreign",
    "heuristic_tag",
    "tag_document",
    "detect_foreign",
]


class LexicalCategory(enum.Enum):
    NOUN = "Noun"
    VERB = "Verb"
    ADJECTIVE = "Adjective"
    ADVERB = "Adverb"
    PRONOUN = "Pronoun"
    FOREIGN = "Foreign"
    OTHER = "Other"


# The four information-carrying categories used by lexical density.
CONTENT_CATEGORIES = frozenset(
    {
        LexicalCategory.NOUN,
        LexicalCategory.VERB,
        LexicalCategory.ADJECTIVE,
        LexicalCategory.ADVERB,
    }
)

# Letters absent from native Tagalog orthography; their presence marks a
# token as a likely loanword in the untagged fallback path.
NON_NATIVE_LETTERS = frozenset("cfjqvxz")

# Verb affixes checked by the heuristic tagger, longest first.
_VERB_PREFIXES = ("nag", "mag", "um", "na", "ma", "i")
_VERB_SUFFIXES = ("in", "an")
_MIN_STEM = 3


class TagsetMapping:
    """Ordered prefix -> category table with a default category.

    Prefixes are matched longest-first (ties keep table order); a tag
    matching no prefix maps to the default category.
    """

    def __init__(
        self,
        prefixes: list[tuple[str, LexicalCategory]],
        default: LexicalCategory = LexicalCategory.OTHER,
    ):
        self.prefixes = sorted(prefixes, key=lambda pc: -len(pc[0]))
        self.default = default

    @staticmethod
    def from_file(path: str) -> "TagsetMapping":
        """Load a mapping from `prefix=Category` lines.

        Blank lines and `#` comments are skipped; a `default=Category`
        line sets the fallback category.
        """
        names = {c.value.casefold(): c for c in LexicalCategory}
        prefixes: list[tuple[str, LexicalCategory]] = []
        default = LexicalCategory.OTHER
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                key, value = key.strip(), value.strip()
                if not sep or not key or not value:
                    raise MalformedMapping(f"{path}:{lineno}: expected prefix=Category, got {line!r}")
                category = names.get(value.casefold())
                if category is None:
                    raise MalformedMapping(f"{path}:{lineno}: unknown category {value!r}")
                if key == "default":
                    default = category
                else:
                    prefixes.append((key, category))
        return TagsetMapping(prefixes, default)


DEFAULT_MAPPING = TagsetMapping(
    [
        ("NN", LexicalCategory.NOUN),
        ("VB", LexicalCategory.VERB),
        ("JJ", LexicalCategory.ADJECTIVE),
        ("RB", LexicalCategory.ADVERB),
        ("PR", LexicalCategory.PRONOUN),
        ("FW", LexicalCategory.FOREIGN),
    ]
)

# Synthetic tags emitted by the heuristic tagger, chosen so that
# map_category(tag) reproduces the assigned category under the default
# mapping.
_CATEGORY_TAGS = {
    LexicalCategory.NOUN: "NN",
    LexicalCategory.VERB: "VB",
    LexicalCategory.ADJECTIVE: "JJ",
    LexicalCategory.ADVERB: "RB",
    LexicalCategory.PRONOUN: "PR",
    LexicalCategory.FOREIGN: "FW",
    LexicalCategory.OTHER: "XX",
}


def map_category(tag: str, mapping: TagsetMapping = DEFAULT_MAPPING) -> LexicalCategory:
    """Map a raw tag to its lexical category; never fails."""
    for prefix, category in mapping.prefixes:
        if tag.startswith(prefix):
            return category
    return mapping.default


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: str
    category: LexicalCategory


@dataclass(frozen=True)
class TaggedSentence:
    """One line of tagger output.

    ``items`` preserves every raw (word, tag) pair verbatim so parsed
    text can be re-serialized exactly; ``tagged`` holds the word tokens
    only (items whose word carries no letter are punctuation and yield
    no token, though they still delimit phrases).
    """

    tagged: tuple[TaggedToken, ...]
    items: tuple[tuple[str, str], ...]
    phrase_count: int

    @property
    def tokens(self) -> tuple[Token, ...]:
        return tuple(tt.token for tt in self.tagged)


@dataclass(frozen=True)
class TaggedDocument:
    id: str
    sentences: tuple[TaggedSentence, ...]

    @property
    def content_sentences(self) -> tuple[TaggedSentence, ...]:
        """Sentences that contain at least one word token."""
        return tuple(s for s in self.sentences if s.tagged)

    def to_document(self) -> Document:
        """Project onto the plain segmentation structure."""
        sentences = tuple(
            Sentence(tokens=s.tokens, phrase_count=s.phrase_count) for s in self.content_sentences
        )
        return Document(id=self.id, raw_text="", sentences=sentences)


_PHRASE_DELIMITER_WORDS = frozenset({",", ";", ":", "–", "—"})


def _phrase_count_from_items(items: list[tuple[str, str]]) -> int:
    """Count delimiter-separated groups that contain a word token."""
    count = 0
    has_word = False
    for word, _tag in items:
        if word in _PHRASE_DELIMITER_WORDS:
            count += has_word
            has_word = False
        elif any(ch.isalpha() for ch in word):
            has_word = True
    return count + has_word


def parse_tagged(
    text: str,
    separator: str = "|",
    mapping: TagsetMapping = DEFAULT_MAPPING,
) -> list[TaggedSentence]:
    """Parse `word|TAG` lines into tagged sentences.

    Sentence boundaries are newlines; blank lines are skipped.  An item
    without the separator, or with an empty word or tag, raises
    MalformedItem carrying its line and item position.
    """
    sentences = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        items: list[tuple[str, str]] = []
        tagged: list[TaggedToken] = []
        for idx, item in enumerate(line.split(), start=1):
            word, sep, tag = item.partition(separator)
            if not sep:
                raise MalformedItem(f"missing separator {separator!r} in {item!r}", lineno, idx)
            if not word or not tag:
                raise MalformedItem(f"empty word or tag in {item!r}", lineno, idx)
            items.append((word, tag))
            if any(ch.isalpha() for ch in word):
                tagged.append(
                    TaggedToken(token=make_token(word), tag=tag, category=map_category(tag, mapping))
                )
        sentences.append(
            TaggedSentence(
                tagged=tuple(tagged),
                items=tuple(items),
                phrase_count=_phrase_count_from_items(items),
            )
        )
    return sentences


def serialize_tagged(sentences: list[TaggedSentence], separator: str = "|") -> str:
    """Inverse of parse_tagged; reproduces the word/tag items verbatim."""
    return "\n".join(
        " ".join(f"{word}{separator}{tag}" for word, tag in sentence.items) for sentence in sentences
    )


def looks_foreign(token: Token, native_exceptions: frozenset[str] = frozenset()) -> bool:
    """Letter-set loanword heuristic for untagged text."""
    if token.normalized in native_exceptions:
        return False
    return any(ch in NON_NATIVE_LETTERS for ch in token.normalized)


def _strip_joiners(normalized: str) -> str:
    return "".join(ch for ch in normalized if ch.isalpha())


def _looks_verb(token: Token) -> bool:
    word = _strip_joiners(token.normalized)
    for prefix in _VERB_PREFIXES:
        if word.startswith(prefix) and len(word) - len(prefix) >= _MIN_STEM:
            return True
    for suffix in _VERB_SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= _MIN_STEM:
            return True
    return False


def heuristic_tag(
    tokens: list[Token],
    lexicon: dict[str, LexicalCategory] | None = None,
    native_exceptions: frozenset[str] = frozenset(),
) -> list[TaggedToken]:
    """Assign categories to untagged tokens by fixed ordered rules.

    1. lexicon lookup (normalized form), when a lexicon is given;
    2. loanword letter heuristic -> Foreign;
    3. common verb affixes (nag-/mag-/um-/na-/ma-/i- prefixes, -in/-an
       suffixes, stem >= 3 letters) -> Verb;
    4. default -> Noun.
    """
    out = []
    for token in tokens:
        if lexicon is not None and token.normalized in lexicon:
            category = lexicon[token.normalized]
        elif looks_foreign(token, native_exceptions):
            category = LexicalCategory.FOREIGN
        elif _looks_verb(token):
            category = LexicalCategory.VERB
        else:
            category = LexicalCategory.NOUN
        out.append(TaggedToken(token=token, tag=_CATEGORY_TAGS[category], category=category))
    return out


def tag_document(
    doc: Document,
    lexicon: dict[str, LexicalCategory] | None = None,
    native_exceptions: frozenset[str] = frozenset(),
) -> TaggedDocument:
    """Lift a plain document into the tagged representation via the heuristic tagger."""
    sentences = []
    for sentence in doc.sentences:
        tagged = heuristic_tag(list(sentence.tokens), lexicon, native_exceptions)
        items = tuple((tt.token.surface, tt.tag) for tt in tagged)
        sentences.append(
            TaggedSentence(tagged=tuple(tagged), items=items, phrase_count=sentence.phrase_count)
        )
    return TaggedDocument(id=doc.id, sentences=tuple(sentences))


def detect_foreign(tagged: TaggedToken) -> bool:
    """True iff the token's category is Foreign."""
    return tagged.category is LexicalCategory.FOREIGN
