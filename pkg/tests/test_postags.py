"""Tag parsing, category mapping, and the fallback tagger."""

import pytest
from hypothesis import given, strategies as st

from filread.errors import MalformedItem, MalformedMapping
from filread.postags import (
    DEFAULT_MAPPING,
    LexicalCategory,
    TagsetMapping,
    detect_foreign,
    heuristic_tag,
    map_category,
    parse_tagged,
    serialize_tagged,
    tag_document,
)
from filread.textproc import Document, tokenize


class TestMapCategory:
    @pytest.mark.parametrize(
        "tag, expected",
        [
            ("NNC", LexicalCategory.NOUN),
            ("NNP", LexicalCategory.NOUN),
            ("VBTS", LexicalCategory.VERB),
            ("JJD", LexicalCategory.ADJECTIVE),
            ("RBW", LexicalCategory.ADVERB),
            ("PRS", LexicalCategory.PRONOUN),
            ("FW", LexicalCategory.FOREIGN),
            ("PUNCT", LexicalCategory.OTHER),
            ("CCP", LexicalCategory.OTHER),
        ],
    )
    def test_default_mapping(self, tag, expected):
        assert map_category(tag) is expected

    def test_longest_prefix_wins(self):
        mapping = TagsetMapping(
            prefixes=[("V", LexicalCategory.OTHER), ("VB", LexicalCategory.VERB)],
            default=LexicalCategory.OTHER,
        )
        assert map_category("VBTS", mapping) is LexicalCategory.VERB
        assert map_category("VARIANT", mapping) is LexicalCategory.OTHER

    @given(st.text(min_size=1, max_size=12))
    def test_total_over_arbitrary_tags(self, tag):
        assert isinstance(map_category(tag), LexicalCategory)


class TestParseTagged:
    def test_two_items(self):
        (sentence,) = parse_tagged("bata|NNC kumain|VBTS")
        assert [t.tag for t in sentence.tagged] == ["NNC", "VBTS"]
        assert [t.category for t in sentence.tagged] == [
            LexicalCategory.NOUN,
            LexicalCategory.VERB,
        ]

    def test_empty_text(self):
        assert parse_tagged("") == []

    def test_blank_lines_skipped(self):
        sentences = parse_tagged("bata|NNC\n\nlaruan|NNC")
        assert len(sentences) == 2

    def test_missing_separator_raises(self):
        with pytest.raises(MalformedItem) as info:
            parse_tagged("bata|NNC\nword")
        assert info.value.line == 2
        assert info.value.item == 1

    def test_empty_word_raises(self):
        with pytest.raises(MalformedItem):
            parse_tagged("|NNC")

    def test_empty_tag_raises(self):
        with pytest.raises(MalformedItem):
            parse_tagged("bata|")

    def test_custom_separator(self):
        (sentence,) = parse_tagged("bata/NNC", separator="/")
        assert sentence.tagged[0].tag == "NNC"

    def test_token_fields_computed(self):
        (sentence,) = parse_tagged("paano|PRS")
        token = sentence.tagged[0].token
        assert token.syllable_count == 3
        assert token.char_length == 5

    def test_punctuation_items_carry_no_tokens(self):
        (sentence,) = parse_tagged("bata|NNC ,|PMC kumain|VBTS .|PMP")
        assert len(sentence.tagged) == 2
        assert len(sentence.items) == 4

    def test_phrase_count_from_delimiter_items(self):
        (sentence,) = parse_tagged("bata|NNC ,|PMC kumain|VBTS .|PMP")
        assert sentence.phrase_count == 2

    def test_round_trip_is_verbatim(self):
        text = "bata|NNC ,|PMC kumain|VBTS .|PMP\nlaruan|NNC niya|PRS .|PMP"
        assert serialize_tagged(parse_tagged(text)) == text

    @given(
        st.lists(
            st.lists(
                st.tuples(
                    st.text(alphabet="abcdefghijklmnop", min_size=1, max_size=8),
                    st.text(alphabet="ABCDEFGHIJKLMNOP", min_size=1, max_size=4),
                ),
                min_size=1,
                max_size=6,
            ),
            min_size=1,
            max_size=4,
        )
    )
    def test_round_trip_property(self, sentences):
        text = "\n".join(
            " ".join(f"{word}|{tag}" for word, tag in sentence)
            for sentence in sentences
        )
        assert serialize_tagged(parse_tagged(text)) == text


class TestTagsetMappingFile:
    def test_from_file(self, tmp_path):
        path = tmp_path / "tags.conf"
        path.write_text(
            "# comment\nNN=Noun\nVB=Verb\nFW=Foreign\ndefault=Other\n",
            encoding="utf-8",
        )
        mapping = TagsetMapping.from_file(path)
        assert map_category("NNC", mapping) is LexicalCategory.NOUN
        assert map_category("XYZ", mapping) is LexicalCategory.OTHER

    def test_unknown_category_raises(self, tmp_path):
        path = tmp_path / "tags.conf"
        path.write_text("NN=Nouns\n", encoding="utf-8")
        with pytest.raises(MalformedMapping):
            TagsetMapping.from_file(path)

    def test_line_without_equals_raises(self, tmp_path):
        path = tmp_path / "tags.conf"
        path.write_text("NN Noun\n", encoding="utf-8")
        with pytest.raises(MalformedMapping):
            TagsetMapping.from_file(path)


class TestHeuristicTagger:
    def _categories(self, text):
        tagged = heuristic_tag(tokenize(text))
        return {t.token.surface: t.category for t in tagged}

    def test_verb_prefix(self):
        assert self._categories("nagluto")["nagluto"] is LexicalCategory.VERB

    def test_foreign_letters(self):
        assert self._categories("computer")["computer"] is LexicalCategory.FOREIGN

    def test_default_noun(self):
        assert self._categories("bahay")["bahay"] is LexicalCategory.NOUN

    def test_verb_suffix_needs_stem(self):
        cats = self._categories("kainin an")
        assert cats["kainin"] is LexicalCategory.VERB
        assert cats["an"] is LexicalCategory.NOUN

    def test_lexicon_overrides_heuristics(self):
        tokens = tokenize("nagluto")
        tagged = heuristic_tag(tokens, lexicon={"nagluto": LexicalCategory.NOUN})
        assert tagged[0].category is LexicalCategory.NOUN

    def test_foreign_beats_affix_rule(self):
        # Leading mag- would suggest Verb, but the 'v' marks it foreign.
        assert self._categories("magvideo")["magvideo"] is LexicalCategory.FOREIGN

    @given(st.lists(st.sampled_from(["bata", "nagluto", "video", "mga"]), max_size=8))
    def test_determinism(self, words):
        tokens = tokenize(" ".join(words))
        first = [t.category for t in heuristic_tag(tokens)]
        second = [t.category for t in heuristic_tag(tokens)]
        assert first == second


class TestDetectForeign:
    def test_fw_tag(self):
        (sentence,) = parse_tagged("video|FW")
        assert detect_foreign(sentence.tagged[0])

    def test_untagged_native(self):
        (tagged,) = heuristic_tag(tokenize("aklat"))
        assert not detect_foreign(tagged)

    def test_untagged_foreign_letters(self):
        (tagged,) = heuristic_tag(tokenize("video"))
        assert detect_foreign(tagged)


class TestTagDocument:
    def test_wraps_plain_document(self):
        doc = Document.from_text("d1", "Nagluto ang bata. Masarap ang pagkain.")
        tagged = tag_document(doc)
        assert tagged.id == "d1"
        assert len(tagged.sentences) == 2
        assert tagged.sentences[0].tagged[0].category is LexicalCategory.VERB

    def test_to_document_preserves_counts(self):
        doc = Document.from_text("d1", "Nagluto ang bata, at kumain.")
        round_tripped = tag_document(doc).to_document()
        assert len(round_tripped.sentences) == len(doc.sentences)
        assert round_tripped.sentences[0].phrase_count == 2
